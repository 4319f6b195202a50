"""Generalized J-fraction presets and the classical Somos-4 seed.

Each preset knows how to build its series, the closed-form ``(alpha, beta)``
claimed for its Hankel transform, and its canonical continued-fraction
tuple.  The canonical tuples come from multiplying numerator and
denominator by ``1 - x``; e.g. for ``conj2``::

    g = (1 - x) / (1 - 2x - r x^2 + x^2 (-s + s x) g)

They are never trusted blindly: the verification pipeline checks each one
against the parsed expression.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cf import CFParams
from .errors import UnboundVariable, UnknownPreset
from .gflang import Bindings, eval_gf, parse_gf
from .series import PowerSeries, fixed_point_solve
from .somos import Somos4Params

PRESET_IDS = ("conj2", "conj3", "conj4", "conj5", "somos_seed")
ALIASES = {"somos": "somos_seed"}


@dataclass(frozen=True)
class Preset:
    id: str
    expr_text: str
    param_names: tuple[str, ...]
    expected_params: Callable[[Bindings], Somos4Params]
    canonical: Callable[[Bindings], CFParams]
    # the J-fractions are certified through tau(g); Q(z) already has e = -1
    certify_after_tau: bool = True

    def require(self, env: Bindings) -> dict[str, Fraction]:
        for name in self.param_names:
            if name not in env:
                raise UnboundVariable(name)
        return {name: Fraction(env[name]) for name in self.param_names}

    def build_series(self, env: Bindings, order: int) -> PowerSeries:
        env = self.require(env)
        if self.id == "somos_seed":
            return somos_q_series(order)
        return eval_gf(parse_gf(self.expr_text), env, order)


def _conj2_expected(env):
    r, s = env["r"], env["s"]
    return Somos4Params(0, s**2 * (r + s + 1) ** 2)


def _conj3_expected(env):
    r, s = env["r"], env["s"]
    return Somos4Params(s**2, s**2 * (r + (r + s) ** 2))


def _conj4_expected(env):
    r, s = env["r"], env["s"]
    return Somos4Params((s + 1) ** 2, 1 + r**2 - 6 * s - 3 * s**2 - r * (s**2 + 2 * s - 3))


def _conj5_expected(env):
    r, s, v, w = env["r"], env["s"], env["v"], env["w"]
    alpha = (s + v) ** 2 * w**2
    beta = w**2 * (
        r**2 * v**2
        + w * (w + v - v**2)
        + r * v * (v + 2 * w)
        - s**2 * (v * (r + 1) + 2 * w)
        - s * ((r + 1) * v**2 + w + v * (r + 1 + 3 * w))
    )
    return Somos4Params(alpha, beta)


PRESETS: dict[str, Preset] = {
    "conj2": Preset(
        "conj2",
        "1/(1 - x*(1+r*x)/(1-x) - s*x^2*G)",
        ("r", "s"),
        _conj2_expected,
        lambda e: CFParams(1, -1, -2, -e["r"], -e["s"], e["s"]),
    ),
    "conj3": Preset(
        "conj3",
        "1/(1 - x*(1+r*x)/(1-x) - s*x^2/(1-x)*G)",
        ("r", "s"),
        _conj3_expected,
        lambda e: CFParams(1, -1, -2, -e["r"], -e["s"], 0),
    ),
    "conj4": Preset(
        "conj4",
        "1/(1 - x*(1+r*x)/(1-x) - x^2*(1+s*x)/(1-x)*G)",
        ("r", "s"),
        _conj4_expected,
        lambda e: CFParams(1, -1, -2, -e["r"], -1, -e["s"]),
    ),
    "conj5": Preset(
        "conj5",
        "1/(1 - v*x*(1+r*x)/(1-x) - w*x^2*(1+s*x)/(1-x)*G)",
        ("r", "s", "v", "w"),
        _conj5_expected,
        lambda e: CFParams(1, -1, -1 - e["v"], -e["v"] * e["r"], -e["w"], -e["w"] * e["s"]),
    ),
    "somos_seed": Preset(
        "somos_seed",
        "",
        (),
        lambda e: Somos4Params(1, 1),
        lambda e: CFParams(1, -1, -2, 0, -1, 0),
        certify_after_tau=False,
    ),
}


def get_preset(preset_id: str) -> Preset:
    key = ALIASES.get(preset_id, preset_id)
    try:
        return PRESETS[key]
    except KeyError:
        raise UnknownPreset(f"unknown preset {preset_id!r}") from None


def expected_somos_params(preset_id: str, env: Bindings) -> Somos4Params:
    preset = get_preset(preset_id)
    return preset.expected_params(preset.require(env))


def somos_y_series(order: int) -> PowerSeries:
    """``y`` with ``z - z^3 = y - y^2``, i.e. the fixed point of ``z - z^3 + y^2``."""
    base = PowerSeries([0, 1, 0, -1], order)
    return fixed_point_solve(lambda y: base + y * y, order)


def somos_q_series(order: int) -> PowerSeries:
    """``Q(z) = (y - z) / z^2`` through ``z^order``."""
    y = somos_y_series(order + 2)
    return (y - PowerSeries([0, 1], order + 2)).shift_down(2)
