"""Quadratic continued fractions and the transformation tau.

A :class:`CFParams` tuple ``(a, b, c, d, e, f)`` defines the power series
``F`` by the functional equation::

    F(x) = (a + b x) / (1 + c x + d x^2 + x^2 (e + f x) F(x))

``tau_transform`` maps it to another such tuple whose Hankel transform is
the original one shifted by one index and rescaled by ``a^n``.  Iterating it
gives an orbit whose leading coefficients ``a_0, a_1, ...`` determine every
Hankel determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    IndexOutOfOrbit,
    WrongForm,
    ZeroDivisor,
    ZeroLeadingCoefficient,
)
from .series import PowerSeries, RationalLike, fixed_point_solve, to_rational

__all__ = [
    "CFParams",
    "TauOrbit",
    "SomosCertificate",
    "series_from_cf",
    "tau_transform",
    "tau_orbit",
    "fit_canonical_cf",
    "theorem1_certificate",
    "theorem3_residual",
    "orbit_somos_residual",
    "theorem1_T_residual",
]


@dataclass(frozen=True)
class CFParams:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    f: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "e", "f"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @classmethod
    def of(cls, *values: RationalLike) -> CFParams:
        if len(values) != 6:
            raise ValueError(f"expected 6 parameters, got {len(values)}")
        return cls(*values)

    def astuple(self) -> tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.astuple()) + ")"


@dataclass(frozen=True)
class TauOrbit:
    """Iterates of tau; ``breakdown`` is the first index whose ``a`` vanished."""

    steps: tuple[CFParams, ...]
    breakdown: Optional[int] = None

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, n):
        return self.steps[n]

    @property
    def a_values(self) -> tuple[Fraction, ...]:
        return tuple(p.a for p in self.steps)

    def _a(self, n: int) -> Fraction:
        if n < 0 or n >= len(self.steps):
            raise IndexOutOfOrbit(f"orbit has no step {n} (length {len(self.steps)})")
        return self.steps[n].a


@dataclass(frozen=True)
class SomosCertificate:
    alpha: Fraction
    beta: Fraction
    a1: Fraction
    f1: Fraction


def _cf_map(p: CFParams, order: int):
    num = PowerSeries([p.a, p.b], order)
    base = PowerSeries([1, p.c, p.d], order)
    tail = PowerSeries([0, 0, p.e, p.f], order)

    def step(g: PowerSeries) -> PowerSeries:
        return num / (base + tail * g)

    return step


def series_from_cf(p: CFParams, order: int) -> PowerSeries:
    """Power-series solution of the defining equation, through ``x^order``."""
    return fixed_point_solve(_cf_map(p, order), order)


def tau_transform(p: CFParams) -> CFParams:
    a, b, c, d, e, f = p.astuple()
    if a == 0:
        raise ZeroLeadingCoefficient("tau requires a != 0")
    a2, a3 = a * a, a * a * a
    return CFParams(
        a=-(a3 * e + a2 * d - a * b * c + b * b) / a2,
        b=-(a2 * a2 * f + c * a3 * d - a2 * c * c * b + 2 * a * c * b * b
            - a2 * b * d - b * b * b) / a3,
        c=c,
        d=-(a2 * d - 2 * a * b * c + 2 * b * b) / a2,
        e=Fraction(-1),
        f=-b / a,
    )


def tau_orbit(p: CFParams, k: int) -> TauOrbit:
    """Up to ``k + 1`` tuples ``p, tau(p), ...``, stopping before any zero ``a``."""
    if p.a == 0:
        return TauOrbit((), breakdown=0)
    steps = [p]
    for n in range(1, k + 1):
        nxt = tau_transform(steps[-1])
        if nxt.a == 0:
            return TauOrbit(tuple(steps), breakdown=n)
        steps.append(nxt)
    return TauOrbit(tuple(steps))


def _solve_linear(rows: list[list[Fraction]], rhs: list[Fraction], nvars: int):
    """Gauss-Jordan over Q with pivots taken in variable order.

    Returns ``(solution, rank)`` with free variables set to zero, or ``None``
    when the system is inconsistent.
    """
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(nvars):
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    if any(r[nvars] != 0 for r in m[row:]):
        return None
    sol = [Fraction(0)] * nvars
    for i, col in enumerate(pivots):
        sol[col] = m[i][nvars]
    return sol, len(pivots)


def fit_canonical_cf(s: PowerSeries) -> tuple[Optional[CFParams], bool]:
    """Find ``(a, ..., f)`` whose canonical series equals ``s`` through its order.

    Returns ``(params, unique)``; ``params`` is ``None`` when no tuple fits.
    """
    # s (1 + c x + d x^2) + x^2 (e + f x) s^2 = a + b x, read off order by order
    n = s.order
    sq = s * s
    rows, rhs = [], []
    for k in range(2, n + 1):
        rows.append([
            s[k - 1],
            s[k - 2],
            sq[k - 2],
            sq[k - 3] if k >= 3 else Fraction(0),
        ])
        rhs.append(-s[k])
    solved = _solve_linear(rows, rhs, 4)
    if solved is None:
        return None, False
    (c, d, e, f), rank = solved
    a = s[0]
    b = s[1] + c * s[0] if n >= 1 else Fraction(0)
    p = CFParams(a, b, c, d, e, f)
    # every order has been imposed above; this re-check guards the algebra
    if series_from_cf(p, n) != s:
        return None, False
    return p, rank == 4


def theorem1_certificate(p: CFParams) -> SomosCertificate:
    """Closed-form Somos-4 parameters of the Hankel transform of ``p``.

    Valid for ``e = -1``.  ``a1`` and ``f1`` are evaluated from their closed
    forms and cross-checked against one application of tau.
    """
    if p.e != -1:
        raise WrongForm(f"certificate needs e = -1, got e = {p.e}")
    a0, b0, c, d0, _, f0 = p.astuple()
    if a0 == 0:
        raise ZeroLeadingCoefficient("certificate requires a != 0")
    ratio = b0 / a0
    f1 = -ratio
    a1 = a0 - d0 + ratio * (c - ratio)
    nxt = tau_transform(p)
    if (nxt.a, nxt.f) != (a1, f1):
        raise AssertionError(
            f"closed-form (a1, f1) = ({a1}, {f1}) disagrees with tau: ({nxt.a}, {nxt.f})")
    k = c + f0 + f1
    alpha = a0 * a0 * k * k
    beta = -k * k * a0 ** 3 - a1 * ((f0 - f1) * k - a1) * a0 * a0
    return SomosCertificate(alpha=alpha, beta=beta, a1=a1, f1=f1)


def theorem3_residual(orbit: TauOrbit, cert: SomosCertificate, n: int) -> Fraction:
    an, an1, an2 = orbit._a(n), orbit._a(n + 1), orbit._a(n + 2)
    if an1 == 0:
        raise ZeroDivisor(f"a_{n + 1} = 0")
    a0 = orbit._a(0)
    c, f0 = orbit[0].c, orbit[0].f
    f1, a1 = cert.f1, cert.a1
    k = f0 + c + f1
    rhs = 2 * a0 * a1 + a0 * (2 * f1 + c) * k - a0 * a0 * k * k / an1
    return an2 * an1 + an1 * an - rhs


def orbit_somos_residual(orbit: TauOrbit, alpha: Fraction, beta: Fraction,
                         n: int) -> Fraction:
    if n < 2:
        raise IndexOutOfOrbit(f"residual needs steps n-2..n, got n = {n}")
    an, am1, am2 = orbit._a(n), orbit._a(n - 1), orbit._a(n - 2)
    if am1 == 0:
        raise ZeroDivisor(f"a_{n - 1} = 0")
    return an * am1 * am2 - alpha - beta / am1


def theorem1_T_residual(orbit: TauOrbit, cert: SomosCertificate, n: int) -> Fraction:
    if n < 1:
        raise IndexOutOfOrbit(f"T(n) needs steps n-1 and n, got n = {n}")
    an, am1 = orbit._a(n), orbit._a(n - 1)
    a0 = orbit._a(0)
    c, f0 = orbit[0].c, orbit[0].f
    f1, a1 = cert.f1, cert.a1
    k2 = (c + f0 + f1) ** 2
    mid = c * c + c * f0 + 3 * c * f1 + 2 * f0 * f1 + 2 * f1 * f1 + 2 * a1
    return (-k2 * a0 * a0 * am1 + mid * an * am1 * a0 - am1 * am1 * an * an
            - k2 * a0 * a0 * an - cert.beta)
