"""(alpha, beta) Somos-4 sequences: generation, residuals and fitting.

All checks use the division-free relation

    s_n s_{n-4} = alpha s_{n-1} s_{n-3} + beta s_{n-2}^2

so zero terms inside a Hankel transform need no special casing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import TooShort
from .series import RationalLike, to_rational


@dataclass(frozen=True)
class Somos4Params:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_rational(self.alpha))
        object.__setattr__(self, "beta", to_rational(self.beta))


@dataclass(frozen=True)
class SomosRun:
    values: tuple[Fraction, ...]
    breakdown: Optional[int] = None  # index n whose s_{n-4} was zero


@dataclass(frozen=True)
class SomosFit:
    params: Somos4Params
    degenerate: bool


def somos4_generate(p: Somos4Params, seed: Sequence[RationalLike], n_max: int) -> SomosRun:
    if len(seed) != 4:
        raise ValueError("seed must hold exactly four terms")
    s = [to_rational(x) for x in seed][: n_max + 1]
    for n in range(4, n_max + 1):
        if s[n - 4] == 0:
            return SomosRun(tuple(s), breakdown=n)
        s.append((p.alpha * s[n - 1] * s[n - 3] + p.beta * s[n - 2] ** 2) / s[n - 4])
    return SomosRun(tuple(s))


def _rows(seq: Sequence[Fraction]):
    for n in range(4, len(seq)):
        yield seq[n - 1] * seq[n - 3], seq[n - 2] ** 2, seq[n] * seq[n - 4]


def somos4_residuals(seq: Sequence[RationalLike], p: Somos4Params) -> list[Fraction]:
    """``s_n s_{n-4} - alpha s_{n-1} s_{n-3} - beta s_{n-2}^2`` for ``n >= 4``."""
    seq = [to_rational(x) for x in seq]
    if len(seq) < 5:
        raise TooShort(f"need at least 5 terms, got {len(seq)}")
    return [z - p.alpha * x - p.beta * y for x, y, z in _rows(seq)]


def somos4_fit(seq: Sequence[RationalLike]) -> Optional[SomosFit]:
    """Recover ``(alpha, beta)`` from a sequence, or ``None`` if none fits.

    When the coefficient rows span only a line, any point on it fits; a
    representative is returned with ``degenerate=True``.  An all-zero row
    space (every coefficient row zero) is also degenerate, with (0, 0).
    """
    seq = [to_rational(x) for x in seq]
    if len(seq) < 8:
        raise TooShort(f"need at least 8 terms, got {len(seq)}")
    rows = list(_rows(seq))

    first = None
    solution = None
    for x, y, z in rows:
        if first is None:
            if x or y:
                first = (x, y, z)
            elif z:
                return None
            continue
        x1, y1, z1 = first
        det = x1 * y - y1 * x
        if det:
            solution = Somos4Params((z1 * y - y1 * z) / det, (x1 * z - z1 * x) / det)
            break

    degenerate = solution is None
    if degenerate:
        if first is None:
            solution = Somos4Params(0, 0)
        else:
            x1, y1, z1 = first
            # any point on x1*alpha + y1*beta = z1
            solution = Somos4Params(z1 / x1, 0) if x1 else Somos4Params(0, z1 / y1)

    if any(somos4_residuals(seq, solution)):
        return None
    return SomosFit(solution, degenerate)
