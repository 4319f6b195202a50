"""Hankel matrices and exact determinants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cf import CFParams, tau_orbit
from .errors import InsufficientOrder, TooLarge, ZeroLeadingCoefficient
from .series import PowerSeries, to_rational

NAIVE_MAX_SIZE = 7


class RationalMatrix:
    """Immutable square matrix of Fractions (size 0 allowed)."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(to_rational(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self._rows = rows

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"RationalMatrix({[[str(x) for x in r] for r in self._rows]})"


def hankel_matrix(s: PowerSeries, n: int) -> RationalMatrix:
    if n < 0:
        raise ValueError("size must be >= 0")
    if n >= 1 and s.order < 2 * n - 2:
        raise InsufficientOrder(
            f"{n}x{n} Hankel matrix needs order >= {2 * n - 2}, series has order {s.order}")
    return RationalMatrix([[s[i + j] for j in range(n)] for i in range(n)])


def det_bareiss(m: RationalMatrix) -> Fraction:
    """Determinant by fraction-free elimination on the integer-scaled matrix."""
    n = m.size
    if n == 0:
        return Fraction(1)
    scale = 1
    a = []
    for row in m.rows:
        lcm = math.lcm(*(x.denominator for x in row))
        scale *= lcm
        a.append([x.numerator * (lcm // x.denominator) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def det_naive(m: RationalMatrix) -> Fraction:
    """Cofactor expansion along the first row; the slow reference implementation."""
    n = m.size
    if n > NAIVE_MAX_SIZE:
        raise TooLarge(f"det_naive is limited to size {NAIVE_MAX_SIZE}, got {n}")

    def expand(rows: tuple[int, ...], cols: tuple[int, ...]) -> Fraction:
        if not rows:
            return Fraction(1)
        i = rows[0]
        total = Fraction(0)
        for pos, j in enumerate(cols):
            x = m[i, j]
            if x:
                minor = expand(rows[1:], cols[:pos] + cols[pos + 1:])
                total += -x * minor if pos % 2 else x * minor
        return total

    return expand(tuple(range(n)), tuple(range(n)))


def hankel_transform(s: PowerSeries, n_max: int) -> list[Fraction]:
    """``[H_0, ..., H_{n_max}]`` with ``H_0 = 1``."""
    if n_max >= 1 and s.order < 2 * n_max - 2:
        raise InsufficientOrder(
            f"Hankel transform to n = {n_max} needs order >= {2 * n_max - 2}, "
            f"series has order {s.order}")
    return [det_bareiss(hankel_matrix(s, n)) for n in range(n_max + 1)]


@dataclass(frozen=True)
class OrbitHankel:
    values: tuple[Fraction, ...]
    breakdown: Optional[int] = None


def hankel_via_orbit(p: CFParams, n_max: int) -> OrbitHankel:
    """``H_n = prod_{i<n} a_i^(n-i)`` from the tau orbit of ``p``.

    When ``a_m`` vanishes only ``H_0 .. H_m`` are returned.
    """
    if p.a == 0:
        raise ZeroLeadingCoefficient("orbit product needs a != 0")
    orbit = tau_orbit(p, max(n_max - 1, 0))
    a = orbit.a_values
    last = n_max if orbit.breakdown is None else min(n_max, orbit.breakdown)
    values = []
    for n in range(last + 1):
        h = Fraction(1)
        for i in range(n):
            h *= a[i] ** (n - i)
        values.append(h)
    return OrbitHankel(tuple(values), orbit.breakdown)

