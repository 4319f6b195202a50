"""Exact rationals and truncated formal power series.

Scalars are :class:`fractions.Fraction`, which already keeps values in lowest
terms with a positive denominator.  A :class:`PowerSeries` of order ``N``
carries the coefficients of ``x^0 .. x^N``; every binary operation truncates
to the smaller of the two orders, so precision can only ever go down.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import NotContractive, ZeroConstantTerm

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as ``p/q`` (or ``p`` for integers)."""
    return str(q)


class PowerSeries:
    """Truncated power series ``c_0 + c_1 x + ... + c_N x^N``.

    Two series compare equal when their coefficients agree up to the smaller
    truncation order.  That relation is not transitive, so series are not
    hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike], order: int | None = None):
        cs = [to_rational(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("empty coefficient list needs an explicit order")
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, value: RationalLike, order: int) -> PowerSeries:
        return cls([value], order)

    @classmethod
    def zero(cls, order: int) -> PowerSeries:
        return cls([], order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff: RationalLike = 1) -> PowerSeries:
        cs = [0] * (k + 1)
        cs[k] = coeff
        return cls(cs, order)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, k):
        return self._coeffs[k]

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return PowerSeries(self._coeffs[: order + 1], order)

    def agrees_with(self, other: PowerSeries, through: int) -> bool:
        if through > min(self.order, other.order):
            return False
        return self._coeffs[: through + 1] == other._coeffs[: through + 1]

    def shift_down(self, k: int) -> PowerSeries:
        """Divide by ``x^k``; the first ``k`` coefficients must vanish."""
        if any(self._coeffs[:k]):
            raise ValueError(f"series is not divisible by x^{k}")
        if k > self.order:
            raise ValueError("shift exceeds truncation order")
        return PowerSeries(self._coeffs[k:], self.order - k)

    def _coerce(self, other) -> PowerSeries | None:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PowerSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is None else ps_add(self, t)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self._coeffs], self.order)

    def __sub__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is None else ps_add(self, -t)

    def __rsub__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is None else ps_add(t, -self)

    def __mul__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is None else ps_mul(self, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is None else ps_mul(self, ps_inv(t))

    def __rtruediv__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is None else ps_mul(t, ps_inv(self))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = PowerSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = ps_mul(result, base)
            k >>= 1
            if k:
                base = ps_mul(base, base)
        return result

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self._coeffs[: n + 1] == other._coeffs[: n + 1]

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        body = ", ".join(str(c) for c in self._coeffs)
        return f"PowerSeries([{body}], order={self.order})"


def ps_add(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    n = min(s.order, t.order)
    return PowerSeries([s[k] + t[k] for k in range(n + 1)], n)


def _integer_form(s: PowerSeries, n: int) -> tuple[list[int], int]:
    # coefficients 0..n as integers over one common denominator
    den = math.lcm(*(c.denominator for c in s.coeffs[: n + 1]))
    return [c.numerator * (den // c.denominator) for c in s.coeffs[: n + 1]], den


def ps_mul(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    n = min(s.order, t.order)
    a, da = _integer_form(s, n)
    b, db = _integer_form(t, n)
    den = da * db
    out = []
    for k in range(n + 1):
        acc = 0
        for i in range(k + 1):
            if a[i] and b[k - i]:
                acc += a[i] * b[k - i]
        out.append(Fraction(acc, den))
    return PowerSeries(out, n)


def ps_inv(s: PowerSeries) -> PowerSeries:
    if s[0] == 0:
        raise ZeroConstantTerm("power series with zero constant term is not invertible")
    n = s.order
    a, den = _integer_form(s, n)
    # 1/s = den / A with A integral; coefficient k of 1/A is u_k / a_0^(k+1)
    a0 = a[0]
    u = [1]
    for k in range(1, n + 1):
        acc = 0
        p = 1
        for i in range(1, k + 1):
            if a[i]:
                acc += a[i] * u[k - i] * p
            p *= a0
        u.append(-acc)
    out = []
    scale = a0
    for k in range(n + 1):
        out.append(Fraction(den * u[k], scale))
        scale *= a0
    return PowerSeries(out, n)


def _probe_series(order: int) -> PowerSeries:
    # second starting point for the uniqueness check: 0 + x + x^2 + ...
    return PowerSeries([0] + [1] * order, order)


def fixed_point_solve(fn: Callable[[PowerSeries], PowerSeries], order: int) -> PowerSeries:
    """Unique series ``G`` with ``G = fn(G)`` through ``x^order``.

    ``fn`` must gain at least one order of agreement per application.  It is
    iterated ``order + 2`` times from the zero series and the last two
    iterates are compared.  The same iteration is also run from a second
    starting point; a map with more than one fixed point (``G -> G``, say)
    converges to different answers and is rejected.
    """
    if order < 0:
        raise ValueError("truncation order must be >= 0")

    def iterate(start):
        prev = cur = start
        for _ in range(order + 2):
            prev, cur = cur, fn(cur)
            if cur.order < order:
                raise NotContractive(
                    f"map lost precision: returned order {cur.order} < {order}")
            cur = cur.truncate(order)
        return prev, cur

    prev, g = iterate(PowerSeries.zero(order))
    if not prev.agrees_with(g, order):
        raise NotContractive("fixed-point iteration did not stabilize")
    try:
        _, h = iterate(_probe_series(order))
    except ZeroConstantTerm as exc:
        raise NotContractive("fixed point depends on the starting series") from exc
    if not h.agrees_with(g, order):
        raise NotContractive("fixed point depends on the starting series")
    return g


def series(coeffs: Sequence[RationalLike]) -> PowerSeries:
    """Shorthand: series whose order is ``len(coeffs) - 1``."""
    return PowerSeries(coeffs)
