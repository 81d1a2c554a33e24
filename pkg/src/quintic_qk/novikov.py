"""Power series in the Novikov variable Q, truncated at a fixed order.

Coefficients live in any ring whose elements support ``+``, ``-``, ``*``
with each other and with ints/Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial


def _is_zero(c) -> bool:
    is_zero = getattr(c, "is_zero", None)
    if is_zero is not None and not isinstance(c, (int, Fraction)):
        return is_zero()
    return c == 0


class NovSeries:
    """sum_{j=0}^{order} coeffs[j] Q^j, exact modulo Q^(order+1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs = coeffs[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value, order: int) -> "NovSeries":
        return cls([value], order)

    @classmethod
    def monomial(cls, degree: int, value, order: int) -> "NovSeries":
        coeffs = [0] * (order + 1)
        if degree <= order:
            coeffs[degree] = value
        return cls(coeffs, order)

    def __getitem__(self, j):
        return self.coeffs[j]

    def __len__(self):
        return self.order + 1

    def valuation(self) -> int | None:
        for j, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return j
        return None

    def truncate(self, order: int) -> "NovSeries":
        return NovSeries(self.coeffs, min(order, self.order))

    def map(self, fn) -> "NovSeries":
        return NovSeries([fn(c) for c in self.coeffs], self.order)

    def __add__(self, other):
        if not isinstance(other, NovSeries):
            other = NovSeries.constant(other, self.order)
        n = min(self.order, other.order)
        return NovSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return NovSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, NovSeries):
            other = NovSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return NovSeries.constant(other, self.order) - self

    def __mul__(self, other):
        if not isinstance(other, NovSeries):
            return NovSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        a = [(i, c) for i, c in enumerate(self.coeffs[: n + 1]) if not _is_zero(c)]
        b = [(j, c) for j, c in enumerate(other.coeffs[: n + 1]) if not _is_zero(c)]
        out = [0] * (n + 1)
        for i, ca in a:
            for j, cb in b:
                if i + j > n:
                    break
                out[i + j] = out[i + j] + ca * cb
        return NovSeries(out, n)

    def __rmul__(self, other):
        return NovSeries([other * c for c in self.coeffs], self.order)

    def __eq__(self, other):
        if not isinstance(other, NovSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(_is_zero(a - b) for a, b in zip(self.coeffs[: n + 1], other.coeffs))

    __hash__ = None

    def __repr__(self):
        return f"NovSeries({self.coeffs!r}, order={self.order})"


def series_exp(a: NovSeries) -> NovSeries:
    """exp(a) = sum_n a^n / n! for a series without constant term."""
    if not _is_zero(a.coeffs[0]):
        raise ValueError("series_exp needs a series with zero constant term")
    one = 1
    result = NovSeries.constant(one, a.order)
    power = NovSeries.constant(one, a.order)
    for n in range(1, a.order + 1):
        power = power * a
        if power.valuation() is None:
            break
        result = result + power * Fraction(1, factorial(n))
    return result


def adams_novikov(k: int, a: NovSeries, coeff_map=None) -> NovSeries:
    """Q^j -> Q^(kj), optionally transforming each coefficient with ``coeff_map``."""
    if k < 1:
        raise ValueError(f"Adams operation needs k >= 1, got {k}")
    out = [0] * (a.order + 1)
    for j, c in enumerate(a.coeffs):
        if k * j > a.order:
            break
        out[k * j] = coeff_map(c) if coeff_map is not None else c
    return NovSeries(out, a.order)
