"""Exact rationals, multiplicative number theory and cyclotomic fields.

Rationals are :class:`fractions.Fraction`; polynomials over Q are
``flint.fmpq_poly`` (coefficients listed from the constant term up).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly

Rat = Fraction


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction or flint ``fmpq`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, fmpq):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def to_fmpq(value) -> fmpq:
    value = as_rat(value)
    return fmpq(value.numerator, value.denominator)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius expects n >= 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(r: int) -> fmpq_poly:
    """The r-th cyclotomic polynomial, as (q^r - 1) / prod_{s | r, s < r} Phi_s."""
    if r < 1:
        raise ValueError(f"cyclotomic_poly expects r >= 1, got {r}")
    poly = fmpq_poly([-1] + [0] * (r - 1) + [1])
    for s in divisors(r)[:-1]:
        poly, rem = divmod(poly, cyclotomic_poly(s))
        assert rem == 0
    return poly


def fold_mod_root(poly: fmpq_poly, r: int, inverse: bool = False) -> fmpq_poly:
    """Reduce ``poly(t)`` (or ``poly(1/t)``) modulo ``t**r - 1``.

    Valid as a first step before reducing modulo Phi_r, since Phi_r divides t^r - 1.
    """
    folded = [fmpq(0)] * r
    for k, c in enumerate(poly.coeffs()):
        if c != 0:
            folded[(-k if inverse else k) % r] += c
    return fmpq_poly(folded)


class CycloNum:
    """An element of the cyclotomic field Q[t]/Phi_r(t), with t a primitive r-th root of unity.

    Stored densely in the power basis 1, t, ..., t^(phi(r)-1).
    """

    __slots__ = ("order", "_poly")

    def __init__(self, order: int, value=0):
        self.order = order
        modulus = cyclotomic_poly(order)
        if isinstance(value, fmpq_poly):
            poly = value
        elif isinstance(value, (list, tuple)):
            poly = fmpq_poly([to_fmpq(c) for c in value])
        else:
            poly = fmpq_poly([to_fmpq(value)])
        if poly.degree() >= modulus.degree():
            poly = poly % modulus
        self._poly = poly

    @classmethod
    def generator(cls, order: int) -> "CycloNum":
        if order == 1:
            return cls(1, 1)
        return cls(order, fmpq_poly([0, 1]))

    @classmethod
    def from_poly(cls, poly: fmpq_poly, order: int, inverse: bool = False) -> "CycloNum":
        """Evaluate a rational polynomial at t (or at 1/t)."""
        return cls(order, fold_mod_root(poly, order, inverse=inverse))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        n = euler_phi(self.order)
        cs = [as_rat(c) for c in self._poly.coeffs()]
        return tuple(cs + [Fraction(0)] * (n - len(cs)))

    def is_rational(self) -> bool:
        return self._poly.degree() <= 0

    def to_rat(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return as_rat(self._poly[0])

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.order != self.order:
                raise ValueError(f"order mismatch: {self.order} vs {other.order}")
            return other
        return CycloNum(self.order, other)

    def __add__(self, other):
        return CycloNum(self.order, self._poly + self._coerce(other)._poly)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.order, -self._poly)

    def __sub__(self, other):
        return CycloNum(self.order, self._poly - self._coerce(other)._poly)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return CycloNum(self.order, self._poly * self._coerce(other)._poly)

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        """Inverse via the extended Euclidean algorithm against Phi_r."""
        if self._poly.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        g, s, _ = self._poly.xgcd(cyclotomic_poly(self.order))
        # Phi_r is irreducible, so g is a nonzero constant
        assert g.degree() == 0
        return CycloNum(self.order, s / g[0])

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = CycloNum(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.order == other.order and self._poly == other._poly
        try:
            return self._poly == fmpq_poly([to_fmpq(other)])
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coords))

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def __repr__(self):
        return f"CycloNum({self.order}, {[str(c) for c in self.coords]})"
