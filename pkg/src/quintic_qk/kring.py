"""The K-ring K^0(X) = Q[P]/((1-P)^4) of the quintic, in the basis 1, x, x^2, x^3 with x = 1 - P.

The same truncated ring Q[H]/(H^4) serves as the cohomology ring; only the
cohomological pipeline reads the generator as H.

Coefficients are pluggable: anything supporting ``+``, ``-``, ``*`` with
ints (Fraction, :class:`~quintic_qk.qrat.QRat`, flint polynomials, ...).
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

RANK = 4


class KElem:
    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) > RANK:
            raise ValueError(f"KElem takes at most {RANK} coordinates")
        self.coords = coords + (0,) * (RANK - len(coords))

    @classmethod
    def scalar(cls, value) -> "KElem":
        return cls((value,))

    @classmethod
    def basis(cls, i: int, one=1) -> "KElem":
        coords = [0] * RANK
        coords[i] = one
        return cls(coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def map(self, fn) -> "KElem":
        return KElem(fn(c) for c in self.coords)

    def __add__(self, other):
        if not isinstance(other, KElem):
            other = KElem.scalar(other)
        return KElem(a + b for a, b in zip(self.coords, other.coords))

    __radd__ = __add__

    def __neg__(self):
        return KElem(-a for a in self.coords)

    def __sub__(self, other):
        if not isinstance(other, KElem):
            other = KElem.scalar(other)
        return KElem(a - b for a, b in zip(self.coords, other.coords))

    def __rsub__(self, other):
        return KElem.scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, KElem):
            return KElem(a * other for a in self.coords)
        return k_mul(self, other)

    def __rmul__(self, other):
        return KElem(other * a for a in self.coords)

    def __truediv__(self, other):
        if isinstance(other, KElem):
            return k_mul(self, k_inv(other))
        return KElem(a / other for a in self.coords)

    def __pow__(self, n: int):
        if n < 0:
            return k_inv(self) ** (-n)
        result = KElem.scalar(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, KElem):
            try:
                other = KElem.scalar(other)
            except TypeError:
                return NotImplemented
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self):
        return f"KElem({list(self.coords)!r})"


def k_mul(a: KElem, b: KElem) -> KElem:
    """Product in Q[x]/(x^4)."""
    out = []
    for k in range(RANK):
        acc = 0
        for i in range(k + 1):
            ai, bj = a.coords[i], b.coords[k - i]
            if _nonzero(ai) and _nonzero(bj):
                acc = acc + ai * bj
        out.append(acc)
    return KElem(out)


def _nonzero(c) -> bool:
    if isinstance(c, int):
        return c != 0
    is_zero = getattr(c, "is_zero", None)
    if is_zero is not None:
        return not is_zero()
    return c != 0


def k_inv(a: KElem) -> KElem:
    """Inverse of a unit: a0^-1 * sum_k (-n/a0)^k with n the nilpotent part."""
    a0 = a.coords[0]
    if not _nonzero(a0):
        raise ZeroDivisionError("KElem is not a unit: scalar part vanishes")
    inv0 = _scalar_inverse(a0)
    nil = KElem((0,) + a.coords[1:]) * inv0
    neg = -nil
    term = KElem.scalar(1)
    total = KElem.scalar(1)
    for _ in range(1, RANK):
        term = term * neg
        total = total + term
    return total * inv0


def _scalar_inverse(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def _x_power_table(k: int) -> list[list[int]]:
    """Coordinates of (1 - (1-x)^k)^i for i = 0..3, truncated at x^4."""
    psi_x = KElem([0] + [(-1) ** (j + 1) * comb(k, j) for j in range(1, RANK)])
    table, cur = [], KElem.scalar(1)
    for _ in range(RANK):
        table.append(list(cur.coords))
        cur = cur * psi_x
    return table


def adams_k(k: int, a: KElem) -> KElem:
    """Adams operation: the ring endomorphism with P -> P^k, i.e. x -> 1 - (1-x)^k."""
    if k < 1:
        raise ValueError(f"Adams operation needs k >= 1, got {k}")
    out = [0] * RANK
    for i, row in enumerate(_x_power_table(k)):
        ai = a.coords[i]
        if not _nonzero(ai):
            continue
        for j, c in enumerate(row):
            if c:
                out[j] = out[j] + c * ai
    return KElem(out)


def p_power(k: int) -> KElem:
    """P^k = (1-x)^k truncated, for any integer k."""
    if k >= 0:
        return KElem([(-1) ** j * comb(k, j) for j in range(RANK)])
    return k_inv(p_power(-k))


PAIRING_MATRIX = (
    (0, 5, -5, 5),
    (5, -5, 5, 0),
    (-5, 5, 0, 0),
    (5, 0, 0, 0),
)


def k_pairing(a: KElem, b: KElem):
    """The Euler-characteristic pairing chi(X, a b), bilinear in the basis (1-P)^i."""
    total = 0
    for i in range(RANK):
        for j in range(RANK):
            g = PAIRING_MATRIX[i][j]
            if g:
                total = total + g * a.coords[i] * b.coords[j]
    return total


def dual_basis() -> list[KElem]:
    f = Fraction(1, 5)
    return [
        KElem([0, 0, 0, f]),
        KElem([0, 0, f, f]),
        KElem([0, f, f, 0]),
        KElem([f, f, 0, -f]),
    ]
