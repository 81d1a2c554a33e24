"""Rational functions of q over Q, their K-ring valued versions, and local analysis.

``QRat`` is a reduced fraction of flint polynomials with a monic denominator.
A K-ring valued rational function (``KQRat``) is a
:class:`~quintic_qk.kring.KElem` whose coordinates are ``QRat``; denominators
are always scalar.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from flint import fmpq, fmpq_poly

from .exactnum import CycloNum, as_rat, cyclotomic_poly, euler_phi, to_fmpq
from .kring import KElem, RANK

_ONE = fmpq_poly([1])


def _as_poly(value) -> fmpq_poly:
    if isinstance(value, fmpq_poly):
        return value
    if isinstance(value, (list, tuple)):
        return fmpq_poly([to_fmpq(c) for c in value])
    return fmpq_poly([to_fmpq(value)])


class QRat:
    """A rational function num(q)/den(q) in normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, _reduced=False):
        num = _as_poly(num)
        if den is None:
            self.num, self.den = num, _ONE
            return
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")
        if num.is_zero():
            self.num, self.den = num, _ONE
            return
        if not _reduced:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
        lead = den.leading_coefficient()
        if lead != 1:
            num = num / lead
            den = den / lead
        self.num, self.den = num, den

    @classmethod
    def q(cls) -> "QRat":
        return cls(fmpq_poly([0, 1]))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "QRat":
        """coeff * q^k for any integer k."""
        c = to_fmpq(coeff)
        if k >= 0:
            return cls(fmpq_poly([0] * k + [c]))
        return cls(fmpq_poly([c]), fmpq_poly([0] * (-k) + [1]), _reduced=True)

    @classmethod
    def one_minus_q_power(cls, k: int, power: int = 1) -> "QRat":
        """(1 - q^k)^power, power may be negative."""
        base = fmpq_poly([1] + [0] * (k - 1) + [-1])
        if power >= 0:
            return cls(base**power)
        return cls(fmpq_poly([1]), base ** (-power))

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "QRat":
        if isinstance(other, QRat):
            return other
        if isinstance(other, (int, Fraction, fmpq, fmpq_poly)):
            return QRat(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_one():
                return QRat(self.num + other.num)
            return QRat(self.num + other.num, self.den)
        if other.den.is_one():
            return QRat(self.num + other.num * self.den, self.den, _reduced=True)
        if self.den.is_one():
            return QRat(self.num * other.den + other.num, other.den, _reduced=True)
        g = self.den.gcd(other.den)
        if g.is_one():
            return QRat(self.num * other.den + other.num * self.den,
                        self.den * other.den, _reduced=True)
        d1, d2 = self.den // g, other.den // g
        return QRat(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QRat(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, fmpq)):
            if other == 0:
                return QRat()
            return QRat(self.num * to_fmpq(other), self.den, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return QRat()
        if self.den.is_one() and other.den.is_one():
            return QRat(self.num * other.num)
        # cross-cancel before multiplying
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num // g1, other.den // g1) if not g1.is_one() else (self.num, other.den)
        n2, d1 = (other.num // g2, self.den // g2) if not g2.is_one() else (other.num, self.den)
        return QRat(n1 * n2, d1 * d2, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return QRat(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, fmpq)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QRat(self.num / to_fmpq(other), self.den, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return QRat(self.num**n, self.den**n, _reduced=True)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # structure ------------------------------------------------------------

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def q_valuation_of_den(self) -> int:
        """Largest m with q^m dividing the denominator."""
        m = 0
        for c in self.den.coeffs():
            if c != 0:
                break
            m += 1
        return m

    def is_laurent_polynomial(self) -> bool:
        return self.den.degree() == self.q_valuation_of_den()

    def __call__(self, value):
        """Exact evaluation at a rational point."""
        value = to_fmpq(value)
        d = self.den(value)
        if d == 0:
            raise ZeroDivisionError(f"pole at q = {value}")
        return as_rat(self.num(value) / d)

    def subs_power(self, k: int) -> "QRat":
        """The substitution q -> q^k (k >= 1)."""
        if k == 1:
            return self
        return QRat(_inflate(self.num, k), _inflate(self.den, k), _reduced=True)

    def laurent_coeffs(self) -> dict[int, Fraction]:
        """Exponent -> coefficient for a Laurent polynomial."""
        if not self.is_laurent_polynomial():
            raise ValueError(f"{self} is not a Laurent polynomial")
        shift = self.den.degree()
        return {k - shift: as_rat(c) for k, c in enumerate(self.num.coeffs()) if c != 0}

    def __str__(self):
        if self.den.is_one():
            return f"({self.num.str(var='q')})"
        return f"({self.num.str(var='q')})/({self.den.str(var='q')})"

    def __repr__(self):
        return f"QRat{self}"


def _inflate(poly: fmpq_poly, k: int) -> fmpq_poly:
    coeffs = poly.coeffs()
    out = [fmpq(0)] * (k * (len(coeffs) - 1) + 1) if coeffs else []
    for i, c in enumerate(coeffs):
        out[k * i] = c
    return fmpq_poly(out)


def kqrat(coords) -> KElem:
    """A K-ring valued rational function from up to four QRat-coercible coordinates."""
    return KElem(c if isinstance(c, QRat) else QRat(c) for c in coords)


def kq_zero() -> KElem:
    return KElem([QRat()] * RANK)


# polarization -------------------------------------------------------------

def project_scalar(f: QRat) -> tuple[QRat, QRat]:
    """Split f into a Laurent polynomial part and a part regular at 0 vanishing at infinity."""
    if f.is_zero():
        return QRat(), QRat()
    m = f.q_valuation_of_den()
    rest = f.den.right_shift(m) if m else f.den
    if rest.degree() == 0:
        return f, QRat()
    # minus has denominator `rest`; its numerator is num * q^-m modulo rest
    qm = fmpq_poly([0] * m + [1])
    g, s, _ = qm.xgcd(rest)
    assert g.is_one()
    minus_num = (f.num * s) % rest
    minus = QRat(minus_num, rest)
    plus = f - minus
    assert plus.is_laurent_polynomial()
    return plus, minus


def project_polarization(f) -> tuple:
    """Component-wise polarization of a QRat or a K-ring valued rational function."""
    if isinstance(f, QRat):
        return project_scalar(f)
    parts = [project_scalar(c if isinstance(c, QRat) else QRat(c)) for c in f.coords]
    return KElem(p for p, _ in parts), KElem(m for _, m in parts)


# cyclotomic structure of denominators ----------------------------------------

def cyclotomic_factorization(poly: fmpq_poly) -> tuple[dict[int, int], fmpq_poly]:
    """Strip cyclotomic factors: returns {r: multiplicity of Phi_r} and the cofactor."""
    orders: dict[int, int] = {}
    rest = poly
    r = 1
    # phi(r) >= sqrt(r/2), so r beyond 2*deg^2 cannot contribute
    bound = 2 * max(rest.degree(), 1) ** 2 + 2
    while rest.degree() > 0 and r <= bound:
        if euler_phi(r) <= rest.degree():
            phi = cyclotomic_poly(r)
            while rest.degree() >= phi.degree():
                quo, rem = divmod(rest, phi)
                if not rem.is_zero():
                    break
                rest = quo
                orders[r] = orders.get(r, 0) + 1
        r += 1
    return orders, rest


@dataclass(frozen=True)
class CyclotomicSupport:
    orders: dict[int, int]
    component_orders: tuple[dict[int, int], ...]
    remainder: tuple[str, ...] = field(default=())

    @property
    def roots(self) -> set[int]:
        return set(self.orders)

    @property
    def is_cyclotomic(self) -> bool:
        return not self.remainder


def cyclotomic_support(f) -> CyclotomicSupport:
    """Denominator factorization into cyclotomic polynomials, per component and merged."""
    comps = [f] if isinstance(f, QRat) else [c if isinstance(c, QRat) else QRat(c) for c in f.coords]
    merged: dict[int, int] = {}
    per: list[dict[int, int]] = []
    leftovers: list[str] = []
    for c in comps:
        orders, rest = cyclotomic_factorization(c.den)
        per.append(orders)
        for r, e in orders.items():
            merged[r] = max(merged.get(r, 0), e)
        if rest.degree() > 0:
            leftovers.append(rest.str(var="q"))
    return CyclotomicSupport(dict(sorted(merged.items())), tuple(per), tuple(leftovers))


# local expansion at roots of unity -------------------------------------------

@dataclass(frozen=True)
class LocalExpansion:
    """Laurent expansion of a scalar rational function at q = 1/zeta in u = 1 - zeta*q.

    ``coeffs[j]`` is the coefficient of u^j, for -pole_order <= j <= max_order,
    as an element of Q[t]/Phi_r with zeta represented by t.
    """

    root_order: int
    pole_order: int
    max_order: int
    coeffs: dict[int, CycloNum]

    def coefficient(self, j: int) -> CycloNum:
        if j > self.max_order:
            raise IndexError(f"u^{j} beyond the computed order {self.max_order}")
        return self.coeffs.get(j, CycloNum(self.root_order, 0))

    def principal(self, k: int) -> CycloNum:
        """Coefficient of (1 - zeta q)^-k."""
        return self.coefficient(-k)


def _taylor_at_inverse_root(poly: fmpq_poly, r: int, count: int) -> list[CycloNum]:
    """First ``count`` coefficients of poly(zeta^-1 (1 - u)) as a series in u."""
    out = []
    deriv = poly
    for j in range(count):
        if deriv.is_zero():
            out.append(CycloNum(r, 0))
            continue
        # sum_k C(k, j) p_k t^k  ==  t^j * poly^(j)(t) / j!
        shifted = deriv.left_shift(j) / factorial(j)
        val = CycloNum.from_poly(shifted, r, inverse=True)
        out.append(val if j % 2 == 0 else -val)
        deriv = deriv.derivative()
    return out


def _series_div(num: list[CycloNum], den: list[CycloNum], count: int) -> list[CycloNum]:
    inv0 = den[0].inv()
    out: list[CycloNum] = []
    for n in range(count):
        acc = num[n] if n < len(num) else CycloNum(den[0].order, 0)
        for k in range(1, min(n, len(den) - 1) + 1):
            acc = acc - den[k] * out[n - k]
        out.append(acc * inv0)
    return out


def local_expand_scalar(f: QRat, r: int, max_order: int) -> LocalExpansion:
    if r < 1:
        raise ValueError(f"root order must be >= 1, got {r}")
    if f.is_zero():
        return LocalExpansion(r, 0, max_order, {})
    phi = cyclotomic_poly(r)
    m, rest = 0, f.den
    while True:
        quo, rem = divmod(rest, phi)
        if not rem.is_zero():
            break
        rest, m = quo, m + 1
    count = max_order + m + 1
    if count <= 0:
        return LocalExpansion(r, m, max_order, {})
    num = _taylor_at_inverse_root(f.num, r, count)
    den_full = _taylor_at_inverse_root(f.den, r, count + m)
    assert all(c.is_zero() for c in den_full[:m]), "pole order miscount"
    series = _series_div(num, den_full[m:], count)
    coeffs = {j - m: c for j, c in enumerate(series) if not c.is_zero()}
    return LocalExpansion(r, m, max_order, coeffs)


def local_expand(f, r: int, max_order: int):
    """Local expansion at q = 1/zeta for a QRat, or per component for a KQRat."""
    if isinstance(f, QRat):
        return local_expand_scalar(f, r, max_order)
    return [local_expand_scalar(c if isinstance(c, QRat) else QRat(c), r, max_order)
            for c in f.coords]


def substitute_at_inverse_root(poly: fmpq_poly, r: int, count: int) -> list[CycloNum]:
    """poly(zeta^-1 (1-u)) mod u^count by Horner's rule over Q(zeta).

    Independent of the derivative-based route used by :func:`local_expand`.
    """
    zinv = CycloNum.generator(r).inv()
    lin = [zinv, -zinv]  # zeta^-1 - zeta^-1 u
    acc: list[CycloNum] = [CycloNum(r, 0)]
    for c in reversed(poly.coeffs()):
        prod = [CycloNum(r, 0)] * min(len(acc) + 1, count)
        for i, a in enumerate(acc):
            for j, b in enumerate(lin):
                if i + j < count:
                    prod[i + j] = prod[i + j] + a * b
        prod[0] = prod[0] + CycloNum(r, as_rat(c))
        acc = prod
    return acc + [CycloNum(r, 0)] * (count - len(acc))
