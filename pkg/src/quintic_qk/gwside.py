"""Genus-zero Gromov-Witten and Gopakumar-Vafa invariants of the quintic.

The hypergeometric I-function

    I^H = sum_d Q^d z prod_{m=1}^{5d} (5H + m z) / prod_{m=1}^{d} (H + m z)^5

is turned into the small J-function by solving for a mirror map tau(Q) and a
normalization c(Q) degree by degree, so that

    (1/z) J^H = (1/z) sum_d Q^d I^H_d exp(tau(Q) (d + H/z)) c(Q)
              = 1 + sum_d Q^d (alpha_d H^2/z^2 + beta_d H^3/z^3).

GW_d is read off alpha_d; GV_d follows by Moebius inversion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import ReconstructionError, check_degree
from .exactnum import as_rat, divisors, mobius
from .kring import RANK, KElem
from .novikov import NovSeries, series_exp

# (name, H^2 coefficient of (1/z)J^H as a multiple of d*GW_d)
NORMALIZATIONS = (("k-ring pairing (1/5)", Fraction(1, 5)), ("unnormalized", Fraction(1)))
GW_1 = 2875


class CohElem:
    """A Laurent polynomial in z with coefficients in Q[H]/(H^4): {z-exponent: KElem}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def from_h_series(cls, series: KElem, z_shift: int = 0) -> "CohElem":
        """sum_j series[j] H^j z^(z_shift - j)."""
        terms = {}
        for j, c in enumerate(series.coords):
            terms[z_shift - j] = KElem.basis(j, as_rat(c)) if c != 0 else KElem.scalar(0)
        return cls(terms)

    def coefficient(self, h_power: int, z_power: int) -> Fraction:
        elem = self.terms.get(z_power)
        return as_rat(elem[h_power]) if elem is not None else Fraction(0)

    def __add__(self, other):
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return CohElem(terms)

    __radd__ = __add__

    def __neg__(self):
        return CohElem({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CohElem):
            return CohElem({k: v * other for k, v in self.terms.items()})
        terms: dict[int, KElem] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                p = v1 * v2
                terms[k1 + k2] = terms[k1 + k2] + p if k1 + k2 in terms else p
        return CohElem(terms)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, CohElem):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"CohElem({self.terms!r})"


def hypergeometric_factor(d: int) -> int:
    """(5d)! / (d!)^5."""
    return factorial(5 * d) // factorial(d) ** 5


@lru_cache(maxsize=None)
def i_coefficient_h_series(d: int) -> KElem:
    """(1/z) I^H_d as a polynomial in h = H/z modulo h^4."""
    acc = KElem.scalar(Fraction(hypergeometric_factor(d)))
    for m in range(1, 5 * d + 1):
        acc = acc * KElem([1, Fraction(5, m)])
    inv = KElem.scalar(1)
    for m in range(1, d + 1):
        inv = inv * KElem([1, Fraction(1, m)])
    return acc / (inv**5)


def i_function_h(max_degree: int) -> NovSeries:
    """I^H modulo Q^(max_degree+1), coefficients as CohElem."""
    check_degree(max_degree, minimum=0)
    return NovSeries([CohElem.from_h_series(i_coefficient_h_series(d), z_shift=1)
                      for d in range(max_degree + 1)], max_degree)


@dataclass
class CohomologicalReconstruction:
    max_degree: int
    tau: NovSeries
    c: NovSeries
    normalized_j: NovSeries  # (1/z) J^H in h = H/z, KElem coefficients

    @property
    def jh(self) -> NovSeries:
        return self.normalized_j.map(lambda e: CohElem.from_h_series(e, z_shift=1))


def _assemble_degree(M: int, tau: list, c: list) -> KElem:
    """Q^M coefficient of sum_d Q^d (1/z)I_d exp(tau (d + h)) c with the given tau, c."""
    tau_series = NovSeries([Fraction(t) for t in tau], M)
    total = KElem.scalar(0)
    for d in range(M + 1):
        exponent = tau_series * KElem([d, 1])
        exp_d = series_exp(exponent)
        y_d = i_coefficient_h_series(d)
        for a in range(M - d + 1):
            b = M - d - a
            if c[b] == 0:
                continue
            e = exp_d[a]
            if isinstance(e, int):
                e = KElem.scalar(e)
            total = total + y_d * e * c[b]
    return total


def reconstruct_jh(max_degree: int) -> CohomologicalReconstruction:
    """Solve for tau(Q), c(Q) degree by degree (tau from the H^1 condition, then c from H^0)."""
    D = check_degree(max_degree)
    tau = [Fraction(0)] * (D + 1)
    c = [Fraction(1)] + [Fraction(0)] * D
    coeffs = [KElem.scalar(Fraction(1))]
    for M in range(1, D + 1):
        provisional = _assemble_degree(M, tau, c)
        # unknowns of level M enter linearly as c_M + tau_M h
        tau[M] = -as_rat(provisional[1])
        c[M] = -as_rat(provisional[0])
        full = provisional + KElem([c[M], tau[M]])
        if full[0] != 0 or full[1] != 0:
            raise ReconstructionError("H^0/H^1 normalization failed", degree=M)
        coeffs.append(full.map(as_rat))
    return CohomologicalReconstruction(D, NovSeries(tau, D), NovSeries(c, D), NovSeries(coeffs, D))


@dataclass
class GwTable:
    max_degree: int
    gw: dict[int, Fraction]
    gv: dict[int, Fraction] = field(default_factory=dict)
    normalization: str = ""

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "normalization": self.normalization,
            "gw": {str(d): str(v) for d, v in sorted(self.gw.items())},
            "gv": {str(d): str(v) for d, v in sorted(self.gv.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GwTable":
        return cls(
            int(data["max_degree"]),
            {int(k): Fraction(v) for k, v in data["gw"].items()},
            {int(k): Fraction(v) for k, v in data["gv"].items()},
            data.get("normalization", ""),
        )


def gw_invariants(recon: CohomologicalReconstruction) -> GwTable:
    """Read GW_d off the H^2 coefficient, calibrating the normalization on GW_1 = 2875."""
    alpha = {d: as_rat(recon.normalized_j[d][2]) for d in range(1, recon.max_degree + 1)}
    beta = {d: as_rat(recon.normalized_j[d][3]) for d in range(1, recon.max_degree + 1)}
    for name, scale in NORMALIZATIONS:
        if alpha[1] / scale == GW_1:
            break
    else:
        raise ReconstructionError(
            f"calibration failed: H^2 coefficient at Q^1 is {alpha[1]}, "
            f"matching GW_1 = {GW_1} under no known normalization", degree=1)
    gw = {}
    for d in alpha:
        gw[d] = alpha[d] / (scale * d)
        if beta[d] != Fraction(-2, d) * alpha[d]:
            raise ReconstructionError(
                f"H^3/H^2 ratio is {beta[d] / alpha[d]}, expected {Fraction(-2, d)}", degree=d)
    return GwTable(recon.max_degree, gw, normalization=name)


def gv_from_gw(table: GwTable) -> GwTable:
    """GV_d = sum_{e | d} mu(e) / e^3 GW_{d/e}; integrality is asserted."""
    gv = {}
    for d in range(1, table.max_degree + 1):
        val = sum((Fraction(mobius(e), e**3) * table.gw[d // e] for e in divisors(d)), Fraction(0))
        if val.denominator != 1:
            raise ReconstructionError(f"GV_{d} = {val} is not an integer", degree=d)
        gv[d] = val
    return GwTable(table.max_degree, dict(table.gw), gv, table.normalization)


def gw_from_gv(gv: dict[int, Fraction]) -> dict[int, Fraction]:
    """Inverse of :func:`gv_from_gw`: GW_d = sum_{e | d} GV_{d/e} / e^3."""
    return {d: sum((Fraction(1, e**3) * gv[d // e] for e in divisors(d)), Fraction(0)) for d in gv}


def gv_power(gamma: int, n, gv: dict[int, Fraction]) -> Fraction:
    """sum_{d | n} d^gamma GV_d, and 0 when n is not a positive integer."""
    n = as_rat(n)
    if n.denominator != 1 or n <= 0:
        return Fraction(0)
    n = int(n)
    return sum((Fraction(d) ** gamma * gv[d] for d in divisors(n)), Fraction(0))


def compute_gw_table(max_degree: int) -> GwTable:
    return gv_from_gw(gw_invariants(reconstruct_jh(max_degree)))


class GromovWittenSolver(BaseEstimator):
    """Estimator-style front end: ``fit()`` runs the cohomological reconstruction.

    Fitted attributes: ``tau_``, ``c_``, ``jh_`` (normalized, in h = H/z),
    ``table_`` (GW and GV), ``normalization_``.
    """

    def __init__(self, max_degree: int = 4):
        self.max_degree = max_degree

    def fit(self, X=None, y=None):
        D = check_degree(self.max_degree)
        recon = reconstruct_jh(D)
        self.tau_ = recon.tau
        self.c_ = recon.c
        self.jh_ = recon.normalized_j
        self.table_ = gv_from_gw(gw_invariants(recon))
        self.normalization_ = self.table_.normalization
        return self

    def transform(self, degrees):
        """(GW_d, GV_d) pairs for the requested degrees."""
        check_is_fitted(self, "table_")
        out = []
        for d in degrees:
            d = check_degree(d, "degree")
            if d > self.max_degree:
                raise ValueError(f"degree {d} beyond fitted max_degree {self.max_degree}")
            out.append((self.table_.gw[d], self.table_.gv[d]))
        return out
