"""K-theoretic I-function of the quintic and reconstruction of the small J^K-function.

The small J-function is recovered from

    J^K(0) = sum_d I^K_d Q^d
             * exp( sum_{k>0} sum_i Psi^k(eps_i(Q)) (1 - P^k q^(kd))^i / (k (1 - q^k)) )
             * sum_i r_i(q, Q) (1 - P q^d)^i

where the scalars eps_i(Q) (no constant term) and the polynomials r_i(q, Q)
are fixed degree by degree by requiring that the Laurent-polynomial part of
J^K(0) is exactly 1 - q.  At degree M the unknowns of level M appear only
through sum_i (eps_iM + (1 - q) r_iM(q)) x^i, so once everything else is
assembled they are forced: with f_i the Laurent part of the rest,
eps_iM = -f_i(1) and r_iM = (f_i(1) - f_i(q)) / (1 - q).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from flint import fmpq_poly
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import ReconstructionError, check_degree
from .exactnum import as_rat, to_fmpq
from .kring import RANK, KElem, k_mul
from .novikov import NovSeries
from .qrat import QRat, kq_zero, project_polarization

log = logging.getLogger(__name__)

_ONE_MINUS_Q = fmpq_poly([1, -1])


def _qpow(k: int) -> fmpq_poly:
    return fmpq_poly([0] * k + [1])


def _one_minus_qpow(k: int) -> fmpq_poly:
    return fmpq_poly([1] + [0] * (k - 1) + [-1])


def _poly_kelem(coords) -> KElem:
    return KElem(c if isinstance(c, fmpq_poly) else fmpq_poly([to_fmpq(c)]) for c in coords)


def _as_kqrat(elem: KElem, den: fmpq_poly | None = None) -> KElem:
    """Polynomial-coordinate KElem (optionally over a common denominator) to a KQRat."""
    return KElem(QRat(c, den) for c in elem.coords)


@lru_cache(maxsize=None)
def i_coefficient_k_normalized(d: int) -> KElem:
    """(1/(1-q)) I^K_d = prod_{k<=5d} (1 - P^5 q^k) / prod_{k<=d} (1 - P q^k)^5 as a KQRat."""
    p5 = [1, -5, 10, -10]  # P^5 = (1-x)^5 modulo x^4
    num = _poly_kelem([1])
    for k in range(1, 5 * d + 1):
        qk = _qpow(k)
        num = k_mul(num, KElem([_one_minus_qpow(k)] + [qk * (-c) for c in p5[1:]]))
    den = _poly_kelem([1])
    for k in range(1, d + 1):
        factor = KElem([_one_minus_qpow(k), _qpow(k), fmpq_poly(), fmpq_poly()])
        for _ in range(5):
            den = k_mul(den, factor)
    # 1/den = sum_j (-n)^j b0^(3-j) / b0^4 with b0 the scalar part, n the nilpotent part
    b0 = den[0]
    neg_nil = KElem([fmpq_poly(), -den[1], -den[2], -den[3]])
    inv_num = _poly_kelem([0])
    power = _poly_kelem([1])
    for j in range(RANK):
        inv_num = inv_num + power * b0 ** (RANK - 1 - j)
        power = k_mul(power, neg_nil)
    return _as_kqrat(k_mul(num, inv_num), b0**RANK)


def i_function_k(max_degree: int) -> NovSeries:
    """I^K modulo Q^(max_degree+1), each coefficient a KQRat."""
    check_degree(max_degree, minimum=0)
    factor = QRat(_ONE_MINUS_Q)
    return NovSeries([i_coefficient_k_normalized(d) * factor for d in range(max_degree + 1)],
                     max_degree)


@lru_cache(maxsize=None)
def _exponent_kernel(k: int, d: int, i: int) -> KElem:
    """(1 - P^k q^(kd))^i / (k (1 - q^k)) as a KQRat."""
    pk = [(-1) ** j * comb(k, j) for j in range(RANK)]  # P^k modulo x^4
    qkd = _qpow(k * d)
    base = KElem([fmpq_poly([1]) - qkd] + [qkd * (-c) for c in pk[1:]])
    elem = _poly_kelem([1])
    for _ in range(i):
        elem = k_mul(elem, base)
    return _as_kqrat(elem, _one_minus_qpow(k) * k)


@lru_cache(maxsize=None)
def _r_kernel(d: int, i: int) -> KElem:
    """(1 - P q^d)^i with polynomial coordinates."""
    base = KElem([_one_minus_qpow(d) if d else fmpq_poly(), _qpow(d), fmpq_poly(), fmpq_poly()])
    elem = _poly_kelem([1])
    for _ in range(i):
        elem = k_mul(elem, base)
    return elem


@dataclass
class ReconState:
    """Reconstruction unknowns and the assembled small J-function, exact through Q^max_degree."""

    max_degree: int
    epsilon: list[list[Fraction]]          # epsilon[i][j] = eps_ij, j = 0..D
    rpoly: list[list[fmpq_poly]]           # rpoly[i][j] = r_ij(q)
    jk: list[KElem]                        # jk[M] = Q^M coefficient of J^K(0)/(1-q)
    f_polys: list[list[fmpq_poly]] = field(default_factory=list)  # f_i at each M (M >= 1)
    steps_computed: int = 0

    def epsilon_series(self, i: int) -> NovSeries:
        return NovSeries(self.epsilon[i], self.max_degree)

    def r_series(self, i: int) -> NovSeries:
        return NovSeries([QRat(p) for p in self.rpoly[i]], self.max_degree)

    def jk_series(self) -> NovSeries:
        return NovSeries(self.jk, self.max_degree)

    def truncate(self, D: int) -> "ReconState":
        return ReconState(D, [e[: D + 1] for e in self.epsilon], [r[: D + 1] for r in self.rpoly],
                          self.jk[: D + 1], self.f_polys[:D], 0)

    def copy(self) -> "ReconState":
        return ReconState(self.max_degree, [list(e) for e in self.epsilon], [list(r) for r in self.rpoly],
                          list(self.jk), [list(f) for f in self.f_polys], self.steps_computed)

    def __eq__(self, other):
        if not isinstance(other, ReconState):
            return NotImplemented
        return (self.max_degree == other.max_degree and self.epsilon == other.epsilon
                and self.rpoly == other.rpoly and self.jk == other.jk)


class _Reconstructor:
    """Stateful degree-by-degree solver; exponentials are memoized per I^K degree."""

    def __init__(self, state: ReconState | None = None):
        if state is None:
            state = ReconState(
                0,
                [[Fraction(0)] for _ in range(RANK)],
                [[fmpq_poly([1])]] + [[fmpq_poly()] for _ in range(RANK - 1)],
                [kq_one()],
            )
        self.state = state
        self._exp: dict[int, list[KElem]] = {}
        self._expo: dict[int, list[KElem]] = {}

    # exponential factor ---------------------------------------------------

    def _exponent_coeff(self, d: int, n: int) -> KElem:
        """Q^n coefficient of sum_k sum_i Psi^k(eps_i) (1 - P^k q^(kd))^i / (k (1 - q^k))."""
        total = kq_zero()
        for k in range(1, n + 1):
            if n % k:
                continue
            j = n // k
            for i in range(RANK):
                e = self.state.epsilon[i][j] if j < len(self.state.epsilon[i]) else 0
                if e:
                    total = total + _exponent_kernel(k, d, i) * e
        return total

    def _exp_coeffs(self, d: int, upto: int, final_upto: int) -> list[KElem]:
        """E_d[0..upto] from exp(n E_n = sum_j j X_j E_(n-j)); entries <= final_upto are cached."""
        expo = self._expo.setdefault(d, [kq_zero()])
        cached = self._exp.setdefault(d, [kq_one()])
        out = list(cached)
        for n in range(len(out), upto + 1):
            if n < len(expo):
                xn = expo[n]
            else:
                xn = self._exponent_coeff(d, n)
                if n <= final_upto:
                    expo.append(xn)
            acc = kq_zero()
            for j in range(1, n + 1):
                xj = expo[j] if j < len(expo) else xn
                if not xj.is_zero():
                    acc = acc + k_mul(xj, out[n - j]) * j
            en = acc * Fraction(1, n)
            out.append(en)
            if n <= final_upto and len(cached) == n:
                cached.append(en)
        return out

    # one reconstruction step -------------------------------------------------

    def step(self) -> None:
        st = self.state
        M = st.max_degree + 1
        for i in range(RANK):
            st.epsilon[i].append(Fraction(0))
            st.rpoly[i].append(fmpq_poly())
        jhat = kq_zero()
        for d in range(M + 1):
            exps = self._exp_coeffs(d, M - d, final_upto=M - d if d else M - 1)
            inner = kq_zero()
            for a in range(M - d + 1):
                b = M - d - a
                rb = self._r_coeff(d, b)
                if rb.is_zero() or exps[a].is_zero():
                    continue
                inner = inner + _kq_mul_poly(exps[a], rb)
            if not inner.is_zero():
                jhat = jhat + k_mul(i_coefficient_k_normalized(d), inner)
        one_minus_q = QRat(_ONE_MINUS_Q)
        plus, _ = project_polarization(jhat * one_minus_q)
        fs = []
        for i in range(RANK):
            fi = plus[i] if isinstance(plus[i], QRat) else QRat(plus[i])
            if not fi.is_polynomial():
                raise ReconstructionError(f"f_{i}(q) = {fi} is not a polynomial", degree=M, component=i)
            fpoly = fi.num
            f1 = fpoly(1)
            quo, rem = divmod(fpoly - f1, _ONE_MINUS_Q)
            if not rem.is_zero():
                raise ReconstructionError(f"(1-q) does not divide f_{i}(q) - f_{i}(1)",
                                          degree=M, component=i)
            st.epsilon[i][M] = -as_rat(f1)
            st.rpoly[i][M] = -quo
            fs.append(fpoly)
        if st.epsilon[0][M] != 0:
            raise ReconstructionError(f"eps_0 has nonzero coefficient {st.epsilon[0][M]}", degree=M)
        correction = KElem([QRat(_ONE_MINUS_Q * st.rpoly[i][M] + to_fmpq(st.epsilon[i][M])) for i in range(RANK)])
        full = jhat + correction * one_minus_q.inverse()
        check_plus, _ = project_polarization(full * one_minus_q)
        if not check_plus.is_zero():
            raise ReconstructionError("Laurent part of J^K does not vanish after solving", degree=M)
        # the d = 0 exponential gains the now-known linear term
        self._exp[0] = self._exp[0][:M]
        self._expo[0] = self._expo[0][:M]
        st.jk.append(full)
        st.f_polys.append(fs)
        st.max_degree = M
        st.steps_computed += 1
        log.debug("reconstructed degree %d", M)

    def _r_coeff(self, d: int, b: int) -> KElem:
        total = _poly_kelem([0])
        for i in range(RANK):
            r = self.state.rpoly[i][b]
            if not r.is_zero():
                total = total + _r_kernel(d, i) * r
        return total

    def extend(self, max_degree: int) -> ReconState:
        while self.state.max_degree < max_degree:
            self.step()
        return self.state


def kq_one() -> KElem:
    return KElem([QRat(1), QRat(), QRat(), QRat()])


def _kq_mul_poly(a: KElem, b: KElem) -> KElem:
    """KQRat times a polynomial-coordinate KElem."""
    return k_mul(a, KElem(QRat(c) if isinstance(c, fmpq_poly) else c for c in b.coords))


def reconstruct_jk(max_degree: int, state: ReconState | None = None) -> ReconState:
    """Run (or resume) the reconstruction through Q^max_degree; ``state`` is not modified."""
    D = check_degree(max_degree)
    if state is not None and state.max_degree >= D:
        return state.truncate(D) if state.max_degree > D else state
    return _Reconstructor(state.copy() if state is not None else None).extend(D)


def jk_small(max_degree: int, state: ReconState | None = None) -> NovSeries:
    """J^K(0)/(1-q) modulo Q^(max_degree+1)."""
    return reconstruct_jk(max_degree, state).jk_series()


class QKReconstructor(BaseEstimator):
    """Estimator-style wrapper around :func:`reconstruct_jk`.

    With ``warm_start=True`` a refit at a larger ``max_degree`` only computes
    the missing Novikov degrees.
    """

    def __init__(self, max_degree: int = 4, warm_start: bool = False):
        self.max_degree = max_degree
        self.warm_start = warm_start

    def fit(self, X=None, y=None, state: ReconState | None = None):
        D = check_degree(self.max_degree)
        if state is None and self.warm_start and hasattr(self, "state_"):
            state = self.state_
        before = state.max_degree if state is not None else 0
        self.state_ = reconstruct_jk(D, state)
        self.degrees_computed_ = max(self.state_.max_degree - before, 0)
        self.jk_ = self.state_.jk_series()
        self.epsilon_ = [self.state_.epsilon_series(i) for i in range(RANK)]
        return self

    def transform(self, degrees):
        """Q^M coefficients of J^K(0)/(1-q) for each requested M."""
        check_is_fitted(self, "state_")
        return [self.state_.jk[check_degree(M, "degree", minimum=0)] for M in degrees]
