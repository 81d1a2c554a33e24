from fractions import Fraction

import pytest
from flint import fmpq_poly
from sklearn.exceptions import NotFittedError

from quintic_qk.kring import KElem, k_inv, p_power
from quintic_qk.novikov import NovSeries, adams_novikov, series_exp
from quintic_qk.qkside import (
    QKReconstructor,
    i_coefficient_k_normalized,
    i_function_k,
    jk_small,
    reconstruct_jk,
)
from quintic_qk.qrat import QRat, kqrat, project_polarization

Q = QRat.q()
ONE_MINUS_Q = 1 - Q


def qk(k):
    return QRat.monomial(k)


def kq(elem):
    return elem.map(lambda c: c if isinstance(c, QRat) else QRat(c))


def generic_ihat(d):
    """(1/(1-q)) I^K_d assembled factor by factor with the generic K-ring inverse."""
    num = kq(KElem.scalar(1))
    for k in range(1, 5 * d + 1):
        num = num * kq(1 - p_power(5) * qk(k))
    den = kq(KElem.scalar(1))
    for k in range(1, d + 1):
        den = den * kq(1 - p_power(1) * qk(k)) ** 5
    return num * k_inv(den)


@pytest.mark.parametrize("d", [0, 1, 2])
def test_i_function_matches_generic_route(d):
    assert i_coefficient_k_normalized(d) == generic_ihat(d)


def test_i_function_degree_zero():
    ik = i_function_k(1)
    assert ik[0] == kqrat([ONE_MINUS_Q])


@pytest.mark.parametrize("d", [1, 2, 3])
def test_i_function_scalar_part(d):
    scalar = i_function_k(d)[d][0]
    # (1-q) times a q-multinomial coefficient: a polynomial vanishing at q = 1
    assert scalar.is_polynomial()
    assert scalar(1) == 0
    assert scalar(0) == 1


def dual_route_jk(state, D):
    """Rebuild J^K(0)/(1-q) from the solved unknowns with generic series arithmetic."""
    eps = [NovSeries(state.epsilon[i][: D + 1], D) for i in range(4)]
    rser = [NovSeries([QRat(p) for p in state.rpoly[i][: D + 1]], D) for i in range(4)]
    total = NovSeries([kq(KElem.scalar(0))] * (D + 1), D)
    for d in range(D + 1):
        exponent = NovSeries([kq(KElem.scalar(0))] * (D + 1), D)
        for k in range(1, D + 1):
            for i in range(4):
                base = kq(1 - p_power(k) * qk(k * d))
                kernel = base**i * (1 / (k * (1 - qk(k))))
                exponent = exponent + adams_novikov(k, eps[i]).map(lambda e, kern=kernel: kern * e)
        exp_d = series_exp(exponent)
        r_total = NovSeries([kq(KElem.scalar(0))] * (D + 1), D)
        for i in range(4):
            rk = kq(1 - p_power(1) * qk(d)) ** i
            r_total = r_total + rser[i].map(lambda c, rk=rk: rk * c)
        term = exp_d * r_total * generic_ihat(d)
        shifted = NovSeries([kq(KElem.scalar(0))] * d + term.coeffs[: D + 1 - d], D)
        total = total + shifted
    return total


def test_dual_route_reconstruction():
    D = 3
    state = reconstruct_jk(D)
    assert dual_route_jk(state, D) == state.jk_series()


def test_laurent_part_is_normalized(state4):
    for M, coeff in enumerate(state4.jk):
        plus, minus = project_polarization(coeff * ONE_MINUS_Q)
        expected = kqrat([ONE_MINUS_Q]) if M == 0 else kqrat([])
        assert plus == expected


def test_base_cases_and_eps0(state4):
    assert state4.rpoly[0][0] == fmpq_poly([1])
    assert all(state4.rpoly[i][0].is_zero() for i in range(1, 4))
    assert all(state4.epsilon[i][0] == 0 for i in range(4))
    assert all(e == 0 for e in state4.epsilon[0])
    assert state4.epsilon[1][:4] == [0, -770, -124540, -101726160]


def test_degree_one_coefficient(state4):
    c = state4.jk[1]
    assert c[0] == 0 and c[1] == 0
    assert c[2] == 575 / (ONE_MINUS_Q * ONE_MINUS_Q)
    assert c[3] == (1150 - 2300 * Q) / ONE_MINUS_Q**3


def test_resume_matches_fresh(state4):
    two = reconstruct_jk(2)
    resumed = reconstruct_jk(4, two)
    assert resumed == state4
    assert two.max_degree == 2  # input untouched
    assert reconstruct_jk(3, state4) == state4.truncate(3)
    assert jk_small(2, state4) == state4.jk_series().truncate(2)


def test_estimator_warm_start():
    est = QKReconstructor(max_degree=3, warm_start=True).fit()
    assert est.degrees_computed_ == 3
    est.set_params(max_degree=5)
    est.fit()
    assert est.degrees_computed_ == 2
    assert est.state_.max_degree == 5
    cold = QKReconstructor(max_degree=5).fit()
    assert cold.degrees_computed_ == 5
    assert cold.state_ == est.state_
    assert est.transform([1])[0] == est.state_.jk[1]


def test_estimator_params_and_unfitted():
    est = QKReconstructor()
    assert est.get_params() == {"max_degree": 4, "warm_start": False}
    with pytest.raises(NotFittedError):
        est.transform([1])
    with pytest.raises(ValueError):
        QKReconstructor(max_degree=0).fit()
