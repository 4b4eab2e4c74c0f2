"""Tests for exact spectral data, limits and matrix classification."""

from fractions import Fraction

import pytest
from hypothesis import assume, given

from exceptions import NonPrimitiveError, ParameterError, SingularMatrixError
from position import p
from quadratic import InfiniteLimit, QuadraticNumber
from spectral import (
    classify_golden, classify_linear_limit, classify_tau_jm, classify_tau_k, eigen_check,
    freq_from_r_limit, freq_transfer, freq_transfer_inverse, golden_ratio, pf_data, pisa_closed_form,
    pisa_limits, pq_from_r, predicted_limits, tau, tau_jm_equivalence, tau_k,
)
from substitution import (
    SubstitutionMatrix, fibonacci, fixed_point, golden_family, identity, matrix, period_doubling,
    pisa, thue_morse,
)
from tests.strategies import frequencies, small_fractions, substitutions

PHI = golden_ratio()


def test_fibonacci_pf_data():
    """Test that the golden ratio is both eigenvalue and eigenvector coordinate."""
    data = pf_data(fibonacci())
    assert data.lambda_pf == PHI
    assert data.u == PHI
    assert data.conjugate == 1 - PHI


def test_fibonacci_limits():
    limits = predicted_limits(fibonacci())
    assert limits.lim_r_over_n == 1
    assert limits.freq_a == PHI - 1
    assert limits.freq_b == 2 - PHI
    assert limits.lim_pa_over_n == PHI
    assert limits.lim_pb_over_n == PHI + 1


def test_rational_limits():
    """Test Thue-Morse and period doubling, whose eigenvalues are integers."""
    tm = predicted_limits(thue_morse())
    assert tm.lim_r_over_n == 0
    assert tm.freq_a == Fraction(1, 2)
    pd = predicted_limits(period_doubling())
    assert pd.freq_a == Fraction(2, 3)
    assert pd.lim_r_over_n == Fraction(3, 2)
    assert pd.to_dict()['lim_r_over_n'] == '3/2'


def test_non_primitive_rejected():
    with pytest.raises(NonPrimitiveError):
        pf_data(identity())
    with pytest.raises(ParameterError):
        pf_data('ab')


def test_eigen_check():
    assert eigen_check(fibonacci(), PHI)
    assert not eigen_check(fibonacci(), 2)
    assert eigen_check(thue_morse(), 1)


def test_tau_values():
    assert tau(1, 1) == PHI
    assert tau_k(2) == QuadraticNumber(1, 1, 2)
    assert tau(1, 2) == 2
    with pytest.raises(ParameterError):
        tau(-1, 1)


def test_frequency_from_r_limit():
    assert freq_from_r_limit(1) == 2 - PHI
    assert freq_from_r_limit(0) == Fraction(1, 2)
    assert freq_from_r_limit(Fraction(3, 2)) == Fraction(1, 3)
    assert freq_from_r_limit(InfiniteLimit.POSITIVE) == 0
    assert freq_from_r_limit(InfiniteLimit.NEGATIVE) == 1
    assert float(freq_from_r_limit(1.0)) == pytest.approx(0.3819660113)


def test_pq_from_r():
    p_lim, q_lim = pq_from_r(1)
    assert p_lim == PHI + 1
    assert q_lim == PHI
    assert pq_from_r(InfiniteLimit.POSITIVE) == (InfiniteLimit.POSITIVE, 1)
    assert pq_from_r(InfiniteLimit.NEGATIVE) == (1, InfiniteLimit.POSITIVE)


@given(small_fractions())
def test_pq_are_conjugate_exponents(d):
    p_lim, q_lim = pq_from_r(d)
    assert 1 / p_lim + 1 / q_lim == 1
    assert p_lim - q_lim == d


def test_freq_transfer():
    assert freq_transfer(fibonacci(), Fraction(1, 2), Fraction(1, 2)) == (Fraction(2, 3), Fraction(1, 3))
    fixed = (PHI - 1, 2 - PHI)
    assert freq_transfer(fibonacci(), *fixed) == fixed
    with pytest.raises(ParameterError):
        freq_transfer(fibonacci(), 1, 1)
    with pytest.raises(SingularMatrixError):
        freq_transfer_inverse(thue_morse(), Fraction(1, 2), Fraction(1, 2))


@given(substitutions(), frequencies())
def test_freq_transfer_inverse_roundtrip(sigma, freqs):
    assume(matrix(sigma).det() != 0)
    fa, fb = freqs
    assert freq_transfer_inverse(sigma, *freq_transfer(sigma, fa, fb)) == (fa, fb)


def test_golden_classification():
    assert classify_golden(golden_family(2, 1)) == (2, 1)
    assert classify_golden(fibonacci()) == (1, 0)
    assert classify_golden(thue_morse()) is None
    assert classify_tau_k(SubstitutionMatrix(5, 1, 1, 3), 2) == (1, 3)
    with pytest.raises(ParameterError):
        classify_tau_k(fibonacci(), 0)


def test_linear_limit_classification():
    assert classify_linear_limit(fibonacci()) == 1
    assert classify_linear_limit(thue_morse()) == 0
    assert classify_linear_limit(SubstitutionMatrix(0, 1, 1, 1)) == -1
    assert classify_linear_limit(SubstitutionMatrix(7, 2, 2, 1)) == 3
    assert classify_linear_limit(period_doubling()) is None


def test_tau_jm_classification():
    irrational = classify_tau_jm(fibonacci(), 1, 1)
    assert irrational.case == 'a'
    assert irrational.matched
    rational = classify_tau_jm(period_doubling(), 1, 2)
    assert rational.case == 'b'
    assert rational.matched
    assert rational.residual == 0
    assert not classify_tau_jm(thue_morse(), 1, 1).matched


def test_pisa_closed_form_on_the_word():
    """Test p_b(n) = 2 p_a(n) + n + 1 on the fixed point of a -> aab, b -> aa."""
    form = pisa_closed_form(2, 0, 2)
    assert form.coefficients == (2, 1, 1)
    w = fixed_point(pisa(2, 0, 2), 'a')
    for n in range(1, 300):
        assert p(w, 'b', n) == form.pb_from_pa(p(w, 'a', n), n)


@pytest.mark.parametrize('k,l,m', [(1, 0, 1), (2, 0, 2), (1, 1, 3), (1, 0, 2), (3, 1, 2)])
def test_pisa_limits_match_matrix(k, l, m):
    assert pisa_limits(k, l, m) == predicted_limits(pisa(k, l, m))
    assert all(tau_jm_equivalence(pisa(k, l, m), k + l, m).values())


def test_tau_jm_statements_fail_together():
    assert not any(tau_jm_equivalence(fibonacci(), 2, 1).values())
