"""Tests for report and outcome models.

This module checks the ``to_dict`` shapes shared by the CLI and the API.
"""

from fractions import Fraction

from models import (
    Certificate, LimitReport, MixednessReport, MixednessVerdict, PisaClosedForm,
    PositionValidity, ReconstructionOutcome, Violation, ViolationKind,
)
from quadratic import InfiniteLimit, QuadraticNumber


def test_certificate_to_dict():
    """Test converting a certificate to a dictionary."""
    certificate = Certificate(theorem_id='thm-fib', passed=True, scale=100, elapsed_seconds=0.12345,
                              details={'ratio': Fraction(1, 3), 'worst': QuadraticNumber(2)})
    assert certificate.to_dict() == {
        'theorem_id': 'thm-fib',
        'passed': True,
        'scale': 100,
        'elapsed_seconds': 0.123,
        'threshold': None,
        'details': {'ratio': '1/3', 'worst': QuadraticNumber(2).to_dict()},
    }
    assert repr(certificate) == '<Certificate thm-fib pass scale=100>'


def test_certificate_without_timings():
    certificate = Certificate(theorem_id='thm-fib', passed=True, scale=100, elapsed_seconds=0.5)
    assert 'elapsed_seconds' not in certificate.to_dict(timings=False)
    assert certificate.to_dict(timings=False)['scale'] == 100


def test_failed_certificate_repr():
    certificate = Certificate(theorem_id='tm-uni', passed=False, scale=20)
    assert 'FAIL' in repr(certificate)
    assert certificate.details == {}


def test_violation_to_dict():
    violation = Violation(3, ViolationKind.BETA, 'a would go to 5', 2)
    assert violation.to_dict() == {'index': 3, 'condition': 'beta', 'clause': 2, 'detail': 'a would go to 5'}


def test_failed_outcome_to_dict():
    outcome = ReconstructionOutcome(pairs=1, violation=Violation(2, ViolationKind.ZERO_VALUE, 'r(2) = 0'))
    assert not outcome.ok
    assert outcome.determined_length == 0
    assert outcome.to_dict()['violation']['condition'] == 'zero-value'
    assert 'word' not in outcome.to_dict()


def test_limit_report_renders_exact_values():
    report = LimitReport(freq_a=Fraction(1, 2), freq_b=Fraction(1, 2), lim_pa_over_n=2,
                         lim_pb_over_n=InfiniteLimit.POSITIVE, lim_r_over_n=QuadraticNumber(0))
    data = report.to_dict()
    assert data['freq_a'] == '1/2'
    assert data['lim_pa_over_n'] == 2
    assert data['lim_pb_over_n'] == '+inf'
    assert data['lim_r_over_n']['x'] == '0'


def test_mixedness_report():
    report = MixednessReport(horizon=4, count_a=0, count_b=4)
    assert report.verdict is MixednessVerdict.ONLY_B_SEEN
    assert report.to_dict()['verdict'] == 'only-b-seen'


def test_position_validity_is_truthy():
    verdict = PositionValidity(valid=True, strictly_increasing=True, first_position_ok=True,
                               gap_seen=True, horizon=10)
    assert verdict
    assert verdict.to_dict()['caveat'] is None


def test_pisa_closed_form():
    form = PisaClosedForm(A=2, B=1, C=1)
    assert form.pb_from_pa(3, 2) == 9
    assert form.r_from_pa(3, 2) == 6
    assert form.r_from_pb(9, 2) == 6
    assert form.to_dict()['pb'] == 'p_b(n) = 2*p_a(n) + 1*n + 1'
