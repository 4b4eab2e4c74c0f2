"""Tests for reconstructing words from relative position functions."""

import pytest
from hypothesis import given, settings

from exceptions import (
    ParameterError, ReconstructionViolationError, SpecParseError, UndeterminedRegionError,
)
from models import ViolationKind
from operators import locate_threshold
from position import relative_series
from reconstruct import RSpec, linear_realization, reconstruct, relative_of, validate
from words import Provenance, periodic, reflect
from tests.strategies import mixed_words


def test_reconstruct_fibonacci(fib_word):
    """Test that r(n) = n rebuilds the Fibonacci word.

    :param fib_word: Fibonacci word fixture
    :type fib_word: WordStream
    """
    outcome = reconstruct(RSpec.from_formula('n'), 100)
    assert outcome.ok
    length = outcome.determined_length
    assert length >= 100
    assert outcome.word.text(length) == fib_word.text(length)
    assert outcome.word.provenance is Provenance.RECONSTRUCTED
    assert outcome.positions_a[:4] == [0, 2, 3, 5]


def test_reconstruct_constant_one():
    outcome = reconstruct(RSpec.from_formula('1'), 10)
    assert outcome.word.text(outcome.determined_length) == 'ab' * 10


def test_reconstruct_thue_morse(tm_word):
    outcome = reconstruct(RSpec.preset('tm'), 200)
    length = outcome.determined_length
    assert outcome.word.text(length) == tm_word.text(length)


def test_negative_first_value_reflects(fib_word):
    outcome = reconstruct(RSpec.from_formula('-n'), 50)
    length = outcome.determined_length
    assert outcome.word.text(length) == reflect(fib_word).text(length)


def test_violation_reported():
    """Test that (2, 1) fails at n = 2 because the b would not move forward."""
    outcome = reconstruct(RSpec.from_values([2, 1]), 2)
    assert not outcome.ok
    assert outcome.violation.index == 2
    assert outcome.violation.kind is ViolationKind.ALPHA
    assert outcome.violation.clause == 2
    assert outcome.to_dict()['violation']['clause'] == 2


def test_mirrored_violation_kind():
    violation = validate(RSpec.from_values([-2, -1]), 2)
    assert violation.index == 2
    assert violation.kind is ViolationKind.BETA


def test_zero_values():
    assert validate(RSpec.from_values([1, 0]), 2).kind is ViolationKind.ZERO_VALUE
    first = reconstruct(RSpec.from_values([0]), 1)
    assert first.violation.index == 1
    assert first.pairs == 0


def test_second_b_must_move_forward():
    violation = validate(RSpec.from_values([3, 1, 1]), 3)
    assert (violation.index, violation.clause) == (2, 2)


def test_a_at_free_slot_must_move_forward():
    """Test that an a placed far ahead by a negative value blocks the next positive one."""
    violation = validate(RSpec.from_values([1, -3, 2]), 3)
    assert violation.index == 3
    assert violation.kind is ViolationKind.ALPHA
    assert violation.clause == 1


def test_raise_for_violation():
    outcome = reconstruct(RSpec.from_values([2, 1]), 2)
    with pytest.raises(ReconstructionViolationError) as excinfo:
        outcome.raise_for_violation()
    assert excinfo.value.exit_code == 2
    assert reconstruct(RSpec.from_formula('n'), 5).raise_for_violation().ok


def test_increasing_sequences_validate():
    assert validate(RSpec.linear(2, 0), 200) is None
    assert validate(RSpec.from_values([1, 3, 4, 8, 9, 10]), 6) is None
    assert validate(RSpec.from_values([-1, -3, -4, -8]), 4) is None


def test_reconstructed_word_is_partial():
    outcome = reconstruct(RSpec.from_formula('n'), 10)
    with pytest.raises(UndeterminedRegionError):
        outcome.word.text(outcome.determined_length + 1)


@pytest.mark.parametrize('text,expected', [
    ('n', (1, 0, 'n')),
    ('-n', (-1, 0, '-n')),
    ('3', (0, 3, '3')),
    ('2*n+1', (2, 1, '2*n+1')),
    ('2n-3', (2, -3, '2*n-3')),
    (' 4 * n ', (4, 0, '4*n')),
])
def test_formula_parsing(text, expected):
    k, j, description = expected
    spec = RSpec.from_formula(text)
    assert spec(5) == 5 * k + j
    assert spec.description == description


@pytest.mark.parametrize('text', ['', 'x', 'n^2', '2**n'])
def test_formula_parse_errors(text):
    with pytest.raises(SpecParseError):
        RSpec.from_formula(text)


def test_values_have_a_limit():
    spec = RSpec.from_values([1, 2, 3])
    assert spec.limit == 3
    with pytest.raises(ParameterError):
        spec(4)
    with pytest.raises(ParameterError):
        spec(0)
    with pytest.raises(SpecParseError):
        RSpec.from_values([])


def test_values_from_file(tmp_path):
    path = tmp_path / 'r.txt'
    path.write_text('2\n\n1\n')
    spec = RSpec.from_file(path)
    assert spec.values(2) == [2, 1]
    assert spec.description == 'file:r.txt'
    path.write_text('2\nthree\n')
    with pytest.raises(SpecParseError):
        RSpec.from_file(path)
    with pytest.raises(SpecParseError):
        RSpec.from_file(tmp_path / 'missing.txt')


def test_unknown_preset():
    with pytest.raises(SpecParseError):
        RSpec.preset('pd')


@pytest.mark.parametrize('k,j', [(1, 0), (2, 1), (2, -3), (3, 2), (0, 2), (0, -3), (-1, 0), (-2, 5)])
def test_linear_realization(k, j):
    """Test that r(n) = kn + j eventually holds for the realizing word."""
    series = relative_series(linear_realization(k, j))
    report = locate_threshold(series, lambda n: k * n + j, 500)
    assert report.threshold is not None
    assert report.stable


def test_linear_realization_rejects_zero():
    with pytest.raises(ParameterError):
        linear_realization(0, 0)


@given(mixed_words())
@settings(max_examples=60)
def test_roundtrip_periodic_words(u):
    w = periodic(u)
    outcome = reconstruct(relative_of(w), 40)
    assert outcome.ok
    length = outcome.determined_length
    assert outcome.word.text(length) == w.text(length)
