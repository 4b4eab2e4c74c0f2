"""Tests for the deletion and prefix operators."""

import pytest
from hypothesis import given, settings

from exceptions import OccurrenceNotFoundError, ParameterError
from operators import (
    STABILITY_FACTOR, delete, delete_first, delete_pow, locate_threshold, prefix_op,
    strip_initial_run,
)
from position import p, position_series, relative_series, smallest_period
from substitution import apply, clone
from words import explicit, is_balanced, periodic, reflect
from tests.strategies import balanced_words, finite_words, infinite_words, mixed_words


def test_delete_first(fib_word):
    """Test removing the first a and the first b of the Fibonacci word."""
    assert delete_first(fib_word, 'a').text(6) == fib_word.text(7)[1:]
    assert delete_first(fib_word, 'b').text(6) == 'aaabab'
    assert delete(fib_word).text(8) == fib_word.text(10)[2:]


def test_deletions_commute(tm_word):
    ab = delete_first(delete_first(tm_word, 'a'), 'b')
    ba = delete_first(delete_first(tm_word, 'b'), 'a')
    assert ab.text(500) == ba.text(500)


def test_deletion_shifts_positions(tm_word):
    q = p(tm_word, 'b', 1)
    deleted = delete_first(tm_word, 'b')
    for n in range(1, 200):
        assert p(deleted, 'b', n) == p(tm_word, 'b', n + 1) - 1
        expected = p(tm_word, 'a', n) - (1 if p(tm_word, 'a', n) > q else 0)
        assert p(deleted, 'a', n) == expected


def test_deleting_a_missing_letter(small_budget):
    all_a = explicit(lambda i: 'a', 'all-a')
    with pytest.raises(OccurrenceNotFoundError):
        delete_first(all_a, 'b').text(5)


def test_delete_pow_bounds(fib_word):
    assert delete_pow(fib_word, 0) is fib_word
    with pytest.raises(ParameterError):
        delete_pow(fib_word, -1)


def test_fibonacci_plus_one(fib_word):
    """Test that D(f) has r(n) = n + 1."""
    assert relative_series(delete(fib_word)).values(2000) == list(range(2, 2002))


def test_fibonacci_plus_k(fib_word):
    for k in range(1, 4):
        series = relative_series(delete_pow(fib_word, k))
        report = locate_threshold(series, lambda n, k=k: n + k, 3000)
        assert report.threshold is not None
        assert report.stable


def test_prefix_op(fib_word):
    assert prefix_op('', fib_word) is fib_word
    assert prefix_op('ab', fib_word).text(5) == 'ababa'
    with pytest.raises(ParameterError):
        prefix_op('abc', fib_word)


def test_prefixed_fibonacci_relative_positions(fib_word):
    """Test r for ab.f and ba.f."""
    assert relative_series(prefix_op('ab', fib_word)).values(6) == [1, 1, 2, 3, 4, 5]
    assert relative_series(prefix_op('ba', fib_word)).values(6) == [-1, 1, 2, 3, 4, 5]


@pytest.mark.parametrize('u', ['ba', 'ab', 'aabb', 'abba', 'bbaaab' + 'ab'])
def test_balanced_prefix_of_fibonacci(fib_word, u):
    """Test r(n) = n - j after a balanced prefix of length 2j."""
    j = len(u) // 2
    series = relative_series(prefix_op(u, fib_word))
    assert [series(n) for n in range(j + 1, 300)] == [n - j for n in range(j + 1, 300)]


def test_prefix_moves_r_monotonically(tm_word):
    r_w = relative_series(tm_word)
    r_a = relative_series(prefix_op('a', tm_word))
    r_b = relative_series(prefix_op('b', tm_word))
    assert all(r_b(n) < r_w(n) < r_a(n) for n in range(1, 300))


def test_strip_initial_run():
    assert strip_initial_run(periodic('aab')).text(6) == 'baabaa'
    assert strip_initial_run(periodic('bba')).text(3) == 'bba'


def _has_short_period(values):
    period = smallest_period(values)
    return period is not None and 5 * period <= len(values)


@settings(max_examples=60)
@given(infinite_words())
def test_b_gaps_periodic_iff_stripped_word_is(w):
    """Test that the gaps between b's repeat exactly when the word after the initial a run does."""
    pb = position_series(w, 'b').values(241)
    gaps = [y - x for x, y in zip(pb, pb[1:])]
    stripped = [int(c == 'b') for c in strip_initial_run(w).text(240)]
    assert _has_short_period(gaps) == _has_short_period(stripped)


def test_b_gaps_of_aperiodic_fixed_points(fib_word, tm_word):
    for w in (fib_word, tm_word):
        pb = position_series(w, 'b').values(241)
        assert not _has_short_period([y - x for x, y in zip(pb, pb[1:])])
        assert not _has_short_period(strip_initial_run(w).text(240))


def test_b_gaps_of_eventually_periodic_word():
    w = prefix_op('abb', periodic('ab'))
    pb = position_series(w, 'b').values(41)
    assert [y - x for x, y in zip(pb, pb[1:])][:4] == [1, 2, 2, 2]
    assert smallest_period([y - x for x, y in zip(pb, pb[1:])]) is None
    assert smallest_period(strip_initial_run(w).text(40)) is None


def test_deletion_commutes_with_reflection(fib_word):
    assert delete(reflect(fib_word)).text(300) == reflect(delete(fib_word)).text(300)


def test_cloning_scales_r(fib_word):
    """Test r at mk + j of clone(k)(f) against k r(m + 1)."""
    for k in (2, 3):
        cloned = relative_series(apply(clone(k), fib_word))
        for m in range(100):
            for j in range(1, k + 1):
                assert cloned(m * k + j) == k * (m + 1)


def test_locate_threshold():
    identical = locate_threshold(lambda n: n, lambda n: n, 100)
    assert identical.threshold == 1
    assert identical.stable
    late = locate_threshold(lambda n: 0 if n < 5 else n, lambda n: n, 100)
    assert late.threshold == 5
    assert late.stable
    assert not locate_threshold(lambda n: 0 if n < 50 else n, lambda n: n, 100).stable
    never = locate_threshold(lambda n: 0, lambda n: n, 10)
    assert never.threshold is None
    assert STABILITY_FACTOR == 10
    with pytest.raises(ParameterError):
        locate_threshold(lambda n: n, lambda n: n, 0)


@given(balanced_words(), mixed_words())
@settings(max_examples=50)
def test_balanced_prefix_is_undone_by_deletion(u, period):
    w = periodic(period)
    k = len(u) // 2
    assert delete_pow(prefix_op(u, w), k).text(60) == w.text(60)


@given(finite_words(min_size=2, max_size=12).filter(lambda u: len(u) % 2 == 0), mixed_words())
@settings(max_examples=50)
def test_unbalanced_prefix_is_not_undone(u, period):
    w = periodic(period)
    restored = delete_pow(prefix_op(u, w), len(u) // 2).text(60) == w.text(60)
    assert restored == is_balanced(u)
