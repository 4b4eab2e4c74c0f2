"""Position functions and the series derived from them.

Positions are 0-based; the series ``p_a``, ``p_b``, ``r`` and the difference
sequences take their argument ``n`` starting at 1, so ``p_a(1)`` is the
position of the first ``a``. ``counting(w, x, m)`` counts occurrences among
the first ``m`` letters.
"""

import itertools
import logging
import re
import threading
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Union

from exceptions import OccurrenceNotFoundError, ParameterError, UndeterminedRegionError
from models import PositionValidity, RunReport
from words import Letter, LetterLike, WordStream, as_letter

logger = logging.getLogger(__name__)

IntegerSeries = Callable[[int], int]

_PATTERNS = {'a': re.compile('a'), 'b': re.compile('b')}
_SCAN_CHUNK = 4096


def _check_index(n: int) -> None:
    if n < 1:
        raise ParameterError(f'series index must be at least 1, got {n}')


class PositionSeries:
    """``n -> position of the n-th occurrence of a letter``.

    Positions found so far are cached; the word is scanned forward in
    doubling chunks. Safe to share between threads.
    """

    def __init__(self, word: WordStream, letter: LetterLike) -> None:
        self.word = word
        self.letter = as_letter(letter)
        self._positions: List[int] = []
        self._scanned = 0
        self._lock = threading.Lock()

    def __call__(self, n: int) -> int:
        _check_index(n)
        if n > len(self._positions):
            self._extend(n)
        return self._positions[n - 1]

    def values(self, n: int) -> List[int]:
        """``[p(1), ..., p(n)]``."""
        if n <= 0:
            return []
        self(n)
        return self._positions[:n]

    def _extend(self, n: int) -> None:
        with self._lock:
            pattern = _PATTERNS[self.letter.value]
            while len(self._positions) < n:
                limit = self.word.budget
                known = self.word.known_length()
                if known is not None:
                    limit = min(limit, known)
                if self._scanned >= limit:
                    if known is not None and known < self.word.budget:
                        raise UndeterminedRegionError(
                            f'occurrence {n} of {self.letter} lies beyond the {known} determined '
                            f'letters of {self.word.descriptor}'
                        )
                    raise OccurrenceNotFoundError(
                        f'occurrence {n} of {self.letter} not found in the first {limit} letters of '
                        f'{self.word.descriptor}; the word may contain only finitely many {self.letter}'
                    )
                stop = min(limit, self._scanned + max(_SCAN_CHUNK, self._scanned))
                base = self._scanned
                text = self.word.segment(base, stop)
                self._positions.extend(base + match.start() for match in pattern.finditer(text))
                self._scanned = stop
            logger.debug(f'Scanned {self._scanned} letters of {self.word.descriptor} for {self.letter}')


class RelativeSeries:
    """``r(n) = p_b(n) - p_a(n)``."""

    def __init__(self, word: WordStream) -> None:
        self.word = word
        self.pa = position_series(word, Letter.A)
        self.pb = position_series(word, Letter.B)

    def __call__(self, n: int) -> int:
        return self.pb(n) - self.pa(n)

    def values(self, n: int) -> List[int]:
        return [b - a for a, b in zip(self.pa.values(n), self.pb.values(n))]


_cache_lock = threading.RLock()


def _cached(word: WordStream, key: str, factory: Callable[[], object]) -> object:
    with _cache_lock:
        if key not in word.derived:
            word.derived[key] = factory()
        return word.derived[key]


def position_series(w: WordStream, x: LetterLike) -> PositionSeries:
    """The shared position series of letter ``x`` in ``w``."""
    x = as_letter(x)
    return _cached(w, f'p_{x.value}', lambda: PositionSeries(w, x))


def relative_series(w: WordStream) -> RelativeSeries:
    return _cached(w, 'r', lambda: RelativeSeries(w))


def p(w: WordStream, x: LetterLike, n: int) -> int:
    """Position of the ``n``-th occurrence of ``x`` in ``w``.

    :raises OccurrenceNotFoundError: If the budget runs out first
    """
    return position_series(w, x)(n)


def r(w: WordStream, n: int) -> int:
    return relative_series(w)(n)


def delta(s: IntegerSeries, n: int) -> int:
    """``s(n + 1) - s(n)``."""
    _check_index(n)
    return s(n + 1) - s(n)


def counting(w: WordStream, x: LetterLike, m: int) -> int:
    """Occurrences of ``x`` among the first ``m`` letters."""
    if m < 0:
        raise ParameterError(f'counting length must be nonnegative, got {m}')
    return w.text(m).count(as_letter(x).value)


def runs(w: WordStream, horizon: int) -> RunReport:
    """Longest runs of each letter within the first ``horizon`` letters."""
    if horizon < 1:
        raise ParameterError(f'horizon must be at least 1, got {horizon}')
    text = w.text(horizon)
    longest = {'a': 0, 'b': 0}
    for letter, group in itertools.groupby(text):
        longest[letter] = max(longest[letter], sum(1 for _ in group))
    c = max(longest.values())
    first_b = text.find('b')
    if first_b > 0:
        c = max(c, first_b)
    return RunReport(horizon=horizon, longest_a_run=longest['a'], longest_b_run=longest['b'], c=c)


class RatioKind(str, Enum):
    PA_OVER_N = 'pa_over_n'
    PB_OVER_N = 'pb_over_n'
    R_OVER_N = 'r_over_n'
    FREQ_A = 'freq_a'
    FREQ_B = 'freq_b'


def empirical_ratio(w: WordStream, kind: Union[RatioKind, str], n: int) -> Fraction:
    """Exact value at ``n`` of one of the ratios whose limits the spectral module predicts."""
    _check_index(n)
    kind = RatioKind(kind)
    if kind is RatioKind.PA_OVER_N:
        return Fraction(p(w, 'a', n), n)
    if kind is RatioKind.PB_OVER_N:
        return Fraction(p(w, 'b', n), n)
    if kind is RatioKind.R_OVER_N:
        return Fraction(r(w, n), n)
    return Fraction(counting(w, kind.value[-1], n), n)


def _series_values(series: Union[IntegerSeries, Sequence[int]], horizon: int) -> List[int]:
    if callable(series):
        return [series(n) for n in range(1, horizon + 1)]
    values = list(series)[:horizon]
    if len(values) < horizon:
        raise ParameterError(f'series has {len(values)} values, horizon is {horizon}')
    return values


def _validity(values: List[int], first_ok: bool, horizon: int) -> PositionValidity:
    increasing = all(b > a for a, b in zip(values, values[1:]))
    gap_seen = any(b - a > 1 for a, b in zip(values, values[1:]))
    caveat = None
    if increasing and first_ok and not gap_seen:
        caveat = (f'no difference larger than 1 within the first {horizon} values; '
                  f'a later one cannot be ruled out')
    return PositionValidity(
        valid=increasing and first_ok and gap_seen,
        strictly_increasing=increasing,
        first_position_ok=first_ok,
        gap_seen=gap_seen,
        horizon=horizon,
        caveat=caveat,
    )


def is_valid_pa(series: Union[IntegerSeries, Sequence[int]], horizon: int) -> PositionValidity:
    """Could ``series`` be ``p_a`` of a mixed word starting with a, judging by ``horizon`` values?"""
    if horizon < 2:
        raise ParameterError(f'horizon must be at least 2, got {horizon}')
    values = _series_values(series, horizon)
    return _validity(values, values[0] == 0, horizon)


def is_valid_pb(series: Union[IntegerSeries, Sequence[int]], horizon: int) -> PositionValidity:
    """Could ``series`` be ``p_b`` of a mixed word starting with a, judging by ``horizon`` values?"""
    if horizon < 2:
        raise ParameterError(f'horizon must be at least 2, got {horizon}')
    values = _series_values(series, horizon)
    return _validity(values, values[0] > 0, horizon)


def series_table(w: WordStream, n_max: int) -> List[Dict[str, int]]:
    """Rows ``n, p_a, p_b, r, delta_pa, delta_pb, delta_r`` for ``n = 1..n_max``."""
    if n_max < 1:
        raise ParameterError(f'n_max must be at least 1, got {n_max}')
    pa = position_series(w, 'a').values(n_max + 1)
    pb = position_series(w, 'b').values(n_max + 1)
    rows = []
    for i in range(n_max):
        r_now, r_next = pb[i] - pa[i], pb[i + 1] - pa[i + 1]
        rows.append({
            'n': i + 1,
            'p_a': pa[i],
            'p_b': pb[i],
            'r': r_now,
            'delta_pa': pa[i + 1] - pa[i],
            'delta_pb': pb[i + 1] - pb[i],
            'delta_r': r_next - r_now,
        })
    return rows


def smallest_period(values: Sequence[int]) -> Optional[int]:
    """Smallest ``t`` with ``values[i] == values[i + t]`` throughout, if below ``len(values)``."""
    n = len(values)
    for t in range(1, n):
        if all(values[i] == values[i + t] for i in range(n - t)):
            return t
    return None
