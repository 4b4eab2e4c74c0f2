"""Deletion and prefix operators.

``D_x`` removes the first occurrence of ``x``; ``D = D_a o D_b`` removes the
first ``a`` and the first ``b``; ``Pre_u`` prepends a finite word. Deletion
streams never copy their source: index ``i`` of ``D_x(w)`` reads index ``i``
of ``w`` before the removed position ``q = p_x(1)`` and ``i + 1`` from there
on, which is exactly the shift of the position functions.
"""

import logging
from typing import Callable, Optional

from exceptions import ParameterError
from models import ThresholdReport
from position import p
from words import (
    FiniteWord, Letter, LetterLike, Provenance, WordLike, WordStream, as_finite_word, as_letter,
)

logger = logging.getLogger(__name__)

STABILITY_FACTOR = 10


class DeletionStream(WordStream):
    """``D_x(w)``: the source without its first occurrence of ``x``."""

    provenance = Provenance.OPERATOR_DERIVED

    def __init__(self, source: WordStream, letter: LetterLike) -> None:
        letter = as_letter(letter)
        super().__init__(f'{source.descriptor} | delete_{letter}', source._budget)
        self.source = source
        self.letter = letter
        self._removed_at: Optional[int] = None

    @property
    def removed_at(self) -> int:
        """Position ``p_x(1)`` of the deleted letter in the source.

        :raises OccurrenceNotFoundError: If the source has no ``x`` within budget
        """
        if self._removed_at is None:
            self._removed_at = p(self.source, self.letter, 1)
        return self._removed_at

    def known_length(self) -> Optional[int]:
        known = self.source.known_length()
        return None if known is None else max(known - 1, 0)

    def _produce(self, start: int, stop: int) -> str:
        q = self.removed_at
        if stop <= q:
            return self.source.segment(start, stop)
        if start >= q:
            return self.source.segment(start + 1, stop + 1)
        return self.source.segment(start, q) + self.source.segment(q + 1, stop + 1)


class PrefixedStream(WordStream):
    """``Pre_u(w) = u w``."""

    provenance = Provenance.OPERATOR_DERIVED

    def __init__(self, head: FiniteWord, source: WordStream) -> None:
        super().__init__(f'{source.descriptor} | prefix:{head}', source._budget)
        self.head = head
        self.source = source

    def known_length(self) -> Optional[int]:
        known = self.source.known_length()
        return None if known is None else known + len(self.head)

    def _produce(self, start: int, stop: int) -> str:
        u = self.head.letters
        if stop <= len(u):
            return u[start:stop]
        inner_start = max(start - len(u), 0)
        return u[start:] + self.source.segment(inner_start, stop - len(u))


def delete_first(w: WordStream, x: LetterLike) -> DeletionStream:
    """``D_x(w)``.

    The deleted position is located lazily; asking for any letter raises
    :class:`OccurrenceNotFoundError` when ``x`` does not occur within budget.
    """
    return DeletionStream(w, x)


def delete(w: WordStream) -> DeletionStream:
    """``D(w) = D_a(D_b(w))``; the two deletions commute."""
    return DeletionStream(DeletionStream(w, Letter.B), Letter.A)


def delete_pow(w: WordStream, k: int) -> WordStream:
    """``D^k(w)``, deleting the first ``k`` of each letter.

    :param w: Source word
    :type w: WordStream
    :param k: Number of deletions, at least 0
    :type k: int
    :return: The source itself when ``k`` is 0
    :rtype: WordStream
    """
    if k < 0:
        raise ParameterError(f'deletion power must be nonnegative, got {k}')
    for _ in range(k):
        w = delete(w)
    return w


def prefix_op(u: WordLike, w: WordStream) -> WordStream:
    """``Pre_u(w)``; the empty prefix returns ``w`` unchanged."""
    u = as_finite_word(u)
    if not u.letters:
        return w
    return PrefixedStream(u, w)


def strip_initial_run(w: WordStream) -> WordStream:
    """``D_a^{p_b(1)}(w)``: remove the initial run of ``a``.

    The difference sequence of ``p_b`` is periodic exactly when this word is.
    """
    run = p(w, Letter.B, 1)
    for _ in range(run):
        w = DeletionStream(w, Letter.A)
    return w


def locate_threshold(lhs: Callable[[int], int], rhs: Callable[[int], int],
                     horizon: int) -> ThresholdReport:
    """Find where ``lhs`` and ``rhs`` agree for good, up to ``horizon``.

    The threshold is one past the last disagreement in ``1..horizon``, or None
    when they disagree at ``horizon`` itself. It is reported as stable when
    the agreeing run is at least ten times as long as the threshold.

    :param lhs: Integer series indexed from 1
    :type lhs: Callable[[int], int]
    :param rhs: Integer series indexed from 1
    :type rhs: Callable[[int], int]
    :param horizon: Last index compared
    :type horizon: int
    :return: Threshold report
    :rtype: ThresholdReport
    """
    if horizon < 1:
        raise ParameterError(f'horizon must be at least 1, got {horizon}')
    last_disagreement = 0
    for n in range(1, horizon + 1):
        if lhs(n) != rhs(n):
            last_disagreement = n
    if last_disagreement == horizon:
        logger.debug(f'Series still disagree at the horizon {horizon}')
        return ThresholdReport(threshold=None, checked_until=horizon, stable=False)
    threshold = last_disagreement + 1
    stable = horizon - threshold + 1 >= STABILITY_FACTOR * threshold
    return ThresholdReport(threshold=threshold, checked_until=horizon, stable=stable)
