"""Finite and lazily generated infinite binary words.

Words are over the alphabet ``{a, b}`` and positions are counted from 0.
Infinite words are :class:`WordStream` objects that memoize one growable
prefix buffer; :class:`FiniteWord` is the immutable snapshot type and can be
shared freely between threads.
"""

import itertools
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from config import get_config
from exceptions import EmptyPeriodError, ParameterError, ResourceLimitError
from models import MixednessReport

logger = logging.getLogger(__name__)

ALPHABET = 'ab'
_SWAP = str.maketrans('ab', 'ba')
_STRIP_ALPHABET = str.maketrans('', '', ALPHABET)

_budget_lock = threading.Lock()
_index_budget: int = get_config().INDEX_BUDGET


def get_index_budget() -> int:
    """Return the process-wide index budget for lazy generation.

    :return: Maximum number of letters a stream may materialize
    :rtype: int
    """
    return _index_budget


def set_index_budget(budget: int) -> None:
    """Change the process-wide index budget.

    Streams created with an explicit budget keep their own value.

    :param budget: New budget, at least 1
    :type budget: int
    :raises ParameterError: If the budget is not positive
    """
    global _index_budget
    if budget < 1:
        raise ParameterError(f'index budget must be positive, got {budget}')
    with _budget_lock:
        _index_budget = int(budget)
    logger.debug(f'Index budget set to {budget}')


class Letter(str, Enum):
    """A letter of the binary alphabet."""

    A = 'a'
    B = 'b'

    @property
    def reflected(self) -> 'Letter':
        """The other letter."""
        return Letter.B if self is Letter.A else Letter.A

    def __str__(self) -> str:
        return self.value


LetterLike = Union[Letter, str]


def as_letter(x: LetterLike) -> Letter:
    """Coerce ``'a'``/``'b'`` (or a :class:`Letter`) to a :class:`Letter`.

    :raises ParameterError: For anything else
    """
    try:
        return Letter(x)
    except ValueError:
        raise ParameterError(f'not a letter of the alphabet {{a, b}}: {x!r}')


@dataclass(frozen=True)
class FiniteWord:
    """Immutable finite word over ``{a, b}``."""

    letters: str = ''

    def __post_init__(self) -> None:
        if not isinstance(self.letters, str):
            raise ParameterError(f'word letters must be a string, got {type(self.letters).__name__}')
        if self.letters.translate(_STRIP_ALPHABET):
            raise ParameterError(f'word contains letters outside {{a, b}}: {self.letters[:40]!r}')

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter(c) for c in self.letters)

    def __getitem__(self, index: Union[int, slice]) -> Union[Letter, 'FiniteWord']:
        if isinstance(index, slice):
            return FiniteWord(self.letters[index])
        return Letter(self.letters[index])

    def __add__(self, other: Union['FiniteWord', str]) -> 'FiniteWord':
        if isinstance(other, FiniteWord):
            return FiniteWord(self.letters + other.letters)
        if isinstance(other, str):
            return FiniteWord(self.letters + other)
        return NotImplemented

    def __radd__(self, other: str) -> 'FiniteWord':
        if isinstance(other, str):
            return FiniteWord(other + self.letters)
        return NotImplemented

    def __mul__(self, times: int) -> 'FiniteWord':
        return FiniteWord(self.letters * times)

    def __str__(self) -> str:
        return self.letters

    def count(self, x: LetterLike) -> int:
        """Number of occurrences of ``x``."""
        return self.letters.count(as_letter(x).value)

    def is_balanced(self) -> bool:
        """True when the word has as many ``a`` as ``b``."""
        return self.letters.count('a') == self.letters.count('b')

    def reflect(self) -> 'FiniteWord':
        """Letterwise swap ``a <-> b``."""
        return FiniteWord(self.letters.translate(_SWAP))

    def startswith(self, prefix: Union['FiniteWord', str]) -> bool:
        return self.letters.startswith(str(prefix))


WordLike = Union[FiniteWord, str]


def as_finite_word(u: WordLike) -> FiniteWord:
    """Accept a :class:`FiniteWord` or a plain string over ``{a, b}``."""
    return u if isinstance(u, FiniteWord) else FiniteWord(u)


class Provenance(str, Enum):
    """How the letters of a stream are produced."""

    PERIODIC = 'periodic'
    FIXED_POINT = 'substitution-fixed-point'
    RECONSTRUCTED = 'reconstructed'
    OPERATOR_DERIVED = 'operator-derived'
    EXPLICIT_RULE = 'explicit-rule'

    def __str__(self) -> str:
        return self.value


class WordStream:
    """Lazily generated one-sided infinite binary word.

    Subclasses implement :meth:`_produce`, which returns the letters for a
    half-open index range starting exactly at the current memo length. The
    memo is one string that doubles on demand and is only ever appended to,
    so a letter never changes once computed. Growth is serialized by a lock;
    reads of already computed letters need no locking because the memo
    string itself is immutable.
    """

    provenance: Provenance = Provenance.EXPLICIT_RULE

    def __init__(self, descriptor: str, budget: Optional[int] = None) -> None:
        """Initialize an empty memo.

        :param descriptor: Human readable description used in exports and errors
        :type descriptor: str
        :param budget: Per-stream index budget; the global budget when None
        :type budget: Optional[int]
        """
        self.descriptor = descriptor
        self._budget = budget
        self._memo = ''
        self._lock = threading.RLock()
        # per-stream cache of derived series, filled by the position module
        self.derived: Dict[str, object] = {}

    @property
    def budget(self) -> int:
        return self._budget if self._budget is not None else get_index_budget()

    def known_length(self) -> Optional[int]:
        """Length of the determined region, or None for a total stream."""
        return None

    def _produce(self, start: int, stop: int) -> str:
        raise NotImplementedError

    def _ensure(self, length: int) -> str:
        memo = self._memo
        if length <= len(memo):
            return memo
        budget = self.budget
        if length > budget:
            raise ResourceLimitError(
                f'{self.descriptor}: index {length - 1} exceeds the index budget of {budget}'
            )
        with self._lock:
            current = len(self._memo)
            if length <= current:
                return self._memo
            target = min(max(length, 2 * current, 64), budget)
            known = self.known_length()
            if known is not None and length <= known:
                target = min(target, known)
            chunk = self._produce(current, target)
            if len(chunk) != target - current:
                raise RuntimeError(
                    f'{self.descriptor}: produced {len(chunk)} letters for [{current}, {target})'
                )
            self._memo += chunk
            logger.debug(f'Extended {self.descriptor} to {target} letters')
            return self._memo

    def char_at(self, i: int) -> str:
        """Letter at position ``i`` as a one character string."""
        if i < 0:
            raise ParameterError(f'index must be nonnegative, got {i}')
        return self._ensure(i + 1)[i]

    def letter_at(self, i: int) -> Letter:
        """Letter at position ``i`` (0-based)."""
        return Letter(self.char_at(i))

    def text(self, n: int) -> str:
        """The first ``n`` letters as a string."""
        if n < 0:
            raise ParameterError(f'prefix length must be nonnegative, got {n}')
        return self._ensure(n)[:n]

    def segment(self, start: int, stop: int) -> str:
        """Letters ``start`` to ``stop - 1`` as a string."""
        if start < 0 or stop < start:
            raise ParameterError(f'invalid segment [{start}, {stop})')
        return self._ensure(stop)[start:stop]

    def prefix(self, n: int) -> FiniteWord:
        """Frozen snapshot of the first ``n`` letters."""
        return FiniteWord(self.text(n))

    def __getitem__(self, index: Union[int, slice]) -> Union[Letter, FiniteWord]:
        if isinstance(index, slice):
            if index.stop is None:
                raise ParameterError('slicing an infinite word needs an explicit stop')
            start = index.start or 0
            return FiniteWord(self.segment(start, max(start, index.stop))[::index.step or 1])
        return self.letter_at(index)

    def __iter__(self) -> Iterator[Letter]:
        return (self.letter_at(i) for i in itertools.count())

    def export(self, n: int) -> Dict[str, object]:
        """Serialize as ``{provenance, descriptor, length, prefix}``."""
        return {
            'provenance': self.provenance.value,
            'descriptor': self.descriptor,
            'length': n,
            'prefix': self.text(n),
        }

    def __repr__(self) -> str:
        return f'<{type(self).__name__} {self.descriptor}>'


class PeriodicStream(WordStream):
    """The word ``u u u ...``."""

    provenance = Provenance.PERIODIC

    def __init__(self, period: WordLike, budget: Optional[int] = None) -> None:
        period = as_finite_word(period)
        if not period.letters:
            raise EmptyPeriodError('periodic word needs a nonempty period')
        super().__init__(f'periodic:{period}', budget)
        self.period = period

    def char_at(self, i: int) -> str:
        if i < 0:
            raise ParameterError(f'index must be nonnegative, got {i}')
        if i >= self.budget:
            raise ResourceLimitError(
                f'{self.descriptor}: index {i} exceeds the index budget of {self.budget}'
            )
        u = self.period.letters
        return u[i % len(u)]

    def _produce(self, start: int, stop: int) -> str:
        u = self.period.letters
        offset = start % len(u)
        repeats = (offset + stop - start) // len(u) + 1
        return (u * repeats)[offset:offset + stop - start]


class RuleStream(WordStream):
    """Stream whose letter at ``i`` is given by an explicit rule."""

    provenance = Provenance.EXPLICIT_RULE

    def __init__(self, rule: Callable[[int], LetterLike], descriptor: str,
                 budget: Optional[int] = None) -> None:
        super().__init__(descriptor, budget)
        self.rule = rule

    def _produce(self, start: int, stop: int) -> str:
        return ''.join(as_letter(self.rule(i)).value for i in range(start, stop))


class ReflectedStream(WordStream):
    """Letterwise reflection of another stream."""

    provenance = Provenance.OPERATOR_DERIVED

    def __init__(self, source: WordStream) -> None:
        super().__init__(f'{source.descriptor} | reflect', source._budget)
        self.source = source

    def known_length(self) -> Optional[int]:
        return self.source.known_length()

    def _produce(self, start: int, stop: int) -> str:
        return self.source.segment(start, stop).translate(_SWAP)


class CodedSequence:
    """Integer sequence obtained by coding each letter of a word."""

    def __init__(self, word: WordStream, map_a: int, map_b: int) -> None:
        self.word = word
        self.map_a = map_a
        self.map_b = map_b

    def __getitem__(self, i: int) -> int:
        return self.map_a if self.word.char_at(i) == 'a' else self.map_b

    def take(self, n: int) -> List[int]:
        """The first ``n`` values."""
        return [self.map_a if c == 'a' else self.map_b for c in self.word.text(n)]

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in itertools.count())

    def __repr__(self) -> str:
        return f'<CodedSequence {self.word.descriptor} a={self.map_a} b={self.map_b}>'


def letter_at(w: WordStream, i: int) -> Letter:
    """Letter of ``w`` at position ``i``."""
    return w.letter_at(i)


def prefix(w: Union[WordStream, FiniteWord], n: int) -> FiniteWord:
    """First ``n`` letters of ``w``."""
    if isinstance(w, FiniteWord):
        if n > len(w):
            raise ParameterError(f'prefix length {n} exceeds word length {len(w)}')
        return w[:n]
    return w.prefix(n)


def periodic(u: WordLike) -> PeriodicStream:
    """The periodic word ``u^omega``.

    :raises EmptyPeriodError: If ``u`` is empty
    """
    return PeriodicStream(u)


def explicit(rule: Callable[[int], LetterLike], descriptor: str) -> RuleStream:
    """Stream defined letter by letter by ``rule``."""
    return RuleStream(rule, descriptor)


def count(u: WordLike, x: LetterLike) -> int:
    return as_finite_word(u).count(x)


def is_balanced(u: WordLike) -> bool:
    return as_finite_word(u).is_balanced()


def reflect(w: Union[WordStream, FiniteWord, str]) -> Union[WordStream, FiniteWord]:
    """Swap ``a`` and ``b`` letterwise.

    Reflecting a reflected stream returns the original stream object.
    """
    if isinstance(w, ReflectedStream):
        return w.source
    if isinstance(w, WordStream):
        return ReflectedStream(w)
    return as_finite_word(w).reflect()


def dimer(w: WordStream, n: int) -> Tuple[Letter, Letter]:
    """The pair of letters at positions ``2n`` and ``2n + 1``."""
    if n < 0:
        raise ParameterError(f'dimer index must be nonnegative, got {n}')
    pair = w.segment(2 * n, 2 * n + 2)
    return Letter(pair[0]), Letter(pair[1])


def apply_coding(w: WordStream, map_a: int, map_b: int) -> CodedSequence:
    """Code ``a`` as ``map_a`` and ``b`` as ``map_b``."""
    return CodedSequence(w, map_a, map_b)


def mixedness(w: WordStream, horizon: int) -> MixednessReport:
    """Count both letters in the first ``horizon`` letters.

    Membership in the set of words with infinitely many of each letter can
    only be refuted, never confirmed, from a prefix; this is the finite
    diagnostic.
    """
    if horizon < 1:
        raise ParameterError(f'horizon must be at least 1, got {horizon}')
    text = w.text(horizon)
    count_a = text.count('a')
    return MixednessReport(horizon=horizon, count_a=count_a, count_b=horizon - count_a)


def staircase_word() -> RuleStream:
    """The word ``a b a^2 b^2 a^3 b^3 ...``.

    Its relative position function is increasing although ``bb`` occurs.
    """
    def rule(i: int) -> str:
        # block k occupies [k(k-1), k(k+1)): a^k then b^k
        k = 1
        while k * (k + 1) <= i:
            k += 1
        return 'a' if i - k * (k - 1) < k else 'b'

    return RuleStream(rule, 'staircase')
