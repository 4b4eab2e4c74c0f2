"""Recovering a word from its relative position function.

The algorithm places the ``n``-th ``a`` and the ``n``-th ``b`` one pair at a
time. With ``k`` the smallest position not used yet, a positive ``r(n)``
puts the ``a`` at ``k`` and the ``b`` at ``k + r(n)``; a negative one puts
the ``b`` at ``k`` and the ``a`` at ``k - r(n)``. Every placement must keep
both position functions increasing and must not collide with an earlier
letter; the first failure is reported, never repaired.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Tuple, Union

from exceptions import ParameterError, SpecParseError, UndeterminedRegionError
from models import ReconstructionOutcome, Violation, ViolationKind
from operators import delete_pow, prefix_op
from position import relative_series
from substitution import fixed_point, pisa, thue_morse
from words import Provenance, WordStream, periodic, reflect

logger = logging.getLogger(__name__)

_LINEAR_FORM = re.compile(r'^(?:(?P<k>[+-]?\d*)\*?n)?(?P<j>[+-]?\d+)?$')


@dataclass(frozen=True)
class RSpec:
    """A candidate relative position function ``n -> r(n)``, ``n >= 1``.

    ``limit`` is the number of values a finite provider can supply.
    """

    provider: Callable[[int], int] = field(compare=False)
    description: str
    limit: Optional[int] = None

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ParameterError(f'r is indexed from 1, got {n}')
        if self.limit is not None and n > self.limit:
            raise ParameterError(f'{self.description} has only {self.limit} values, asked for r({n})')
        return int(self.provider(n))

    def values(self, n: int) -> List[int]:
        return [self(i) for i in range(1, n + 1)]

    def negated(self) -> 'RSpec':
        provider = self.provider
        return RSpec(lambda n: -provider(n), f'-({self.description})', self.limit)

    @classmethod
    def linear(cls, k: int, j: int) -> 'RSpec':
        return cls(lambda n: k * n + j, _linear_description(k, j))

    @classmethod
    def from_formula(cls, text: str) -> 'RSpec':
        """Parse a closed form ``k*n+j``.

        Accepted shapes include ``n``, ``-n``, ``3``, ``2*n+1``, ``2n-3``.

        :param text: The formula
        :type text: str
        :return: The linear provider
        :rtype: RSpec
        :raises SpecParseError: On anything else
        """
        compact = ''.join(text.split())
        match = _LINEAR_FORM.match(compact)
        if not compact or not match:
            raise SpecParseError(f'not a formula of the form k*n+j: {text!r}')
        k_text, j_text = match.group('k'), match.group('j')
        if k_text is None:
            k = 0
        elif k_text in ('', '+'):
            k = 1
        elif k_text == '-':
            k = -1
        else:
            k = int(k_text)
        j = int(j_text) if j_text else 0
        return cls.linear(k, j)

    @classmethod
    def from_values(cls, values: Iterable[int], description: Optional[str] = None) -> 'RSpec':
        values = [int(v) for v in values]
        if not values:
            raise SpecParseError('an explicit r needs at least one value')
        data = tuple(values)
        if description is None:
            shown = ','.join(str(v) for v in data[:8])
            description = f'values:{shown}' + (',...' if len(data) > 8 else '')
        return cls(lambda n: data[n - 1], description, len(data))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> 'RSpec':
        """Read newline separated integers ``r(1), r(2), ...``; blank lines are skipped."""
        path = Path(path)
        try:
            lines = path.read_text().splitlines()
        except OSError as e:
            raise SpecParseError(f'cannot read r values from {path}: {e}')
        values = []
        for number, line in enumerate(lines, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                values.append(int(line))
            except ValueError:
                raise SpecParseError(f'{path}:{number}: not an integer: {line!r}')
        return cls.from_values(values, f'file:{path.name}')

    @classmethod
    def preset(cls, name: str) -> 'RSpec':
        """Named providers: ``fib`` (``r(n) = n``) and ``tm`` (the +-1 coding of Thue-Morse)."""
        if name in ('fib', 'fibonacci'):
            return cls(lambda n: n, 'fib')
        if name in ('tm', 'thue_morse'):
            tm = fixed_point(thue_morse(), 'a')
            return cls(lambda n: 1 if tm.char_at(n - 1) == 'a' else -1, 'tm')
        raise SpecParseError(f'unknown r preset: {name!r}')


def _linear_description(k: int, j: int) -> str:
    if k == 0:
        return str(j)
    head = 'n' if k == 1 else '-n' if k == -1 else f'{k}*n'
    if j == 0:
        return head
    return f'{head}{j:+d}'


class PartialWord(WordStream):
    """Reconstructed word, known only on its first ``length`` letters.

    Asking for anything beyond raises :class:`UndeterminedRegionError`.
    """

    provenance = Provenance.RECONSTRUCTED

    def __init__(self, letters: str, descriptor: str) -> None:
        super().__init__(descriptor)
        self._letters = letters

    def known_length(self) -> int:
        return len(self._letters)

    def _ensure(self, length: int) -> str:
        if length > len(self._letters):
            raise UndeterminedRegionError(
                f'{self.descriptor}: only the first {len(self._letters)} letters are determined, '
                f'asked for {length}'
            )
        return super()._ensure(length)

    def _produce(self, start: int, stop: int) -> str:
        return self._letters[start:stop]


_PLAIN = ('a', 'b', ViolationKind.ALPHA, ViolationKind.BETA)
_MIRRORED = ('b', 'a', ViolationKind.BETA, ViolationKind.ALPHA)


def _place_pairs(spec: RSpec, n_pairs: int,
                 labels: Tuple[str, str, ViolationKind, ViolationKind] = _PLAIN
                 ) -> Tuple[List[int], List[int], int, Optional[Violation]]:
    """Run the placement loop for a provider with ``r(1) > 0``.

    ``labels`` names the two letters and the two placement conditions, so a
    run on ``-r`` can report in terms of the original word.
    """
    first_name, second_name, forward, backward = labels
    first = spec(1)
    positions_a, positions_b = [0], [first]
    occupied = {0, first}
    free = 1
    while free in occupied:
        free += 1
    for n in range(2, n_pairs + 1):
        value = spec(n)
        if value == 0:
            return positions_a, positions_b, free, Violation(n, ViolationKind.ZERO_VALUE, f'r({n}) = 0')
        if value > 0:
            low, high, kind = free, free + value, forward
            low_series, high_series = positions_a, positions_b
            low_name, high_name = first_name, second_name
        else:
            low, high, kind = free, free - value, backward
            low_series, high_series = positions_b, positions_a
            low_name, high_name = second_name, first_name
        violation = None
        if not low > low_series[-1]:
            violation = Violation(n, kind, f'{low_name} would go to {low}, not after '
                                           f'p_{low_name}({n - 1}) = {low_series[-1]}', 1)
        elif not high > high_series[-1]:
            violation = Violation(n, kind, f'{high_name} would go to {high}, not after '
                                           f'p_{high_name}({n - 1}) = {high_series[-1]}', 2)
        elif high in occupied:
            violation = Violation(n, kind, f'{high_name} would go to {high}, which is already taken', 3)
        if violation is not None:
            return positions_a, positions_b, free, violation
        low_series.append(low)
        high_series.append(high)
        occupied.add(low)
        occupied.add(high)
        while free in occupied:
            free += 1
    return positions_a, positions_b, free, None


def _run(spec: RSpec, n_pairs: int, build_word: bool) -> ReconstructionOutcome:
    if n_pairs < 1:
        raise ParameterError(f'at least one pair is needed, got {n_pairs}')
    first = spec(1)
    if first == 0:
        return ReconstructionOutcome(pairs=0, violation=Violation(1, ViolationKind.ZERO_VALUE, 'r(1) = 0'))
    mirrored = first < 0
    working = spec.negated() if mirrored else spec
    positions_a, positions_b, determined, violation = _place_pairs(
        working, n_pairs, _MIRRORED if mirrored else _PLAIN)
    if mirrored:
        positions_a, positions_b = positions_b, positions_a
    if violation is not None:
        logger.warning(f'Reconstruction of {spec.description} fails at n={violation.index}: {violation.detail}')
        return ReconstructionOutcome(pairs=len(positions_a), positions_a=positions_a,
                                     positions_b=positions_b, violation=violation)
    word = None
    if build_word:
        letters = bytearray(b'b' * determined)
        for position in positions_a:
            if position < determined:
                letters[position] = ord('a')
        word = PartialWord(letters.decode('ascii'), f'reconstructed:{spec.description}#{n_pairs}')
    logger.debug(f'Reconstructed {n_pairs} pairs of {spec.description}, {determined} letters determined')
    return ReconstructionOutcome(pairs=n_pairs, positions_a=positions_a, positions_b=positions_b,
                                 word=word)


def reconstruct(spec: RSpec, n_pairs: int) -> ReconstructionOutcome:
    """Rebuild the word whose first ``n_pairs`` values of ``r`` are given.

    A negative ``r(1)`` is handled by reconstructing from ``-r`` and
    reflecting, so the violation kinds swap accordingly.

    :param spec: Candidate relative position function
    :type spec: RSpec
    :param n_pairs: Number of ``(a, b)`` pairs to place
    :type n_pairs: int
    :return: The partial word on success, the first violation otherwise
    :rtype: ReconstructionOutcome
    """
    return _run(spec, n_pairs, build_word=True)


def validate(spec: RSpec, n: int) -> Optional[Violation]:
    """Dry run of :func:`reconstruct`; the first violation or None."""
    return _run(spec, n, build_word=False).violation


def relative_of(w: WordStream) -> RSpec:
    """The relative position function of ``w`` as a provider."""
    series = relative_series(w)
    return RSpec(series, f'r[{w.descriptor}]')


def linear_realization(k: int, j: int) -> WordStream:
    """A word whose relative position function is ``kn + j`` for all large ``n``.

    For ``k >= 1`` write ``j = qk - s`` with ``0 <= s < k``; the fixed point of
    ``pisa(k - s, s, 1)`` has ``r(n) = kn - s`` exactly, and ``q`` deletions
    (or the prefix ``(ab)^(-q)`` when ``q < 0``) shift it to ``kn + j``.
    Negative slopes are reflections. Slope 0 uses ``(a^j b^j)^omega``.

    :param k: Slope
    :type k: int
    :param j: Intercept
    :type j: int
    :return: The realizing word
    :rtype: WordStream
    :raises ParameterError: For ``k == j == 0``, which no word realizes
    """
    if k == 0:
        if j == 0:
            raise ParameterError('r(n) = 0 is never a relative position function')
        block = periodic('a' * abs(j) + 'b' * abs(j))
        return block if j > 0 else reflect(block)
    if k < 0:
        return reflect(linear_realization(-k, -j))
    q = -((-j) // k)
    s = q * k - j
    base = fixed_point(pisa(k - s, s, 1), 'a')
    if q > 0:
        return delete_pow(base, q)
    if q < 0:
        return prefix_op('ab' * -q, base)
    return base
