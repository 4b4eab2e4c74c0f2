"""Binary substitutions.

A substitution is determined by the images of ``a`` and ``b``. Its matrix
follows one convention throughout: entry ``(i, j)`` counts letter ``i`` in the
image of letter ``j``, so the columns are the letter counts of the images.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple, Union

from exceptions import MalformedSupertileError, NoFixedPointError, ParameterError
from words import (
    FiniteWord, LetterLike, Provenance, WordLike, WordStream, as_finite_word, as_letter,
    reflect,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubstitutionMatrix:
    """2x2 nonnegative integer matrix ``[[m11, m12], [m21, m22]]``."""

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self) -> None:
        for name in ('m11', 'm12', 'm21', 'm22'):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ParameterError(f'matrix entry {name} must be a nonnegative integer, got {value!r}')

    @classmethod
    def from_rows(cls, rows) -> 'SubstitutionMatrix':
        (m11, m12), (m21, m22) = rows
        return cls(int(m11), int(m12), int(m21), int(m22))

    @property
    def rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (self.m11, self.m12), (self.m21, self.m22)

    def trace(self) -> int:
        return self.m11 + self.m22

    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other: 'SubstitutionMatrix') -> 'SubstitutionMatrix':
        if not isinstance(other, SubstitutionMatrix):
            return NotImplemented
        return SubstitutionMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def __pow__(self, t: int) -> 'SubstitutionMatrix':
        if t < 0:
            raise ParameterError(f'matrix power must be nonnegative, got {t}')
        result = SubstitutionMatrix(1, 0, 0, 1)
        for _ in range(t):
            result = result @ self
        return result

    def is_positive(self) -> bool:
        return min(self.m11, self.m12, self.m21, self.m22) > 0

    def is_primitive(self) -> bool:
        """Some power is entrywise positive.

        For 2x2 matrices the exponent never needs to exceed (2-1)^2 + 1 = 2.
        """
        return self.is_positive() or (self @ self).is_positive()

    def to_dict(self) -> dict:
        return {'rows': [list(self.rows[0]), list(self.rows[1])]}

    def __str__(self) -> str:
        return f'[[{self.m11}, {self.m12}], [{self.m21}, {self.m22}]]'


@dataclass(frozen=True)
class BinarySubstitution:
    """Homomorphism of binary words given by the images of ``a`` and ``b``."""

    image_a: FiniteWord
    image_b: FiniteWord
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'image_a', as_finite_word(self.image_a))
        object.__setattr__(self, 'image_b', as_finite_word(self.image_b))

    @cached_property
    def _table(self) -> dict:
        return str.maketrans({'a': self.image_a.letters, 'b': self.image_b.letters})

    def image(self, x: LetterLike) -> FiniteWord:
        return self.image_a if as_letter(x).value == 'a' else self.image_b

    def apply_text(self, text: str) -> str:
        """Apply to a raw string over ``{a, b}``."""
        return text.translate(self._table)

    def __call__(self, u: Union[WordLike, WordStream]) -> Union[FiniteWord, WordStream]:
        return apply(self, u)

    @property
    def rule(self) -> str:
        return f'a->{self.image_a};b->{self.image_b}'

    def __str__(self) -> str:
        return self.name or self.rule


def apply(sigma: BinarySubstitution, u: Union[WordLike, WordStream]) -> Union[FiniteWord, WordStream]:
    """Apply ``sigma`` letterwise; streams are expanded lazily."""
    if isinstance(u, WordStream):
        return SubstitutedStream(sigma, u)
    return FiniteWord(sigma.apply_text(as_finite_word(u).letters))


def matrix(sigma: BinarySubstitution) -> SubstitutionMatrix:
    a, b = sigma.image_a, sigma.image_b
    return SubstitutionMatrix(a.count('a'), b.count('a'), a.count('b'), b.count('b'))


def is_primitive(m: SubstitutionMatrix) -> bool:
    return m.is_primitive()


def compose(sigma: BinarySubstitution, tau: BinarySubstitution) -> BinarySubstitution:
    """``sigma`` after ``tau``."""
    return BinarySubstitution(
        sigma.apply_text(tau.image_a.letters),
        sigma.apply_text(tau.image_b.letters),
    )


def power(sigma: BinarySubstitution, t: int) -> BinarySubstitution:
    """``t``-fold composition of ``sigma`` with itself."""
    if t < 1:
        raise ParameterError(f'substitution power must be at least 1, got {t}')
    if t == 1:
        return sigma
    image_a, image_b = sigma.image_a.letters, sigma.image_b.letters
    for _ in range(t - 1):
        image_a, image_b = sigma.apply_text(image_a), sigma.apply_text(image_b)
    name = f'{sigma.name}^{t}' if sigma.name else None
    return BinarySubstitution(image_a, image_b, name=name)


def supertile(sigma: BinarySubstitution, n: int, x: LetterLike) -> FiniteWord:
    """The level-``n`` supertile ``sigma^n(x)``."""
    if n < 0:
        raise ParameterError(f'supertile level must be nonnegative, got {n}')
    text = as_letter(x).value
    for _ in range(n):
        text = sigma.apply_text(text)
    return FiniteWord(text)


def conjugate_tilde(sigma: BinarySubstitution) -> BinarySubstitution:
    """``x -> reflect(sigma(reflect(x)))``."""
    return BinarySubstitution(reflect(sigma.image_b), reflect(sigma.image_a))


class FixedPointStream(WordStream):
    """Fixed point of a substitution grown from a seed letter.

    Keeps the invariant ``buffer == sigma(buffer[:consumed])``: each growth
    step applies ``sigma`` only to letters not consumed yet, so the total work
    is linear in the number of letters produced.
    """

    provenance = Provenance.FIXED_POINT

    def __init__(self, sigma: BinarySubstitution, seed: LetterLike,
                 budget: Optional[int] = None) -> None:
        seed = as_letter(seed).value
        image = sigma.image(seed).letters
        if len(image) < 2 or not image.startswith(seed):
            raise NoFixedPointError(
                f'{sigma} has no fixed point seeded by {seed!r}: the image {image!r} '
                f'must start with the seed and have length at least 2'
            )
        super().__init__(f'fixed:{sigma}@{seed}', budget)
        self.substitution = sigma
        self.seed = seed
        self._buffer = image
        self._consumed = 1

    def _produce(self, start: int, stop: int) -> str:
        sigma = self.substitution
        while len(self._buffer) < stop:
            available = len(self._buffer) - self._consumed
            if available <= 0:
                raise NoFixedPointError(
                    f'{sigma} does not expand {self.seed!r}: iteration stalls at '
                    f'{len(self._buffer)} letters'
                )
            take = min(available, max(64, stop - len(self._buffer)))
            chunk = self._buffer[self._consumed:self._consumed + take]
            self._buffer += sigma.apply_text(chunk)
            self._consumed += take
        return self._buffer[start:stop]


class SubstitutedStream(WordStream):
    """``sigma`` applied to an infinite word, expanded on demand."""

    provenance = Provenance.OPERATOR_DERIVED

    def __init__(self, sigma: BinarySubstitution, source: WordStream) -> None:
        super().__init__(f'{source.descriptor} | subst:{sigma}', source._budget)
        self.substitution = sigma
        self.source = source
        self._pending = ''
        self._consumed = 0

    def _produce(self, start: int, stop: int) -> str:
        needed = stop - start
        while len(self._pending) < needed:
            take = max(64, needed - len(self._pending))
            chunk = self.source.segment(self._consumed, self._consumed + take)
            self._pending += self.substitution.apply_text(chunk)
            self._consumed += take
        out, self._pending = self._pending[:needed], self._pending[needed:]
        return out


class SwitchStream(WordStream):
    """Fibonacci switch: re-tile the level-2 supertiles of the input.

    The input is cut into ``aba`` and ``ab`` tiles; every tile starts with
    ``ab``, so ``aba`` is taken exactly when the next five letters read
    ``abaab`` and ``ab`` when they read ``abab``. Tiles are then replaced by
    ``aab`` and ``ab`` respectively.
    """

    provenance = Provenance.OPERATOR_DERIVED
    _LOOKAHEAD = 5

    def __init__(self, source: WordStream) -> None:
        super().__init__(f'{source.descriptor} | switch', source._budget)
        self.source = source
        self._pending = ''
        self._cursor = 0

    def _produce(self, start: int, stop: int) -> str:
        needed = stop - start
        pieces = [self._pending]
        produced = len(self._pending)
        while produced < needed:
            window = max(256, 2 * (needed - produced))
            text = self.source.segment(self._cursor, self._cursor + window + self._LOOKAHEAD)
            i = 0
            while i < window and produced < needed:
                if text.startswith('abaab', i):
                    pieces.append('aab')
                    produced += 3
                    i += 3
                elif text.startswith('abab', i):
                    pieces.append('ab')
                    produced += 2
                    i += 2
                else:
                    raise MalformedSupertileError(
                        f'{self.source.descriptor}: no level-2 supertile at position {self._cursor + i} '
                        f'(next letters {text[i:i + self._LOOKAHEAD]!r})'
                    )
            self._cursor += i
        joined = ''.join(pieces)
        out, self._pending = joined[:needed], joined[needed:]
        return out


def fixed_point(sigma: BinarySubstitution, seed: LetterLike = 'a') -> FixedPointStream:
    """``lim sigma^n(seed)``.

    :raises NoFixedPointError: If ``sigma(seed)`` does not start with ``seed``
        or is shorter than two letters
    """
    return FixedPointStream(sigma, seed)


def fibonacci_switch(f: WordStream) -> SwitchStream:
    return SwitchStream(f)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def identity() -> BinarySubstitution:
    return BinarySubstitution('a', 'b', name='identity')


def fibonacci() -> BinarySubstitution:
    return BinarySubstitution('ab', 'a', name='fibonacci')


def iccanobif() -> BinarySubstitution:
    """``a -> ba, b -> a``; only its square has fixed points."""
    return BinarySubstitution('ba', 'a', name='iccanobif')


def thue_morse() -> BinarySubstitution:
    return BinarySubstitution('ab', 'ba', name='thue_morse')


def clone(k: int) -> BinarySubstitution:
    """Cloning substitution ``a -> a^k, b -> b^k``."""
    _require(isinstance(k, int) and k >= 2, f'clone needs k >= 2, got {k}')
    return BinarySubstitution('a' * k, 'b' * k, name=f'clone:{k}')


def pisa(k: int, l: int, m: int) -> BinarySubstitution:
    """Extended Pisa substitution ``a -> a^k b a^l, b -> a^m``."""
    _require(k >= 1 and m >= 1 and l >= 0, f'pisa needs k >= 1, l >= 0, m >= 1, got ({k}, {l}, {m})')
    return BinarySubstitution('a' * k + 'b' + 'a' * l, 'a' * m, name=f'pisa:{k},{l},{m}')


def period_doubling() -> BinarySubstitution:
    sigma = pisa(1, 0, 2)
    return BinarySubstitution(sigma.image_a, sigma.image_b, name='period_doubling')


def noble_means(k: int) -> BinarySubstitution:
    sigma = pisa(k, 0, 1)
    return BinarySubstitution(sigma.image_a, sigma.image_b, name=f'noble:{k}')


def golden_family(m: int, n: int) -> BinarySubstitution:
    """``a -> a^(m+n) b^m, b -> a^m b^n``, matrix ``[[m+n, m], [m, n]]``."""
    _require(m >= 1 and n >= 0, f'golden family needs m >= 1, n >= 0, got ({m}, {n})')
    return BinarySubstitution('a' * (m + n) + 'b' * m, 'a' * m + 'b' * n, name=f'golden:{m},{n}')


def pisa_is_pisot(k: int, l: int, m: int) -> bool:
    """The Pisot criterion ``m < k + l + 1`` of the Pisa family."""
    pisa(k, l, m)
    return m < k + l + 1


def pisa_pisot_boundary(k: int, l: int, m: int) -> bool:
    """True on ``m == k + l + 1`` where the eigenvalues are ``k + l + 1`` and ``-1``."""
    pisa(k, l, m)
    return m == k + l + 1


def pisa_parameters(sigma: BinarySubstitution) -> Optional[Tuple[int, int, int]]:
    """``(k, l, m)`` when ``sigma`` is ``a -> a^k b a^l, b -> a^m``, else None."""
    image_a, image_b = sigma.image_a.letters, sigma.image_b.letters
    if image_a.count('b') != 1 or not image_b or image_b.count('b'):
        return None
    k = image_a.index('b')
    if k < 1:
        return None
    return k, len(image_a) - k - 1, len(image_b)
