"""Exact arithmetic in real quadratic fields.

A :class:`QuadraticNumber` is ``x + y*sqrt(D)`` with rational ``x`` and ``y``
and a squarefree integer ``D > 1``. Rationals are the degenerate case: they
are stored with ``y == 0`` and ``D == 1`` so equal values have one
representation. Ordering is decided exactly by sign tests, never by floats.
"""

from fractions import Fraction
from functools import lru_cache
from enum import Enum
from numbers import Rational
from typing import Optional, Tuple, Union

import sympy
from sympy import factorint, integer_nthroot

from config import get_config
from exceptions import ParameterError


@lru_cache(maxsize=1024)
def squarefree_decomposition(n: int) -> Tuple[int, int]:
    """Split ``n > 0`` as ``k*k*d`` with ``d`` squarefree.

    :param n: Positive integer
    :type n: int
    :return: The pair ``(k, d)``
    :rtype: Tuple[int, int]
    """
    k = d = 1
    for prime, exponent in factorint(n).items():
        k *= prime ** (exponent // 2)
        if exponent % 2:
            d *= prime
    return k, d


def rational_sqrt(q: Union[int, Fraction]) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    num, num_exact = integer_nthroot(q.numerator, 2)
    den, den_exact = integer_nthroot(q.denominator, 2)
    if num_exact and den_exact:
        return Fraction(int(num), int(den))
    return None


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


class InfiniteLimit(str, Enum):
    """Tagged infinite value of an extended-real limit."""

    POSITIVE = '+inf'
    NEGATIVE = '-inf'

    def __neg__(self) -> 'InfiniteLimit':
        return InfiniteLimit.NEGATIVE if self is InfiniteLimit.POSITIVE else InfiniteLimit.POSITIVE

    def __str__(self) -> str:
        return self.value

    def to_dict(self) -> str:
        return self.value


Scalar = Union[int, Fraction, 'QuadraticNumber']


class QuadraticNumber:
    """Element ``x + y*sqrt(d)`` of a real quadratic field."""

    __slots__ = ('x', 'y', 'd')

    def __init__(self, x: Union[int, Fraction, str] = 0, y: Union[int, Fraction, str] = 0,
                 d: int = 1) -> None:
        x = Fraction(x)
        y = Fraction(y)
        d = int(d)
        if d < 0:
            raise ParameterError(f'only real quadratic fields are supported, got D={d}')
        if d == 0:
            y = Fraction(0)
        elif y != 0 and d != 1:
            k, d = squarefree_decomposition(d)
            y *= k
        if d == 1:
            x += y
            y = Fraction(0)
        if y == 0:
            d = 1
        self.x = x
        self.y = y
        self.d = d

    @classmethod
    def sqrt_of(cls, value: Union[int, Fraction]) -> 'QuadraticNumber':
        """The nonnegative square root of a nonnegative rational."""
        value = Fraction(value)
        if value < 0:
            raise ParameterError(f'square root of a negative number: {value}')
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, value.denominator), value.numerator * value.denominator)

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def _coerce(self, other: object) -> Optional['QuadraticNumber']:
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return QuadraticNumber(Fraction(other))
        return None

    def _field(self, other: 'QuadraticNumber') -> int:
        if self.d == 1:
            return other.d
        if other.d == 1 or other.d == self.d:
            return self.d
        raise ParameterError(f'cannot combine elements of Q(sqrt({self.d})) and Q(sqrt({other.d}))')

    def __add__(self, other: object) -> 'QuadraticNumber':
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.x + o.x, self.y + o.y, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> 'QuadraticNumber':
        return QuadraticNumber(-self.x, -self.y, self.d)

    def __pos__(self) -> 'QuadraticNumber':
        return self

    def __sub__(self, other: object) -> 'QuadraticNumber':
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> 'QuadraticNumber':
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> 'QuadraticNumber':
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadraticNumber(self.x * o.x + self.y * o.y * d, self.x * o.y + self.y * o.x, d)

    __rmul__ = __mul__

    def conjugate(self) -> 'QuadraticNumber':
        """Galois conjugate ``x - y*sqrt(d)``."""
        return QuadraticNumber(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.y * self.y * self.d

    def trace(self) -> Fraction:
        return 2 * self.x

    def inverse(self) -> 'QuadraticNumber':
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError('division by zero in a quadratic field')
        return QuadraticNumber(self.x / norm, -self.y / norm, self.d)

    def __truediv__(self, other: object) -> 'QuadraticNumber':
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> 'QuadraticNumber':
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> 'QuadraticNumber':
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = QuadraticNumber(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def sign(self) -> int:
        """Exact sign: -1, 0 or 1."""
        sx, sy = _sign(self.x), _sign(self.y)
        if sy == 0:
            return sx
        if sx == 0 or sx == sy:
            return sy
        # opposite signs: compare x^2 against y^2 d (never equal, d is not a square)
        return sx if self.x * self.x > self.y * self.y * self.d else sy

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.x == o.x and self.y == o.y and self.d == o.d

    def __hash__(self) -> int:
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def _compare(self, other: object) -> Optional[int]:
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other: object) -> bool:
        c = self._compare(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other: object) -> bool:
        c = self._compare(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other: object) -> bool:
        c = self._compare(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other: object) -> bool:
        c = self._compare(other)
        return NotImplemented if c is None else c >= 0

    def __abs__(self) -> 'QuadraticNumber':
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def sqrt(self) -> Optional['QuadraticNumber']:
        """Nonnegative square root inside the field, or None if there is none.

        Rationals always have a square root in some quadratic field.
        """
        if self.sign() < 0:
            return None
        if self.is_rational:
            return QuadraticNumber.sqrt_of(self.x)
        # (a + b sqrt d)^2 = self  gives  a^2 = (x +- sqrt(norm)) / 2,  b = y / 2a
        root_norm = rational_sqrt(self.norm())
        if root_norm is None:
            return None
        for a_squared in ((self.x + root_norm) / 2, (self.x - root_norm) / 2):
            a = rational_sqrt(a_squared)
            if not a:
                continue
            candidate = QuadraticNumber(a, self.y / (2 * a), self.d)
            if candidate.sign() < 0:
                candidate = -candidate
            if candidate * candidate == self:
                return candidate
        return None

    def to_sympy(self) -> sympy.Expr:
        x = sympy.Rational(self.x.numerator, self.x.denominator)
        if self.y == 0:
            return x
        y = sympy.Rational(self.y.numerator, self.y.denominator)
        return x + y * sympy.sqrt(self.d)

    def decimal(self, digits: Optional[int] = None) -> str:
        """Decimal rendering with ``digits`` significant digits."""
        return str(sympy.N(self.to_sympy(), digits or get_config().DECIMAL_DIGITS))

    def __float__(self) -> float:
        if self.y == 0:
            return float(self.x)
        return float(self.x) + float(self.y) * float(self.d) ** 0.5

    def to_dict(self, digits: Optional[int] = None) -> dict:
        return {'x': str(self.x), 'y': str(self.y), 'D': self.d, 'decimal': self.decimal(digits)}

    def __repr__(self) -> str:
        return f'QuadraticNumber({self.x}, {self.y}, {self.d})'

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        magnitude = abs(self.y)
        surd = f'sqrt({self.d})' if magnitude == 1 else f'{magnitude}*sqrt({self.d})'
        if self.x == 0:
            return surd if self.y > 0 else f'-{surd}'
        op = '+' if self.y > 0 else '-'
        return f'{self.x} {op} {surd}'


def as_quadratic(value: Scalar) -> QuadraticNumber:
    """Coerce an int, Fraction or QuadraticNumber."""
    if isinstance(value, QuadraticNumber):
        return value
    return QuadraticNumber(Fraction(value))
