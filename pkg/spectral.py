"""Exact spectral data of 2x2 substitution matrices.

Everything here is computed in a real quadratic field. For a primitive
matrix ``M = [[A, B], [C, D]]`` the Perron-Frobenius eigenvector is
normalized as ``[u 1]^T``; the second row gives ``u = (lambda - D) / C``
and ``C > 0`` is guaranteed by primitivity. Letter frequencies and the
slopes of the position functions are rational functions of ``u``.
"""

import logging
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

import sympy

from config import get_config
from exceptions import (
    DegenerateNormalizerError, NonPrimitiveError, ParameterError, SingularMatrixError,
)
from models import LimitReport, PFData, PisaClosedForm, TauJmVerdict
from quadratic import InfiniteLimit, QuadraticNumber, Scalar, as_quadratic, rational_sqrt
from substitution import BinarySubstitution, SubstitutionMatrix, matrix, pisa

logger = logging.getLogger(__name__)

MatrixLike = Union[SubstitutionMatrix, BinarySubstitution]
ExtendedScalar = Union[Scalar, InfiniteLimit]


def _as_matrix(m: MatrixLike) -> SubstitutionMatrix:
    if isinstance(m, BinarySubstitution):
        return matrix(m)
    if isinstance(m, SubstitutionMatrix):
        return m
    raise ParameterError(f'expected a substitution or a substitution matrix, got {type(m).__name__}')


def _require_primitive(m: SubstitutionMatrix) -> None:
    if not m.is_primitive():
        raise NonPrimitiveError(f'matrix {m} is not primitive')


def tau(j: int, m: int) -> QuadraticNumber:
    """``(j + sqrt(j^2 + 4m)) / 2``, the positive root of ``X^2 - jX - m``."""
    if j < 0 or m < 1:
        raise ParameterError(f'tau needs j >= 0 and m >= 1, got ({j}, {m})')
    return QuadraticNumber(Fraction(j, 2), Fraction(1, 2), j * j + 4 * m)


def tau_k(k: int) -> QuadraticNumber:
    """The metallic mean ``tau(k, 1)``; ``tau_k(1)`` is the golden ratio."""
    return tau(k, 1)


def golden_ratio() -> QuadraticNumber:
    return tau(1, 1)


def pf_data(m: MatrixLike) -> PFData:
    """Perron-Frobenius eigenvalue, eigenvector coordinate and conjugate.

    :param m: Primitive substitution matrix (or a substitution)
    :type m: MatrixLike
    :return: Exact eigen-data
    :rtype: PFData
    :raises NonPrimitiveError: If no power of ``m`` is positive
    """
    m = _as_matrix(m)
    _require_primitive(m)
    tr, det = m.trace(), m.det()
    lambda_pf = QuadraticNumber(Fraction(tr, 2), Fraction(1, 2), tr * tr - 4 * det)
    u = (lambda_pf - m.m22) / m.m21
    return PFData(lambda_pf=lambda_pf, u=u, conjugate=tr - lambda_pf)


def _limits_from_u(u: QuadraticNumber) -> LimitReport:
    return LimitReport(
        freq_a=u / (u + 1),
        freq_b=1 / (u + 1),
        lim_pa_over_n=1 + 1 / u,
        lim_pb_over_n=u + 1,
        lim_r_over_n=(u * u - 1) / u,
    )


def predicted_limits(m: MatrixLike) -> LimitReport:
    """Limiting frequencies and slopes of ``p_a``, ``p_b`` and ``r``."""
    return _limits_from_u(pf_data(m).u)


def eigen_check(m: MatrixLike, v: Scalar) -> bool:
    """Is ``[v 1]^T`` a right eigenvector of ``m``? Decided exactly."""
    m = _as_matrix(m)
    v = as_quadratic(v)
    eigenvalue = m.m21 * v + m.m22
    return m.m11 * v + m.m12 == v * eigenvalue


def _numeric(expr: sympy.Expr) -> sympy.Float:
    return sympy.N(expr, get_config().DECIMAL_DIGITS)


def freq_from_r_limit(rlim: ExtendedScalar) -> Union[QuadraticNumber, sympy.Float]:
    """Frequency of ``b`` from the limit ``d`` of ``r(n)/n``.

    ``+inf`` gives 0, ``-inf`` gives 1, ``0`` gives 1/2, otherwise
    ``(2 + d - sqrt(4 + d^2)) / (2d)``. The result is exact whenever the
    square root lives in the field of ``d``; other inputs (floats, sympy
    expressions) are evaluated numerically at the configured precision.
    """
    if isinstance(rlim, InfiniteLimit):
        return QuadraticNumber(0 if rlim is InfiniteLimit.POSITIVE else 1)
    if isinstance(rlim, (int, Fraction, QuadraticNumber)):
        d = as_quadratic(rlim)
        if not d:
            return QuadraticNumber(Fraction(1, 2))
        root = (4 + d * d).sqrt()
        if root is not None:
            return (2 + d - root) / (2 * d)
        rlim = d.to_sympy()
    d = sympy.sympify(rlim)
    if d == 0:
        return _numeric(sympy.Rational(1, 2))
    return _numeric((2 + d - sympy.sqrt(4 + d ** 2)) / (2 * d))


def pq_from_r(rlim: ExtendedScalar) -> Tuple[ExtendedScalar, ExtendedScalar]:
    """``p = (2 + d + sqrt(4 + d^2)) / 2`` and ``q = (2 - d + sqrt(4 + d^2)) / 2``.

    These are the limits of ``p_b(n)/n`` and ``p_a(n)/n``; ``1/p + 1/q = 1``
    and ``p - q = d``.
    """
    if rlim is InfiniteLimit.POSITIVE:
        return InfiniteLimit.POSITIVE, QuadraticNumber(1)
    if rlim is InfiniteLimit.NEGATIVE:
        return QuadraticNumber(1), InfiniteLimit.POSITIVE
    d = as_quadratic(rlim)
    root = (4 + d * d).sqrt()
    if root is None:
        raise ParameterError(f'sqrt(4 + d^2) is not representable for d = {d}')
    return (2 + d + root) / 2, (2 - d + root) / 2


def _check_frequencies(fa: QuadraticNumber, fb: QuadraticNumber) -> None:
    if fa + fb != 1 or fa.sign() < 0 or fb.sign() < 0:
        raise ParameterError(f'frequencies must be nonnegative and sum to 1, got ({fa}, {fb})')


def freq_transfer(sigma: BinarySubstitution, fa: Scalar,
                  fb: Scalar) -> Tuple[QuadraticNumber, QuadraticNumber]:
    """Letter frequencies of ``sigma(w)`` from those of ``w``.

    :param sigma: The substitution applied
    :type sigma: BinarySubstitution
    :param fa: Frequency of ``a`` in ``w``
    :type fa: Scalar
    :param fb: Frequency of ``b`` in ``w``
    :type fb: Scalar
    :return: Frequencies of ``a`` and ``b`` in ``sigma(w)``
    :rtype: Tuple[QuadraticNumber, QuadraticNumber]
    :raises DegenerateNormalizerError: If the mean image length vanishes
    """
    fa, fb = as_quadratic(fa), as_quadratic(fb)
    _check_frequencies(fa, fb)
    m = matrix(sigma)
    normalizer = len(sigma.image_a) * fa + len(sigma.image_b) * fb
    if not normalizer:
        raise DegenerateNormalizerError(f'{sigma} maps the word to a word of density zero')
    return (m.m11 * fa + m.m12 * fb) / normalizer, (m.m21 * fa + m.m22 * fb) / normalizer


def freq_transfer_inverse(sigma: BinarySubstitution, fa: Scalar,
                          fb: Scalar) -> Tuple[QuadraticNumber, QuadraticNumber]:
    """Recover the frequencies of ``w`` from those of ``sigma(w)``.

    :raises SingularMatrixError: If the matrix of ``sigma`` is not invertible
    """
    fa, fb = as_quadratic(fa), as_quadratic(fb)
    _check_frequencies(fa, fb)
    m = matrix(sigma)
    det = m.det()
    if det == 0:
        raise SingularMatrixError(f'matrix {m} of {sigma} is singular')
    x = (m.m22 * fa - m.m12 * fb) / det
    y = (m.m11 * fb - m.m21 * fa) / det
    normalizer = x + y
    if not normalizer:
        raise DegenerateNormalizerError(f'{sigma}: the inverse normalizer vanishes at ({fa}, {fb})')
    return x / normalizer, y / normalizer


def classify_golden(m: MatrixLike) -> Optional[Tuple[int, int]]:
    """``(m, n)`` when the matrix is ``[[m + n, m], [m, n]]``."""
    return classify_tau_k(m, 1)


def classify_tau_k(m: MatrixLike, k: int) -> Optional[Tuple[int, int]]:
    """``(m, n)`` when the matrix is ``[[km + n, m], [m, n]]``.

    Such matrices have ``[tau_k 1]^T`` as an eigenvector, with eigenvalue
    ``n + m*tau_k``.
    """
    if k < 1:
        raise ParameterError(f'k must be at least 1, got {k}')
    m = _as_matrix(m)
    if m.m12 == m.m21 and m.m11 == k * m.m12 + m.m22:
        return m.m12, m.m22
    return None


def classify_tau_jm(m: MatrixLike, j: int, mm: int) -> TauJmVerdict:
    """Does ``[tau(j, mm) 1]^T`` have the matrix shape that makes it an eigenvector?

    When ``j^2 + 4mm`` is not a square the shape is ``[[t + sj, mm*s], [s, t]]``
    (case ``'a'``). When it is the square of ``q``, ``tau`` is rational and the
    condition is the linear relation ``C(j+q)^2 + 2(D-A)(j+q) - 4B = 0``
    (case ``'b'``), reported with its residual.
    """
    if j < 1 or mm < 1:
        raise ParameterError(f'j and m must be at least 1, got ({j}, {mm})')
    m = _as_matrix(m)
    discriminant = j * j + 4 * mm
    root = rational_sqrt(discriminant)
    if root is None:
        s, t = m.m21, m.m22
        matched = m.m12 == mm * s and m.m11 == t + s * j
        return TauJmVerdict(case='a', matched=matched, s=s, t=t)
    q = int(root)
    residual = m.m21 * (j + q) ** 2 + 2 * (m.m22 - m.m11) * (j + q) - 4 * m.m12
    return TauJmVerdict(case='b', matched=residual == 0, residual=residual)


def classify_linear_limit(m: MatrixLike) -> Optional[int]:
    """Integer slope ``k`` with ``r(n)/n -> k`` read off the matrix shape.

    ``+k`` for ``[[km + n, m], [m, n]]``, ``-k`` for ``[[n, m], [m, km + n]]``
    (``k >= 1``), ``0`` for equal row sums, None otherwise.

    :raises NonPrimitiveError: If the matrix is not primitive
    """
    m = _as_matrix(m)
    _require_primitive(m)
    if m.m12 == m.m21 and m.m12 >= 1:
        difference = m.m11 - m.m22
        if difference != 0 and difference % m.m12 == 0:
            return difference // m.m12
    if m.m11 + m.m12 == m.m21 + m.m22:
        return 0
    return None


def pisa_closed_form(k: int, l: int, m: int) -> PisaClosedForm:
    """``p_b(n) = m p_a(n) + (k + l + 1 - m) n + (m - l - 1)`` for the Pisa fixed point."""
    pisa(k, l, m)
    return PisaClosedForm(A=m, B=k + l + 1 - m, C=m - l - 1)


def tau_jm_limits(j: int, m: int) -> LimitReport:
    """The five limits of a Pisa fixed point written through ``tau(j, m)``.

    On the boundary ``m == j + 1`` the frequency quotients degenerate and
    ``tau/(tau + 1)`` is used instead.
    """
    t = tau(j, m)
    if m == j + 1:
        freq_a, freq_b = t / (t + 1), 1 / (t + 1)
    else:
        freq_a = (t - m) / (j + 1 - m)
        freq_b = (j + 1 - t) / (j + 1 - m)
    return LimitReport(
        freq_a=freq_a,
        freq_b=freq_b,
        lim_pa_over_n=1 + (t - j) / m,
        lim_pb_over_n=t + 1,
        lim_r_over_n=((m - 1) * t + j) / m,
    )


def pisa_limits(k: int, l: int, m: int) -> LimitReport:
    pisa(k, l, m)
    return tau_jm_limits(k + l, m)


def tau_jm_equivalence(m: MatrixLike, j: int, mm: int) -> Dict[str, bool]:
    """Evaluate the seven equivalent statements about ``tau(j, mm)`` for a matrix.

    For a primitive matrix they hold together or fail together.

    :raises NonPrimitiveError: If the matrix is not primitive
    """
    limits = predicted_limits(m)
    expected = tau_jm_limits(j, mm)
    return {
        'freq_a': limits.freq_a == expected.freq_a,
        'freq_b': limits.freq_b == expected.freq_b,
        'lim_pa_over_n': limits.lim_pa_over_n == expected.lim_pa_over_n,
        'lim_pb_over_n': limits.lim_pb_over_n == expected.lim_pb_over_n,
        'lim_r_over_n': limits.lim_r_over_n == expected.lim_r_over_n,
        'r_from_pa': limits.lim_r_over_n == (mm - 1) * limits.lim_pa_over_n + (j + 1 - mm),
        'eigenvector': eigen_check(m, tau(j, mm)),
    }
