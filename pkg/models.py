"""Report and outcome models.

Plain value objects returned by the analysis modules. Each exposes
``to_dict()`` producing the JSON shape shared by the CLI and the HTTP API.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple

if TYPE_CHECKING:
    from quadratic import QuadraticNumber
    from words import WordStream


def _render(value: Any) -> Any:
    """Convert exact numbers and nested values to JSON friendly objects."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    if isinstance(value, dict):
        return {k: _render(v) for k, v in value.items()}
    return str(value)


class MixednessVerdict(str, Enum):
    BOTH_SEEN = 'both-seen'
    ONLY_A_SEEN = 'only-a-seen'
    ONLY_B_SEEN = 'only-b-seen'


@dataclass(frozen=True)
class MixednessReport:
    """Letter counts of a prefix, as evidence that both letters recur."""

    horizon: int
    count_a: int
    count_b: int

    @property
    def verdict(self) -> MixednessVerdict:
        if self.count_a >= 1 and self.count_b >= 1:
            return MixednessVerdict.BOTH_SEEN
        if self.count_a >= 1:
            return MixednessVerdict.ONLY_A_SEEN
        return MixednessVerdict.ONLY_B_SEEN

    def to_dict(self) -> Dict[str, Any]:
        return {
            'horizon': self.horizon,
            'count_a': self.count_a,
            'count_b': self.count_b,
            'verdict': self.verdict.value,
        }


@dataclass(frozen=True)
class RunReport:
    """Longest letter runs within a horizon.

    ``c`` is the larger of the two runs and of the initial ``a`` run, the
    constant bounding ``r`` between linear functions.
    """

    horizon: int
    longest_a_run: int
    longest_b_run: int
    c: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'horizon': self.horizon,
            'longest_a_run': self.longest_a_run,
            'longest_b_run': self.longest_b_run,
            'c': self.c,
        }


@dataclass(frozen=True)
class PositionValidity:
    """Verdict of the position-function validity check.

    Truthy exactly when ``valid`` is set. ``caveat`` explains a negative
    verdict that rests only on the finite horizon.
    """

    valid: bool
    strictly_increasing: bool
    first_position_ok: bool
    gap_seen: bool
    horizon: int
    caveat: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> Dict[str, Any]:
        return {
            'valid': self.valid,
            'strictly_increasing': self.strictly_increasing,
            'first_position_ok': self.first_position_ok,
            'gap_seen': self.gap_seen,
            'horizon': self.horizon,
            'caveat': self.caveat,
        }


class ViolationKind(str, Enum):
    ALPHA = 'alpha'
    BETA = 'beta'
    ZERO_VALUE = 'zero-value'


@dataclass(frozen=True)
class Violation:
    """First failed placement of the reconstruction algorithm.

    ``clause`` numbers the failed inequality of the placement condition:
    1 for the new position of the letter placed at the minimum free slot,
    2 for the monotonicity of the other letter, 3 for a collision.
    """

    index: int
    kind: ViolationKind
    detail: str
    clause: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'condition': self.kind.value,
            'clause': self.clause,
            'detail': self.detail,
        }


@dataclass
class ReconstructionOutcome:
    """Result of running the reconstruction algorithm."""

    pairs: int
    positions_a: List[int] = field(default_factory=list)
    positions_b: List[int] = field(default_factory=list)
    word: Optional['WordStream'] = None
    violation: Optional[Violation] = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    @property
    def determined_length(self) -> int:
        if self.word is None:
            return 0
        return self.word.known_length() or 0

    def raise_for_violation(self) -> 'ReconstructionOutcome':
        """Raise :class:`ReconstructionViolationError` on failure, else return self."""
        if self.violation is not None:
            from exceptions import ReconstructionViolationError
            raise ReconstructionViolationError(self.violation)
        return self

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'pairs': self.pairs, 'ok': self.ok}
        if self.ok and self.word is not None:
            length = self.determined_length
            data['determined_length'] = length
            data['word'] = self.word.text(length)
        else:
            data['violation'] = self.violation.to_dict()
        return data


@dataclass(frozen=True)
class ThresholdReport:
    """Where two series start to agree for good within a horizon."""

    threshold: Optional[int]
    checked_until: int
    stable: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'threshold': self.threshold,
            'checked_until': self.checked_until,
            'stable': self.stable,
        }


@dataclass(frozen=True)
class PFData:
    """Perron-Frobenius data of a primitive 2x2 matrix.

    ``u`` normalizes the right eigenvector as ``[u 1]^T``.
    """

    lambda_pf: 'QuadraticNumber'
    u: 'QuadraticNumber'
    conjugate: 'QuadraticNumber'

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda_pf': self.lambda_pf.to_dict(),
            'u': self.u.to_dict(),
            'conjugate': self.conjugate.to_dict(),
        }


@dataclass(frozen=True)
class LimitReport:
    """Exact limiting frequencies and slopes of a fixed point."""

    freq_a: Any
    freq_b: Any
    lim_pa_over_n: Any
    lim_pb_over_n: Any
    lim_r_over_n: Any

    def to_dict(self) -> Dict[str, Any]:
        return {
            'freq_a': _render(self.freq_a),
            'freq_b': _render(self.freq_b),
            'lim_pa_over_n': _render(self.lim_pa_over_n),
            'lim_pb_over_n': _render(self.lim_pb_over_n),
            'lim_r_over_n': _render(self.lim_r_over_n),
        }


@dataclass(frozen=True)
class TauJmVerdict:
    """Matrix-form check against the eigenvector ``[tau_{j,m} 1]^T``.

    Case ``'a'`` (irrational ``tau``) reports the integers ``s, t`` of the
    matched shape; case ``'b'`` (rational ``tau``) reports the residual of
    the linear constraint, which is zero on a match.
    """

    case: str
    matched: bool
    s: Optional[int] = None
    t: Optional[int] = None
    residual: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'case': self.case, 'matched': self.matched, 's': self.s, 't': self.t,
                'residual': self.residual}


@dataclass(frozen=True)
class PisaClosedForm:
    """``p_b(n) = A p_a(n) + B n + C`` for the fixed point of ``sigma_{k,l,m}``."""

    A: int
    B: int
    C: int

    @property
    def coefficients(self) -> Tuple[int, int, int]:
        return self.A, self.B, self.C

    def pb_from_pa(self, pa: int, n: int) -> int:
        return self.A * pa + self.B * n + self.C

    def r_from_pa(self, pa: int, n: int) -> int:
        return (self.A - 1) * pa + self.B * n + self.C

    def r_from_pb(self, pb: int, n: int) -> Fraction:
        return Fraction(self.A - 1, self.A) * pb + Fraction(self.B, self.A) * n + Fraction(self.C, self.A)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'A': self.A,
            'B': self.B,
            'C': self.C,
            'pb': f'p_b(n) = {self.A}*p_a(n) + {self.B}*n + {self.C}',
            'r': f'r(n) = {self.A - 1}*p_a(n) + {self.B}*n + {self.C}',
        }


@dataclass
class Certificate:
    """Outcome of one theorem check."""

    theorem_id: str
    passed: bool
    scale: int
    elapsed_seconds: float = 0.0
    threshold: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        """Serialize the certificate; ``timings=False`` leaves out the wall-clock time."""
        data = {
            'theorem_id': self.theorem_id,
            'passed': self.passed,
            'scale': self.scale,
            'threshold': self.threshold,
            'details': _render(self.details),
        }
        if timings:
            data['elapsed_seconds'] = round(self.elapsed_seconds, 3)
        return data

    def __repr__(self) -> str:
        status = 'pass' if self.passed else 'FAIL'
        return f'<Certificate {self.theorem_id} {status} scale={self.scale}>'
