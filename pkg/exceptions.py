"""Exception hierarchy shared by the library, the CLI and the HTTP API.

Every error carries the process exit code used by ``cli.py`` and the HTTP
status used by the API blueprint, so callers can translate failures without
inspecting messages.
"""


class RelposError(Exception):
    """Base class for all expected failures."""

    exit_code: int = 1
    http_status: int = 500


class BadInputError(RelposError, ValueError):
    """A parameter, specification or precondition was invalid."""

    exit_code = 4
    http_status = 400


class ParameterError(BadInputError):
    """A numeric parameter is outside its allowed range."""


class SpecParseError(BadInputError):
    """A textual word, substitution, pipeline or r specification did not parse."""


class EmptyPeriodError(BadInputError):
    """A periodic word was requested with an empty period."""


class NoFixedPointError(BadInputError):
    """The substitution has no fixed point starting with the requested seed."""


class NonPrimitiveError(BadInputError):
    """A spectral quantity was requested for a non-primitive matrix."""


class SingularMatrixError(BadInputError):
    """The substitution matrix is not invertible."""


class DegenerateNormalizerError(BadInputError):
    """The frequency-transfer normalizer vanished."""


class ResourceLimitError(RelposError):
    """Generation would exceed the configured index budget."""

    exit_code = 3
    http_status = 422


class OccurrenceNotFoundError(ResourceLimitError):
    """The requested occurrence of a letter was not found within the budget."""


class UndeterminedRegionError(ResourceLimitError):
    """A letter beyond the determined region of a partial word was requested."""


class ViolationError(RelposError):
    """A checked condition failed on the given data."""

    exit_code = 2
    http_status = 422


class MalformedSupertileError(ViolationError):
    """The input could not be split into level-2 Fibonacci supertiles."""


class ReconstructionViolationError(ViolationError):
    """The reconstruction algorithm hit a violated placement condition."""

    def __init__(self, violation) -> None:
        """Wrap a violation record.

        :param violation: The first violated condition
        :type violation: models.Violation
        """
        super().__init__(f'reconstruction failed at n={violation.index}: {violation.detail}')
        self.violation = violation
