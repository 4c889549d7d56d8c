"""Exception types shared across the package."""


class NbcwsError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(NbcwsError, ValueError):
    """Operands disagree on qudit dimension or qudit count."""


class ResourceLimitError(NbcwsError):
    """A brute-force enumeration would exceed its configured cap."""


class NotRealizable(NbcwsError, ValueError):
    """A syndrome lies outside the syndrome lattice, so no word operator exists."""


class NonUniqueState(NbcwsError):
    """The stabilizer projector does not have trace one."""


class InvalidSpec(NbcwsError, ValueError):
    """A stabilizer spec fails validation where a valid one is required."""


class SpecParseError(NbcwsError, ValueError):
    """A spec or code file does not follow the text format."""


class OracleDisagreement(NbcwsError):
    """The classical checker and the dense oracle returned different verdicts."""


class TheoremViolation(NbcwsError, AssertionError):
    """A structure guarantee that must hold for prime d was observed to fail."""
