"""Exception hierarchy.

Two families matter for the CLI exit codes: ``ValidationError`` (bad inputs
or configuration, exit 2) and ``NumericalError`` (a solver failed on valid
inputs, exit 3).
"""


class MottlabError(Exception):
    """Base class for all package errors."""


class ValidationError(MottlabError):
    """Invalid input, configuration, or unsupported parameter regime."""


class InvalidParameterError(ValidationError):
    pass


class UnitError(ValidationError):
    """Conversion between incompatible dimensions or unknown unit name."""


class UnsupportedBranchError(ValidationError):
    """Attractive scattering length / molecular branch requested."""


class UnsupportedOccupationError(ValidationError):
    """Occupation-dependent ladder used beyond its defined occupations."""


class CapacityError(ValidationError):
    """Problem size exceeds a hard resource cap."""


class FieldRangeError(ValidationError):
    """Magnetic field outside the validity range of a resonance map."""


class PoleProximityError(ValidationError):
    """Magnetic field inside the exclusion window of a resonance pole."""


class InvalidBracketError(ValidationError):
    """Root bracket is non-monotonic or contains a pole."""


class NumericalError(MottlabError):
    """A numerical routine failed to converge or lost validity."""


class OutOfBracketError(NumericalError):
    """Root not bracketed: no sign change over the search interval."""
