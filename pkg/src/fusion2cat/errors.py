"""Exception hierarchy shared by all modules."""


class Fusion2CatError(Exception):
    """Base class for every error raised by the package."""


class InvalidInputError(Fusion2CatError, ValueError):
    """Malformed user data: bad factors, coordinates, matrices or configs."""


class InvalidElementError(InvalidInputError):
    """A coordinate vector does not describe an element of the stated group."""


class InvalidBraidingError(InvalidInputError):
    """A braiding matrix is not a well-defined bicharacter."""


class InvalidFormError(InvalidInputError):
    """A form matrix is not a well-defined alternating bicharacter."""


class AmbientMismatchError(InvalidInputError):
    """Two objects that must live over the same group do not."""


class ResourceLimitError(Fusion2CatError):
    """An exhaustive routine would exceed its configured enumeration limit."""


class InternalInvariantError(Fusion2CatError, AssertionError):
    """A mathematical invariant that should hold by construction failed."""
