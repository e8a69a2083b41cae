"""Exception types shared across the package."""


class FSandwichError(Exception):
    """Base class for all package errors."""


class NonPrimeCharacteristic(FSandwichError, ValueError):
    pass


class BoundExceeded(FSandwichError):
    """A configured size bound (field order, degree cap, enumeration box) was hit."""


class IncompatibleFields(FSandwichError, ValueError):
    pass


class ZeroClass(FSandwichError, ValueError):
    """The vector field is a scalar multiple of the Euler field, i.e. zero modulo it."""


class InternalInconsistency(FSandwichError, RuntimeError):
    pass


class GenerationIncomplete(FSandwichError):
    """Semigroup generators found in the search box fail to generate the verification window."""


class DegenerateCone(FSandwichError, ValueError):
    pass


class ParseError(FSandwichError, ValueError):
    pass
