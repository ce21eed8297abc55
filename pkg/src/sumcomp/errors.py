"""Exception hierarchy shared by every module of the package."""


class SumCompError(Exception):
    """Base class for all package errors."""


class NotMonomial(SumCompError):
    pass


class ZeroScalar(SumCompError):
    pass


class ArityMismatch(SumCompError):
    pass


class InfiniteScope(SumCompError):
    pass


class DomainMismatch(SumCompError):
    pass


class MixedFormUnsupported(SumCompError):
    pass


class AffineAdditionUnsupported(SumCompError):
    pass


class LabelMismatch(SumCompError):
    """A component links two summands whose labels differ (the Hom space is zero)."""


class ModeUnsupported(SumCompError):
    pass


class NotInLattice(SumCompError):
    pass


class NotLocal(SumCompError):
    pass


class NotConstantOnWindow(SumCompError):
    """A scalar that must be independent of the window point was not."""
