"""Exception types raised by the library."""


class BangBangError(Exception):
    """Base class for all library errors."""


class ConfigurationError(BangBangError, ValueError):
    pass


class SaturationError(BangBangError, ValueError):
    """A physical control exceeds its bound."""


class DomainError(BangBangError, ValueError):
    pass


class PreconditionError(BangBangError, ValueError):
    pass


class NontrivialityError(BangBangError, ValueError):
    """The multiplier/costate pair would be identically zero."""


class GeometryError(BangBangError, ValueError):
    """Points do not lie on a common parabola arc."""


class OrderingError(BangBangError, ValueError):
    """Points were given in reverse order of traversal."""


class SearchFailure(BangBangError, RuntimeError):
    """The brute-force search found no schedule reaching the origin."""
