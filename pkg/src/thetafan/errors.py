"""Exception types shared across the library."""


class ThetafanError(Exception):
    """Base class for library errors."""


class InputError(ThetafanError):
    """Malformed input data (bad matrix shape, unparsable file, ...)."""


class DomainError(ThetafanError):
    """Arguments outside an operation's mathematical domain."""


class GeometryError(ThetafanError):
    """A path or basepoint hit a joint / wall; caller should perturb."""


class UnsupportedScopeError(ThetafanError):
    """Requested computation is outside the implemented scope."""


class InternalError(ThetafanError):
    """An invariant the algorithms rely on failed; indicates a bug."""
