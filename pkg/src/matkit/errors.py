"""Exception types raised by the kernel.

Everything derives from MatkitError so callers can catch the whole family;
the leaf classes also subclass the closest builtin (ValueError/IndexError)
so untyped callers get sane behavior.
"""


class MatkitError(Exception):
    pass


class ShapeError(MatkitError, ValueError):
    """Operand shapes are incompatible with the requested operation."""


class ArgumentError(MatkitError, ValueError):
    """An argument is outside the operation's domain (bad step, order, count...)."""


class IndexBoundsError(MatkitError, IndexError):
    """A resolved 1-based index falls outside the array."""


class BroadcastError(ShapeError):
    """Two shapes cannot be broadcast together; message names the dimension."""


class SingularMatrixError(MatkitError, ValueError):
    """Linear solve hit an exactly zero pivot column."""


class ConvergenceError(MatkitError, RuntimeError):
    """An iterative kernel exceeded its sweep budget."""


class ContractError(MatkitError, ValueError):
    """A user-supplied function violated its declared output contract."""


class VerificationError(MatkitError, RuntimeError):
    """Benchmark variants disagreed before timing; message names the variants."""


class PnmFormatError(MatkitError, ValueError):
    """Malformed PNM stream; carries the byte offset where parsing failed."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
