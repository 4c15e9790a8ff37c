"""Exception hierarchy shared by all zenoqaoa modules."""


class ZenoError(Exception):
    """Base class for library errors."""


class NonHermitianInput(ZenoError, ValueError):
    pass


class DimensionMismatch(ZenoError, ValueError):
    pass


class QubitOutOfRange(ZenoError, IndexError):
    pass


class KOutOfRange(ZenoError, ValueError):
    pass


class InvalidParams(ZenoError, ValueError):
    pass


class ParseError(ZenoError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class HeaderMismatch(ParseError):
    pass


class TooManyVariables(ZenoError, ValueError):
    pass


class TooLarge(ZenoError, ValueError):
    pass


class BasisMismatch(ZenoError, ValueError):
    pass


class EmptySubspace(ZenoError):
    """The constraint prefix has no satisfying assignment (d = 0)."""

    def __init__(self, k_constraint=None):
        msg = "constraint subspace is empty"
        if k_constraint is not None:
            msg += f" (prefix of {k_constraint} clauses is unsatisfiable)"
        super().__init__(msg)
        self.k_constraint = k_constraint


class EmptyInput(ZenoError, ValueError):
    pass
