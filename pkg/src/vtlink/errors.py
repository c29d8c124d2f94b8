"""Exception types shared across the package."""

from __future__ import annotations


class VTLinkError(Exception):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class GenusMismatch(VTLinkError, ValueError):
    pass


class LiteralError(VTLinkError, ValueError):
    pass


class UnsupportedBundleArithmetic(VTLinkError):
    pass


class MalformedLoop(VTLinkError, ValueError):
    pass


class ParameterError(VTLinkError, ValueError):
    pass


class FieldMismatch(VTLinkError, ValueError):
    pass


class ScriptError(VTLinkError):
    """An event or declaration that cannot be applied.  `index` is 0-based."""

    def __init__(self, message: str, index: int | None = None, line: int | None = None):
        self.message = message
        self.index = index
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.index is not None:
            where.append(f"event {self.index + 1}")
        return f"{', '.join(where)}: {self.message}" if where else self.message


class ParseError(ScriptError):
    def __init__(self, message: str, line: int, token: str | None = None):
        self.token = token
        if token is not None:
            message = f"{message} (at {token!r})"
        super().__init__(message, line=line)


class NotRealizable(VTLinkError):
    """A loop whose kink-cancelling value is nonzero cannot close up V-transversely."""

    def __init__(self, obstruction: int):
        self.obstruction = obstruction
        super().__init__(f"not realizable V-transversely; obstruction = {obstruction}")
