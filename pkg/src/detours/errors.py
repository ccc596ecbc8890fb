"""Exception types raised across the package."""

from __future__ import annotations


class DetourError(Exception):
    """Base class for all package errors."""


class DomainError(DetourError, ValueError):
    """An argument is outside the domain of the operation (bad edge, bad index, ...)."""


class GraphFormatError(DetourError, ValueError):
    """A graph6 line could not be decoded."""

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        self.reason = message
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class CapacityError(DetourError):
    """Input exceeds a configured size cap of the chosen method."""


class EmissionLimitExceeded(DetourError):
    """Explicit enumeration produced more detours than the emission limit allows."""

    def __init__(self, limit: int, count_so_far: int):
        self.limit = limit
        self.count_so_far = count_so_far
        super().__init__(
            f"detour enumeration exceeded the emission limit of {limit} "
            f"({count_so_far} detours found before stopping)"
        )


class CountOverflowError(DetourError, OverflowError):
    """A path count left the signed 64-bit range."""


class EngineMismatchError(DetourError):
    """The DP and DFS engines disagreed on a graph."""
