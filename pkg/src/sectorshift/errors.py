"""Exception hierarchy.

Two families map onto CLI exit codes: :class:`DataError` (bad or
insufficient input, exit 2) and :class:`DomainError` (inputs are well formed
but the computation is undefined for them, exit 1).
"""

from __future__ import annotations


class SectorShiftError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 1


class DataError(SectorShiftError, ValueError):
    exit_code = 2


class DomainError(SectorShiftError, ValueError):
    exit_code = 1


class ParseError(DataError):
    def __init__(self, line: int, message: str = "malformed row"):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DuplicateYear(DataError):
    def __init__(self, year: int):
        self.year = year
        super().__init__(f"duplicate year {year}")


class InvalidValue(DataError):
    pass


class InvariantViolation(DataError):
    def __init__(self, year: int | None, message: str):
        self.year = year
        prefix = f"year {year}: " if year is not None else ""
        super().__init__(prefix + message)


class NotFound(DataError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else "not found"


class MissingYear(DataError):
    def __init__(self, year: int, what: str = "series"):
        self.year = year
        super().__init__(f"{what} has no value for {year}")


class MissingDeflator(MissingYear):
    def __init__(self, year: int):
        super().__init__(year, "deflator")


class NonContiguousSeries(DataError):
    pass


class InvalidWindow(DataError):
    pass


class InsufficientData(DataError):
    pass


class InsufficientOverlap(InsufficientData):
    pass


class BinMismatch(DataError):
    pass


class InvalidDeflator(DomainError):
    pass


class NonPositiveValue(DomainError):
    def __init__(self, year: int, value: float):
        self.year = year
        self.value = value
        super().__init__(f"value {value!r} at {year} is not positive; logs undefined")


class NoDoubling(DomainError):
    pass


class DegenerateSeries(DomainError):
    pass


class DegenerateShare(DomainError):
    pass


class NoAlignment(DomainError):
    pass
