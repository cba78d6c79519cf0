"""Exception hierarchy shared by every module of the package."""


class EngelError(Exception):
    """Base class for all package errors."""


class DomainError(EngelError, ValueError):
    """An argument lies outside the domain of the operation."""


class AdmissibilityError(DomainError):
    """A digit sequence violates the admissibility conditions."""


class LengthError(EngelError, IndexError):
    """Fewer digits are available than were requested."""


class TerminatedEarly(DomainError):
    """The exact expansion ended before the requested depth.

    ``length`` holds the number of digits the expansion actually has.
    """

    def __init__(self, length):
        self.length = length
        super().__init__(f"expansion terminates after {length} digit(s)")


class NoBumpIndex(EngelError):
    """No strict increase was found within the scan budget."""


class ScanBudgetExceeded(EngelError):
    """A search over a lazy digit sequence ran past its budget."""


class WindowTooSmall(EngelError):
    """The tail window does not contain the supremum being computed."""


class TooLarge(EngelError):
    """Brute-force enumeration was asked for a case beyond its guard."""


class ConfigError(DomainError):
    """An experiment configuration is invalid."""
