"""Exception types raised by the scoring toolkit."""


class ScoringError(Exception):
    """Base class for all toolkit errors."""


class InvalidLabel(ScoringError, ValueError):
    pass


class MalformedRecord(ScoringError, ValueError):
    """A line or field that does not follow its record grammar."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateLabel(ScoringError, ValueError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"duplicate speaker label {label!r}")


class EmptyRegistration(ScoringError, ValueError):
    pass


class UnknownReferenceSpeaker(ScoringError, ValueError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"reference speaker {label!r} is not registered")


class UnknownLabel(ScoringError, KeyError):
    pass


class EmptyReference(ScoringError, ValueError):
    pass


class EmptyInput(ScoringError, ValueError):
    pass


class UnitMismatch(ScoringError, ValueError):
    pass


class WrongArity(ScoringError, ValueError):
    pass


class DimensionTooLarge(ScoringError, ValueError):
    pass


class ManifestError(ScoringError, ValueError):
    """Manifest is unreadable, violates schema v1, or names missing files."""
