"""Domain types shared across the toolkit.

All times are integer milliseconds. Every type here is frozen after
construction, so instances can be shared freely between threads and
worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import DuplicateLabel, EmptyRegistration, InvalidLabel


def check_label(name: str) -> str:
    """Return the trimmed label, raising InvalidLabel if it is unusable."""
    if not isinstance(name, str):
        raise InvalidLabel(f"label must be a string, got {type(name).__name__}")
    label = name.strip()
    if not label:
        raise InvalidLabel("speaker label is empty")
    if "\n" in label or "\r" in label:
        raise InvalidLabel(f"speaker label {label!r} contains a newline")
    # ':' is the record delimiter; it may only appear escaped.
    unescaped = label.replace("\\\\", "").replace("\\:", "")
    if ":" in unescaped:
        raise InvalidLabel(f"speaker label {label!r} contains an unescaped ':'")
    return label


@dataclass(frozen=True)
class Registration:
    """Ordered mapping of speaker label to a free-text visual description."""

    entries: tuple[tuple[str, str], ...]

    def __post_init__(self):
        entries = tuple((check_label(label), str(desc).strip()) for label, desc in self.entries)
        if not entries:
            raise EmptyRegistration("registration has no entries")
        seen = set()
        for label, _ in entries:
            if label in seen:
                raise DuplicateLabel(label)
            seen.add(label)
        object.__setattr__(self, "entries", entries)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)

    def description(self, label: str) -> str:
        return dict(self.entries)[label]

    def __contains__(self, label: object) -> bool:
        return any(label == name for name, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)


@dataclass(frozen=True)
class Segment:
    speaker: str
    start_ms: int
    end_ms: int
    tokens: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "speaker", check_label(self.speaker))
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not isinstance(self.start_ms, int) or not isinstance(self.end_ms, int):
            raise TypeError("segment times must be integer milliseconds")
        if self.start_ms < 0:
            raise ValueError(f"segment start {self.start_ms} ms is negative")
        if self.end_ms < self.start_ms:
            raise ValueError(f"segment ends ({self.end_ms} ms) before it starts ({self.start_ms} ms)")

    @property
    def duration_ms(self) -> int:
        return self.end_ms - self.start_ms


@dataclass(frozen=True)
class AttributedTranscript:
    """Speaker-attributed, time-stamped word segments.

    Segments are stably sorted by ``(start_ms, end_ms)`` on construction;
    ties keep their input order. ``reordered`` records whether the input
    needed sorting.
    """

    segments: tuple[Segment, ...] = ()
    source_registration: Optional[Registration] = None
    reordered: bool = field(default=False, init=False, compare=False)

    def __post_init__(self):
        given = tuple(self.segments)
        ordered = tuple(sorted(given, key=lambda s: (s.start_ms, s.end_ms)))
        object.__setattr__(self, "segments", ordered)
        object.__setattr__(self, "reordered", ordered != given)

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    @property
    def speakers(self) -> tuple[str, ...]:
        """Distinct speaker labels in order of first appearance."""
        return tuple(dict.fromkeys(seg.speaker for seg in self.segments))

    @property
    def end_ms(self) -> int:
        return max((seg.end_ms for seg in self.segments), default=0)

    def unregistered(self, registration: Optional[Registration] = None) -> tuple[str, ...]:
        reg = registration if registration is not None else self.source_registration
        if reg is None:
            return ()
        return tuple(s for s in self.speakers if s not in reg)

    def with_segments(self, segments: Iterable[Segment]) -> "AttributedTranscript":
        return AttributedTranscript(tuple(segments), self.source_registration)


@dataclass(frozen=True)
class AlignmentResult:
    substitutions: int
    deletions: int
    insertions: int
    corrects: int

    @property
    def distance(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    @property
    def ref_length(self) -> int:
        return self.corrects + self.substitutions + self.deletions

    @property
    def hyp_length(self) -> int:
        return self.corrects + self.substitutions + self.insertions


@dataclass
class SpeakerTimes:
    correct_ms: int = 0
    miss_ms: int = 0
    fa_ms: int = 0
    conf_ms: int = 0
    dur_ms: int = 0

    @property
    def error_ms(self) -> int:
        return self.miss_ms + self.fa_ms + self.conf_ms

    def as_dict(self) -> dict:
        return {
            "correct_ms": self.correct_ms,
            "miss_ms": self.miss_ms,
            "fa_ms": self.fa_ms,
            "conf_ms": self.conf_ms,
            "dur_ms": self.dur_ms,
        }


@dataclass
class IerBreakdown:
    """Per-speaker time decomposition behind the identification error rate."""

    per_speaker: dict[str, SpeakerTimes]
    unregistered_fa_ms: int = 0

    @property
    def error_ms(self) -> int:
        return sum(t.error_ms for t in self.per_speaker.values()) + self.unregistered_fa_ms

    @property
    def total_ms(self) -> int:
        return sum(t.dur_ms for t in self.per_speaker.values())

    def as_dict(self) -> dict:
        return {
            "per_speaker": {label: t.as_dict() for label, t in self.per_speaker.items()},
            "unregistered_fa_ms": self.unregistered_fa_ms,
        }


@dataclass(frozen=True)
class BoundingBox:
    x1: float
    y1: float
    x2: float
    y2: float
    normalized: bool = False

    def __post_init__(self):
        if not (self.x2 > self.x1 and self.y2 > self.y1):
            raise ValueError(f"degenerate box ({self.x1}, {self.y1}, {self.x2}, {self.y2})")

    @property
    def area(self) -> float:
        return (self.x2 - self.x1) * (self.y2 - self.y1)

    @property
    def center(self) -> tuple[float, float]:
        return ((self.x1 + self.x2) / 2, (self.y1 + self.y2) / 2)


@dataclass(frozen=True)
class ValidationWarning:
    kind: str  # zero-duration | unregistered | out-of-order | malformed
    detail: str
    line: Optional[int] = None


def validate_transcript(t: AttributedTranscript, r: Registration) -> list[ValidationWarning]:
    warnings: list[ValidationWarning] = []
    if t.reordered:
        warnings.append(ValidationWarning("out-of-order", "segments were not in time order and have been sorted"))
    for seg in t.segments:
        if seg.duration_ms == 0:
            warnings.append(
                ValidationWarning("zero-duration", f"{seg.speaker} segment at {seg.start_ms} ms has zero duration")
            )
    for label in t.unregistered(r):
        warnings.append(ValidationWarning("unregistered", f"speaker {label!r} is not registered"))
    return warnings
