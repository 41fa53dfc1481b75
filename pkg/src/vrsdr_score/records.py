"""Readers and writers for the textual formats the toolkit consumes.

Transcript records look like::

    Alice: our first topic is family... [0.00-6.39s]

one per line; several records may share a line when separated by ``;``
after the closing bracket. Timestamps are decimal seconds (the trailing
``s`` is optional) and are stored as integer milliseconds, rounded half
up at the third decimal.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, InvalidOperation
from pathlib import Path
from typing import Optional, Sequence

from .errors import DuplicateLabel, EmptyRegistration, InvalidLabel, MalformedRecord, ManifestError
from .model import AttributedTranscript, BoundingBox, Registration, Segment, ValidationWarning, check_label
from .normalize import DEFAULT_CONFIG, NormalizationConfig, normalize

_MS = Decimal("0.001")
_LABEL_DELIM = re.compile(r"(?<!\\):")

_TIMESTAMP = re.compile(
    r"\[\s*(?P<start>[+-]?\d+(?:\.\d*)?|[+-]?\.\d+)\s*-\s*(?P<end>[+-]?\d+(?:\.\d*)?|[+-]?\.\d+)\s*s?\s*\]",
    re.IGNORECASE,
)
# a record ends at its timestamp; an optional ';' separates inline records
_RECORD_END = re.compile(_TIMESTAMP.pattern + r"\s*;?", re.IGNORECASE)


def seconds_to_ms(text: str) -> int:
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise ValueError(f"not a number: {text!r}") from None
    if not value.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    return int((value.quantize(_MS, rounding=ROUND_HALF_UP) * 1000).to_integral_value())


def ms_to_seconds(ms: int, min_decimals: int = 2) -> str:
    """Shortest decimal-seconds string with at least ``min_decimals`` places."""
    whole, frac = divmod(ms, 1000)
    digits = f"{frac:03d}".rstrip("0")
    if len(digits) < min_decimals:
        digits = digits.ljust(min_decimals, "0")
    return f"{whole}.{digits}" if digits else str(whole)


# -- VR-SDR transcripts --------------------------------------------------------

@dataclass
class ParseResult:
    transcript: AttributedTranscript
    warnings: list[ValidationWarning] = field(default_factory=list)


def _parse_record(chunk: str, lineno: int, cfg: NormalizationConfig) -> Segment:
    m = _TIMESTAMP.search(chunk)
    if m is None:
        raise MalformedRecord(lineno, "missing timestamp")
    head = chunk[: m.start()]
    parts = _LABEL_DELIM.split(head, maxsplit=1)
    if len(parts) != 2:
        raise MalformedRecord(lineno, "missing label delimiter")
    label, content = parts
    try:
        label = check_label(label)
    except InvalidLabel as exc:
        raise MalformedRecord(lineno, str(exc)) from None
    try:
        start = seconds_to_ms(m.group("start"))
        end = seconds_to_ms(m.group("end"))
    except ValueError as exc:
        raise MalformedRecord(lineno, str(exc)) from None
    if start < 0:
        raise MalformedRecord(lineno, "negative start time")
    if end < start:
        raise MalformedRecord(lineno, "end time before start time")
    return Segment(label, start, end, normalize(content, cfg))


def _split_records(line: str) -> list[str]:
    chunks = []
    pos = 0
    for m in _RECORD_END.finditer(line):
        chunks.append(line[pos : m.end()])
        pos = m.end()
    tail = line[pos:]
    if tail.strip(" \t;"):
        chunks.append(tail)
    return chunks


def parse_transcript_ex(
    text: str,
    strict: bool = False,
    cfg: NormalizationConfig = DEFAULT_CONFIG,
    registration: Optional[Registration] = None,
) -> ParseResult:
    """Parse transcript records, returning the transcript and any warnings.

    In strict mode the first malformed record raises ``MalformedRecord``;
    otherwise it is dropped and reported as a ``malformed`` warning.
    """
    segments = []
    warnings = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        for chunk in _split_records(line):
            try:
                segments.append(_parse_record(chunk, lineno, cfg))
            except MalformedRecord as exc:
                if strict:
                    raise
                warnings.append(ValidationWarning("malformed", exc.reason, lineno))
    return ParseResult(AttributedTranscript(tuple(segments), registration), warnings)


def parse_transcript(
    text: str,
    strict: bool = False,
    cfg: NormalizationConfig = DEFAULT_CONFIG,
    registration: Optional[Registration] = None,
) -> AttributedTranscript:
    return parse_transcript_ex(text, strict, cfg, registration).transcript


def emit_transcript(t: AttributedTranscript) -> str:
    lines = [
        f"{seg.speaker}: {' '.join(seg.tokens)} [{ms_to_seconds(seg.start_ms)}-{ms_to_seconds(seg.end_ms)}s]"
        for seg in t.segments
    ]
    return "".join(line + "\n" for line in lines)


# -- registration ----------------------------------------------------------------

def parse_registration(text: str) -> Registration:
    entries = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        for part in line.split(";"):
            if not part.strip():
                continue
            pieces = _LABEL_DELIM.split(part, maxsplit=1)
            if len(pieces) != 2:
                raise MalformedRecord(lineno, "missing label delimiter")
            label, desc = pieces
            try:
                label = check_label(label)
            except InvalidLabel as exc:
                raise MalformedRecord(lineno, str(exc)) from None
            if label in seen:
                raise DuplicateLabel(label)
            seen.add(label)
            entries.append((label, desc.strip()))
    if not entries:
        raise EmptyRegistration("registration has no entries")
    return Registration(tuple(entries))


def emit_registration(r: Registration) -> str:
    return "".join(f"{label}: {desc}\n" for label, desc in r.entries)


# -- RTTM ------------------------------------------------------------------------

def parse_rttm(text: str) -> AttributedTranscript:
    """Read SPEAKER lines; other record types and comments are skipped."""
    segments = []
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0].startswith("#") or fields[0] != "SPEAKER":
            continue
        if len(fields) < 8:
            raise MalformedRecord(lineno, f"SPEAKER line has {len(fields)} fields, need at least 8")
        try:
            onset = seconds_to_ms(fields[3])
            duration = seconds_to_ms(fields[4])
        except ValueError as exc:
            raise MalformedRecord(lineno, str(exc)) from None
        if onset < 0:
            raise MalformedRecord(lineno, "negative onset")
        if duration < 0:
            raise MalformedRecord(lineno, "negative duration")
        try:
            segments.append(Segment(fields[7], onset, onset + duration))
        except InvalidLabel as exc:
            raise MalformedRecord(lineno, str(exc)) from None
    return AttributedTranscript(tuple(segments))


def emit_rttm(t: AttributedTranscript, file_id: str = "f", channel: str = "1") -> str:
    return "".join(
        f"SPEAKER {file_id} {channel} {ms_to_seconds(seg.start_ms)} {ms_to_seconds(seg.duration_ms)} "
        f"<NA> <NA> {seg.speaker} <NA> <NA>\n"
        for seg in t.segments
    )


# -- model answers -----------------------------------------------------------------

_YES_NO = re.compile(r"\b(yes|no)\b")


def extract_binary_answer(text: str) -> Optional[str]:
    """First standalone ``yes``/``no`` in the response, or None."""
    m = _YES_NO.search(text.casefold())
    return m.group(1) if m else None


def extract_choice(
    text: str,
    options: Sequence[str] = ("A", "B", "C", "D"),
    option_texts: Optional[dict[str, str]] = None,
) -> Optional[str]:
    """Pick the option letter a free-form response commits to.

    Standalone upper-case letters are read first, lower-case ones only when
    no upper-case letter occurs (so a stray article "a" cannot outvote
    "B"). More than one distinct letter is ambiguous and yields None.
    Failing letters, the unique option whose text occurs in the response
    wins.
    """
    letters = {o.upper() for o in options}
    found_upper, found_lower = [], []
    for m in re.finditer(r"(?<![A-Za-z0-9])([A-Za-z])(?![A-Za-z0-9])", text):
        ch = m.group(1)
        if ch.upper() not in letters:
            continue
        (found_upper if ch.isupper() else found_lower).append(ch.upper())
    found = found_upper or found_lower
    if found:
        return found[0] if len(set(found)) == 1 else None
    if option_texts:
        low = text.casefold()
        hits = [o.upper() for o, desc in option_texts.items() if desc.strip() and desc.strip().casefold() in low]
        if len(hits) == 1:
            return hits[0]
    return None


_NUMBER = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)"
_BOX_GROUP = re.compile(r"[\[(]([^\[\]()]*)[\])]")


def parse_bbox(text: str) -> BoundingBox:
    """Read the first bracketed ``[x1, y1, x2, y2]`` or ``(x1,y1,x2,y2)`` group."""
    for m in _BOX_GROUP.finditer(text):
        numbers = re.findall(_NUMBER, m.group(1))
        if not numbers:
            continue
        if len(numbers) != 4:
            raise MalformedRecord(1, f"bounding box needs 4 numbers, got {len(numbers)}")
        x1, y1, x2, y2 = (float(v) for v in numbers)
        if x2 <= x1 or y2 <= y1:
            raise MalformedRecord(1, "bounding box needs x2 > x1 and y2 > y1")
        normalized = all(abs(v) <= 1.0 for v in (x1, y1, x2, y2))
        return BoundingBox(x1, y1, x2, y2, normalized)
    raise MalformedRecord(1, "no bracketed coordinates found")


def try_parse_bbox(text: str) -> Optional[BoundingBox]:
    try:
        return parse_bbox(text)
    except MalformedRecord:
        return None


# -- manifest ------------------------------------------------------------------------

TASKS = ("vrsdr", "sr", "sv", "sl", "si")
SUBSETS = ("easy", "hard", "none")
MANIFEST_VERSION = 1


@dataclass(frozen=True)
class ManifestEntry:
    sample_id: str
    task: str
    reference_path: Path
    hypothesis_path: Path
    registration_path: Optional[Path] = None
    subset: str = "none"


@dataclass(frozen=True)
class PrecomputedScore:
    """A per-task result supplied directly instead of scored from files."""

    task: str
    metric: str
    value: float
    subset: str = "none"
    count: int = 0


@dataclass(frozen=True)
class Manifest:
    entries: tuple[ManifestEntry, ...]
    precomputed: tuple[PrecomputedScore, ...] = ()
    base_dir: Path = Path(".")


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ManifestError(f"{where}: missing required key {key!r}")
    return obj[key]


def parse_manifest(text: str, base_dir: Path | str = ".", check_files: bool = True) -> Manifest:
    """Validate a schema-v1 manifest. Relative paths resolve against ``base_dir``."""
    base = Path(base_dir)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ManifestError("manifest must be a JSON object")
    if doc.get("version") != MANIFEST_VERSION:
        raise ManifestError(f"unsupported manifest version {doc.get('version')!r}")
    raw_entries = doc.get("entries", [])
    if not isinstance(raw_entries, list):
        raise ManifestError("'entries' must be a list")

    entries = []
    seen = set()
    for i, raw in enumerate(raw_entries):
        where = f"entries[{i}]"
        if not isinstance(raw, dict):
            raise ManifestError(f"{where}: must be an object")
        sample_id = str(_require(raw, "sample_id", where))
        if sample_id in seen:
            raise ManifestError(f"{where}: duplicate sample_id {sample_id!r}")
        seen.add(sample_id)
        task = _require(raw, "task", where)
        if task not in TASKS:
            raise ManifestError(f"{where}: unknown task {task!r}")
        subset = raw.get("subset", "none")
        if subset not in SUBSETS:
            raise ManifestError(f"{where}: unknown subset {subset!r}")
        reg = raw.get("registration")
        if (task == "vrsdr") != (reg is not None):
            raise ManifestError(f"{where}: 'registration' is required for vrsdr and only for vrsdr")
        paths = [base / _require(raw, "reference", where), base / _require(raw, "hypothesis", where)]
        if reg is not None:
            paths.append(base / reg)
        if check_files:
            for p in paths:
                if not p.is_file():
                    raise ManifestError(f"{where}: file not found: {p}")
        entries.append(ManifestEntry(sample_id, task, paths[0], paths[1], paths[2] if reg else None, subset))

    pre = []
    for i, raw in enumerate(doc.get("precomputed", [])):
        where = f"precomputed[{i}]"
        if not isinstance(raw, dict):
            raise ManifestError(f"{where}: must be an object")
        task = _require(raw, "task", where)
        if task not in TASKS:
            raise ManifestError(f"{where}: unknown task {task!r}")
        subset = raw.get("subset", "none")
        if subset not in SUBSETS:
            raise ManifestError(f"{where}: unknown subset {subset!r}")
        value = _require(raw, "value", where)
        if not isinstance(value, (int, float)) or value < 0:
            raise ManifestError(f"{where}: 'value' must be a non-negative fraction")
        pre.append(PrecomputedScore(task, str(_require(raw, "metric", where)), float(value), subset, int(raw.get("count", 0))))

    if not entries and not pre:
        raise ManifestError("manifest has no entries")
    return Manifest(tuple(entries), tuple(pre), base)


def load_manifest(path: Path | str, check_files: bool = True) -> Manifest:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from None
    return parse_manifest(text, path.parent, check_files)


def dump_manifest(m: Manifest) -> str:
    def rel(p: Path) -> str:
        try:
            return p.relative_to(m.base_dir).as_posix()
        except ValueError:
            return p.as_posix()

    doc: dict = {"version": MANIFEST_VERSION, "entries": []}
    for e in m.entries:
        item = {
            "sample_id": e.sample_id,
            "task": e.task,
            "reference": rel(e.reference_path),
            "hypothesis": rel(e.hypothesis_path),
            "subset": e.subset,
        }
        if e.registration_path is not None:
            item["registration"] = rel(e.registration_path)
        doc["entries"].append(item)
    if m.precomputed:
        doc["precomputed"] = [
            {"task": p.task, "metric": p.metric, "value": p.value, "subset": p.subset, "count": p.count}
            for p in m.precomputed
        ]
    return json.dumps(doc, indent=2) + "\n"
