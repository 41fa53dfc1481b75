"""Metric definitions for every task in the evaluation matrix.

Rates built from integer counts (words, milliseconds, trials) are
returned as ``fractions.Fraction`` so comparisons between metrics are
exact; call ``float()`` for display. ``iou`` works on float coordinates
and returns a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .alignment import concat_per_speaker, edit_distance, word_edit_distance
from .assignment import pad_square, solve_assignment
from .errors import EmptyInput, EmptyReference, UnitMismatch, UnknownReferenceSpeaker, WrongArity
from .model import AttributedTranscript, BoundingBox, IerBreakdown, Registration
from .timeline import Timeline, attribute, build_timeline, overlap_matrix

# Table column order: SR, SV, SL, SI easy, SI hard, VR-SDR what, VR-SDR when.
AVG_ARITY = 7


@dataclass(frozen=True)
class ErrorCount:
    """Numerator/denominator pair behind a rate."""

    errors: int
    total: int

    @property
    def rate(self) -> Fraction:
        if self.total == 0:
            raise EmptyReference("rate undefined for an empty reference")
        return Fraction(self.errors, self.total)

    def __add__(self, other: "ErrorCount") -> "ErrorCount":
        return ErrorCount(self.errors + other.errors, self.total + other.total)


def _check_reference_registered(ref: AttributedTranscript, r: Registration) -> None:
    for spk in ref.speakers:
        if spk not in r:
            raise UnknownReferenceSpeaker(spk)


# -- word domain -------------------------------------------------------------

def wer_counts(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> ErrorCount:
    return ErrorCount(edit_distance(ref_tokens, hyp_tokens), len(ref_tokens))


def wer(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> Fraction:
    if not ref_tokens:
        raise EmptyReference("WER needs at least one reference word")
    return wer_counts(ref_tokens, hyp_tokens).rate


def sa_wer_counts(ref: AttributedTranscript, hyp: AttributedTranscript, r: Registration) -> ErrorCount:
    _check_reference_registered(ref, r)
    errors = total = 0
    for s in r.labels:
        ref_s = concat_per_speaker(ref, s)
        errors += edit_distance(ref_s, concat_per_speaker(hyp, s))
        total += len(ref_s)
    return ErrorCount(errors, total)


def sa_wer(ref: AttributedTranscript, hyp: AttributedTranscript, r: Registration) -> Fraction:
    """Speaker-attributed WER under the registered identity mapping.

    Words the hypothesis gives to unregistered speakers belong to no
    registered stream, so they only surface as deletions.
    """
    counts = sa_wer_counts(ref, hyp, r)
    if counts.total == 0:
        raise EmptyReference("reference has no words for any registered speaker")
    return counts.rate


def sa_wer_alignments(ref: AttributedTranscript, hyp: AttributedTranscript, r: Registration):
    """Per-speaker S/D/I/C decomposition, in registration order."""
    return {s: word_edit_distance(concat_per_speaker(ref, s), concat_per_speaker(hyp, s)) for s in r.labels}


def cp_wer_counts(ref: AttributedTranscript, hyp: AttributedTranscript) -> tuple[ErrorCount, dict[str, str]]:
    """cpWER counts plus the chosen hypothesis -> reference mapping."""
    ref_labels = sorted(ref.speakers)
    hyp_labels = sorted(hyp.speakers)
    ref_words = [concat_per_speaker(ref, s) for s in ref_labels]
    hyp_words = [concat_per_speaker(hyp, s) for s in hyp_labels]
    total = sum(len(w) for w in ref_words)
    if not hyp_labels:
        return ErrorCount(total, total), {}
    costs = [[edit_distance(rw, hw) for rw in ref_words] for hw in hyp_words]
    # unmatched hyp speakers: all insertions; unmatched ref speakers: all deletions
    square = pad_square(costs, [len(w) for w in hyp_words], [len(w) for w in ref_words])
    assignment, errors = solve_assignment(square)
    mapping = {
        hyp_labels[i]: ref_labels[j]
        for i, j in enumerate(assignment)
        if i < len(hyp_labels) and j < len(ref_labels)
    }
    return ErrorCount(errors, total), mapping


def cp_wer(ref: AttributedTranscript, hyp: AttributedTranscript) -> Fraction:
    counts, _ = cp_wer_counts(ref, hyp)
    if counts.total == 0:
        raise EmptyReference("reference has no words")
    return counts.rate


# -- time domain -------------------------------------------------------------

def ier_breakdown(
    ref: AttributedTranscript, hyp: AttributedTranscript, r: Registration, collar_ms: int = 0
) -> IerBreakdown:
    return attribute(build_timeline(ref, hyp, collar_ms), r)


def ier(ref: AttributedTranscript, hyp: AttributedTranscript, r: Registration, collar_ms: int = 0) -> Fraction:
    bd = ier_breakdown(ref, hyp, r, collar_ms)
    if bd.total_ms == 0:
        raise EmptyReference("reference has no scored speech")
    return Fraction(bd.error_ms, bd.total_ms)


def der_mapping(tl: Timeline) -> dict[str, str]:
    """Hypothesis -> reference mapping maximizing total co-active time.

    Pairs with zero overlap are left unmapped.
    """
    ref_labels = sorted(tl.ref_speakers)
    hyp_labels = sorted(tl.hyp_speakers)
    if not ref_labels or not hyp_labels:
        return {}
    overlap = overlap_matrix(tl, hyp_labels, ref_labels)
    top = max(max(row) for row in overlap)
    # maximize overlap == minimize (top - overlap); pads are never better than a real pair
    costs = [[top - v for v in row] for row in overlap]
    square = pad_square(costs, [top] * len(hyp_labels), [top] * len(ref_labels))
    assignment, _ = solve_assignment(square)
    return {
        hyp_labels[i]: ref_labels[j]
        for i, j in enumerate(assignment)
        if i < len(hyp_labels) and j < len(ref_labels) and overlap[i][j] > 0
    }


def der_counts(ref: AttributedTranscript, hyp: AttributedTranscript, collar_ms: int = 0) -> ErrorCount:
    """Time-domain errors after optimal speaker mapping.

    Uses the same cell rules as ``attribute``. Without a registration the
    hypothesis labels are anonymous, so false alarm is charged once per
    silent cell however many hypothesis speakers are active.
    """
    tl = build_timeline(ref, hyp, collar_ms)
    mapping = der_mapping(tl)
    errors = total = 0
    for cell in tl.scored():
        d = cell.duration_ms
        if cell.ref_active:
            mapped = {mapping[h] for h in cell.hyp_active if h in mapping}
            for s in cell.ref_active:
                total += d
                if s not in mapped:
                    errors += d  # confusion if anyone speaks, miss otherwise
        elif cell.hyp_active:
            errors += d
    return ErrorCount(errors, total)


def der(ref: AttributedTranscript, hyp: AttributedTranscript, collar_ms: int = 0) -> Fraction:
    counts = der_counts(ref, hyp, collar_ms)
    if counts.total == 0:
        raise EmptyReference("reference has no scored speech")
    return counts.rate


# -- atomic tasks ------------------------------------------------------------

def _trial_error(trials, what: str) -> Fraction:
    trials = list(trials)
    if not trials:
        raise EmptyInput(f"{what} needs at least one trial")
    wrong = sum(1 for gold, answer in trials if answer is None or answer != gold)
    return Fraction(wrong, len(trials))


def sv_error(trials: Sequence[tuple[str, Optional[str]]]) -> Fraction:
    """Binary verification error; ``None`` answers (unparseable) count as wrong."""
    return _trial_error(trials, "speaker verification")


def si_error(trials: Sequence[tuple[str, Optional[str]]]) -> Fraction:
    """Multiple-choice identification error; ``None`` answers count as wrong."""
    return _trial_error(trials, "speaker identification")


def iou(a: BoundingBox, b: BoundingBox) -> float:
    if a.normalized != b.normalized:
        raise UnitMismatch("cannot compare normalized and pixel boxes")
    w = min(a.x2, b.x2) - max(a.x1, b.x1)
    h = min(a.y2, b.y2) - max(a.y1, b.y1)
    if w <= 0 or h <= 0:
        return 0.0
    inter = w * h
    return inter / (a.area + b.area - inter)


def _center_inside(pred: BoundingBox, gt: BoundingBox) -> bool:
    cx, cy = pred.center
    return gt.x1 <= cx <= gt.x2 and gt.y1 <= cy <= gt.y2


def sl_hit(pred: Optional[BoundingBox], gt: BoundingBox, threshold: float = 0.5, mode: str = "iou") -> bool:
    if pred is None:
        return False
    if mode == "iou":
        return iou(pred, gt) >= threshold
    if mode == "center":
        if pred.normalized != gt.normalized:
            raise UnitMismatch("cannot compare normalized and pixel boxes")
        return _center_inside(pred, gt)
    raise ValueError(f"unknown localization mode {mode!r}")


def sl_miss_rate(
    preds: Sequence[Optional[BoundingBox]],
    gts: Sequence[BoundingBox],
    threshold: float = 0.5,
    mode: str = "iou",
) -> Fraction:
    if len(preds) != len(gts):
        raise ValueError(f"{len(preds)} predictions for {len(gts)} ground-truth boxes")
    if not gts:
        raise EmptyInput("speaker localization needs at least one sample")
    misses = sum(1 for p, g in zip(preds, gts) if not sl_hit(p, g, threshold, mode))
    return Fraction(misses, len(gts))


def aggregate_avg(per_task: Sequence[float]) -> float:
    """Plain mean of the seven benchmark columns (percentages)."""
    values = list(per_task)
    if len(values) != AVG_ARITY:
        raise WrongArity(f"expected {AVG_ARITY} column values, got {len(values)}")
    return sum(values) / AVG_ARITY
