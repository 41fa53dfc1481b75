"""Deterministic synthetic conversations and controlled perturbations.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014) so fixtures
are reproducible in any language::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    return z ^ (z >> 31)

``below(n)`` is ``next() % n`` and ``uniform()`` is ``(next() >> 11) / 2**53``.

Generation, one turn at a time (cursor = max end time so far, initially 0):

1. speaker: turn 0 takes S1. Later turns draw an overlap flag first
   (``uniform() < overlap_probability``, only drawn when n_speakers > 1).
   The speaker is ``below(n_speakers)``; on an overlap turn it is redrawn
   from the others as ``(prev + 1 + below(n - 1)) % n``.
2. words: ``lo + below(hi - lo + 1)`` tokens, each ``w<below(vocabulary)>``
   (``s<i>w<k>`` when ``shared_vocabulary`` is off).
3. duration from ``turn_duration_ms``, same inclusive-range draw.
4. start: on overlap turns ``prev_start + prev_duration * (1 + below(3)) // 4``,
   otherwise ``cursor + gap`` with the gap drawn from ``gap_ms``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import UnknownLabel
from .model import AttributedTranscript, Registration, Segment

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next() % n

    def uniform(self) -> float:
        return (self.next() >> 11) / float(1 << 53)

    def between(self, lo: int, hi: int) -> int:
        """Inclusive integer range."""
        return lo + self.below(hi - lo + 1)


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 0
    n_speakers: int = 2
    n_turns: int = 10
    words_per_turn: tuple[int, int] = (3, 12)
    turn_duration_ms: tuple[int, int] = (800, 6000)
    gap_ms: tuple[int, int] = (0, 1500)
    overlap_probability: float = 0.0
    vocabulary: int = 200
    shared_vocabulary: bool = True

    def __post_init__(self):
        if self.n_speakers < 1 or self.n_turns < 1:
            raise ValueError("need at least one speaker and one turn")
        for name in ("words_per_turn", "turn_duration_ms", "gap_ms"):
            lo, hi = getattr(self, name)
            if lo < 0 or hi < lo:
                raise ValueError(f"{name} must be a non-empty range of non-negative values")
        if self.turn_duration_ms[0] < 1:
            raise ValueError("turns must last at least 1 ms")
        if not 0.0 <= self.overlap_probability <= 1.0:
            raise ValueError("overlap_probability must lie in [0, 1]")
        if self.vocabulary < 1:
            raise ValueError("vocabulary must be non-empty")


def speaker_names(n: int) -> list[str]:
    return [f"S{i}" for i in range(1, n + 1)]


def gen_conversation(cfg: SynthConfig) -> tuple[AttributedTranscript, Registration]:
    rng = SplitMix64(cfg.seed)
    names = speaker_names(cfg.n_speakers)
    registration = Registration(tuple((s, f"placeholder description of speaker {s}") for s in names))
    n = cfg.n_speakers
    segments = []
    cursor = 0
    prev_idx = prev_start = prev_dur = 0
    for turn in range(cfg.n_turns):
        overlap = False
        if turn == 0:
            idx = 0
        else:
            if n > 1:
                overlap = rng.uniform() < cfg.overlap_probability
            idx = rng.below(n)
            if overlap:
                idx = (prev_idx + 1 + rng.below(n - 1)) % n
        n_words = rng.between(*cfg.words_per_turn)
        if cfg.shared_vocabulary:
            words = [f"w{rng.below(cfg.vocabulary)}" for _ in range(n_words)]
        else:
            words = [f"s{idx + 1}w{rng.below(cfg.vocabulary)}" for _ in range(n_words)]
        duration = rng.between(*cfg.turn_duration_ms)
        if overlap:
            start = prev_start + prev_dur * (1 + rng.below(3)) // 4
        else:
            start = cursor + (rng.between(*cfg.gap_ms) if turn else 0)
        segments.append(Segment(names[idx], start, start + duration, tuple(words)))
        cursor = max(cursor, start + duration)
        prev_idx, prev_start, prev_dur = idx, start, duration
    return AttributedTranscript(tuple(segments), registration), registration


# -- perturbations -------------------------------------------------------------

@dataclass(frozen=True)
class SwapLabels:
    a: str
    b: str


@dataclass(frozen=True)
class ShiftAll:
    delta_ms: int


@dataclass(frozen=True)
class SubstituteWords:
    rate: float
    seed: int = 0


@dataclass(frozen=True)
class DropSegments:
    rate: float
    seed: int = 0


@dataclass(frozen=True)
class RelabelToUnregistered:
    a: str
    new_label: str = ""

    @property
    def target(self) -> str:
        return self.new_label or f"unregistered_{self.a}"


Perturbation = Union[SwapLabels, ShiftAll, SubstituteWords, DropSegments, RelabelToUnregistered]


def _need(t: AttributedTranscript, *labels: str) -> None:
    present = set(t.speakers)
    for label in labels:
        if label not in present:
            raise UnknownLabel(label)


def _check_rate(rate: float) -> None:
    if not 0.0 <= rate <= 1.0:
        raise ValueError("rate must lie in [0, 1]")


def perturb(t: AttributedTranscript, op: Perturbation) -> AttributedTranscript:
    """Apply exactly one mutation; the input is left untouched."""
    segs = t.segments
    if isinstance(op, SwapLabels):
        _need(t, op.a, op.b)
        swap = {op.a: op.b, op.b: op.a}
        out = [Segment(swap.get(s.speaker, s.speaker), s.start_ms, s.end_ms, s.tokens) for s in segs]
    elif isinstance(op, ShiftAll):
        if segs and segs[0].start_ms + op.delta_ms < 0:
            raise ValueError(f"shift by {op.delta_ms} ms would move speech before 0")
        out = [Segment(s.speaker, s.start_ms + op.delta_ms, s.end_ms + op.delta_ms, s.tokens) for s in segs]
    elif isinstance(op, SubstituteWords):
        _check_rate(op.rate)
        rng = SplitMix64(op.seed)
        out = []
        for s in segs:
            tokens = tuple(
                f"sub{rng.below(1_000_000)}" if rng.uniform() < op.rate else tok for tok in s.tokens
            )
            out.append(Segment(s.speaker, s.start_ms, s.end_ms, tokens))
    elif isinstance(op, DropSegments):
        _check_rate(op.rate)
        rng = SplitMix64(op.seed)
        out = [s for s in segs if not rng.uniform() < op.rate]
    elif isinstance(op, RelabelToUnregistered):
        _need(t, op.a)
        out = [Segment(op.target if s.speaker == op.a else s.speaker, s.start_ms, s.end_ms, s.tokens) for s in segs]
    else:
        raise TypeError(f"unknown perturbation {op!r}")
    return t.with_segments(out)
