"""Interval algebra over reference and hypothesis speaker activity.

A boundary sweep splits ``[0, T]`` into cells on which the set of active
reference and hypothesis speakers is constant. Attribution then charges
each cell's duration to correct / miss / false-alarm / confusion per
registered speaker.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass

from .errors import UnknownReferenceSpeaker
from .model import AttributedTranscript, IerBreakdown, Registration, SpeakerTimes

Interval = tuple[int, int]


@dataclass(frozen=True)
class Cell:
    start_ms: int
    end_ms: int
    ref_active: frozenset[str]
    hyp_active: frozenset[str]
    excluded: bool = False

    @property
    def duration_ms(self) -> int:
        return self.end_ms - self.start_ms


@dataclass(frozen=True)
class Timeline:
    cells: tuple[Cell, ...]
    ref_speakers: frozenset[str] = frozenset()
    hyp_speakers: frozenset[str] = frozenset()

    @property
    def end_ms(self) -> int:
        return self.cells[-1].end_ms if self.cells else 0

    def scored(self):
        return (c for c in self.cells if not c.excluded)


def merge_intervals(intervals) -> list[Interval]:
    """Union of half-open intervals; abutting ones are joined, empty ones dropped."""
    merged: list[list[int]] = []
    for start, end in sorted(intervals):
        if end <= start:
            continue
        if merged and start <= merged[-1][1]:
            if end > merged[-1][1]:
                merged[-1][1] = end
        else:
            merged.append([start, end])
    return [(s, e) for s, e in merged]


def speaker_activity(t: AttributedTranscript) -> dict[str, list[Interval]]:
    raw: dict[str, list[Interval]] = defaultdict(list)
    for seg in t.segments:
        raw[seg.speaker].append((seg.start_ms, seg.end_ms))
    return {spk: merge_intervals(iv) for spk, iv in raw.items()}


def _collar_zones(ref_activity: dict[str, list[Interval]], collar_ms: int, total: int) -> list[Interval]:
    zones = []
    for intervals in ref_activity.values():
        for start, end in intervals:
            for b in (start, end):
                zones.append((max(0, b - collar_ms), min(total, b + collar_ms)))
    return merge_intervals(zones)


def build_timeline(ref: AttributedTranscript, hyp: AttributedTranscript, collar_ms: int = 0) -> Timeline:
    if collar_ms < 0:
        raise ValueError("collar must be non-negative")
    ref_act = speaker_activity(ref)
    hyp_act = speaker_activity(hyp)
    total = max(ref.end_ms, hyp.end_ms)
    ref_speakers = frozenset(ref.speakers)
    hyp_speakers = frozenset(hyp.speakers)
    if total == 0:
        return Timeline((), ref_speakers, hyp_speakers)

    # (time, side, speaker, +1 start / -1 end); sides: 0 ref, 1 hyp
    events = []
    bounds = {0, total}
    for side, activity in ((0, ref_act), (1, hyp_act)):
        for spk, intervals in activity.items():
            for start, end in intervals:
                events.append((start, side, spk, 1))
                events.append((end, side, spk, -1))
                bounds.add(start)
                bounds.add(end)
    zones = _collar_zones(ref_act, collar_ms, total) if collar_ms else []
    for start, end in zones:
        bounds.add(start)
        bounds.add(end)
    zone_starts = [z[0] for z in zones]

    events.sort(key=lambda e: e[0])
    active = (set(), set())
    cells = []
    k = 0
    ordered = sorted(bounds)
    for a, b in zip(ordered, ordered[1:]):
        while k < len(events) and events[k][0] <= a:
            _, side, spk, delta = events[k]
            if delta > 0:
                active[side].add(spk)
            else:
                active[side].discard(spk)
            k += 1
        excluded = False
        if zones:
            z = bisect_right(zone_starts, a) - 1
            excluded = z >= 0 and zones[z][1] >= b
        cells.append(Cell(a, b, frozenset(active[0]), frozenset(active[1]), excluded))
    return Timeline(tuple(cells), ref_speakers, hyp_speakers)


def attribute(tl: Timeline, r: Registration) -> IerBreakdown:
    """Charge every scored cell to registered speakers.

    Hypothesis speech over a different reference speaker is that reference
    speaker's confusion; false alarm is only charged during reference
    silence. Unregistered hypothesis speakers active in silence add the
    cell once to ``unregistered_fa_ms``.
    """
    for spk in sorted(tl.ref_speakers):
        if spk not in r:
            raise UnknownReferenceSpeaker(spk)
    per = {label: SpeakerTimes() for label in r.labels}
    unregistered_fa = 0
    for cell in tl.scored():
        d = cell.duration_ms
        ref_on, hyp_on = cell.ref_active, cell.hyp_active
        if ref_on:
            for s in ref_on:
                times = per[s]
                times.dur_ms += d
                if s in hyp_on:
                    times.correct_ms += d
                elif hyp_on:
                    times.conf_ms += d
                else:
                    times.miss_ms += d
        elif hyp_on:
            stray = False
            for s in hyp_on:
                if s in per:
                    per[s].fa_ms += d
                else:
                    stray = True
            if stray:
                unregistered_fa += d
    return IerBreakdown(per, unregistered_fa)


def overlap_matrix(tl: Timeline, hyp_labels, ref_labels) -> list[list[int]]:
    """Scored co-activity in ms between each hypothesis and reference speaker."""
    hi = {h: i for i, h in enumerate(hyp_labels)}
    ri = {r: j for j, r in enumerate(ref_labels)}
    out = [[0] * len(ref_labels) for _ in hyp_labels]
    for cell in tl.scored():
        if not cell.ref_active or not cell.hyp_active:
            continue
        d = cell.duration_ms
        for h in cell.hyp_active:
            row = out[hi[h]]
            for r in cell.ref_active:
                row[ri[r]] += d
    return out
