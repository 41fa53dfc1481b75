"""Acceptance criteria, one PASS/FAIL line each in the terminal summary."""

import itertools
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES
from helpers import random_timeline_case, registration, to_transcript
from oracles import alignment_distance, grid_attribution, permutation_minimum
from vrsdr_score.alignment import edit_distance
from vrsdr_score.assignment import solve_assignment
from vrsdr_score.cli import main
from vrsdr_score.metrics import aggregate_avg, cp_wer, der, ier, sa_wer
from vrsdr_score.records import emit_rttm, emit_transcript, parse_rttm, parse_transcript
from vrsdr_score.synth import (
    DropSegments,
    RelabelToUnregistered,
    ShiftAll,
    SubstituteWords,
    SwapLabels,
    SynthConfig,
    gen_conversation,
    perturb,
)
from vrsdr_score.timeline import attribute, build_timeline, merge_intervals

FIXTURES = Path(__file__).parent / "fixtures"


def record(number, title, ok, detail, seconds=None, limit=None):
    timing = "" if seconds is None else f" ({seconds * 1000:.1f} ms, limit {limit * 1000:.0f} ms)"
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}{timing}")
    assert ok, detail


def test_c1_table_avg():
    rows = {
        "row A": ((1.9, 13.2, 0.8, 1.0, 21.1, 47.1, 28.5), 16.2),
        "row B": ((1.39, 5.2, 12.8, 5.5, 30.5, 36.6, 36.3), 18.3),
        "row C": ((1.9, 51.1, 20.6, 12.4, 63.2, 95.4, 56.85), 43.06),
    }
    start = time.perf_counter()
    got = {name: aggregate_avg(values) for name, (values, _) in rows.items()}
    elapsed = time.perf_counter() - start
    ok = all(abs(got[n] - want) <= 0.15 for n, (_, want) in rows.items()) and elapsed < 0.001
    detail = ", ".join(f"{n} {got[n]:.3f} vs {want}" for n, (_, want) in rows.items())
    record(1, "AVG reproduction", ok, detail, elapsed, 0.001)


def test_c2_identity():
    start = time.perf_counter()
    bad = 0
    for seed in range(200):
        cfg = SynthConfig(seed=seed, n_speakers=1 + seed % 6, n_turns=12, overlap_probability=0.2 * (seed % 3))
        ref, reg = gen_conversation(cfg)
        if sa_wer(ref, ref, reg) != 0 or ier(ref, ref, reg) != 0:
            bad += 1
    elapsed = time.perf_counter() - start
    record(2, "identity suite", bad == 0 and elapsed < 2, f"{200 - bad}/200 exact zeros", elapsed, 2)


def random_perturbed_pair(seed):
    rng = random.Random(seed)
    cfg = SynthConfig(
        seed=seed,
        n_speakers=rng.randint(1, 5),
        n_turns=rng.randint(1, 12),
        overlap_probability=rng.choice([0.0, 0.3]),
        vocabulary=rng.choice([5, 50]),
    )
    ref, reg = gen_conversation(cfg)
    hyp = ref
    for _ in range(rng.randint(1, 3)):
        speakers = list(hyp.speakers)
        kind = rng.randrange(5)
        if kind == 0 and len(speakers) >= 2:
            hyp = perturb(hyp, SwapLabels(*rng.sample(speakers, 2)))
        elif kind == 1:
            hyp = perturb(hyp, ShiftAll(rng.randint(0, 2000)))
        elif kind == 2:
            hyp = perturb(hyp, SubstituteWords(rng.random(), seed=rng.randrange(1 << 30)))
        elif kind == 3:
            hyp = perturb(hyp, DropSegments(rng.random() / 2, seed=rng.randrange(1 << 30)))
        elif speakers:
            hyp = perturb(hyp, RelabelToUnregistered(rng.choice(speakers)))
    return ref, hyp, reg


def test_c3_dominance():
    start = time.perf_counter()
    violations = []
    for seed in range(500):
        ref, hyp, reg = random_perturbed_pair(seed)
        if not cp_wer(ref, hyp) <= sa_wer(ref, hyp, reg):
            violations.append((seed, "cp_wer"))
        if not der(ref, hyp) <= ier(ref, hyp, reg):
            violations.append((seed, "der"))
    elapsed = time.perf_counter() - start
    record(3, "relaxation dominance", not violations and elapsed < 10, f"{len(violations)} violations in 500 pairs", elapsed, 10)


def test_c4_assignment():
    rng = random.Random(4)
    cases = []
    for _ in range(1000):
        n = rng.randint(1, 7)
        cases.append([[rng.randint(0, 20) for _ in range(n)] for _ in range(n)])
    expected = [permutation_minimum(m) for m in cases]
    start = time.perf_counter()
    got = [solve_assignment(m)[1] for m in cases]
    elapsed = time.perf_counter() - start
    mismatches = sum(g != e for g, e in zip(got, expected))
    record(4, "assignment oracle", mismatches == 0 and elapsed < 5, f"{1000 - mismatches}/1000 match brute force", elapsed, 5)


def test_c5_alignment():
    rng = random.Random(5)
    pairs = [
        ([rng.choice("abc") for _ in range(rng.randint(0, 8))], [rng.choice("abc") for _ in range(rng.randint(0, 8))])
        for _ in range(10_000)
    ]
    start = time.perf_counter()
    mismatches = sum(edit_distance(r, h) != alignment_distance(r, h) for r, h in pairs)
    elapsed = time.perf_counter() - start
    record(5, "alignment oracle", mismatches == 0 and elapsed < 10, f"{10_000 - mismatches}/10000 match", elapsed, 10)


def test_c6_timeline():
    rng = random.Random(6)
    registered = ("A", "B", "C")
    reg = registration(*registered)
    mismatches = 0
    start = time.perf_counter()
    for _ in range(200):
        ref, hyp = random_timeline_case(rng, horizon=3000, registered=registered)
        bd = attribute(build_timeline(to_transcript(ref), to_transcript(hyp)), reg)
        per, stray = grid_attribution(ref, hyp, list(registered))
        got = {s: [t.correct_ms, t.miss_ms, t.fa_ms, t.conf_ms, t.dur_ms] for s, t in bd.per_speaker.items()}
        if got != per or bd.unregistered_fa_ms != stray:
            mismatches += 1
    elapsed = time.perf_counter() - start
    record(6, "timeline oracle", mismatches == 0 and elapsed < 30, f"{200 - mismatches}/200 match 1 ms grid", elapsed, 30)


def speaker_words(t, s):
    return [w for seg in t for w in seg.tokens if seg.speaker == s]


def speaker_ms(t, s):
    return sum(b - a for a, b in merge_intervals([(x.start_ms, x.end_ms) for x in t if x.speaker == s]))


def test_c7_metamorphic_swap():
    literal_cases = general_failures = literal_failures = 0
    for seed in itertools.count():
        if literal_cases >= 50:
            break
        cfg = SynthConfig(seed=seed, n_speakers=2 + seed % 3, n_turns=8, words_per_turn=(4, 4), shared_vocabulary=False)
        ref, reg = gen_conversation(cfg)
        if len(ref.speakers) < 2:
            continue
        a, b = ref.speakers[:2]
        hyp = perturb(ref, SwapLabels(a, b))
        wa, wb = speaker_words(ref, a), speaker_words(ref, b)
        total_words = sum(len(s.tokens) for s in ref)
        total_ms = sum(speaker_ms(ref, s) for s in ref.speakers)
        want_ier = Fraction(speaker_ms(ref, a) + speaker_ms(ref, b), total_ms)
        general = Fraction(edit_distance(wa, wb) + edit_distance(wb, wa), total_words)
        got = (ier(ref, hyp, reg), der(ref, hyp), sa_wer(ref, hyp, reg), cp_wer(ref, hyp))
        if abs(got[0] - want_ier) > 1e-9 or got[1] > 1e-9 or got[3] > 1e-9 or abs(got[2] - general) > 1e-9:
            general_failures += 1
        if len(wa) == len(wb):
            # the additive word formula needs equal word counts and disjoint vocabularies
            literal_cases += 1
            if abs(got[2] - Fraction(len(wa) + len(wb), total_words)) > 1e-9:
                literal_failures += 1
    ok = general_failures == 0 and literal_failures == 0
    record(7, "metamorphic swap", ok, f"{literal_cases} equal-count swaps, {literal_failures + general_failures} deviations")


def test_c8_parallel_determinism(tmp_path):
    assert main(["synth", str(tmp_path), "--pairs", "464", "--seed", "8", "--speakers", "4", "--turns", "12"]) == 0
    manifest = tmp_path / "manifest.json"
    one, eight = tmp_path / "one.json", tmp_path / "eight.json"
    start = time.perf_counter()
    rc1 = main(["score", str(manifest), "--format", "json", "-o", str(one), "--jobs", "1"])
    rc8 = main(["score", str(manifest), "--format", "json", "-o", str(eight), "--jobs", "8"])
    elapsed = time.perf_counter() - start
    same = rc1 == rc8 == 0 and one.read_bytes() == eight.read_bytes()
    record(8, "parallel determinism", same and elapsed < 5, f"byte-identical={same}", elapsed, 5)


def test_c9_round_trips():
    failures = []
    for path in sorted(FIXTURES.glob("*.txt")):
        if path.name == "registration.txt":
            continue
        first = parse_transcript(path.read_text(encoding="utf-8"))
        second = parse_transcript(emit_transcript(first), strict=True)
        if second.segments != first.segments or emit_transcript(second) != emit_transcript(first):
            failures.append(path.name)
        rttm = parse_rttm(emit_rttm(first))
        spans = sorted((s.speaker, s.start_ms, s.end_ms) for s in first)
        if sorted((s.speaker, s.start_ms, s.end_ms) for s in rttm) != spans:
            failures.append(path.name + " (rttm)")
    rttm_text = (FIXTURES / "sample.rttm").read_text(encoding="utf-8")
    t = parse_rttm(rttm_text)
    if parse_rttm(emit_rttm(t)).segments != t.segments:
        failures.append("sample.rttm")
    record(9, "format round-trips", not failures, "all fixtures stable" if not failures else ", ".join(failures))
