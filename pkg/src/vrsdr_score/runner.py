"""Manifest-driven batch scoring.

Each manifest entry is scored independently (optionally in a process
pool); results are merged by sample id, so the report does not depend on
worker scheduling. Per-task aggregates pool numerators and denominators
across samples.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

from . import metrics
from .errors import MalformedRecord, ManifestError, ScoringError
from .normalize import NormalizationConfig, normalize
from .records import (
    Manifest,
    ManifestEntry,
    extract_binary_answer,
    extract_choice,
    load_manifest,
    parse_bbox,
    parse_registration,
    parse_transcript,
    parse_transcript_ex,
    try_parse_bbox,
)
from .report import ScoreReport

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_MANIFEST = 2

TASK_METRICS = {
    "vrsdr": ("sa_wer", "ier", "cp_wer", "der"),
    "sr": ("wer",),
    "sv": ("error",),
    "sl": ("miss_rate",),
    "si": ("error",),
}


@dataclass(frozen=True)
class ScoreOptions:
    collar_ms: int = 0
    iou_threshold: float = 0.5
    sl_mode: str = "iou"
    strict: bool = False
    normalization: NormalizationConfig = NormalizationConfig()
    jobs: int = 1

    def describe(self) -> dict:
        """Options that affect scores (``jobs`` deliberately excluded)."""
        return {
            "collar_ms": self.collar_ms,
            "iou_threshold": self.iou_threshold,
            "sl_mode": self.sl_mode,
            "strict": self.strict,
            "normalization": asdict(self.normalization),
        }


@dataclass
class SampleResult:
    sample_id: str
    task: str
    subset: str
    counts: dict[str, tuple[int, int]]  # metric -> (errors, total)
    extra: dict[str, dict] = field(default_factory=dict)  # metric -> detail fields
    warnings: list[str] = field(default_factory=list)


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _score_vrsdr(entry: ManifestEntry, opts: ScoreOptions, result: SampleResult) -> None:
    reg = parse_registration(_read(entry.registration_path))
    ref = parse_transcript(_read(entry.reference_path), strict=True, cfg=opts.normalization, registration=reg)
    parsed = parse_transcript_ex(_read(entry.hypothesis_path), strict=opts.strict, cfg=opts.normalization, registration=reg)
    hyp = parsed.transcript
    result.warnings.extend(f"line {w.line}: {w.detail}" for w in parsed.warnings)
    result.warnings.extend(f"unregistered hypothesis speaker {s!r}" for s in hyp.unregistered(reg))

    sa = metrics.sa_wer_counts(ref, hyp, reg)
    result.counts["sa_wer"] = (sa.errors, sa.total)
    result.extra["sa_wer"] = {
        "per_speaker": {
            s: {"sub": a.substitutions, "del": a.deletions, "ins": a.insertions, "cor": a.corrects}
            for s, a in metrics.sa_wer_alignments(ref, hyp, reg).items()
        }
    }
    bd = metrics.ier_breakdown(ref, hyp, reg, opts.collar_ms)
    result.counts["ier"] = (bd.error_ms, bd.total_ms)
    result.extra["ier"] = {"breakdown": bd.as_dict()}
    cp, cp_map = metrics.cp_wer_counts(ref, hyp)
    result.counts["cp_wer"] = (cp.errors, cp.total)
    result.extra["cp_wer"] = {"mapping": dict(sorted(cp_map.items()))}
    dc = metrics.der_counts(ref, hyp, opts.collar_ms)
    result.counts["der"] = (dc.errors, dc.total)


def _score_sr(entry: ManifestEntry, opts: ScoreOptions, result: SampleResult) -> None:
    ref = normalize(_read(entry.reference_path), opts.normalization)
    hyp = normalize(_read(entry.hypothesis_path), opts.normalization)
    c = metrics.wer_counts(ref, hyp)
    result.counts["wer"] = (c.errors, c.total)


def _score_sv(entry: ManifestEntry, opts: ScoreOptions, result: SampleResult) -> None:
    gold = extract_binary_answer(_read(entry.reference_path))
    if gold is None:
        raise MalformedRecord(1, f"{entry.reference_path}: reference is neither yes nor no")
    answer = extract_binary_answer(_read(entry.hypothesis_path))
    if answer is None:
        if opts.strict:
            raise MalformedRecord(1, f"{entry.hypothesis_path}: no yes/no answer")
        result.warnings.append("unparseable answer")
    result.counts["error"] = (int(answer != gold), 1)
    result.extra["error"] = {"gold": gold, "answer": answer}


def _read_si_reference(path: Path) -> tuple[str, dict[str, str]]:
    lines = [ln.strip() for ln in _read(path).splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 1 or not lines[0].isalpha():
        raise MalformedRecord(1, f"{path}: first line must be the gold option letter")
    options = {}
    for n, line in enumerate(lines[1:], 2):
        letter, sep, text = line.partition(":")
        if not sep or len(letter.strip()) != 1:
            raise MalformedRecord(n, f"{path}: option lines look like 'A: text'")
        options[letter.strip().upper()] = text.strip()
    return lines[0].upper(), options


def _score_si(entry: ManifestEntry, opts: ScoreOptions, result: SampleResult) -> None:
    gold, options = _read_si_reference(entry.reference_path)
    letters = sorted(set(options) | {gold} | set("ABCD"))
    answer = extract_choice(_read(entry.hypothesis_path), letters, options or None)
    if answer is None:
        if opts.strict:
            raise MalformedRecord(1, f"{entry.hypothesis_path}: no unambiguous option")
        result.warnings.append("unparseable answer")
    result.counts["error"] = (int(answer != gold), 1)
    result.extra["error"] = {"gold": gold, "answer": answer}


def _score_sl(entry: ManifestEntry, opts: ScoreOptions, result: SampleResult) -> None:
    gt = parse_bbox(_read(entry.reference_path))
    text = _read(entry.hypothesis_path)
    pred = parse_bbox(text) if opts.strict else try_parse_bbox(text)
    if pred is None:
        result.warnings.append("unparseable box")
    elif pred.normalized != gt.normalized:
        result.warnings.append("box units differ from ground truth")
        pred = None
    hit = metrics.sl_hit(pred, gt, opts.iou_threshold, opts.sl_mode)
    result.counts["miss_rate"] = (int(not hit), 1)
    detail = {"hit": hit}
    if pred is not None:
        detail["iou"] = metrics.iou(pred, gt)
    result.extra["miss_rate"] = detail


_SCORERS = {"vrsdr": _score_vrsdr, "sr": _score_sr, "sv": _score_sv, "si": _score_si, "sl": _score_sl}


def score_entry(entry: ManifestEntry, opts: ScoreOptions) -> SampleResult:
    result = SampleResult(entry.sample_id, entry.task, entry.subset, {})
    _SCORERS[entry.task](entry, opts, result)
    return result


def _score_job(args):
    return score_entry(*args)


def score_entries(entries, opts: ScoreOptions) -> list[SampleResult]:
    jobs = [(e, opts) for e in entries]
    if opts.jobs > 1 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (opts.jobs * 4))
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(_score_job, jobs, chunksize=chunk))
    else:
        results = [_score_job(j) for j in jobs]
    return sorted(results, key=lambda r: r.sample_id)


def aggregate(results: list[SampleResult], manifest: Optional[Manifest] = None) -> list[ScoreReport]:
    groups: dict[tuple[str, str, str], list[SampleResult]] = defaultdict(list)
    for res in sorted(results, key=lambda r: r.sample_id):
        for metric in TASK_METRICS[res.task]:
            groups[(res.task, metric, res.subset)].append(res)
    reports = []
    for (task, metric, subset), members in groups.items():
        errors = sum(m.counts[metric][0] for m in members)
        total = sum(m.counts[metric][1] for m in members)
        details = []
        for m in members:
            e, t = m.counts[metric]
            item = {"sample_id": m.sample_id, "errors": e, "total": t, "value": e / t if t else None}
            item.update(m.extra.get(metric, {}))
            if m.warnings:
                item["warnings"] = list(m.warnings)
            details.append(item)
        value = metrics.ErrorCount(errors, total).rate if total else None
        reports.append(ScoreReport(task, metric, value, subset, len(members), errors, total, details))
    if manifest is not None:
        for pre in manifest.precomputed:
            reports.append(ScoreReport(pre.task, pre.metric, pre.value, pre.subset, pre.count))
    return reports


@dataclass
class RunOutcome:
    reports: list[ScoreReport]
    exit_code: int
    message: str = ""


def run_manifest(manifest_path: Union[str, Path], options: ScoreOptions = ScoreOptions()) -> RunOutcome:
    """Score every manifest entry; never raises for input problems.

    Exit codes: 0 success, 1 strict-mode parse failure, 2 manifest or
    schema error (including missing files). Nothing is reported on failure.
    """
    try:
        manifest = load_manifest(manifest_path)
    except ManifestError as exc:
        return RunOutcome([], EXIT_MANIFEST, str(exc))
    try:
        results = score_entries(manifest.entries, options)
    except MalformedRecord as exc:
        return RunOutcome([], EXIT_PARSE, f"parse error: {exc}")
    except OSError as exc:
        return RunOutcome([], EXIT_MANIFEST, f"cannot read input: {exc}")
    except ScoringError as exc:
        return RunOutcome([], EXIT_PARSE, f"{type(exc).__name__}: {exc}")
    for res in results:
        for w in res.warnings:
            log.info("%s: %s", res.sample_id, w)
    return RunOutcome(aggregate(results, manifest), EXIT_OK)
