"""Command line front end: ``score``, ``score-pair``, ``synth`` and ``convert``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ScoringError
from .normalize import NormalizationConfig
from .records import (
    Manifest,
    ManifestEntry,
    dump_manifest,
    emit_registration,
    emit_rttm,
    emit_transcript,
    parse_rttm,
    parse_transcript,
)
from .report import emit_report
from .runner import EXIT_MANIFEST, EXIT_OK, EXIT_PARSE, ScoreOptions, aggregate, run_manifest, score_entry
from .synth import DropSegments, ShiftAll, SubstituteWords, SwapLabels, SynthConfig, gen_conversation, perturb


def _add_scoring_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--collar", type=int, default=0, metavar="MS", help="no-score collar around reference boundaries")
    p.add_argument("--iou-threshold", type=float, default=0.5, metavar="F")
    p.add_argument("--sl-mode", choices=("iou", "center"), default="iou")
    p.add_argument("--strict", action="store_true", help="reject malformed hypothesis records")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    p.add_argument("--no-lowercase", action="store_true")
    p.add_argument("--keep-punctuation", action="store_true")
    p.add_argument("--spell-digits", action="store_true", help="spell out digit runs as words")


def _options(args) -> ScoreOptions:
    if args.collar < 0:
        raise SystemExit("--collar must be non-negative")
    cfg = NormalizationConfig(
        lowercase=not args.no_lowercase,
        strip_punctuation=not args.keep_punctuation,
        digit_policy="spell_out" if args.spell_digits else "keep",
    )
    return ScoreOptions(args.collar, args.iou_threshold, args.sl_mode, args.strict, cfg, getattr(args, "jobs", 1))


def cmd_score(args) -> int:
    opts = _options(args)
    outcome = run_manifest(args.manifest, opts)
    if outcome.exit_code != EXIT_OK:
        print(f"error: {outcome.message}", file=sys.stderr)
        return outcome.exit_code
    try:
        emit_report(outcome.reports, args.format, args.output, opts.describe())
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_MANIFEST
    return EXIT_OK


def cmd_score_pair(args) -> int:
    opts = _options(args)
    if (args.task == "vrsdr") != (args.registration is not None):
        print("error: --registration is required for vrsdr and only for vrsdr", file=sys.stderr)
        return EXIT_MANIFEST
    for p in (args.reference, args.hypothesis, args.registration):
        if p is not None and not Path(p).is_file():
            print(f"error: file not found: {p}", file=sys.stderr)
            return EXIT_MANIFEST
    entry = ManifestEntry(
        "pair",
        args.task,
        Path(args.reference),
        Path(args.hypothesis),
        Path(args.registration) if args.registration else None,
        args.subset,
    )
    try:
        result = score_entry(entry, opts)
    except ScoringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    emit_report(aggregate([result]), args.format, args.output, opts.describe())
    return EXIT_OK


def cmd_synth(args) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = SynthConfig(
        seed=args.seed,
        n_speakers=args.speakers,
        n_turns=args.turns,
        overlap_probability=args.overlap,
        vocabulary=args.vocabulary,
    )
    if args.pairs == 0:
        ref, reg = gen_conversation(base)
        (out / "reference.txt").write_text(emit_transcript(ref), encoding="utf-8")
        (out / "registration.txt").write_text(emit_registration(reg), encoding="utf-8")
        return EXIT_OK

    entries = []
    for i in range(args.pairs):
        cfg = SynthConfig(
            seed=args.seed + i,
            n_speakers=1 + (args.seed + i) % args.speakers,
            n_turns=args.turns,
            overlap_probability=args.overlap,
            vocabulary=args.vocabulary,
        )
        ref, reg = gen_conversation(cfg)
        hyp = perturb(ref, SubstituteWords(args.error_rate, seed=cfg.seed))
        hyp = perturb(hyp, DropSegments(args.error_rate / 2, seed=cfg.seed + 1))
        if len(hyp.speakers) >= 2 and i % 3 == 0:
            hyp = perturb(hyp, SwapLabels(*hyp.speakers[:2]))
        if i % 5 == 0:
            hyp = perturb(hyp, ShiftAll(250))
        sid = f"sample{i:05d}"
        names = {kind: f"{sid}.{kind}.txt" for kind in ("ref", "hyp", "reg")}
        (out / names["ref"]).write_text(emit_transcript(ref), encoding="utf-8")
        (out / names["hyp"]).write_text(emit_transcript(hyp), encoding="utf-8")
        (out / names["reg"]).write_text(emit_registration(reg), encoding="utf-8")
        entries.append(
            ManifestEntry(sid, "vrsdr", out / names["ref"], out / names["hyp"], out / names["reg"], "hard")
        )
    manifest = Manifest(tuple(entries), base_dir=out)
    (out / "manifest.json").write_text(dump_manifest(manifest), encoding="utf-8")
    return EXIT_OK


def cmd_convert(args) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    try:
        if args.to == "rttm":
            result = emit_rttm(parse_transcript(text, strict=args.strict), file_id=args.file_id)
        else:
            result = emit_transcript(parse_rttm(text))
    except ScoringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.output in (None, "-"):
        sys.stdout.write(result)
    else:
        Path(args.output).write_text(result, encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vrsdr-score", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score every entry of a manifest")
    p.add_argument("manifest")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    _add_scoring_flags(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("score-pair", help="score one reference/hypothesis pair")
    p.add_argument("reference")
    p.add_argument("hypothesis")
    p.add_argument("--task", choices=("vrsdr", "sr", "sv", "sl", "si"), default="vrsdr")
    p.add_argument("--registration", default=None)
    p.add_argument("--subset", choices=("easy", "hard", "none"), default="none")
    _add_scoring_flags(p)
    p.set_defaults(func=cmd_score_pair)

    p = sub.add_parser("synth", help="write synthetic conversations (and optionally a scored-pair manifest)")
    p.add_argument("out_dir")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--speakers", type=int, default=3, help="speaker count (max per pair with --pairs)")
    p.add_argument("--turns", type=int, default=20)
    p.add_argument("--overlap", type=float, default=0.0)
    p.add_argument("--vocabulary", type=int, default=200)
    p.add_argument("--pairs", type=int, default=0, help="also write N perturbed pairs and manifest.json")
    p.add_argument("--error-rate", type=float, default=0.1)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("convert", help="convert between VR-SDR records and RTTM")
    p.add_argument("input")
    p.add_argument("--to", choices=("rttm", "vrsdr"), required=True)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--file-id", default="f")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
