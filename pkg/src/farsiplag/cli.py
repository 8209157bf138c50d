"""Command-line entry point.

Exit codes: 0 success, 2 usage error, 3 data error, 4 resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .errors import DataError, MissingFile, ResourceError
from .persian_text import DATA_DIR, RawDocument, Role, TokenKind
from .pipeline import PipelineConfig, Resources, preprocess_tokens, render_terms, run_pipeline
from .similarity import SimilarityScore, compare
from .verdict_eval import (
    AGGREGATES,
    VerdictThresholds,
    calibrate_thresholds,
    classify,
    evaluate_combination,
    rank_combinations,
    score_pairs,
)

log = logging.getLogger("farsiplag")

EXIT_USAGE, EXIT_DATA, EXIT_RESOURCE = 2, 3, 4
BUNDLED_CONFIGS = DATA_DIR / "configs"


def _natural_key(path: Path):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", path.stem)]


def load_configs(source: str | Path) -> list[tuple[str, PipelineConfig]]:
    """Configs from a directory (*.conf / *.json), a JSON list, or one file."""
    source = Path(source)
    if source.is_dir():
        files = sorted((p for p in source.iterdir() if p.suffix in (".conf", ".json")), key=_natural_key)
        if not files:
            raise DataError(f"no .conf or .json configs in {source}")
        return [(p.stem, PipelineConfig.load(p)) for p in files]
    if not source.is_file():
        raise DataError(f"config source {source} does not exist")
    text = source.read_text(encoding="utf-8-sig")
    if text.lstrip().startswith("["):
        items = json.loads(text)
        out = []
        for i, item in enumerate(items, 1):
            item = dict(item)
            name = str(item.pop("name", i))
            out.append((name, PipelineConfig.from_mapping(item)))
        return out
    return [(source.stem, PipelineConfig.load(source))]


def _read_doc(path: str, role: Role) -> RawDocument:
    try:
        return RawDocument(Path(path).name, Path(path).read_text(encoding="utf-8-sig"), role)
    except FileNotFoundError:
        raise MissingFile(f"file not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise DataError(f"{path} is not valid UTF-8 ({exc.reason})") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands -----------------------------------------------------------------

def cmd_compare(args, resources: Resources) -> None:
    config = PipelineConfig.load(args.config)
    orig = _read_doc(args.original, Role.ORIGINAL)
    susp = _read_doc(args.suspicious, Role.SUSPICIOUS)
    score = compare(run_pipeline(orig, config, resources), run_pipeline(susp, config, resources),
                    config.metric, config.lcs_divisor)
    report = {
        "original": orig.id,
        "suspicious": susp.id,
        "fingerprint": config.fingerprint,
        "metric": str(config.metric),
        "score": score.value,
    }
    if args.thresholds:
        th = VerdictThresholds.from_dict(json.loads(Path(args.thresholds).read_text(encoding="utf-8")))
        report["verdict"] = classify(score, th).label
    if args.format == "json":
        _emit(json.dumps(report, ensure_ascii=False, indent=2) + "\n", args.out)
    else:
        row = [report[k] if k != "score" else f"{score.value:.4f}" for k in report]
        _emit(_csv(list(report), [row]), args.out)


def cmd_evaluate(args, resources: Resources) -> None:
    corpus = corpus_mod.load_corpus(args.corpus)
    configs = load_configs(args.configs or BUNDLED_CONFIGS)
    reports = []
    for label, config in configs:
        log.info("evaluating combination %s (%s)", label, config.metric)
        reports.append(evaluate_combination(corpus, config, resources, label, args.aggregate, args.workers))
    ranking = rank_combinations(reports)
    if args.format == "json":
        _emit(corpus_mod.render_reports(reports, "json", ranking), args.out)
    else:
        _emit(corpus_mod.render_reports(reports, "tableI-csv"), args.out)
    if args.out:
        out = Path(args.out)
        stem = out.with_suffix("")
        if args.format == "csv":
            corpus_mod.write_reports(reports, "dispersion-csv", stem.with_name(stem.name + ".dispersion.csv"))
            rows = [[i, r.label, f"{r.worst_dispersion:.4f}", f"{r.separation:.4f}", r.fingerprint]
                    for i, r in enumerate(ranking, 1)]
            stem.with_name(stem.name + ".ranking.csv").write_bytes(
                _csv(["rank", "combination", "worst_dispersion", "separation", "fingerprint"], rows).encode()
            )
        if not args.no_figures:
            from .plotting import render_figures

            for path in render_figures(reports, stem):
                log.info("wrote %s", path)
    best = ", ".join(r.label for r in ranking[:4])
    log.info("lowest %s dispersion: %s", args.aggregate, best)


def cmd_calibrate(args, resources: Resources) -> None:
    corpus = corpus_mod.load_corpus(args.corpus)
    config = PipelineConfig.load(args.config)
    pairs = score_pairs(corpus, config, resources, args.workers)
    th = calibrate_thresholds((SimilarityScore(p.value, config.metric), p.gold) for p in pairs)
    _emit(json.dumps(th.to_dict(), indent=2) + "\n", args.out)


def cmd_preprocess(args, resources: Resources) -> None:
    config = PipelineConfig.load(args.config)
    doc = _read_doc(args.file, Role.ORIGINAL)
    tokens = [t for t in preprocess_tokens(doc, config, resources) if t.kind is not TokenKind.PUNCTUATION]
    terms = render_terms(tokens, config)
    if args.format == "json":
        dump = {"source": doc.id, "fingerprint": config.fingerprint, "terms": terms}
        if config.sentence_segmentation:
            dump["sentences"] = [t.sentence for t in tokens]
        _emit(json.dumps(dump, ensure_ascii=False, indent=2) + "\n", args.out)
    else:
        rows = [[t.sentence, t.surface, term] for t, term in zip(tokens, terms)]
        _emit(_csv(["sentence", "surface", "term"], rows), args.out)


# -- parser -------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommand copies use SUPPRESS so they only override when given
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "csv"), default=d("json"))
    parser.add_argument("--resources", metavar="DIR", default=d(None),
                        help="lexicon directory (default: bundled lexicons)")
    parser.add_argument("--out", metavar="PATH", default=d(None), help="write output here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    parser = argparse.ArgumentParser(prog="farsiplag", description="Persian text-reuse detection and combination evaluation.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", parents=[common], help="score one original/suspicious pair")
    p.add_argument("original")
    p.add_argument("suspicious")
    p.add_argument("--config", required=True)
    p.add_argument("--thresholds", help="thresholds JSON from 'calibrate'")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("evaluate", parents=[common], help="per-verdict statistics for each combination")
    p.add_argument("corpus")
    p.add_argument("--configs", help="config file or directory (default: the ten bundled combinations)")
    p.add_argument("--aggregate", choices=sorted(AGGREGATES), default="max")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-figures", action="store_true", help="skip the PNG figures written next to --out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("calibrate", parents=[common], help="derive verdict thresholds from a labeled corpus")
    p.add_argument("corpus")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("preprocess", parents=[common], help="dump the comparison terms of one file")
    p.add_argument("file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_preprocess)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        resources = Resources.load(args.resources) if args.resources else Resources.bundled()
        if args.out:
            Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        args.func(args, resources)
    except ResourceError as exc:
        print(f"farsiplag: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DataError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"farsiplag: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"farsiplag: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
