"""Command-line entry point.

Subcommands wrap one module each so every stage of the pipeline is
independently scriptable: classify, report, diff, series, retrieve,
compile-grammar, econ. Logs go to standard error; data goes to files or
standard output only. Exit code 0 means no hard failure (per-document
degradations are warnings, not failures).
"""

from __future__ import annotations

import argparse
import datetime as dt
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .corpus import CorpusError, load_corpus
from .diff import DEFAULT_TAU, partition_points, summarize_points
from .econ import (
    EconError,
    build_design,
    fit_ordered_logit,
    fit_to_json,
    format_fit_table,
    granger_test,
    load_outcomes_csv,
)
from .grammar import compile_tree
from .reasoner import Engine, EngineConfig
from .report import export_result_json, load_result_json, render_document_report
from .retrieval import PhraseIndex, hybrid_ranking
from .scoring import (
    FIVE_CLASS,
    THREE_CLASS,
    ScoreError,
    ScorePoint,
    ScoreSeries,
    document_score,
    moving_average,
    normalize_series,
    series_from_csv,
    series_to_csv,
)
from .taxonomy import Stance, TaxonomyError, load_taxonomy

log = logging.getLogger("hawkdove")

DEFAULT_SEED = 1337


def _load_taxonomy_or_die(path: str):
    p = Path(path)
    if not p.exists():
        raise SystemExit(f"error: taxonomy file not found: {p}")
    try:
        return load_taxonomy(p)
    except TaxonomyError as exc:
        raise SystemExit(f"error: cannot load taxonomy {p}: {exc}")


def _engine_config(args: argparse.Namespace) -> EngineConfig:
    if getattr(args, "config", None):
        cfg_path = Path(args.config)
        if not cfg_path.exists():
            raise SystemExit(f"error: config file not found: {cfg_path}")
        try:
            config = EngineConfig.from_file(cfg_path)
        except (ValueError, json.JSONDecodeError) as exc:
            raise SystemExit(f"error: bad config {cfg_path}: {exc}")
    else:
        config = EngineConfig()
    overrides = {}
    if getattr(args, "backend", None):
        overrides["backend"] = args.backend
    if getattr(args, "mock_script", None):
        overrides["mock_script"] = args.mock_script
    if getattr(args, "jobs", None):
        overrides["jobs"] = args.jobs
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        config = EngineConfig(
            **{
                **{f: getattr(config, f) for f in EngineConfig.__dataclass_fields__},
                **overrides,
            }
        )
    return config


def _config_hash(config: EngineConfig) -> str:
    payload = {f: getattr(config, f) for f in EngineConfig.__dataclass_fields__ if f != "prompts"}
    payload["prompts"] = {
        "tree_walk": config.prompts.tree_walk,
        "synthesis": config.prompts.synthesis,
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


def _safe_name(doc_id: str) -> str:
    return "".join(c if c.isalnum() or c in "-._" else "_" for c in doc_id)


def cmd_classify(args: argparse.Namespace) -> int:
    taxonomy = _load_taxonomy_or_die(args.taxonomy)
    corpus_path = Path(args.corpus)
    if not corpus_path.exists():
        raise SystemExit(f"error: corpus file not found: {corpus_path}")
    try:
        docs = load_corpus(corpus_path)
    except CorpusError as exc:
        raise SystemExit(f"error: cannot load corpus {corpus_path}: {exc}")
    config = _engine_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    engine = Engine(taxonomy, config)
    started = dt.datetime.now(dt.timezone.utc)
    statuses = []
    hard_failed = False
    for doc in docs:
        try:
            result = engine.classify_document(doc)
        except Exception as exc:  # a document must not abort the batch
            log.error("document %s failed: %s", doc.doc_id, exc)
            statuses.append({"doc_id": doc.doc_id, "status": "failed", "error": str(exc)})
            hard_failed = True
            continue
        out_file = out_dir / f"{_safe_name(doc.doc_id)}.result.json"
        out_file.write_bytes(export_result_json(result))
        statuses.append(
            {
                "doc_id": doc.doc_id,
                "status": "degraded" if result.warnings else "ok",
                "warnings": len(result.warnings),
                "file": out_file.name,
            }
        )
        log.info("classified %s (%d paragraphs, %d warnings)",
                 doc.doc_id, len(result.paragraphs), len(result.warnings))
    manifest = {
        "tool_version": __version__,
        "config_hash": _config_hash(config),
        "taxonomy_version": taxonomy.version,
        "backend_id": engine.client.backend.backend_id,
        "started_at": started.isoformat(),
        "finished_at": dt.datetime.now(dt.timezone.utc).isoformat(),
        "documents": statuses,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return 1 if hard_failed else 0


def _default_script_asset() -> str:
    asset = Path(__file__).parent / "assets" / "drilldown.js"
    return asset.read_text(encoding="utf-8") if asset.exists() else ""


def cmd_report(args: argparse.Namespace) -> int:
    result_path = Path(args.result)
    if not result_path.exists():
        raise SystemExit(f"error: result file not found: {result_path}")
    result = load_result_json(result_path.read_bytes())
    if args.script == "":
        asset = _default_script_asset()
    elif args.script == "none":
        asset = ""
    else:
        asset = Path(args.script).read_text(encoding="utf-8")
    bundle = render_document_report(result, asset)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_file = out_dir / f"{_safe_name(result.doc_id)}.report.html"
    out_file.write_text(bundle.html, encoding="utf-8")
    log.info("wrote %s", out_file)
    return 0


def _parse_stances(text: str) -> set[Stance]:
    out = set()
    for part in text.split(","):
        part = part.strip()
        if part:
            out.add(Stance.from_value(part))
    if not out:
        raise SystemExit("error: no stance classes given")
    return out


def cmd_diff(args: argparse.Namespace) -> int:
    for path in (args.new, args.old):
        if not Path(path).exists():
            raise SystemExit(f"error: result file not found: {path}")
    new_doc = load_result_json(Path(args.new).read_bytes())
    old_doc = load_result_json(Path(args.old).read_bytes())
    stances = _parse_stances(args.stance)
    result = partition_points(new_doc, old_doc, stances, tau=args.tau)
    payload = result.to_dict()
    if args.summarize:
        config = _engine_config(args)
        from .reasoner import make_client

        client = make_client(config)
        payload["summaries"] = {
            "similar": summarize_points([m.new for m in result.similar], client),
            "new": summarize_points(list(result.new_points), client),
        }
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_series(args: argparse.Namespace) -> int:
    scheme = THREE_CLASS if args.scheme == "three" else FIVE_CLASS
    input_path = Path(args.input)
    try:
        if input_path.is_dir():
            points = []
            for file in sorted(input_path.glob("*.result.json")):
                result = load_result_json(file.read_bytes())
                points.append(
                    ScorePoint(result.date, result.doc_id, result.doc_type, document_score(result, scheme))
                )
            series = ScoreSeries.build(points)
        elif input_path.suffix == ".csv" and input_path.exists():
            series = series_from_csv(input_path.read_text(encoding="utf-8"))
        else:
            raise SystemExit(
                f"error: input must be a CSV file or a directory of result JSONs: {input_path}"
            )
        if args.window > 1:
            series = moving_average(series, args.window)
        if args.normalize:
            series = normalize_series(series)
    except ScoreError as exc:
        raise SystemExit(f"error: {exc}")
    text = series_to_csv(series)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_retrieve(args: argparse.Namespace) -> int:
    taxonomy = _load_taxonomy_or_die(args.taxonomy)
    paragraph = args.text if args.text else sys.stdin.read()
    index = PhraseIndex.from_taxonomy(taxonomy)
    ranking, warnings = hybrid_ranking(taxonomy, index, paragraph)
    for w in warnings:
        log.warning("%s", w)
    top = ranking.to_list()[: args.top]
    sys.stdout.write(json.dumps(top, indent=2) + "\n")
    return 0


def cmd_compile_grammar(args: argparse.Namespace) -> int:
    taxonomy = _load_taxonomy_or_die(args.taxonomy)
    try:
        topic = taxonomy.topic(args.topic)
    except KeyError:
        raise SystemExit(f"error: no topic with mnemonic {args.topic!r}")
    sys.stdout.write(compile_tree(topic).grammar_text)
    return 0


def _read_series_args(pairs: list[str]) -> dict[str, ScoreSeries]:
    series = {}
    for pair in pairs:
        if "=" not in pair:
            raise SystemExit(f"error: --series expects name=path, got {pair!r}")
        name, path = pair.split("=", 1)
        series[name] = series_from_csv(Path(path).read_text(encoding="utf-8"))
    return series


def cmd_econ(args: argparse.Namespace) -> int:
    try:
        if args.econ_cmd == "logit":
            outcomes = load_outcomes_csv(Path(args.outcomes).read_text(encoding="utf-8"))
            series = _read_series_args(args.series or [])
            design = build_design(series, outcomes, max_lag=args.max_lag)
            fit = fit_ordered_logit(design, list(design.outcome))
            if design.n_dropped:
                log.info("dropped %d rows with missing lags", design.n_dropped)
            sys.stdout.write(fit_to_json(fit) if args.json else format_fit_table(fit) + "\n")
        elif args.econ_cmd == "granger":
            x = series_from_csv(Path(args.x).read_text(encoding="utf-8")).scores()
            y = series_from_csv(Path(args.y).read_text(encoding="utf-8")).scores()
            result = granger_test(x, y, args.lags)
            sys.stdout.write(fit_to_json(result))
        else:
            raise SystemExit("error: choose an econ subcommand (logit or granger)")
    except EconError as exc:
        raise SystemExit(f"error: {exc}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hawkdove",
        description="Taxonomy-guided hawkish/dovish stance classification for policy text.",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help=f"global random seed passed to backends (default {DEFAULT_SEED})")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a corpus and write result JSONs + manifest")
    p.add_argument("--taxonomy", required=True, help="taxonomy JSON path")
    p.add_argument("--corpus", required=True, help="corpus JSONL path")
    p.add_argument("--config", default="", help="engine config JSON path")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--backend", choices=["mock", "http"], default=None)
    p.add_argument("--mock-script", dest="mock_script", default=None, help="mock script JSON path")
    p.add_argument("--jobs", type=int, default=None, help="paragraph-level parallelism")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("report", help="render a result JSON to self-contained HTML")
    p.add_argument("--result", required=True, help="result JSON path")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--script", default="",
                   help="drill-down script asset path; 'none' forces a static report")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("diff", help="similar/new point partition between two results")
    p.add_argument("--new", required=True, help="newer result JSON")
    p.add_argument("--old", required=True, help="older result JSON")
    p.add_argument("--stance", default="hawkish", help="comma-separated stance classes")
    p.add_argument("--tau", type=float, default=DEFAULT_TAU, help="similarity threshold")
    p.add_argument("--out", default="", help="output file (default stdout)")
    p.add_argument("--summarize", action="store_true", help="append LLM summaries")
    p.add_argument("--config", default="", help="engine config for --summarize")
    p.add_argument("--backend", choices=["mock", "http"], default=None)
    p.add_argument("--mock-script", dest="mock_script", default=None)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("series", help="score series from results or CSV; window and normalize")
    p.add_argument("input", help="directory of *.result.json or a series CSV")
    p.add_argument("--scheme", choices=["three", "five"], default="five")
    p.add_argument("--window", type=int, default=1, help="trailing moving-average window")
    p.add_argument("--normalize", action="store_true", help="z-score the series")
    p.add_argument("--out", default="", help="output CSV (default stdout)")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("retrieve", help="print the fused topic ranking for a paragraph")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--top", type=int, default=10, help="entries to print")
    p.add_argument("text", nargs="?", default="", help="paragraph text (default: stdin)")
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("compile-grammar", help="dump the grammar for one topic's tree")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--topic", required=True, help="topic mnemonic")
    p.set_defaults(func=cmd_compile_grammar)

    p = sub.add_parser("econ", help="reaction-function and Granger validation fits")
    esub = p.add_subparsers(dest="econ_cmd", required=True)
    pl = esub.add_parser("logit", help="ordered logit of outcomes on lagged scores")
    pl.add_argument("--outcomes", required=True, help="CSV: date,outcome[,extra columns]")
    pl.add_argument("--series", action="append", help="name=series.csv (repeatable)")
    pl.add_argument("--max-lag", dest="max_lag", type=int, default=2)
    pl.add_argument("--json", action="store_true", help="JSON output instead of a table")
    pl.set_defaults(func=cmd_econ)
    pg = esub.add_parser("granger", help="does x Granger-cause y?")
    pg.add_argument("--x", required=True, help="series CSV for the candidate cause")
    pg.add_argument("--y", required=True, help="series CSV for the outcome")
    pg.add_argument("--lags", type=int, default=2)
    pg.set_defaults(func=cmd_econ)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    # args.seed stays None unless given, so a config-file seed is not
    # clobbered by the flag default (EngineConfig's default is DEFAULT_SEED).
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
