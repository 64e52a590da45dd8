"""Command-line front end.

Subcommands: validate, classify, compute, rank, bootstrap, flip-test,
generate, report.  Any flag may also be supplied through a JSON config file
(``--config``); explicit flags override the file.  Outputs are deterministic:
rerunning a command with identical inputs and seed produces byte-identical
files, and every output records the tool version, the seed, and a hash of the
resolved configuration so results can be audited later.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import __version__
from .classifier import assign_majority, load_related
from .corpus import (
    Corpus,
    coverage_stats,
    load_journals,
    load_publications,
    validate_corpus,
    write_publications,
)
from .indicators import JournalIndicator, compute_all
from .ranking import RankingTable, rank
from .robustness import bootstrap_report, perturbation_comparison
from .synth import SyntheticProfile, generate_corpus, write_corpus_files

# CLI spelling -> library key
_CLI_KEYS = {"fncsi": "fncsi", "fnif": "fnif", "expected-jif": "expected_jif", "jif": "jif"}
_KEY_TO_CLI = {v: k for k, v in _CLI_KEYS.items()}

_PERCENTILE_NOTE = "percentile = 100 * (N - rank + 1) / N within the ranked set; higher is better"

_DEFAULTS: dict[str, Any] = {
    "sims": 100,
    "seed": 42,
    "format": ["csv", "json"],
    "indicator": list(_CLI_KEYS),
    "out": ".",
}


@dataclass
class RunConfig:
    """Resolved settings for one command invocation.

    ``extras`` keeps the raw config-file mapping so command-specific flags
    (the generate profile) can also be supplied through the file.
    """

    publications_path: Path | None
    journals_path: Path | None
    related_records_path: Path | None
    indicators: list[str]
    category: str | None
    sims: int
    seed: int
    output_dir: Path
    formats: list[str]
    config_hash: str
    extras: dict[str, Any]

    def validate_inputs(self) -> None:
        if self.sims < 1:
            raise ValueError("--sims must be >= 1")
        if not self.indicators:
            raise ValueError("at least one --indicator is required")
        for path in (self.publications_path, self.journals_path, self.related_records_path):
            if path is not None and not path.is_file():
                raise FileNotFoundError(f"input file not found: {path}")


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge hard defaults, the optional config file, and explicit flags."""
    file_cfg: dict[str, Any] = {}
    if getattr(args, "config", None):
        file_cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))

    def pick(name: str) -> Any:
        explicit = getattr(args, name.replace("-", "_"), None)
        if explicit is not None:
            return explicit
        if name in file_cfg:
            return file_cfg[name]
        return _DEFAULTS.get(name)

    indicators_cli = pick("indicator")
    if isinstance(indicators_cli, str):
        indicators_cli = [indicators_cli]
    unknown = [k for k in indicators_cli if k not in _CLI_KEYS]
    if unknown:
        raise ValueError(f"unknown indicator(s): {', '.join(unknown)}")
    formats = pick("format")
    if isinstance(formats, str):
        formats = [formats]
    bad_formats = [f for f in formats if f not in ("csv", "json")]
    if bad_formats:
        raise ValueError(f"unknown format(s): {', '.join(bad_formats)}")

    resolved = {
        "pubs": pick("pubs"),
        "journals": pick("journals"),
        "related": pick("related"),
        "indicator": list(indicators_cli),
        "category": pick("category"),
        "sims": int(pick("sims")),
        "seed": int(pick("seed")),
        "out": str(pick("out")),
        "format": list(formats),
    }
    # the hash identifies the computation, not where its files land, so runs
    # into different directories still produce byte-identical outputs
    hashed = {k: v for k, v in resolved.items() if k not in ("out", "format")}
    digest = hashlib.sha256(json.dumps(hashed, sort_keys=True).encode("utf-8")).hexdigest()[:12]
    return RunConfig(
        publications_path=Path(resolved["pubs"]) if resolved["pubs"] else None,
        journals_path=Path(resolved["journals"]) if resolved["journals"] else None,
        related_records_path=Path(resolved["related"]) if resolved["related"] else None,
        indicators=[_CLI_KEYS[k] for k in resolved["indicator"]],
        category=resolved["category"],
        sims=resolved["sims"],
        seed=resolved["seed"],
        output_dir=Path(resolved["out"]),
        formats=resolved["format"],
        config_hash=digest,
        extras=file_cfg,
    )


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _meta(config: RunConfig, command: str, notes: Iterable[str] = ()) -> list[str]:
    lines = [
        f"tool: jrank {__version__}",
        f"command: {command}",
        f"seed: {config.seed}",
        f"config: sha256:{config.config_hash}",
    ]
    lines.extend(notes)
    return lines


def _fmt(value: float | int | str | None) -> str:
    if value is None:
        return "unrankable"
    return str(value)


def _write_csv(path: Path, meta: list[str], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(path: Path, meta: list[str], payload: dict[str, Any]) -> None:
    document = {"meta": meta, **payload}
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _indicator_rows(indicators: Sequence[JournalIndicator]) -> list[list[Any]]:
    return [
        [ind.journal_id, ind.fncsi, ind.fnif, ind.expected_jif, ind.jif, ind.n_pubs]
        for ind in indicators
    ]


def _slug(label: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in label)


def _write_ranking(table: RankingTable, config: RunConfig, command: str) -> list[Path]:
    suffix = f"_{_slug(table.scope)}" if table.scope else ""
    stem = f"ranking_{_KEY_TO_CLI[table.indicator_name].replace('-', '_')}{suffix}"
    meta = _meta(config, command, notes=[_PERCENTILE_NOTE])
    written = []
    if "csv" in config.formats:
        path = config.output_dir / f"{stem}.csv"
        _write_csv(path, meta, ("journal_id", "value", "rank", "percentile"), table.rows)
        written.append(path)
    if "json" in config.formats:
        path = config.output_dir / f"{stem}.json"
        _write_json(
            path,
            meta,
            {
                "indicator": table.indicator_name,
                "scope": table.scope,
                "rows": [row._asdict() for row in table.rows],
            },
        )
        written.append(path)
    return written


def _load_corpus_with_diagnostics(config: RunConfig) -> tuple[Corpus | None, bool]:
    """Load the corpus, printing row errors with their source file; (corpus, clean)."""
    if config.publications_path is None or config.journals_path is None:
        print("error: --pubs and --journals are required", file=sys.stderr)
        return None, False
    pubs = load_publications(config.publications_path)
    journals = load_journals(config.journals_path)
    for err in pubs.errors:
        print(f"error: {config.publications_path}: {err}", file=sys.stderr)
    for err in journals.errors:
        print(f"error: {config.journals_path}: {err}", file=sys.stderr)
    topics = frozenset(p.topic_id for p in pubs.publications if p.topic_id is not None)
    corpus = Corpus(tuple(pubs.publications), journals.journals, topics)
    return corpus, not pubs.errors and not journals.errors


def _load_validated(config: RunConfig) -> Corpus | None:
    """Load and validate the corpus; print diagnostics and return None on failure."""
    corpus, clean = _load_corpus_with_diagnostics(config)
    if corpus is None:
        return None
    report = validate_corpus(corpus)
    for finding in report:
        print(f"error: {finding}", file=sys.stderr)
    if not clean or not report.ok:
        return None
    return corpus


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(config: RunConfig) -> int:
    if config.publications_path is None or config.journals_path is None:
        print("error: --pubs and --journals are required", file=sys.stderr)
        return 2
    corpus, clean = _load_corpus_with_diagnostics(config)
    report = validate_corpus(corpus)
    for finding in report:
        print(f"error: {finding}", file=sys.stderr)
    coverage = coverage_stats(corpus)
    print(
        f"publications: {coverage.n_publications} ({coverage.n_classified} classified, "
        f"coverage {coverage.publication_coverage:.4f})"
    )
    print(
        f"journals: {coverage.n_journals} with publications, "
        f"{coverage.n_journals_over_90} above 90% assigned "
        f"(coverage {coverage.journal_coverage:.4f})"
    )
    return 0 if clean and report.ok else 1


def cmd_classify(config: RunConfig) -> int:
    if config.related_records_path is None:
        print("error: --related is required for classify", file=sys.stderr)
        return 2
    corpus = _load_validated(config)
    if corpus is None:
        return 1
    fragment = load_related(config.related_records_path)
    for err in fragment.errors:
        print(f"error: {config.related_records_path}: {err}", file=sys.stderr)
    if fragment.errors:
        return 1
    assigned_corpus, report = assign_majority(corpus, fragment.records)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    out_path = config.output_dir / "publications_classified.csv"
    write_publications(assigned_corpus.publications, out_path)
    print(
        f"assigned: {report.assigned}, still unclassified: {report.still_unclassified}, "
        f"external related ids ignored: {report.external_ignored}"
    )
    print(f"wrote {out_path}")
    return 0


def cmd_compute(
    config: RunConfig,
    command: str = "compute",
    write_rankings: bool = True,
    corpus: Corpus | None = None,
) -> int:
    if corpus is None:
        corpus = _load_validated(config)
        if corpus is None:
            return 1
    indicators = compute_all(corpus)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    meta = _meta(config, command)
    if "csv" in config.formats:
        _write_csv(
            config.output_dir / "indicators.csv",
            meta,
            ("journal_id", "fncsi", "fnif", "expected_jif", "jif", "n_pubs"),
            _indicator_rows(indicators),
        )
    if "json" in config.formats:
        _write_json(
            config.output_dir / "indicators.json",
            meta,
            {
                "journals": [
                    {
                        "journal_id": ind.journal_id,
                        "fncsi": ind.fncsi,
                        "fnif": ind.fnif,
                        "expected_jif": ind.expected_jif,
                        "jif": ind.jif,
                        "n_pubs": ind.n_pubs,
                        "topic_breakdown": {
                            topic: {"score": score, "papers_compared": n}
                            for topic, (score, n) in ind.topic_breakdown.items()
                        },
                    }
                    for ind in indicators
                ]
            },
        )
    if write_rankings:
        for key in config.indicators:
            table = rank(indicators, key, scope=config.category, journals=corpus.journals)
            _write_ranking(table, config, command)
    return 0


def cmd_rank(config: RunConfig) -> int:
    corpus = _load_validated(config)
    if corpus is None:
        return 1
    indicators = compute_all(corpus)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    for key in config.indicators:
        table = rank(indicators, key, scope=config.category, journals=corpus.journals)
        for path in _write_ranking(table, config, "rank"):
            print(f"wrote {path}")
    return 0


def cmd_robustness(config: RunConfig, mode: str) -> int:
    """Bootstrap or flip-test analysis; one output set per requested indicator."""
    corpus = _load_validated(config)
    if corpus is None:
        return 1
    config.output_dir.mkdir(parents=True, exist_ok=True)
    for key in config.indicators:
        cli_key = _KEY_TO_CLI[key].replace("-", "_")
        if mode == "bootstrap":
            report = bootstrap_report(corpus, key, sims=config.sims, seed=config.seed)
            meta = _meta(
                config,
                "bootstrap",
                notes=[
                    f"simulations: {report.simulations}",
                    f"sentinel rank for journals unrankable in a simulation: {report.sentinel_rank}",
                ],
            )
            _write_json(
                config.output_dir / f"robustness_{cli_key}.json",
                meta,
                {
                    "indicator": report.indicator_name,
                    "delta": report.delta,
                    "seed": report.seed,
                    "simulations": report.simulations,
                    "sentinel_rank": report.sentinel_rank,
                    "per_journal": {
                        j: {
                            "min": s.min_rank,
                            "q1": s.q1,
                            "median": s.median,
                            "q3": s.q3,
                            "max": s.max_rank,
                        }
                        for j, s in report.per_journal.items()
                    },
                },
            )
            _write_csv(
                config.output_dir / f"quartiles_{cli_key}.csv",
                meta,
                ("journal_id", "min_rank", "q1", "median", "q3", "max_rank"),
                [
                    (j, s.min_rank, s.q1, s.median, s.q3, s.max_rank)
                    for j, s in report.per_journal.items()
                ],
            )
            print(f"delta {_KEY_TO_CLI[key]} = {report.delta}")
        else:
            pairs = perturbation_comparison(corpus, key)
            _write_csv(
                config.output_dir / f"flip_{cli_key}.csv",
                _meta(config, "flip-test"),
                ("journal_id", "original_rank", "perturbed_rank"),
                pairs,
            )
            moved = sum(1 for _, a, b in pairs if a is not None and b is not None and a != b)
            print(f"flip-test {_KEY_TO_CLI[key]}: {len(pairs)} journals, {moved} changed rank")
    return 0


_GENERATE_DEFAULTS = {
    "journals-count": 30,
    "topics-count": 5,
    "pubs-min": 40,
    "pubs-max": 80,
    "dist": "lognormal",
    "sigma": 1.0,
    "quality-spread": 2.0,
    "review-fraction": 0.15,
    "unclassified-fraction": 0.0,
    "skewed": 0,
    "outlier-citations": 2000,
    "outlier-zero-fraction": 0.70,
    "categories-count": 3,
}


def cmd_generate(config: RunConfig, args: argparse.Namespace) -> int:
    def opt(name: str) -> Any:
        explicit = getattr(args, name.replace("-", "_"))
        if explicit is not None:
            return explicit
        return config.extras.get(name, _GENERATE_DEFAULTS[name])

    profile = SyntheticProfile(
        n_journals=opt("journals-count"),
        n_topics=opt("topics-count"),
        pubs_min=opt("pubs-min"),
        pubs_max=opt("pubs-max"),
        citation_dist=opt("dist"),
        lognormal_sigma=opt("sigma"),
        quality_spread=opt("quality-spread"),
        review_fraction=opt("review-fraction"),
        unclassified_fraction=opt("unclassified-fraction"),
        skewed_journals=opt("skewed"),
        outlier_citations=opt("outlier-citations"),
        outlier_zero_fraction=opt("outlier-zero-fraction"),
        n_categories=opt("categories-count"),
    )
    try:
        profile.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    corpus = generate_corpus(profile, seed=config.seed)
    pubs_path, journals_path = write_corpus_files(corpus, config.output_dir)
    print(f"wrote {pubs_path} ({len(corpus.publications)} publications)")
    print(f"wrote {journals_path} ({len(corpus.journals)} journals)")
    return 0


def cmd_report(config: RunConfig) -> int:
    corpus = _load_validated(config)
    if corpus is None:
        return 1
    if config.related_records_path is not None:
        fragment = load_related(config.related_records_path)
        for err in fragment.errors:
            print(f"error: {config.related_records_path}: {err}", file=sys.stderr)
        if fragment.errors:
            return 1
        corpus, _ = assign_majority(corpus, fragment.records)
    coverage = coverage_stats(corpus)
    indicators = compute_all(corpus)
    config.output_dir.mkdir(parents=True, exist_ok=True)

    lines: list[str] = []
    lines.extend(f"# {m}" for m in _meta(config, "report", notes=[_PERCENTILE_NOTE]))
    lines.append("")
    lines.append(
        f"corpus: {coverage.n_publications} publications, {coverage.n_journals} journals, "
        f"{coverage.n_classified} classified "
        f"(publication coverage {coverage.publication_coverage:.4f}, "
        f"journal coverage {coverage.journal_coverage:.4f})"
    )
    for key in config.indicators:
        table = rank(indicators, key, scope=config.category, journals=corpus.journals)
        scope_note = f" in category {table.scope}" if table.scope else ""
        lines.append("")
        lines.append(f"top journals by {_KEY_TO_CLI[key]}{scope_note}:")
        lines.append("rank  journal_id        value       percentile")
        for row in table.rows[:20]:
            lines.append(f"{row.rank:>4}  {row.journal_id:<16}  {row.value:<10.6g}  {row.percentile:.2f}")
    out_path = config.output_dir / "summary.txt"
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out_path}")
    # the indicator tables reflect the same (possibly classified) corpus
    return cmd_compute(config, command="report", write_rankings=False, corpus=corpus)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _add_io_options(parser: argparse.ArgumentParser, related: bool = False) -> None:
    parser.add_argument("--pubs", help="publications file (csv/tsv)")
    parser.add_argument("--journals", help="journals file (csv/tsv)")
    if related:
        parser.add_argument("--related", help="related-records file (csv/tsv)")
    parser.add_argument("--out", help="output directory (default: current directory)")
    parser.add_argument("--config", help="JSON config file; explicit flags override it")
    parser.add_argument(
        "--format",
        action="append",
        choices=("csv", "json"),
        help="output format; repeatable (default: both)",
    )


def _add_analysis_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--indicator",
        action="append",
        choices=tuple(_CLI_KEYS),
        help="indicator key; repeatable (default: all four)",
    )
    parser.add_argument("--category", help="restrict rankings to one journal category label")
    parser.add_argument("--sims", type=int, help="bootstrap simulation count (default: 100)")
    parser.add_argument("--seed", type=int, help="random seed (default: 42)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jrank",
        description="Field-normalized journal impact indicators, rankings, and robustness analysis.",
    )
    parser.add_argument("--version", action="version", version=f"jrank {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text, related in (
        ("validate", "check corpus files and report findings", False),
        ("classify", "assign topics to unclassified publications by majority rule", True),
        ("compute", "compute all indicators and write ranking tables", False),
        ("rank", "write ranking tables for the chosen indicators", False),
        ("bootstrap", "bootstrap ranking-stability analysis", False),
        ("flip-test", "document-type flip perturbation analysis", False),
        ("report", "human-readable summary of indicators and coverage", True),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_io_options(p, related=related)
        _add_analysis_options(p)

    g = sub.add_parser("generate", help="generate a synthetic corpus file pair")
    g.add_argument("--out", help="output directory")
    g.add_argument("--config", help="JSON config file; explicit flags override it")
    g.add_argument("--seed", type=int, help="random seed (default: 42)")
    g.add_argument("--journals-count", type=int, help="journal count (default: 30)")
    g.add_argument("--topics-count", type=int, help="topic cluster count (default: 5)")
    g.add_argument("--pubs-min", type=int, help="per-journal size range low end (default: 40)")
    g.add_argument("--pubs-max", type=int, help="per-journal size range high end (default: 80)")
    g.add_argument("--dist", choices=("lognormal", "uniform"), help="citation family (default: lognormal)")
    g.add_argument("--sigma", type=float, help="lognormal shape parameter (default: 1.0)")
    g.add_argument("--quality-spread", type=float, help="log-scale span of journal quality (default: 2.0)")
    g.add_argument("--review-fraction", type=float, help="review share (default: 0.15)")
    g.add_argument("--unclassified-fraction", type=float, help="unclassified share (default: 0)")
    g.add_argument("--skewed", type=int, help="journals given the outlier profile (default: 0)")
    g.add_argument("--outlier-citations", type=int, help="outlier paper citation count (default: 2000)")
    g.add_argument("--outlier-zero-fraction", type=float, help="outlier journal zero share (default: 0.7)")
    g.add_argument("--categories-count", type=int, help="category label count (default: 3)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _resolve_config(args)
        config.validate_inputs()
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "validate":
            return cmd_validate(config)
        if args.command == "classify":
            return cmd_classify(config)
        if args.command == "compute":
            return cmd_compute(config)
        if args.command == "rank":
            return cmd_rank(config)
        if args.command == "bootstrap":
            return cmd_robustness(config, "bootstrap")
        if args.command == "flip-test":
            return cmd_robustness(config, "flip")
        if args.command == "generate":
            return cmd_generate(config, args)
        if args.command == "report":
            return cmd_report(config)
    except Exception as exc:  # surfaced as diagnostics, not tracebacks
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
