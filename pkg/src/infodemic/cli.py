"""``infodemic`` command line: stats, featurize, experiment, report, gen-synthetic.

Exit codes: 0 success, 2 usage/config/input errors, 3 processing errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .config import RunConfig, build_config, effective_config, read_config_file
from .corpus import LABELS, corpus_stats, load_corpus, save_corpus
from .errors import ConfigError, CorpusError, InfodemicError
from .evaluation import run_experiment_matrix
from .features import LAYOUT_VERSION, assemble_matrix, featurize_corpus, fit_vectorizer
from .reports import feature_comparison, pos_distribution_report, top_bigrams
from .synthetic import generate_corpus, parse_signal_strength

EXIT_OK, EXIT_USAGE, EXIT_PROCESSING = 0, 2, 3
REPORT_KINDS = ("pos", "bigrams", "features")

log = logging.getLogger("infodemic")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", help="JSON config file (must contain \"version\": 1)")
    p.add_argument("--seed", help="64-bit seed; falls back to $INFODEMIC_SEED, then 0")
    p.add_argument("--out", metavar="DIR", help="output directory (default: out)")
    p.add_argument("--format", choices=("csv", "jsonl"), help="file format; see each command's help")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return p


def _selection(p: argparse.ArgumentParser) -> None:
    p.add_argument("--setups", help="comma-separated subset of Baseline,Bigram,POS,Misc,All")
    p.add_argument("--algorithms", help="comma-separated subset of DecisionTree,RandomForest,LogisticRegression,LinearSVM,KNN")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="infodemic", description="COVID-19 fake news detection pipeline.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="class counts of a corpus (--format: input format)")
    p.add_argument("corpus", nargs="?")

    p = sub.add_parser("featurize", parents=[common], help="write feature matrices (--format: output format)")
    p.add_argument("corpus", nargs="?")
    _selection(p)

    p = sub.add_parser("experiment", parents=[common], help="cross-validate setups x algorithms (--format: input format)")
    p.add_argument("corpus", nargs="?")
    _selection(p)
    p.add_argument("--k-folds", type=int)
    p.add_argument("--jobs", type=int, help="worker processes (results do not depend on this)")

    p = sub.add_parser("report", parents=[common], help="per-class corpus analyses (--format: input format)")
    p.add_argument("corpus", nargs="?")
    p.add_argument("--which", choices=REPORT_KINDS + ("all",), default="all")
    p.add_argument("--top-n", type=int, help="bigrams per class (default 20)")

    p = sub.add_parser("gen-synthetic", parents=[common], help="write a synthetic labeled corpus (--format: output format)")
    p.add_argument("--n-per-class", type=int, default=750)
    p.add_argument("--signal-strength", default="high", help="none, low, medium, high or a number in [0, 1]")
    return parser


def _config(args) -> RunConfig:
    file_values = read_config_file(args.config) if args.config else {}
    overrides = {"seed": args.seed, "out": args.out, "corpus_path": getattr(args, "corpus", None)}
    if args.format:
        key = "format" if args.command in ("featurize", "gen-synthetic") else "corpus_format"
        overrides[key] = args.format
    for name in ("setups", "algorithms", "k_folds", "jobs", "top_n"):
        overrides[name] = getattr(args, name, None)
    return build_config(file_values, overrides)


def _load(config: RunConfig):
    if not config.corpus_path:
        raise UsageError("no corpus given (pass a path or set corpus_path in the config)")
    return load_corpus(config.corpus_path, config.corpus_format)


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def cmd_stats(config: RunConfig, args) -> int:
    stats = corpus_stats(_load(config))
    print(f"{'class':<8}{'count':>8}{'share':>9}")
    for lab in LABELS:
        print(f"{lab.value:<8}{stats.per_class[lab]:>8}{stats.per_class_share[lab] * 100:>8.1f}%")
    print(f"{'total':<8}{stats.total:>8}{100:>8.1f}%")
    return EXIT_OK


def _num(x: float) -> str:
    return "0" if x == 0 else repr(float(x))


def cmd_featurize(config: RunConfig, args) -> int:
    corpus = _load(config)
    docs = featurize_corpus(corpus)
    fitted = fit_vectorizer(docs, config.min_df, config.max_unigrams, config.max_bigrams)
    out = Path(config.out)
    written = fitted.export_vocabularies(out)
    labels = [a.label.value for a in corpus]
    ids = [a.id for a in corpus]
    for setup in config.setups:
        matrix, layout = assemble_matrix(docs, setup, fitted)
        matrix.sort_indices()
        path = out / f"features_{setup.value}.{config.format}"
        lines = []
        if config.format == "csv":
            lines.append(",".join(["id", "label", *layout.column_names()]))
            dense = matrix.toarray()
            for i, row in enumerate(dense):
                lines.append(",".join([_csv_cell(ids[i]), labels[i], *(_num(v) for v in row)]))
        else:
            for i in range(matrix.shape[0]):
                lo, hi = matrix.indptr[i], matrix.indptr[i + 1]
                rec = {
                    "id": ids[i],
                    "label": labels[i],
                    "indices": [int(j) for j in matrix.indices[lo:hi]],
                    "values": [float(v) for v in matrix.data[lo:hi]],
                    "layout_version": LAYOUT_VERSION,
                }
                lines.append(json.dumps(rec, ensure_ascii=False, sort_keys=True))
        written.append(_write(path, "\n".join(lines) + "\n"))
        layout_doc = {"layout": layout.to_dict(), "columns": layout.column_names(), "config": effective_config(config)}
        written.append(_write(out / f"layout_{setup.value}.json", json.dumps(layout_doc, indent=2, sort_keys=True) + "\n"))
    for p in written:
        print(p)
    return EXIT_OK


def _csv_cell(text: str) -> str:
    if any(c in text for c in ',"\n\r'):
        return '"' + text.replace('"', '""') + '"'
    return text


def cmd_experiment(config: RunConfig, args) -> int:
    corpus = _load(config)
    report = run_experiment_matrix(corpus, config.experiment_config(), corpus_name=Path(config.corpus_path).name)
    for path in report.write(config.out):
        print(path)
    if report.failed:
        for row in report.failed:
            print(f"failed: {row.setup.value}/{row.algorithm.value}: {row.error}", file=sys.stderr)
        if len(report.failed) == len(report.rows):
            return EXIT_PROCESSING
    return EXIT_OK


def cmd_report(config: RunConfig, args) -> int:
    corpus = _load(config)
    docs = featurize_corpus(corpus)
    out = Path(config.out)
    kinds = REPORT_KINDS if args.which == "all" else (args.which,)
    written = []
    for kind in kinds:
        if kind == "pos":
            rep, stem = pos_distribution_report(corpus, docs), "pos_distribution"
        elif kind == "bigrams":
            rep, stem = top_bigrams(corpus, config.top_n, docs), "top_bigrams"
        else:
            rep, stem = feature_comparison(corpus, docs), "feature_comparison"
        written.append(_write(out / f"{stem}.csv", rep.to_csv()))
        written.append(_write(out / f"{stem}.md", rep.to_markdown()))
    for p in written:
        print(p)
    return EXIT_OK


def cmd_gen_synthetic(config: RunConfig, args) -> int:
    if args.n_per_class < 10:
        raise UsageError("--n-per-class must be at least 10")
    try:
        strength = parse_signal_strength(args.signal_strength)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    corpus = generate_corpus(args.n_per_class, strength, config.seed)
    path = Path(config.out) / f"synthetic.{config.format}"
    path.parent.mkdir(parents=True, exist_ok=True)
    save_corpus(corpus, path, config.format)
    print(path)
    return EXIT_OK


COMMANDS = {
    "stats": cmd_stats,
    "featurize": cmd_featurize,
    "experiment": cmd_experiment,
    "report": cmd_report,
    "gen-synthetic": cmd_gen_synthetic,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        config = _config(args)
        return COMMANDS[args.command](config, args)
    except (UsageError, ConfigError, CorpusError, FileNotFoundError, UnicodeDecodeError) as exc:
        print(f"infodemic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InfodemicError, ValueError, OSError) as exc:
        print(f"infodemic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_PROCESSING


if __name__ == "__main__":
    sys.exit(main())
