"""Command-line entry point: ``folksonomy {build,extract,baseline,synth,stats}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .corpus import corpus_stats, load_corpus, write_corpus
from .errors import ConfigError, CorpusError, UnknownTermError
from .pipeline import ArtifactError, PipelineConfig, run_baseline, run_build, run_extract
from .synth import SynthSpec, generate

EXIT_OK, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2


def _config_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("pipeline config (flags override --config)")
    g.add_argument("--config", help="JSON config file")
    g.add_argument("--constraint", choices=["hard", "soft"])
    g.add_argument("--top-k", type=int, dest="top_k", help="concepts to discard by degree ratio")
    g.add_argument("--epsilon", type=float, help="degree smoothing constant")
    g.add_argument("--stoplist", dest="stoplist_path", help="stopword file, one word per line")
    g.add_argument("--threshold", type=float, dest="baseline_threshold",
                   help="subsumption threshold for the baseline")
    g.add_argument("--min-support", type=int, dest="min_support",
                   help="minimum document frequency for baseline terms")
    g.add_argument("--format", choices=["jsonl", "tsv"], dest="input_format")
    g.add_argument("-o", "--output-dir", dest="output_dir")


def _pipeline_config(args) -> PipelineConfig:
    keys = ("constraint", "top_k", "epsilon", "stoplist_path", "baseline_threshold",
            "min_support", "input_format", "output_dir")
    return PipelineConfig.load(args.config, **{k: getattr(args, k) for k in keys})


def _summary(title: str, report: dict) -> None:
    print(title, file=sys.stderr)
    for k, v in report.items():
        if not isinstance(v, (dict, list)):
            print(f"  {k:28s} {v}", file=sys.stderr)


def cmd_build(args) -> dict:
    report = run_build(args.input, _pipeline_config(args))
    _summary("build", report)
    return report


def cmd_extract(args) -> dict:
    cfg = _pipeline_config(args)
    if args.output_dir is None:
        cfg.output_dir = args.graph
    report = run_extract(args.graph, args.concept, cfg, args.max_depth)
    _summary(f"subgraph for {report['focus']!r}", report)
    return report


def cmd_baseline(args) -> dict:
    report = run_baseline(args.input, _pipeline_config(args))
    _summary("baseline comparison", report)
    return report


def cmd_synth(args) -> dict:
    spec = SynthSpec.from_json(args.spec) if args.spec else SynthSpec()
    overrides = {k: getattr(args, k) for k in ("users", "records_per_user", "seed",
                                               "inversion_rate", "idiosyncrasy_rate")}
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if overrides:
        spec = SynthSpec(**{**spec.__dict__, **overrides})
    corpus = generate(spec)
    write_corpus(corpus, args.out, "jsonl")
    report = {"out": args.out, **corpus_stats(corpus)}
    _summary("synthetic corpus", report)
    return report


def cmd_stats(args) -> dict:
    return corpus_stats(load_corpus(args.input, args.format))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="folksonomy", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="aggregate a corpus into a pruned concept graph")
    p.add_argument("input")
    _config_args(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("extract", help="extract the subgraph around one concept")
    p.add_argument("graph", help="build output directory (or its graph.graphml)")
    p.add_argument("concept", help="query term; normalized like the build input")
    p.add_argument("--max-depth", type=int)
    _config_args(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("baseline", help="run the co-occurrence subsumption baseline and diff")
    p.add_argument("input")
    _config_args(p)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("synth", help="write a synthetic corpus with a planted taxonomy")
    p.add_argument("--spec", help="JSON synth spec")
    p.add_argument("--out", required=True, help="output JSONL path")
    p.add_argument("--users", type=int)
    p.add_argument("--records-per-user", type=int, dest="records_per_user")
    p.add_argument("--inversion-rate", type=float, dest="inversion_rate")
    p.add_argument("--idiosyncrasy-rate", type=float, dest="idiosyncrasy_rate")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("stats", help="summarize a corpus file")
    p.add_argument("input")
    p.add_argument("--format", choices=["jsonl", "tsv"], default="jsonl")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report = args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (CorpusError, ArtifactError, UnknownTermError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
