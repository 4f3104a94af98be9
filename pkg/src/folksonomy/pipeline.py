"""End-to-end runs: build the graph, extract subgraphs, compare with the baseline."""
from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__
from .aggregate import Constraint, RelationSet, format_tallies, resolve_conflicts, tally_users
from .baseline import build_documents, count_cooccurrence, induce_baseline_hierarchy
from .corpus import Corpus, LoadReport, load_corpus
from .errors import ConfigError, FolksonomyError, UnknownTermError
from .graph import (ConceptGraph, PruneConfig, export_graph, extract_subgraph, read_graphml,
                    select_pruned)
from .normalize import NormalizerConfig, normalize_name, read_stoplist

GRAPH_FILE = "graph.graphml"
MANIFEST_FILE = "manifest.json"


class ArtifactError(FolksonomyError):
    """A build artifact is missing, unreadable, or does not match its manifest."""


@dataclass
class PipelineConfig:
    constraint: str = "soft"
    top_k: int = 200
    epsilon: float = 0.01
    stoplist_path: str | None = None
    baseline_threshold: float = 0.8
    min_support: int = 2
    input_format: str = "jsonl"
    output_dir: str = "out"

    def __post_init__(self):
        self.validate()

    def validate(self):
        Constraint.parse(self.constraint)
        PruneConfig(self.epsilon, self.top_k)
        if not isinstance(self.baseline_threshold, (int, float)) or \
                not 0 < self.baseline_threshold <= 1 or math.isnan(self.baseline_threshold):
            raise ConfigError(f"baseline_threshold must lie in (0, 1], got {self.baseline_threshold!r}")
        if not isinstance(self.min_support, int) or self.min_support < 1:
            raise ConfigError(f"min_support must be a positive integer, got {self.min_support!r}")
        if self.input_format not in ("jsonl", "tsv"):
            raise ConfigError(f"input_format must be jsonl or tsv, got {self.input_format!r}")

    @classmethod
    def load(cls, path=None, **overrides) -> "PipelineConfig":
        """Read a JSON config file (if given); non-None ``overrides`` win."""
        data = {}
        if path is not None:
            try:
                data = json.loads(Path(path).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError(f"cannot read config {path}: {e}") from None
            if not isinstance(data, dict):
                raise ConfigError("config file must hold a JSON object")
            unknown = set(data) - {f.name for f in fields(cls)}
            if unknown:
                raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    def prune_config(self) -> PruneConfig:
        return PruneConfig(self.epsilon, self.top_k)

    def normalizer(self) -> NormalizerConfig:
        if self.stoplist_path is None:
            return NormalizerConfig()
        try:
            return NormalizerConfig(stoplist=read_stoplist(self.stoplist_path))
        except OSError as e:
            raise ConfigError(f"cannot read stoplist: {e}") from None

    def experiment_dict(self) -> dict:
        # output location and stoplist path do not change results; the stoplist content is hashed separately
        d = asdict(self)
        del d["output_dir"], d["stoplist_path"]
        return d


def _sha256(data) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


@dataclass
class BuildResult:
    corpus: Corpus
    load_report: LoadReport
    tallies: dict
    relations: RelationSet
    unpruned: ConceptGraph
    pruned: list
    graph: ConceptGraph

    def report(self, cfg: PipelineConfig) -> dict:
        terms = {t for pair in self.tallies for t in pair}
        return {
            "records": self.corpus.record_count,
            "users": self.corpus.user_count,
            "rejected_records": self.load_report.rejected,
            "duplicate_records": self.load_report.duplicates,
            "raw_relations": len(self.tallies),
            "relation_assertions": sum(self.tallies.values()),
            "constraint": Constraint.parse(cfg.constraint).value,
            "relations_after_constraint": len(self.relations),
            "symmetric_pairs": len(self.relations.symmetric) // 2,
            "concepts_total": len(terms),
            "concepts_before_pruning": len(self.unpruned),
            "concepts_removed": len(self.pruned),
            "concepts_after_pruning": len(self.graph),
            "edges_after_pruning": len(self.graph.edges),
            "top_k": cfg.top_k,
            "epsilon": cfg.epsilon,
        }


def build(input_path, cfg: PipelineConfig, stream=None) -> BuildResult:
    ncfg = cfg.normalizer()
    load_report = LoadReport(str(input_path))
    corpus = load_corpus(input_path, cfg.input_format, report=load_report, stream=stream)
    tallies = tally_users(corpus, ncfg)
    relations = resolve_conflicts(tallies, cfg.constraint)
    unpruned = ConceptGraph(relations.relations)
    pruned = select_pruned(unpruned, cfg.prune_config())
    graph = unpruned.without(t for t, _ in pruned) if pruned else unpruned
    return BuildResult(corpus, load_report, tallies, relations, unpruned, pruned, graph)


def _relations_tsv(rs: RelationSet) -> str:
    rows = sorted(rs.relations, key=lambda p: (-rs.support[p], p))
    return "".join(f"{b}\t{n}\t{rs.support[(b, n)]}\t{int((b, n) in rs.symmetric)}\n"
                   for b, n in rows)


def _pruned_tsv(res: BuildResult) -> str:
    g = res.unpruned
    return "".join(f"{i}\t{t}\t{float(r)!r}\t{g.dout(t)}\t{g.din(t)}\n"
                   for i, (t, r) in enumerate(res.pruned, 1))


def _write(out: Path, name: str, text: str) -> str:
    (out / name).write_text(text, encoding="utf-8")
    return _sha256(text)


def run_build(input_path, cfg: PipelineConfig, stream=None) -> dict:
    """Run the whole pipeline and persist every stage under ``cfg.output_dir``.

    Artifacts: tallies.tsv, relations.tsv, pruned.tsv, graph.{graphml,tsv,dot},
    report.json and manifest.json. Identical input and config give
    byte-identical files.
    """
    res = build(input_path, cfg, stream=stream)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    ncfg = cfg.normalizer()
    report = res.report(cfg)
    hashes = {
        "tallies.tsv": _write(out, "tallies.tsv", format_tallies(res.tallies)),
        "relations.tsv": _write(out, "relations.tsv", _relations_tsv(res.relations)),
        "pruned.tsv": _write(out, "pruned.tsv", _pruned_tsv(res)),
        GRAPH_FILE: _write(out, GRAPH_FILE, export_graph(res.graph, "graphml")),
        "graph.tsv": _write(out, "graph.tsv", export_graph(res.graph, "tsv")),
        "graph.dot": _write(out, "graph.dot", export_graph(res.graph, "dot")),
        "report.json": _write(out, "report.json", json.dumps(report, indent=2) + "\n"),
    }
    experiment = cfg.experiment_dict()
    manifest = {
        "tool": "folksonomy",
        "version": __version__,
        "config": experiment,
        "config_hash": _sha256(json.dumps(experiment, sort_keys=True)),
        "stoplist_hash": _sha256("\n".join(sorted(ncfg.stoplist))),
        "normalizer": ncfg.to_dict(),
        "normalizer_hash": ncfg.fingerprint(),
        "input_sha256": _sha256(Path(input_path).read_bytes()),
        "artifacts": hashes,
    }
    _write(out, MANIFEST_FILE, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return report


def load_build(graph_path) -> tuple[ConceptGraph, NormalizerConfig, dict]:
    """Load a built graph plus the normalizer it was built with.

    ``graph_path`` is the build directory or the GraphML file inside it.
    """
    p = Path(graph_path)
    d = p if p.is_dir() else p.parent
    gfile = p if p.is_file() else d / GRAPH_FILE
    mfile = d / MANIFEST_FILE
    for f in (gfile, mfile):
        if not f.is_file():
            raise ArtifactError(f"missing build artifact {f}")
    try:
        manifest = json.loads(mfile.read_text(encoding="utf-8"))
        text = gfile.read_text(encoding="utf-8")
        expected = manifest["artifacts"][gfile.name]
    except (OSError, ValueError, KeyError) as e:
        raise ArtifactError(f"unreadable manifest or graph in {d}: {e}") from None
    if _sha256(text) != expected:
        raise ArtifactError(f"{gfile} does not match its manifest (stale artifact); rebuild")
    try:
        graph = read_graphml(text)
    except Exception as e:
        raise ArtifactError(f"cannot parse {gfile}: {e}") from None
    return graph, NormalizerConfig.from_dict(manifest["normalizer"]), manifest


def _slug(term: str) -> str:
    return re.sub(r"[^\w]+", "_", term).strip("_") or "concept"


def resolve_query(concept: str, graph: ConceptGraph, ncfg: NormalizerConfig) -> str:
    terms = normalize_name(concept, ncfg)
    if len(terms) != 1:
        raise UnknownTermError(concept, graph.nearest_names(concept.casefold()))
    term = terms[0]
    if term not in graph:
        raise UnknownTermError(term, graph.nearest_names(term))
    return term


def run_extract(graph_path, concept: str, cfg: PipelineConfig, max_depth: int | None = None) -> dict:
    graph, ncfg, _ = load_build(graph_path)
    term = resolve_query(concept, graph, ncfg)
    view = extract_subgraph(graph, term, max_depth)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = "subgraph_" + _slug(term)
    files = {}
    for fmt in ("dot", "graphml"):
        f = out / f"{stem}.{fmt}"
        f.write_text(export_graph(view, fmt), encoding="utf-8")
        files[fmt] = str(f)
    return {
        "query": concept,
        "focus": term,
        "parents": len(view.parents),
        "children": len(view.children),
        "descendants": len(view.descendants),
        "edges": len(view.edges),
        "files": files,
    }


def compare_edges(relation_edges, baseline_edges) -> dict:
    a, b = set(relation_edges), set(baseline_edges)
    return {"shared": sorted(a & b), "only_relation": sorted(a - b), "only_baseline": sorted(b - a)}


def run_baseline(input_path, cfg: PipelineConfig, stream=None) -> dict:
    """Induce the subsumption baseline and diff it against the relation-based graph."""
    res = build(input_path, cfg, stream=stream)
    docs = build_documents(res.corpus, cfg.normalizer())
    stats = count_cooccurrence(docs)
    base = induce_baseline_hierarchy(docs, cfg.baseline_threshold, cfg.min_support, stats)
    diff = compare_edges(res.graph.edges, base)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write(out, "baseline.tsv", "".join(f"{x}\t{y}\n" for x, y in sorted(base)))
    _write(out, "comparison.tsv", "".join(
        f"{side}\t{x}\t{y}\n" for side in ("shared", "only_relation", "only_baseline")
        for x, y in diff[side]))
    report = {
        "documents": len(docs),
        "threshold": cfg.baseline_threshold,
        "min_support": cfg.min_support,
        "relation_edges": len(res.graph.edges),
        "baseline_edges": len(base),
        **{k: len(v) for k, v in diff.items()},
    }
    _write(out, "baseline_report.json", json.dumps(report, indent=2) + "\n")
    return report
