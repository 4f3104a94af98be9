"""Aggregate many users' shallow collection/set hierarchies into a folksonomy graph."""

__version__ = "0.1.0"

from .aggregate import Constraint, RelationSet, delegate_relations, resolve_conflicts, tally_users
from .baseline import build_documents, count_cooccurrence, induce_baseline_hierarchy, subsumes
from .corpus import Corpus, RawRecord, corpus_stats, load_corpus
from .errors import ConfigError, CorpusError, FolksonomyError, UnknownTermError
from .graph import (ConceptGraph, PruneConfig, SubgraphView, degree_ratio, export_graph,
                    extract_subgraph, prune_concepts)
from .normalize import NormalizerConfig, normalize_name, normalize_token, tokenize
from .synth import SynthSpec, generate

__all__ = [
    "ConceptGraph", "ConfigError", "Constraint", "Corpus", "CorpusError", "FolksonomyError",
    "NormalizerConfig", "PruneConfig", "RawRecord", "RelationSet", "SubgraphView", "SynthSpec",
    "UnknownTermError", "build_documents", "corpus_stats", "count_cooccurrence", "degree_ratio",
    "delegate_relations", "export_graph", "extract_subgraph", "generate",
    "induce_baseline_hierarchy", "load_corpus", "normalize_name", "normalize_token",
    "prune_concepts", "resolve_conflicts", "subsumes", "tally_users", "tokenize",
]
