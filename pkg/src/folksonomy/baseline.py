"""Co-occurrence subsumption baseline over per-record term documents.

A term ``x`` subsumes ``y`` when ``P(x|y) >= t`` and ``P(y|x) < t``, with the
probabilities estimated from how many documents contain each term and each
pair. Each record (collection + set) is one document.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .corpus import Corpus
from .errors import ConfigError, UnknownTermError
from .normalize import DEFAULT_CONFIG, NormalizerConfig, normalize_name


@dataclass(frozen=True)
class TermDocument:
    doc_id: str
    terms: frozenset


@dataclass
class CooccurrenceStats:
    freq: Counter = field(default_factory=Counter)
    co: Counter = field(default_factory=Counter)  # keyed by sorted term pair

    def cooccur(self, x: str, y: str) -> int:
        return self.co.get((x, y) if x <= y else (y, x), 0)

    def update(self, other: "CooccurrenceStats") -> None:
        self.freq.update(other.freq)
        self.co.update(other.co)


def build_documents(c: Corpus, cfg: NormalizerConfig = DEFAULT_CONFIG) -> list[TermDocument]:
    docs = []
    for i, rec in enumerate(c):
        terms = frozenset(normalize_name(rec.collection_name, cfg)) | frozenset(
            normalize_name(rec.set_name, cfg))
        if terms:
            docs.append(TermDocument(f"d{i}", terms))
    return docs


def count_cooccurrence(docs: Iterable[TermDocument]) -> CooccurrenceStats:
    stats = CooccurrenceStats()
    for d in docs:
        stats.freq.update(d.terms)
        stats.co.update(combinations(sorted(d.terms), 2))
    return stats


def _threshold(t) -> Fraction:
    t = Fraction(str(t)) if isinstance(t, float) else Fraction(t)
    if not 0 < t <= 1:
        raise ConfigError(f"threshold must lie in (0, 1], got {float(t)}")
    return t


def _subsumes(co: int, fx: int, fy: int, t: Fraction) -> bool:
    # P(x|y) = co/fy >= t  and  P(y|x) = co/fx < t, cross-multiplied to stay exact
    return co >= t * fy and co < t * fx


def subsumes(x: str, y: str, stats: CooccurrenceStats, threshold=0.8) -> bool:
    """True when ``x`` is judged broader than ``y``."""
    t = _threshold(threshold)
    for term in (x, y):
        if stats.freq.get(term, 0) <= 0:
            raise UnknownTermError(term)
    return _subsumes(stats.cooccur(x, y), stats.freq[x], stats.freq[y], t)


def induce_baseline_hierarchy(docs, threshold=0.8, min_support: int = 2,
                              stats: CooccurrenceStats | None = None) -> set[tuple[str, str]]:
    """All (broader, narrower) pairs the subsumption test accepts.

    Only terms appearing in at least ``min_support`` documents are candidates.
    Pairs that never co-occur cannot pass (P(x|y) would be 0), so only the
    co-occurrence table is scanned.
    """
    t = _threshold(threshold)
    if stats is None:
        stats = count_cooccurrence(docs)
    freq = stats.freq
    out = set()
    for (a, b), co in stats.co.items():
        fa, fb = freq[a], freq[b]
        if fa < min_support or fb < min_support:
            continue
        if _subsumes(co, fa, fb, t):
            out.add((a, b))
        elif _subsumes(co, fb, fa, t):
            out.add((b, a))
    return out
