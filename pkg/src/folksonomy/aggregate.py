"""Delegate collection->set relations to term pairs, count users, resolve conflicts."""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .corpus import Corpus, RawRecord
from .errors import ConfigError
from .normalize import DEFAULT_CONFIG, NormalizerConfig, normalize_name

Pair = tuple[str, str]


class Constraint(str, enum.Enum):
    HARD = "hard"
    SOFT = "soft"

    @classmethod
    def parse(cls, value) -> "Constraint":
        try:
            return cls(value)
        except ValueError:
            raise ConfigError(f"constraint must be 'hard' or 'soft', got {value!r}") from None


@dataclass(frozen=True, order=True)
class RelationTally:
    broader: str
    narrower: str
    user_support: int


@dataclass(frozen=True)
class RelationSet:
    """Directed broader->narrower pairs that survived conflict resolution.

    ``symmetric`` holds pairs kept in both directions (only possible under the
    soft constraint, on equal support) so callers can drop them if they want a
    strictly antisymmetric relation.
    """

    relations: frozenset
    constraint: Constraint
    support: Mapping
    symmetric: frozenset = frozenset()

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(sorted(self.relations))

    def __contains__(self, pair):
        return pair in self.relations


def delegate_relations(rec: RawRecord, cfg: NormalizerConfig = DEFAULT_CONFIG) -> set[Pair]:
    """Every collection term is broader than every set term of the same record."""
    coll = normalize_name(rec.collection_name, cfg)
    if not coll:
        return set()
    sets = normalize_name(rec.set_name, cfg)
    return {(c, s) for c in coll for s in sets if c != s}


def user_pairs(records: Iterable[RawRecord], cfg: NormalizerConfig = DEFAULT_CONFIG) -> set:
    """Distinct (user, broader, narrower) triples asserted by ``records``."""
    triples = set()
    for rec in records:
        for b, n in delegate_relations(rec, cfg):
            triples.add((rec.user_id, b, n))
    return triples


def tally_users(c: Corpus | Iterable[RawRecord], cfg: NormalizerConfig = DEFAULT_CONFIG) -> Counter:
    """Map each directed term pair to the number of distinct users asserting it."""
    per_user: dict[str, set] = {}
    for rec in c:
        pairs = delegate_relations(rec, cfg)
        if pairs:
            per_user.setdefault(rec.user_id, set()).update(pairs)
    tally = Counter()
    for pairs in per_user.values():
        tally.update(pairs)
    return tally


def merge_tallies(*parts: Mapping) -> Counter:
    """Combine tallies computed over user-disjoint partitions of a corpus."""
    out = Counter()
    for p in parts:
        out.update(p)
    return out


def keeps(forward: int, reverse: int, constraint: Constraint) -> bool:
    if forward <= 1:
        return False
    if constraint is Constraint.HARD:
        return reverse <= 1
    return reverse <= forward


def resolve_conflicts(tallies: Mapping, constraint=Constraint.SOFT) -> RelationSet:
    constraint = Constraint.parse(constraint)
    kept = set()
    for (x, y), d in tallies.items():
        if keeps(d, tallies.get((y, x), 0), constraint):
            kept.add((x, y))
    symmetric = frozenset(p for p in kept if (p[1], p[0]) in kept)
    support = {p: tallies[p] for p in kept}
    return RelationSet(frozenset(kept), constraint, support, symmetric)


def tally_rows(tallies: Mapping) -> list[RelationTally]:
    """Rows ordered by support (descending), then broader, then narrower."""
    rows = [RelationTally(b, n, d) for (b, n), d in tallies.items() if d > 0]
    rows.sort(key=lambda r: (-r.user_support, r.broader, r.narrower))
    return rows


def format_tallies(tallies: Mapping) -> str:
    return "".join(f"{r.broader}\t{r.narrower}\t{r.user_support}\n" for r in tally_rows(tallies))


def parse_tallies(text: str) -> Counter:
    out = Counter()
    for line in text.splitlines():
        if line:
            b, n, d = line.split("\t")
            out[(b, n)] = int(d)
    return out
