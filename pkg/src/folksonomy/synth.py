"""Synthetic corpora with a planted taxonomy and controllable noise.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014) so that a seed
reproduces the same corpus on any platform. For every record the generator
draws, in this order: one uniform float ``u`` deciding the record kind, one
edge index, and (junk records only) two junk-term indices. ``u <
idiosyncrasy_rate`` gives a junk record, ``u < idiosyncrasy_rate +
inversion_rate`` a reversed planted edge, anything else the planted edge.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .corpus import Corpus, RawRecord
from .errors import ConfigError
from .normalize import DEFAULT_CONFIG, NormalizerConfig, normalize_name

MASK64 = (1 << 64) - 1
JUNK_TERMS = 9999

DEFAULT_TAXONOMY = (
    ("Animals", "Birds"), ("Animals", "Insects"), ("Animals", "Mammals"),
    ("Birds", "Robins"), ("Birds", "Owls"), ("Birds", "Eagles"),
    ("Insects", "Butterflies"), ("Insects", "Beetles"), ("Insects", "Dragonflies"),
    ("Mammals", "Whales"), ("Mammals", "Foxes"),
    ("Travel", "Countries"), ("Countries", "China"), ("Countries", "France"),
    ("Countries", "Russia"), ("France", "Paris"), ("Russia", "Moscow"), ("China", "Beijing"),
    ("Vehicles", "Cars"), ("Vehicles", "Trucks"), ("Vehicles", "Bicycles"),
    ("Sports", "Football"), ("Sports", "Tennis"),
    ("Nature", "Flowers"), ("Flowers", "Tulips"),
)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by multiply-shift."""
        return (self.next_u64() * n) >> 64


@dataclass(frozen=True)
class SynthSpec:
    taxonomy: tuple = DEFAULT_TAXONOMY
    users: int = 50
    records_per_user: int = 5
    inversion_rate: float = 0.0
    idiosyncrasy_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "taxonomy", tuple(tuple(e) for e in self.taxonomy))
        if not self.taxonomy:
            raise ConfigError("taxonomy must not be empty")
        if any(len(e) != 2 for e in self.taxonomy):
            raise ConfigError("taxonomy edges must be (broader, narrower) pairs")
        if self.users < 1 or self.records_per_user < 1:
            raise ConfigError("users and records_per_user must be positive")
        for name in ("inversion_rate", "idiosyncrasy_rate"):
            v = getattr(self, name)
            if not 0 <= v < 1:
                raise ConfigError(f"{name} must lie in [0, 1), got {v}")
        if self.inversion_rate + self.idiosyncrasy_rate >= 1:
            raise ConfigError("inversion_rate + idiosyncrasy_rate must be below 1")

    @classmethod
    def from_json(cls, path) -> "SynthSpec":
        d = json.loads(Path(path).read_text(encoding="utf-8"))
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown synth spec keys: {sorted(unknown)}")
        try:
            return cls(**d)
        except TypeError as e:
            raise ConfigError(str(e)) from None


def _term(name: str, cfg: NormalizerConfig) -> str:
    terms = normalize_name(name, cfg)
    if len(terms) != 1:
        raise ConfigError(f"taxonomy name {name!r} must normalize to exactly one term, got {terms}")
    return terms[0]


def planted_edges(spec: SynthSpec, cfg: NormalizerConfig = DEFAULT_CONFIG) -> set[tuple[str, str]]:
    """The planted taxonomy expressed in normalized terms."""
    edges = set()
    names_by_term: dict[str, str] = {}
    for b, n in spec.taxonomy:
        tb, tn = _term(b, cfg), _term(n, cfg)
        for raw, t in ((b, tb), (n, tn)):
            if names_by_term.setdefault(t, raw) != raw:
                raise ConfigError(f"{raw!r} and {names_by_term[t]!r} both normalize to {t!r}")
        for t in (tb, tn):
            if re.fullmatch(r"junk\d+", t):
                raise ConfigError(f"term {t!r} collides with the reserved junk namespace")
        if tb == tn:
            raise ConfigError(f"edge {b!r} -> {n!r} is a self-loop after normalization")
        edges.add((tb, tn))
    return edges


def junk_name(i: int) -> str:
    return f"junk{i + 1:04d}"


def iter_draws(spec: SynthSpec) -> Iterator[tuple[RawRecord, str]]:
    """Yield every drawn record with its kind: ``planted``, ``inverted`` or ``junk``.

    Exact duplicates are not removed here.
    """
    rng = SplitMix64(spec.seed)
    n_edges = len(spec.taxonomy)
    width = len(str(spec.users))
    for u in range(spec.users):
        user = f"user{u + 1:0{width}d}"
        for _ in range(spec.records_per_user):
            r = rng.random()
            broader, narrower = spec.taxonomy[rng.below(n_edges)]
            if r < spec.idiosyncrasy_rate:
                a = rng.below(JUNK_TERMS)
                b = (a + 1 + rng.below(JUNK_TERMS - 1)) % JUNK_TERMS
                yield RawRecord(user, junk_name(a), junk_name(b)), "junk"
            elif r < spec.idiosyncrasy_rate + spec.inversion_rate:
                yield RawRecord(user, narrower, broader), "inverted"
            else:
                yield RawRecord(user, broader, narrower), "planted"


def generate(spec: SynthSpec, cfg: NormalizerConfig = DEFAULT_CONFIG) -> Corpus:
    planted_edges(spec, cfg)  # validates that names map back to distinct terms
    return Corpus.from_records(rec for rec, _ in iter_draws(spec))
