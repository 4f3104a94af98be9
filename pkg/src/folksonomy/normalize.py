"""Turn raw collection/set names into normalized concept terms."""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import groupby
from pathlib import Path

from .errors import ConfigError
from .porter import stem

REQUIRED_SEPARATORS = frozenset("&<>:/,;|()")
DEFAULT_SEPARATORS = REQUIRED_SEPARATORS | frozenset("[]{}+")
DEFAULT_STOPLIST = frozenset({
    "me", "myself", "my", "i", "our", "your", "the", "a", "an", "of", "in", "on",
    "at", "and", "or", "misc", "other", "stuff",
})
# anything that is neither a word character nor whitespace, plus underscore
DEFAULT_STRIP_PATTERN = r"[^\w\s]|_"


@dataclass(frozen=True)
class NormalizerConfig:
    separators: frozenset = DEFAULT_SEPARATORS
    stoplist: frozenset = DEFAULT_STOPLIST
    strip_pattern: str = DEFAULT_STRIP_PATTERN
    split_numbers: bool = True
    _split: re.Pattern = field(init=False, repr=False, compare=False)
    _strip: re.Pattern = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seps = frozenset(self.separators)
        missing = REQUIRED_SEPARATORS - seps
        if missing:
            raise ConfigError(f"separator set must include {''.join(sorted(missing))!r}")
        if any(len(c) != 1 for c in seps):
            raise ConfigError("separators must be single characters")
        object.__setattr__(self, "separators", seps)
        object.__setattr__(self, "stoplist", frozenset(w.lower() for w in self.stoplist))
        object.__setattr__(self, "_split", re.compile("[" + re.escape("".join(sorted(seps))) + "]"))
        try:
            object.__setattr__(self, "_strip", re.compile(self.strip_pattern))
        except re.error as e:
            raise ConfigError(f"bad strip pattern: {e}") from None

    def to_dict(self) -> dict:
        return {
            "separators": "".join(sorted(self.separators)),
            "stoplist": sorted(self.stoplist),
            "strip_pattern": self.strip_pattern,
            "split_numbers": self.split_numbers,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NormalizerConfig":
        return cls(frozenset(d["separators"]), frozenset(d["stoplist"]), d["strip_pattern"],
                   d.get("split_numbers", True))

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()


def read_stoplist(path) -> frozenset:
    """One word per line; blank lines and ``#`` comments ignored."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return frozenset(words)


DEFAULT_CONFIG = NormalizerConfig()


def _split_numbers(fragment: str) -> list[str]:
    words = fragment.split()
    if not any(w.isdecimal() for w in words):
        return [fragment]
    out = []
    for numeric, group in groupby(words, key=str.isdecimal):
        if numeric:
            out.extend(group)
        else:
            out.append(" ".join(group))
    return out


def tokenize(name: str, cfg: NormalizerConfig = DEFAULT_CONFIG) -> list[str]:
    """Split on separator characters, not on whitespace, so composite terms survive.

    With ``cfg.split_numbers`` a purely numeric word ("2005") is also cut out
    of its fragment: "Travel 2005" gives ["Travel", "2005"].
    """
    frags = [f.strip() for f in cfg._split.split(name) if f.strip()]
    if cfg.split_numbers:
        frags = [part for f in frags for part in _split_numbers(f)]
    return frags


def _stem_word(word: str) -> str:
    if word.isascii() and word.isalpha():
        return stem(word)
    return word


def normalize_token(token: str, cfg: NormalizerConfig = DEFAULT_CONFIG) -> str | None:
    """Normalize one fragment into a term, or None if nothing informative is left.

    >>> normalize_token("vehicle")
    'vehicl'
    >>> normalize_token("Myself!!") is None
    True
    """
    text = cfg._strip.sub("", token.casefold())
    out = []
    for word in text.split():
        if word in cfg.stoplist:
            continue
        s = _stem_word(word)
        if s in cfg.stoplist:
            continue
        out.append(s)
    return " ".join(out) or None


@lru_cache(maxsize=1 << 18)
def _normalize_name_cached(name: str, cfg: NormalizerConfig) -> tuple[str, ...]:
    terms = {}
    for tok in tokenize(name, cfg):
        t = normalize_token(tok, cfg)
        if t is not None:
            terms.setdefault(t, None)
    return tuple(terms)


def normalize_name(name: str, cfg: NormalizerConfig = DEFAULT_CONFIG) -> tuple[str, ...]:
    """Ordered, duplicate-free terms of a collection or set name."""
    return _normalize_name_cached(name, cfg)
