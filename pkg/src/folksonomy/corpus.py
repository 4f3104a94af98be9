"""Loading and validating raw collection/set records."""
from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CorpusError

logger = logging.getLogger(__name__)

FORMATS = ("jsonl", "tsv")


@dataclass(frozen=True)
class RawRecord:
    """One user's assertion that a set lives under a collection."""

    user_id: str
    collection_name: str
    set_name: str

    def problems(self) -> list[str]:
        out = []
        if not self.user_id.strip():
            out.append("empty user")
        if not self.collection_name.strip():
            out.append("empty collection")
        if not self.set_name.strip():
            out.append("empty set")
        return out


@dataclass(frozen=True)
class Corpus:
    records: tuple[RawRecord, ...] = ()

    @classmethod
    def from_records(cls, records: Iterable[RawRecord]) -> "Corpus":
        """Build a corpus, dropping exact duplicates but keeping first-seen order."""
        return cls(tuple(dict.fromkeys(records)))

    @property
    def record_count(self) -> int:
        return len(self.records)

    @property
    def user_count(self) -> int:
        return len({r.user_id for r in self.records})

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


@dataclass
class LoadReport:
    path: str
    lines: int = 0
    blank: int = 0
    duplicates: int = 0
    rejected: int = 0
    reject_reasons: dict = field(default_factory=dict)

    def summary(self) -> str:
        s = (f"loaded {self.path}: {self.lines} lines, {self.duplicates} duplicate(s) removed, "
             f"{self.rejected} rejected")
        if self.reject_reasons:
            s += " (" + ", ".join(f"{k}: {v}" for k, v in sorted(self.reject_reasons.items())) + ")"
        return s


def _parse_jsonl(line: str, path, lineno) -> RawRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise CorpusError(f"invalid JSON ({e.msg})", path, lineno) from None
    if not isinstance(obj, dict):
        raise CorpusError("expected a JSON object", path, lineno)
    try:
        vals = [obj["user"], obj["collection"], obj["set"]]
    except KeyError as e:
        raise CorpusError(f"missing field {e.args[0]!r}", path, lineno) from None
    for name, v in zip(("user", "collection", "set"), vals):
        if not isinstance(v, str):
            raise CorpusError(f"field {name!r} must be a string", path, lineno)
    return RawRecord(*vals)


def _parse_tsv(line: str, path, lineno) -> RawRecord:
    cols = line.split("\t")
    if len(cols) != 3:
        raise CorpusError(f"expected 3 tab-separated columns, got {len(cols)}", path, lineno)
    return RawRecord(*cols)


def load_corpus(path, format: str = "jsonl", report: LoadReport | None = None,
                stream=None) -> Corpus:
    """Read a corpus file.

    Exact duplicate records are removed (first occurrence kept). Records with
    an empty user, collection or set are rejected and tallied in the load
    report, which is written to ``stream`` (stderr by default). Malformed
    lines raise :class:`CorpusError` with the offending line number.
    """
    if format not in FORMATS:
        raise CorpusError(f"unknown format {format!r}; expected one of {FORMATS}")
    parse = _parse_jsonl if format == "jsonl" else _parse_tsv
    path = Path(path)
    if report is None:
        report = LoadReport(str(path))
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise CorpusError(f"cannot read file ({e})", path) from None

    seen: dict[RawRecord, None] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        report.lines += 1
        if not line.strip():
            report.blank += 1
            continue
        rec = parse(line, path, lineno)
        bad = rec.problems()
        if bad:
            report.rejected += 1
            for reason in bad:
                report.reject_reasons[reason] = report.reject_reasons.get(reason, 0) + 1
            logger.debug("%s:%d rejected: %s", path, lineno, "; ".join(bad))
            continue
        if rec in seen:
            report.duplicates += 1
            continue
        seen[rec] = None

    print(report.summary(), file=stream if stream is not None else sys.stderr)
    return Corpus(tuple(seen))


def write_corpus(corpus: Corpus | Sequence[RawRecord], path, format: str = "jsonl") -> None:
    lines = []
    for r in corpus:
        if format == "jsonl":
            lines.append(json.dumps({"user": r.user_id, "collection": r.collection_name,
                                     "set": r.set_name}, ensure_ascii=False))
        elif format == "tsv":
            lines.append(f"{r.user_id}\t{r.collection_name}\t{r.set_name}")
        else:
            raise CorpusError(f"unknown format {format!r}")
    Path(path).write_text("".join(l + "\n" for l in lines), encoding="utf-8")


def corpus_stats(c: Corpus) -> dict:
    return {
        "records": c.record_count,
        "users": c.user_count,
        "collections": len({r.collection_name for r in c.records}),
        "sets": len({r.set_name for r in c.records}),
    }
