import io
import random

import pytest

from folksonomy.corpus import Corpus, LoadReport, RawRecord, corpus_stats, load_corpus, write_corpus
from folksonomy.errors import CorpusError


def load(path, fmt="jsonl", report=None):
    return load_corpus(path, fmt, report=report, stream=io.StringIO())


def test_exact_duplicates_removed(write_jsonl):
    c = load(write_jsonl([("u1", "Travel", "China"), ("u1", "Travel", "China")]))
    assert c.record_count == 1
    assert c.user_count == 1


def test_empty_file(tmp_path):
    p = tmp_path / "empty.jsonl"
    p.write_text("")
    c = load(p)
    assert (c.record_count, c.user_count) == (0, 0)


def test_two_users(write_jsonl):
    c = load(write_jsonl([("u1", "Travel", "China"), ("u2", "Travel", "Japan")]))
    assert (c.record_count, c.user_count) == (2, 2)


def test_first_seen_order_kept(write_jsonl):
    rows = [("u2", "b", "c"), ("u1", "a", "b"), ("u2", "b", "c"), ("u0", "x", "y")]
    c = load(write_jsonl(rows))
    assert [r.user_id for r in c.records] == ["u2", "u1", "u0"]


def test_tsv_format(tmp_path):
    p = tmp_path / "c.tsv"
    p.write_text("u1\tTravel\tChina\nu2\tTravel\tSouth Africa\n", encoding="utf-8")
    c = load(p, "tsv")
    assert c.records[1] == RawRecord("u2", "Travel", "South Africa")


def test_malformed_line_reports_line_number(tmp_path):
    p = tmp_path / "bad.jsonl"
    p.write_text('{"user": "u1", "collection": "a", "set": "b"}\n{not json\n')
    with pytest.raises(CorpusError) as e:
        load(p)
    assert e.value.line == 2
    assert ":2:" in str(e.value)


@pytest.mark.parametrize("line", [
    '{"user": "u1", "collection": "a"}',
    '["u1", "a", "b"]',
    '{"user": 3, "collection": "a", "set": "b"}',
])
def test_malformed_jsonl_variants(tmp_path, line):
    p = tmp_path / "bad.jsonl"
    p.write_text(line + "\n")
    with pytest.raises(CorpusError):
        load(p)


def test_tsv_wrong_column_count(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("u1\tTravel\n")
    with pytest.raises(CorpusError, match="3 tab-separated"):
        load(p, "tsv")


def test_empty_fields_rejected_and_counted(write_jsonl):
    rows = [("u1", "Travel", "China"), ("u2", "  ", "China"), ("", "a", "b"), ("u3", "x", "")]
    report = LoadReport("x")
    c = load(write_jsonl(rows), report=report)
    assert c.record_count == 1
    assert report.rejected == 3
    assert report.reject_reasons == {"empty collection": 1, "empty user": 1, "empty set": 1}


def test_load_report_goes_to_stream(write_jsonl):
    buf = io.StringIO()
    load_corpus(write_jsonl([("u1", "a", "b")] * 2), stream=buf)
    assert "1 duplicate(s) removed" in buf.getvalue()


def test_unreadable_file(tmp_path):
    with pytest.raises(CorpusError, match="cannot read"):
        load(tmp_path / "nope.jsonl")


def test_unknown_format(write_jsonl):
    with pytest.raises(CorpusError):
        load(write_jsonl([]), "csv")


def test_stats():
    c = Corpus.from_records([RawRecord("u1", "Travel", "China"), RawRecord("u2", "Travel", "Japan")])
    assert corpus_stats(c) == {"records": 2, "users": 2, "collections": 1, "sets": 2}
    assert corpus_stats(Corpus()) == {"records": 0, "users": 0, "collections": 0, "sets": 0}
    c = Corpus.from_records(RawRecord("u1", "Insects", s) for s in ("Ants", "Bees", "Wasps"))
    assert corpus_stats(c) == {"records": 3, "users": 1, "collections": 1, "sets": 3}


def _random_rows(rng, n):
    return [(f"u{rng.randrange(5)}", rng.choice(["Travel", "Animals", "Me"]),
             rng.choice(["China", "Birds", "Myself", "Japan"])) for _ in range(n)]


def test_deterministic_and_self_concatenation_idempotent(tmp_path):
    rows = _random_rows(random.Random(3), 60)
    p = tmp_path / "c.tsv"
    write_corpus([RawRecord(*r) for r in rows], p, "tsv")
    once = load(p, "tsv")
    assert load(p, "tsv") == once
    doubled = tmp_path / "d.tsv"
    doubled.write_bytes(p.read_bytes() * 2)
    assert load(doubled, "tsv") == once
    assert once.user_count == len({r[0] for r in rows})


def test_write_roundtrip(tmp_path):
    c = Corpus.from_records([RawRecord("ü", "Voyage: Chine", "Pékin")])
    write_corpus(c, tmp_path / "c.jsonl")
    assert load(tmp_path / "c.jsonl") == c
