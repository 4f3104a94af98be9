import json

import pytest

_acceptance_results = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _acceptance_results.append((marker.args[0], marker.args[1], item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, name, outcome in sorted(_acceptance_results):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title} ({name})")


@pytest.fixture
def write_jsonl(tmp_path):
    """Write (user, collection, set) triples as a JSONL corpus and return its path."""
    def _write(rows, name="corpus.jsonl"):
        p = tmp_path / name
        p.write_text("".join(
            json.dumps({"user": u, "collection": c, "set": s}) + "\n" for u, c, s in rows),
            encoding="utf-8")
        return p
    return _write
