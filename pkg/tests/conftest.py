"""Acceptance bookkeeping: one PASS/FAIL line per criterion after the run."""

import pytest

CRITERIA = {
    "AC1": "critical-range closed form agrees with the Deligne oracle",
    "AC2": "odd-degree period relation re-derived and eta-independent",
    "AC3": "even-degree period relation re-derived",
    "AC4": "archimedean factor solved as a power of 2 pi i",
    "AC5": "CM-type exponent profiles and the pair grid rule",
    "AC6": "rewrite system idempotent, reflexive, mutation-sensitive",
    "AC7": "Gauss sum anchors",
    "AC8": "DSL round trip and CLI contract",
}

_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id): test contributes to an acceptance criterion")


def pytest_collection_finish(session):
    for item in session.items:
        for mark in item.iter_markers("acceptance"):
            _outcomes.setdefault(mark.args[0], [])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marks = list(item.iter_markers("acceptance"))
    if not marks:
        return
    if rep.when == "call" or rep.failed:
        for mark in marks:
            _outcomes.setdefault(mark.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_outcomes):
        runs = _outcomes[key]
        status = "NOT RUN" if not runs else "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"{key} {status}  {CRITERIA.get(key, '')} ({len(runs)} checks)")
