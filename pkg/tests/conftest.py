"""Shared pytest wiring: the ``criterion`` marker and its summary table."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `import oracles`

_OUTCOMES: dict[str, list[str]] = {}
_TITLES: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion this test decides")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key, title = mark.args
    _TITLES[key] = title
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            state = "XFAIL" if rep.skipped else "XPASS"
        elif rep.passed:
            state = "PASS"
        elif rep.skipped:
            state = "SKIP"
        else:
            state = "FAIL"
        _OUTCOMES.setdefault(key, []).append(state)


def _verdict(states: list[str]) -> str:
    if "FAIL" in states or "XPASS" in states:
        return "FAIL"
    if all(s == "XFAIL" for s in states):
        return "XFAIL"
    if "SKIP" in states:
        return "INCOMPLETE"
    return "PASS"


def _key_order(key: str):
    head = key.split(".")[0]
    return (int(head) if head.isdigit() else 99, key)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_OUTCOMES, key=_key_order):
        states = _OUTCOMES[key]
        terminalreporter.write_line(
            f"criterion {key:<5} {_verdict(states):<10} ({len(states)} checks) {_TITLES[key]}"
        )
