from __future__ import annotations

import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"

sys.path.insert(0, str(Path(__file__).resolve().parent))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def repo_root(monkeypatch) -> Path:
    """Chdir to the repo root so fixture paths stay repo-relative."""
    monkeypatch.chdir(REPO_ROOT)
    return REPO_ROOT


def fixture_bytes(name: str) -> bytes:
    return (FIXTURES / name).read_bytes()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    import re

    results: dict[int, str] = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            match = re.search(r"test_acceptance\.py::test_criterion_(\d+)", nodeid)
            if match:
                number = int(match.group(1))
                status = "PASS" if outcome == "passed" else "FAIL"
                if results.get(number) != "FAIL":
                    results[number] = status
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(f"criterion {number}: {results[number]}")
