from pathlib import Path

import pytest

from subarr.io import parse_arrangement
from subarr.lattice import Arrangement
from subarr.linalg import Subspace

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
CORPUS_FILES = sorted(CORPUS_DIR.glob("*.json"))

_criteria: list[tuple[str, bool, str]] = []


def record_criterion(name: str, ok: bool, detail: str = ""):
    _criteria.append((name, ok, detail))
    print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _criteria:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


def coord(l, *idx):
    """Span of e_i for the given 1-based indices, in Q^l."""
    return Subspace.coordinate([i - 1 for i in idx], l)


@pytest.fixture(scope="session")
def corpus() -> dict[str, Arrangement]:
    return {p.stem: parse_arrangement(p) for p in CORPUS_FILES}


@pytest.fixture
def boolean2():
    return Arrangement.from_subspaces([coord(4, 1, 2), coord(4, 3, 4)])


@pytest.fixture
def triple_plane():
    return Arrangement.from_subspaces(
        [coord(4, 1, 2), coord(4, 3, 4), Subspace.span([[1, 0, 1, 0], [0, 1, 0, 1]], 4)]
    )


@pytest.fixture
def chain3():
    """x1=span(e1,e2), x2=span(e2,e3), x3=span(e3,e4): a non-geometric lattice."""
    return Arrangement.from_subspaces([coord(4, 1, 2), coord(4, 2, 3), coord(4, 3, 4)])
