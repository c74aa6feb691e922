from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings

from bruhat_tits.corpus import render_corpus
from bruhat_tits.descriptor import load
from bruhat_tits.echelonnage import RayCase, assemble
from bruhat_tits.rootdata import build

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

ROOT = Path(__file__).resolve().parent.parent
DESCRIPTORS = ROOT / "descriptors"
REPORTS = ROOT / "reports"

ACCEPTANCE_LINES: list[str] = []


def split(label: str, rank: int):
    rs = build(label, rank)
    return assemble(rs, {o: RayCase("RES_SL2", 1) for o in rs.orbits}, 3)


def bc(rank: int):
    rs = build("BC", rank)
    cases = {"multipliable": RayCase("BC1", 1)}
    if rank > 1:
        cases["nonmultipliable"] = RayCase("RES_SL2", 2)
    return assemble(rs, cases, 2)


def corpus(name: str):
    return load(str(DESCRIPTORS / f"{name}.desc")).datum()


SHIPPED = sorted(p.stem for p in DESCRIPTORS.glob("*.desc"))


@pytest.fixture(scope="session")
def a1():
    return split("A", 1)


@pytest.fixture(scope="session")
def a2():
    return split("A", 2)


@pytest.fixture(scope="session")
def c2():
    return split("C", 2)


@pytest.fixture(scope="session")
def g2():
    return split("G", 2)


@pytest.fixture(scope="session")
def bc1():
    return bc(1)


@pytest.fixture(scope="session")
def bc2():
    return bc(2)


@pytest.fixture(scope="session")
def rendered():
    return render_corpus(DESCRIPTORS)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
