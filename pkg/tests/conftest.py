import pytest
from hypothesis import settings

from diagramma import corpus
from diagramma.chemgraph import MolecularGraph, parse_cgf
from diagramma.diaglang import builtin_language

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

WATER_CGF = "cgf 1\natom 1 O\natom 2 H\natom 3 H\nbond 1 2 1\nbond 1 3 1"


@pytest.fixture
def water() -> MolecularGraph:
    return parse_cgf(WATER_CGF)


@pytest.fixture
def caffeine() -> MolecularGraph:
    return corpus.molecule("caffeine")


@pytest.fixture(scope="session")
def registry():
    return corpus.registry()


@pytest.fixture(scope="session")
def bundled_diagrams():
    return corpus.diagrams()


@pytest.fixture(params=["WIRE2D", "WIRE2D_HDEP", "BALLSTICK3D", "SPACEFILL3D"])
def lang(request):
    return builtin_language(request.param)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
