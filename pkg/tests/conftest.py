import sys
from functools import lru_cache
from pathlib import Path

import pytest

from orthogeo import fixtures as F
from orthogeo.geometry import geometry_of, geometry_of_diagram
from orthogeo.greechie import paste_greechie
from orthogeo.oracle import brute_boolean_subalgebras

DATA = Path(__file__).parent / "data"

DIAGRAMS = {
    "b8": F.boolean(3),
    "b16": F.boolean(4),
    "b32": F.boolean(5),
    "two_block": F.two_block(),
    "loop4": F.loop(4),
}
ALGEBRA_NAMES = list(DIAGRAMS)
SMALL_NAMES = ["b8", "b16", "two_block", "loop4"]
CHAINS = [F.chain(m) for m in range(2, 6)]


@pytest.fixture(scope="session")
def algebras():
    return {name: paste_greechie(d) for name, d in DIAGRAMS.items()}


@pytest.fixture(scope="session")
def geometries(algebras):
    out = {name: geometry_of(A) for name, A in algebras.items()}
    out["loop3"] = geometry_of_diagram(F.loop(3))
    return out


@pytest.fixture(scope="session")
def B8(algebras):
    return algebras["b8"]


@pytest.fixture(scope="session")
def B16(algebras):
    return algebras["b16"]


@lru_cache(maxsize=None)
def brute_subalgebras(A):
    """Brute-force subalgebra list, shared across tests because B32 takes seconds."""
    return brute_boolean_subalgebras(A, 16)


def fixture_homs(algebras):
    """The named homomorphisms used for round trips: identity, embedding, collapse."""
    from orthogeo.morphisms import hom_from_atoms, identity_hom

    B8, B16 = algebras["b8"], algebras["b16"]
    ix8, ix16 = B8.index, B16.index
    embed = hom_from_atoms(B8, B16, {ix8("a"): ix16("a"), ix8("b"): ix16("b"), ix8("c"): ix16("c+d")})
    collapse = hom_from_atoms(
        B16, B8, {ix16("a"): ix8("a"), ix16("b"): ix8("b"), ix16("c"): ix8("c"), ix16("d"): B8.bottom}
    )
    return {
        "identity_b16": identity_hom(B16),
        "identity_loop4": identity_hom(algebras["loop4"]),
        "embed_b8_b16": embed,
        "collapse_b16_b8": collapse,
    }


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
