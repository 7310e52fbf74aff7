from functools import lru_cache

import pytest

from orthogeo import fixtures as F
from orthogeo.bsub import (
    enumerate_lines,
    enumerate_planes16,
    enumerate_points,
    generated_subalgebra,
    generation_obstacle,
)
from orthogeo.greechie import paste_greechie
from orthogeo.oml import build_oml, commutes

from conftest import ALGEBRA_NAMES, CHAINS, brute_subalgebras


@lru_cache(maxsize=None)
def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def carriers(subs):
    return sorted(frozenset(s.carrier) for s in subs)


def brute_by_size(A, size):
    return sorted(s for s in brute_subalgebras(A) if len(s) == size)


def test_stirling_reference_values():
    assert [stirling2(5, k) for k in range(1, 6)] == [1, 15, 25, 10, 1]


def test_point_line_plane_counts(algebras):
    B8, B16 = algebras["b8"], algebras["b16"]
    assert len(enumerate_points(B8)) == 3
    assert len(enumerate_points(B16)) == 7
    assert len(enumerate_lines(B8)) == 1
    assert len(enumerate_lines(B16)) == 6
    assert len(enumerate_lines(algebras["two_block"])) == 2
    assert len(enumerate_planes16(B16)) == 1
    assert enumerate_planes16(B8) == []
    assert enumerate_planes16(algebras["loop4"]) == []


def test_two_element_algebra_has_no_points():
    A = build_oml(["0", "1"], [(0, 1)], [1, 0])
    assert enumerate_points(A) == []
    assert enumerate_lines(A) == []


@pytest.mark.parametrize("k", [3, 4, 5])
def test_boolean_counts_follow_stirling_numbers(k):
    A = paste_greechie(F.boolean(k))
    assert len(enumerate_points(A)) == (2**k - 2) // 2
    assert len(enumerate_lines(A)) == stirling2(k, 3)
    assert len(enumerate_planes16(A)) == stirling2(k, 4)


ORACLE_CASES = ALGEBRA_NAMES + [f"chain{m}" for m in range(2, 6)]


def _algebra(algebras, name):
    if name.startswith("chain"):
        return paste_greechie(CHAINS[int(name[5:]) - 2])
    return algebras[name]


@pytest.mark.parametrize("name", ORACLE_CASES)
def test_enumerations_match_brute_force(algebras, name):
    A = _algebra(algebras, name)
    assert carriers(enumerate_points(A)) == brute_by_size(A, 4)
    assert carriers(enumerate_lines(A)) == brute_by_size(A, 8)
    assert carriers(enumerate_planes16(A)) == brute_by_size(A, 16)


@pytest.mark.parametrize("name", ORACLE_CASES)
def test_incidence_counts(algebras, name):
    A = _algebra(algebras, name)
    points = [frozenset(p.carrier) for p in enumerate_points(A)]
    lines = [frozenset(x.carrier) for x in enumerate_lines(A)]
    for line in lines:
        assert sum(p <= line for p in points) == 3
    for plane in enumerate_planes16(A):
        c = frozenset(plane.carrier)
        assert sum(p <= c for p in points) == 7
        assert sum(x <= c for x in lines) == 6


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_subalgebra_invariants(algebras, name):
    A = algebras[name]
    for sub in enumerate_points(A) + enumerate_lines(A) + enumerate_planes16(A):
        c = set(sub.carrier)
        assert len(c) == 2**sub.rank
        assert {A.bottom, A.top} <= c
        for x in c:
            assert A.ortho[x] in c
            for y in c:
                assert A.join(x, y) in c and A.meet(x, y) in c


def test_output_is_sorted(algebras):
    A = algebras["b32"]
    for subs in (enumerate_points(A), enumerate_lines(A), enumerate_planes16(A)):
        keys = [s.carrier for s in subs]
        assert keys == sorted(keys)


def test_generated_by_one_element(B16):
    a = B16.index("a")
    sub = generated_subalgebra(B16, {a})
    assert set(sub.carrier) == {B16.bottom, B16.top, a, B16.ortho[a]}


def test_generated_by_chain_has_eight_elements(B16):
    a, ab = B16.index("a"), B16.index("a+b")
    sub = generated_subalgebra(B16, {a, ab})
    assert len(sub.carrier) == 8
    # Fixpoint oracle: close under ortho and binary meet/join.
    closed = {B16.bottom, B16.top, a, ab}
    while True:
        grown = closed | {B16.ortho[x] for x in closed}
        grown |= {B16.join(x, y) for x in grown for y in grown}
        grown |= {B16.meet(x, y) for x in grown for y in grown}
        if grown == closed:
            break
        closed = grown
    assert set(sub.carrier) == closed


def test_non_commuting_pair_is_absent(algebras):
    T = algebras["two_block"]
    a, d = T.index("a"), T.index("d")
    assert not commutes(T, a, d)
    assert generated_subalgebra(T, {a, d}) is None
    assert "non-commuting" in generation_obstacle(T, {a, d})


def test_overflow_is_absent(algebras):
    B32 = algebras["b32"]
    seed = {B32.index(x) for x in "abcd"}
    assert generated_subalgebra(B32, seed) is None
    assert "exceeds" in generation_obstacle(B32, seed)
