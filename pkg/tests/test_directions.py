from itertools import combinations, product

import pytest

from orthogeo import fixtures as F
from orthogeo.directions import (
    ONE,
    ZERO,
    Arrow,
    NotAnOrthogeometry,
    all_directions,
    canonical_direction,
    canonical_embedding,
    check_boolean,
    check_direction_axiom,
    check_lattice,
    directions_at,
    is_cone,
    minimal_cone,
    orthosum,
    reconstruct_omp,
    validate_orthogeometry,
)
from orthogeo.geometry import geometry_of
from orthogeo.oml import build_oml, is_boolean, is_lattice, iso_oml
from orthogeo.oracle import brute_directions_at, brute_lub

from conftest import ALGEBRA_NAMES, SMALL_NAMES


def d_of(A, label):
    return canonical_direction(A, A.index(label))


def as_sets(dirs):
    return {frozenset(d.arrows) for d in dirs}


@pytest.mark.parametrize("name", ALGEBRA_NAMES + ["loop3"])
def test_directions_match_exhaustive_assignment(geometries, name):
    G = geometries[name]
    for p in range(G.n_points):
        assert as_sets(directions_at(G, p)) == {frozenset(a) for a in brute_directions_at(G, p)}


def test_direction_examples(geometries):
    G = geometries["b8"]
    dirs = directions_at(G, G.point("p_a"))
    assert [d.arrows for d in dirs] == [((0, Arrow.DOWN),), ((0, Arrow.UP),)]
    T = geometries["two_block"]
    c = T.point("p_c")
    for d in directions_at(T, c):
        assert len(d.arrows) == 2 and d.arrows[0][1] == d.arrows[1][1]
    L = geometries["loop3"]
    assert all(len(directions_at(L, p)) == 2 for p in range(L.n_points))


@pytest.mark.parametrize("name", ALGEBRA_NAMES + ["loop3"])
def test_directions_come_in_complementary_pairs(geometries, name):
    G = geometries[name]
    for p in range(G.n_points):
        dirs = directions_at(G, p)
        assert len(dirs) in (0, 2)
        if dirs:
            d, e = dirs
            assert all(a is not b for (_, a), (_, b) in zip(d.arrows, e.arrows))
            assert d.flip() == e and e.flip() == d


def test_direction_axiom_failure_on_star():
    G = F.three_plane_star()
    verdict = check_direction_axiom(G)
    assert not verdict and verdict.witness == (0,)
    assert brute_directions_at(G, 0) == []


def test_direction_axiom_holds_on_fixtures(geometries):
    for name in ALGEBRA_NAMES + ["loop3"]:
        assert check_direction_axiom(geometries[name])


def test_validation_reports(geometries):
    r = validate_orthogeometry(geometries["b16"])
    assert r.pre_geometry_ok and r.proper and r.triangle_axiom and r.direction_axiom and r.verdict
    r = validate_orthogeometry(geometries["loop3"])
    assert not r.triangle_axiom and r.direction_axiom and not r.verdict
    assert validate_orthogeometry(geometries["loop4"]).verdict
    A4 = build_oml(["0", "1", "a", "a'"], [(0, 2), (0, 3), (2, 1), (3, 1)], [1, 0, 3, 2])
    r = validate_orthogeometry(geometry_of(A4))
    assert not r.proper and not r.verdict


def test_all_directions_rejects_invalid(geometries):
    with pytest.raises(NotAnOrthogeometry):
        all_directions(geometries["loop3"])


def test_direction_counts(algebras, geometries):
    for name in ALGEBRA_NAMES:
        assert len(all_directions(geometries[name])) == algebras[name].n
    assert len(all_directions(geometries["b8"])) == 8
    assert len(all_directions(geometries["two_block"])) == 12


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_direction_order_is_a_partial_order(geometries, name):
    P = all_directions(geometries[name])
    ds = list(P)
    le = {(d, e): P.leq(d, e) for d in ds for e in ds}
    for d in ds:
        assert le[d, d] and le[ZERO, d] and le[d, ONE]
    for d, e in product(ds, repeat=2):
        if d != e:
            assert not (le[d, e] and le[e, d])
    for d, e, f in product(ds, repeat=3):
        if le[d, e] and le[e, f]:
            assert le[d, f]


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_flip_is_antitone_involution(geometries, name):
    P = all_directions(geometries[name])
    assert ZERO.flip() == ONE
    for d in P:
        assert d.flip().flip() == d
        for e in P:
            assert P.leq(d, e) == P.leq(e.flip(), d.flip())


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_canonical_map_is_isomorphism(algebras, name):
    A = algebras[name]
    R = reconstruct_omp(geometry_of(A))
    f = canonical_embedding(A)
    assert sorted(f) == list(range(R.n))
    for a in range(A.n):
        assert f[A.ortho[a]] == R.ortho[f[a]]
        for b in range(A.n):
            assert A.le(a, b) == R.le(f[a], f[b])


def test_canonical_direction_examples(B8):
    a = B8.index("a")
    d = canonical_direction(B8, a)
    G = geometry_of(B8)
    assert d.point == G.point("p_a") and d.arrows == ((0, Arrow.DOWN),)
    assert canonical_direction(B8, B8.ortho[a]).arrows == ((0, Arrow.UP),)
    assert canonical_direction(B8, B8.bottom) == ZERO
    assert canonical_direction(B8, B8.top) == ONE


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_reconstruction_is_isomorphic(algebras, name):
    A = algebras[name]
    assert iso_oml(reconstruct_omp(geometry_of(A)), A) is not None


def test_cone_examples(B16):
    G = geometry_of(B16)
    da, db = d_of(B16, "a"), d_of(B16, "b")
    assert is_cone(G, ONE, [da, db])
    assert is_cone(G, d_of(B16, "a+b"), [da, db])
    assert not is_cone(G, d_of(B16, "c"), [da, db])


def test_minimal_cone_examples(B16, geometries):
    G = geometry_of(B16)
    assert minimal_cone(G, []) == ZERO
    assert minimal_cone(G, [d_of(B16, "a"), d_of(B16, "b")]) == d_of(B16, "a+b")
    L = geometries["loop4"]
    verdict = check_lattice(L)
    assert minimal_cone(L, verdict.witness) is None


def _small_sets(P, k):
    for size in range(k + 1):
        yield from combinations(P.directions, size)


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_is_cone_agrees_with_upper_bound(geometries, name):
    G = geometries[name]
    P = all_directions(G)
    for D in _small_sets(P, 3):
        for e in P:
            assert is_cone(G, e, D) == all(P.leq(d, e) for d in D)


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_minimal_cone_agrees_with_least_upper_bound(geometries, name):
    G = geometries[name]
    P = all_directions(G)
    for D in _small_sets(P, 3):
        assert minimal_cone(G, D) == brute_lub(P, D)


def test_lattice_verdicts(geometries):
    for name in ("b8", "b16", "b32", "two_block"):
        assert check_lattice(geometries[name])
    v = check_lattice(geometries["loop4"])
    assert not v
    assert brute_lub(all_directions(geometries["loop4"]), v.witness) is None


def test_boolean_verdicts(geometries):
    for name in ("b8", "b16", "b32"):
        assert check_boolean(geometries[name])
    T = geometries["two_block"]
    v = check_boolean(T)
    assert not v
    assert not T.collinear(*v.witness)
    assert not check_boolean(geometries["loop4"])


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_lattice_and_boolean_criteria_match_algebra(algebras, name):
    A = algebras[name]
    G = geometry_of(A)
    assert bool(check_lattice(G)) == is_lattice(A)
    assert bool(check_boolean(G)) == is_boolean(A)


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_orthosum_matches_join_of_orthogonal_elements(algebras, name):
    A = algebras[name]
    G = geometry_of(A)
    for a, b in product(range(A.n), repeat=2):
        s = orthosum(G, canonical_direction(A, a), canonical_direction(A, b))
        if A.orthogonal(a, b):
            assert s == canonical_direction(A, A.join(a, b))
        else:
            assert s is None
