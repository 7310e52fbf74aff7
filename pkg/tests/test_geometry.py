from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthogeo import fixtures as F
from orthogeo.bsub import enumerate_planes16, enumerate_points
from orthogeo.geometry import (
    PLANE_TEMPLATE_LINES,
    LineCollision,
    LinesDontMeetAtP,
    PreOrthogeometry,
    check_triangle_axiom,
    detect_planes,
    geometry_of,
    geometry_of_diagram,
    is_subspace,
    nondegenerate_triangles,
    spans_exclusive_plane,
    subspace_closure,
)
from orthogeo.greechie import paste_greechie
from orthogeo.oml import build_oml
from orthogeo.oracle import brute_planes, brute_triangles

from conftest import ALGEBRA_NAMES, SMALL_NAMES

GEOMETRY_NAMES = ALGEBRA_NAMES + ["loop3"]


def naive_closure(G, seed):
    s = set(seed)
    while True:
        extra = {p for line in G.lines if len(s & set(line)) >= 2 for p in line} - s
        if not extra:
            return s
        s |= extra


def test_sizes(geometries):
    assert (geometries["b8"].n_points, len(geometries["b8"].lines)) == (3, 1)
    assert (geometries["b16"].n_points, len(geometries["b16"].lines)) == (7, 6)


def test_four_element_algebra_has_one_point_and_no_lines():
    A = build_oml(["0", "1", "a", "a'"], [(0, 2), (0, 3), (2, 1), (3, 1)], [1, 0, 3, 2])
    G = geometry_of(A)
    assert G.n_points == 1 and G.lines == ()
    assert not G.is_proper()


def test_line_collision():
    with pytest.raises(LineCollision):
        PreOrthogeometry("pqrs", [(0, 1, 2), (0, 1, 3)])


@pytest.mark.parametrize("name", ["b8", "b16", "two_block", "loop4"])
def test_diagram_geometry_agrees_with_algebra_geometry(algebras, name):
    from conftest import DIAGRAMS

    assert geometry_of_diagram(DIAGRAMS[name]) == geometry_of(algebras[name])


def test_closure_examples(geometries):
    G = geometries["b16"]
    line = G.lines[0]
    assert subspace_closure(G, line[:2]).carrier == frozenset(line)
    assert subspace_closure(G, []).carrier == frozenset()
    a, b, c = (G.point(n) for n in ("p_a", "p_b", "p_c"))
    closed = subspace_closure(G, {a, b, c}).carrier
    assert closed == frozenset(naive_closure(G, {a, b, c}))
    assert len(closed) == 7


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(0, 14)), st.sets(st.integers(0, 14)))
def test_closure_is_a_closure_operator(s, t):
    G = geometry_of(paste_greechie(F.boolean(5)))
    cs = subspace_closure(G, s).carrier
    assert s <= cs
    assert subspace_closure(G, cs).carrier == cs
    assert subspace_closure(G, s | t).carrier >= cs
    assert is_subspace(G, cs)
    assert cs == naive_closure(G, s)


@pytest.mark.parametrize("name", GEOMETRY_NAMES)
def test_planes_match_brute_force(geometries, name):
    G = geometries[name]
    assert sorted(frozenset(p.points) for p in detect_planes(G)) == sorted(brute_planes(G))


def test_plane_counts(geometries):
    assert len(detect_planes(geometries["b16"])) == 1
    assert detect_planes(geometries["b8"]) == []
    assert detect_planes(geometries["loop4"]) == []
    assert len(detect_planes(geometries["b32"])) == 10


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_planes_are_sixteen_element_subalgebras(algebras, name):
    A = algebras[name]
    G = geometry_of(A)
    pts = [set(p.carrier) for p in enumerate_points(A)]
    expected = sorted(
        tuple(i for i, p in enumerate(pts) if p <= set(s.carrier)) for s in enumerate_planes16(A)
    )
    assert sorted(p.points for p in detect_planes(G)) == expected


@pytest.mark.parametrize("name", GEOMETRY_NAMES)
def test_plane_matching_carries_template_lines(geometries, name):
    G = geometries[name]
    for plane in G.planes:
        assert is_subspace(G, plane.points)
        image = {frozenset(plane.matching[t] for t in line) for line in PLANE_TEMPLATE_LINES}
        assert image == {frozenset(G.lines[li]) for li in plane.lines}


@pytest.mark.parametrize("name", GEOMETRY_NAMES)
def test_triangles_match_brute_force(geometries, name):
    G = geometries[name]
    assert nondegenerate_triangles(G) == brute_triangles(G)


def test_triangle_counts(geometries):
    assert len(nondegenerate_triangles(geometries["b16"])) == 16
    assert nondegenerate_triangles(geometries["b8"]) == []
    G = geometries["loop3"]
    tri = tuple(sorted(G.point(n) for n in ("p_a", "p_c", "p_e")))
    assert tri in nondegenerate_triangles(G)


def test_triangle_axiom(geometries):
    assert check_triangle_axiom(geometries["b16"])
    assert check_triangle_axiom(geometries["b8"])
    G = geometries["loop3"]
    verdict = check_triangle_axiom(G)
    assert not verdict
    assert {G.names[p] for p in verdict.witness} == {"p_a", "p_c", "p_e"}
    assert not any(set(verdict.witness) <= p for p in brute_planes(G))


def test_exclusive_plane_in_b16(geometries):
    G = geometries["b16"]
    (plane,) = G.planes
    deg = {p: len(plane.lines_through(G, p)) for p in plane.points}
    two = next(p for p, d in deg.items() if d == 2)
    three = next(p for p, d in deg.items() if d == 3)
    assert spans_exclusive_plane(G, two, *G.lines_at[two])
    l1, l2 = G.lines_at[three][:2]
    assert not spans_exclusive_plane(G, three, l1, l2)


def test_exclusive_plane_without_planes(geometries):
    G = geometries["two_block"]
    c = G.point("p_c")
    assert not spans_exclusive_plane(G, c, *G.lines_at[c])
    with pytest.raises(LinesDontMeetAtP):
        spans_exclusive_plane(G, c, G.lines_at[c][0], G.lines_at[c][0])


@pytest.mark.parametrize("name", SMALL_NAMES + ["b32"])
def test_orthodomain_joins(geometries, name):
    # Any two collinear points have their line as the least element above them.
    G = geometries[name]
    planes = [set(p.points) for p in G.planes]
    for p, q in combinations(range(G.n_points), 2):
        li = G.line_through(p, q)
        if li is None:
            continue
        line = set(G.lines[li])
        assert all(line <= pl for pl in planes if {p, q} <= pl)
        others = [set(m) for m in G.lines if {p, q} <= set(m)]
        assert others == [line]
