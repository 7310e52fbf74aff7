"""Directions of a pre-orthogeometry and the orthomodular poset they form.

A direction at a point assigns an arrow to every line through the point.
Two incident lines get different arrows exactly when they span a plane in
which they are the only lines through the point. Adding the constants
:data:`ZERO` and :data:`ONE` gives a bounded poset with an arrow-flipping
orthocomplement, isomorphic to the originating orthomodular poset.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .bsub import enumerate_lines
from .geometry import (
    PreOrthogeometry,
    Verdict,
    check_triangle_axiom,
    geometry_of,
    point_of,
    spans_exclusive_plane,
)
from .oml import Oml, OmlError, build_oml


class NotAnOrthogeometry(ValueError):
    pass


class ReconstructionNotOmp(RuntimeError):
    def __init__(self, message: str, witness: Sequence[int] = ()):
        super().__init__(message)
        self.witness = tuple(witness)


class Arrow(enum.Enum):
    DOWN = "down"
    UP = "up"

    def flip(self) -> Arrow:
        return Arrow.UP if self is Arrow.DOWN else Arrow.DOWN

    def __str__(self) -> str:
        return "d" if self is Arrow.DOWN else "u"


@dataclass(frozen=True, order=True)
class Direction:
    """``kind`` is "zero", "one" or "point"; ``arrows`` pairs line index with arrow."""

    kind: str
    point: int = -1
    arrows: tuple[tuple[int, Arrow], ...] = field(default=(), compare=False)
    _key: tuple[str, ...] = field(default=(), repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_key", tuple(str(a) for _, a in self.arrows))

    def at(self, line: int) -> Arrow:
        for li, a in self.arrows:
            if li == line:
                return a
        raise KeyError(line)

    def flip(self) -> Direction:
        if self.kind == "zero":
            return ONE
        if self.kind == "one":
            return ZERO
        return Direction("point", self.point, tuple((li, a.flip()) for li, a in self.arrows))

    @property
    def is_point(self) -> bool:
        return self.kind == "point"

    def name(self, G: PreOrthogeometry) -> str:
        if not self.is_point:
            return "0" if self.kind == "zero" else "1"
        return f"{G.names[self.point]}:{''.join(self._key)}"


ZERO = Direction("zero")
ONE = Direction("one")


def _point_direction(p: int, lines: Sequence[int], arrows: Sequence[Arrow]) -> Direction:
    return Direction("point", p, tuple(zip(lines, arrows)))


def directions_at(G: PreOrthogeometry, p: int) -> list[Direction]:
    """All directions at ``p`` by constraint propagation.

    The arrow on the first incident line is fixed to DOWN; every other line's
    arrow follows from whether it spans an exclusive plane with the first.
    The remaining pairwise constraints are then checked. Solutions come as a
    direction and its flip; a contradiction yields no direction. A point on
    no line has the single empty assignment.
    """
    lines = G.lines_at[p]
    if not lines:
        return [_point_direction(p, (), ())]
    first = lines[0]
    arrows = [Arrow.DOWN]
    for m in lines[1:]:
        arrows.append(Arrow.UP if spans_exclusive_plane(G, p, first, m) else Arrow.DOWN)
    for i, j in combinations(range(1, len(lines)), 2):
        differ = arrows[i] is not arrows[j]
        if differ != spans_exclusive_plane(G, p, lines[i], lines[j]):
            return []
    d = _point_direction(p, lines, arrows)
    return [d, d.flip()]


def check_direction_axiom(G: PreOrthogeometry) -> Verdict:
    for p in range(G.n_points):
        if not directions_at(G, p):
            return Verdict(False, (p,))
    return Verdict(True)


@dataclass(frozen=True)
class OrthogeometryReport:
    pre_geometry_ok: bool
    proper: bool
    triangle_axiom: Verdict
    direction_axiom: Verdict

    @property
    def verdict(self) -> bool:
        return bool(
            self.pre_geometry_ok and self.proper and self.triangle_axiom and self.direction_axiom
        )

    def __bool__(self) -> bool:
        return self.verdict


def validate_orthogeometry(G: PreOrthogeometry) -> OrthogeometryReport:
    # A constructed PreOrthogeometry already has 3-point lines meeting in at most one point.
    return OrthogeometryReport(
        pre_geometry_ok=True,
        proper=G.is_proper(),
        triangle_axiom=check_triangle_axiom(G),
        direction_axiom=check_direction_axiom(G),
    )


def leq(G: PreOrthogeometry, d: Direction, e: Direction) -> bool:
    """Direction order: equal, bottom/top, or DOWN-to-UP along a shared line."""
    if d == e or d.kind == "zero" or e.kind == "one":
        return True
    if not (d.is_point and e.is_point) or d.point == e.point:
        return False
    line = G.line_through(d.point, e.point)
    return line is not None and d.at(line) is Arrow.DOWN and e.at(line) is Arrow.UP


class DirPoset:
    """All directions of an orthogeometry with their order and orthocomplement."""

    def __init__(self, G: PreOrthogeometry, directions: Sequence[Direction]):
        self.G = G
        self.directions = tuple(directions)
        self._index = {d: i for i, d in enumerate(self.directions)}

    def __len__(self) -> int:
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)

    def index(self, d: Direction) -> int:
        return self._index[d]

    def leq(self, d: Direction, e: Direction) -> bool:
        return leq(self.G, d, e)

    def ortho(self, d: Direction) -> Direction:
        return d.flip()

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(d.name(self.G) for d in self.directions)


@lru_cache(maxsize=128)
def all_directions(G: PreOrthogeometry) -> DirPoset:
    """ZERO, ONE, then both directions at each point in point order."""
    report = validate_orthogeometry(G)
    if not report:
        raise NotAnOrthogeometry(f"geometry fails validation: {report}")
    dirs = [ZERO, ONE]
    for p in range(G.n_points):
        dirs.extend(directions_at(G, p))
    return DirPoset(G, dirs)


def is_cone(G: PreOrthogeometry, e: Direction, D: Iterable[Direction]) -> bool:
    """Is ``e`` an upper bound of ``D``?"""
    if e.kind == "one":
        return True
    rest = [d for d in D if d.kind != "zero"]
    if not rest:
        return True
    if any(d.kind == "one" for d in rest) or e.kind == "zero":
        return False
    for d in rest:
        if d == e:
            continue
        if d.point == e.point:
            return False
        line = G.line_through(d.point, e.point)
        if line is None or d.at(line) is not Arrow.DOWN or e.at(line) is not Arrow.UP:
            return False
    return True


def minimal_cone(G: PreOrthogeometry, D: Iterable[Direction]) -> Direction | None:
    """Least upper bound of ``D`` among all directions, or None."""
    D = list(D)
    P = all_directions(G)
    cones = [e for e in P if is_cone(G, e, D)]
    if ZERO in cones:
        return ZERO
    if cones == [ONE]:
        return ONE
    point_cones = [e for e in cones if e.is_point]
    for e in point_cones:
        if all(
            f.point != e.point
            and (line := G.line_through(e.point, f.point)) is not None
            and e.at(line) is Arrow.DOWN
            and f.at(line) is Arrow.UP
            for f in point_cones
            if f != e
        ):
            return e
    return None


@dataclass(frozen=True)
class LatticeVerdict:
    ok: bool
    witness: tuple[Direction, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def check_lattice(G: PreOrthogeometry) -> LatticeVerdict:
    """Does every pair of directions have a minimal cone?

    Pairs suffice on a finite carrier since joins of larger sets are iterated
    binary joins.
    """
    P = all_directions(G)
    for d, e in combinations(P.directions, 2):
        if minimal_cone(G, (d, e)) is None:
            return LatticeVerdict(False, (d, e))
    return LatticeVerdict(True)


def check_boolean(G: PreOrthogeometry) -> Verdict:
    """Any two distinct points are collinear or share a plane.

    Collinearity is accepted alongside coplanarity so that rank-3 Boolean
    algebras, whose geometry has a single line and no plane, pass.
    """
    all_directions(G)
    planes = [set(pl.points) for pl in G.planes]
    for p, q in combinations(range(G.n_points), 2):
        if G.collinear(p, q):
            continue
        if not any(p in pl and q in pl for pl in planes):
            return Verdict(False, (p, q))
    return Verdict(True)


def orthosum(G: PreOrthogeometry, d: Direction, e: Direction) -> Direction | None:
    """``d + e``: defined iff ``d <= e'``, and then the least upper bound."""
    if not leq(G, d, e.flip()):
        return None
    return minimal_cone(G, (d, e))


@lru_cache(maxsize=128)
def reconstruct_omp(G: PreOrthogeometry) -> Oml:
    """Directions as an :class:`Oml`, indexed like :func:`all_directions`."""
    P = all_directions(G)
    dirs = P.directions
    pairs = [(i, j) for i, d in enumerate(dirs) for j, e in enumerate(dirs) if leq(G, d, e)]
    ortho = [P.index(d.flip()) for d in dirs]
    try:
        return build_oml(P.labels, pairs, ortho)
    except OmlError as exc:
        raise ReconstructionNotOmp(f"directions do not form an orthomodular poset: {exc}", exc.witness) from exc


def canonical_direction(A: Oml, a: int) -> Direction:
    """Direction of element ``a``: DOWN on lines where it is an atom, UP where a coatom."""
    if a == A.bottom:
        return ZERO
    if a == A.top:
        return ONE
    G = geometry_of(A)
    p = point_of(A, a)
    arrows = []
    for li in G.lines_at[p]:
        # The line's points are its three atoms; a is either one of them or a complement.
        atoms = _line_atoms(A, li)
        arrows.append(Arrow.DOWN if a in atoms else Arrow.UP)
    return _point_direction(p, G.lines_at[p], arrows)


@lru_cache(maxsize=128)
def _line_atoms_table(A: Oml) -> tuple[frozenset[int], ...]:
    G = geometry_of(A)
    table: dict[tuple[int, ...], frozenset[int]] = {}
    for ln in enumerate_lines(A):
        table[tuple(sorted(point_of(A, x) for x in ln.atoms))] = frozenset(ln.atoms)
    return tuple(table[line] for line in G.lines)


def _line_atoms(A: Oml, li: int) -> frozenset[int]:
    return _line_atoms_table(A)[li]


def canonical_embedding(A: Oml) -> tuple[int, ...]:
    """Index in :func:`reconstruct_omp` of each element's canonical direction."""
    P = all_directions(geometry_of(A))
    return tuple(P.index(canonical_direction(A, a)) for a in range(A.n))
