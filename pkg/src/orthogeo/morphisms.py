"""Homomorphisms of orthomodular posets and partial point maps between geometries."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .directions import (
    ONE,
    ZERO,
    Arrow,
    Direction,
    all_directions,
    directions_at,
    minimal_cone,
    reconstruct_omp,
    validate_orthogeometry,
    NotAnOrthogeometry,
)
from .geometry import PreOrthogeometry, geometry_of, point_of
from .oml import Oml, blocks

BOTTOM_TOKEN = "_|_"


class HomError(ValueError):
    def __init__(self, message: str, witness: Sequence[int] = ()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotLiftable(ValueError):
    pass


def hom_violation(source: Oml, target: Oml, mapping: Sequence[int]) -> tuple[str, tuple[int, ...]] | None:
    """First failed homomorphism axiom as (message, witness), or None."""
    f = mapping
    if len(f) != source.n or not all(0 <= y < target.n for y in f):
        return "map is not total on the source", ()
    if f[source.bottom] != target.bottom or f[source.top] != target.top:
        return "bounds are not preserved", (source.bottom, source.top)
    for a in range(source.n):
        if f[source.ortho[a]] != target.ortho[f[a]]:
            return f"ortho not preserved at {source.labels[a]}", (a,)
    for a in range(source.n):
        for b in range(source.n):
            if source.le(a, b) and not target.le(f[a], f[b]):
                return f"order not preserved at ({source.labels[a]}, {source.labels[b]})", (a, b)
    for a, b in combinations(range(source.n), 2):
        if source.orthogonal(a, b):
            j = source.join(a, b)
            if target.join(f[a], f[b]) != f[j]:
                return f"orthogonal join of ({source.labels[a]}, {source.labels[b]}) not preserved", (a, b)
    return None


@dataclass(frozen=True, eq=False)
class OmlHom:
    """A total element map preserving bounds, ortho, order and orthogonal joins."""

    source: Oml
    target: Oml
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        problem = hom_violation(self.source, self.target, self.map)
        if problem:
            raise HomError(*problem)

    def __call__(self, a: int) -> int:
        return self.map[a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OmlHom):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.map == other.map

    def __hash__(self) -> int:
        return hash(self.map)

    def then(self, g: OmlHom) -> OmlHom:
        """Composite ``g . self``."""
        return OmlHom(self.source, g.target, tuple(g.map[y] for y in self.map))


def identity_hom(A: Oml) -> OmlHom:
    return OmlHom(A, A, tuple(range(A.n)))


def hom_from_atoms(source: Oml, target: Oml, images: Mapping[int, int]) -> OmlHom:
    """Extend an assignment on the atoms of ``source`` to a homomorphism.

    Each element is written as the join of a maximal orthogonal set of atoms
    below it; its image is the join of their images.
    """
    mapping = []
    for x in range(source.n):
        below = [a for a in source.atoms if source.le(a, x)]
        chosen: list[int] = []
        for a in below:
            if all(source.orthogonal(a, c) for c in chosen):
                chosen.append(a)
        y = target.join_all(images[a] for a in chosen)
        if y is None:
            raise HomError(f"images of the atoms below {source.labels[x]} have no join", (x,))
        mapping.append(y)
    return OmlHom(source, target, tuple(mapping))


def is_proper_hom(f: OmlHom) -> bool:
    """Every block of the source has an image with more than four elements."""
    return all(len({f.map[x] for x in b.carrier}) > 4 for b in blocks(f.source))


def is_normal_hom(f: OmlHom) -> bool:
    """All existing binary joins are preserved."""
    S, T = f.source, f.target
    for a, b in combinations(range(S.n), 2):
        j = S.join(a, b)
        if j is not None and T.join(f.map[a], f.map[b]) != f.map[j]:
            return False
    return True


@dataclass(frozen=True)
class GeoMorphism:
    """Partial map on points; ``None`` stands for an undefined image."""

    source: PreOrthogeometry
    target: PreOrthogeometry
    map: tuple[int | None, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.n_points:
            raise ValueError("partial map must list every source point")
        for q in self.map:
            if q is not None and not 0 <= q < self.target.n_points:
                raise ValueError(f"image {q} is not a target point")

    def __call__(self, p: int) -> int | None:
        return self.map[p]

    def then(self, beta: GeoMorphism) -> GeoMorphism:
        return GeoMorphism(
            self.source,
            beta.target,
            tuple(None if q is None else beta.map[q] for q in self.map),
        )

    def named(self) -> dict[str, str]:
        return {
            self.source.names[p]: BOTTOM_TOKEN if q is None else self.target.names[q]
            for p, q in enumerate(self.map)
        }


def identity_geo(G: PreOrthogeometry) -> GeoMorphism:
    return GeoMorphism(G, G, tuple(range(G.n_points)))


def geo_of_hom(f: OmlHom) -> GeoMorphism:
    """Send ``{0, a, a', 1}`` to ``{0, f(a), f(a)', 1}``, or to undefined when f(a) is 0 or 1."""
    S, T = f.source, f.target
    GS, GT = geometry_of(S), geometry_of(T)
    images: list[int | None] = [None] * GS.n_points
    for a in range(S.n):
        p = point_of(S, a)
        if p is None:
            continue
        images[p] = point_of(T, f.map[a])
    return GeoMorphism(GS, GT, tuple(images))


@dataclass(frozen=True)
class Lift:
    """Outcome of :func:`lift_morphism`: a homomorphism, or the reason there is none."""

    hom: OmlHom | None
    direction_map: tuple[Direction, ...] = ()
    reason: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.hom is not None


def _image_line(alpha: GeoMorphism, line: int) -> int | None:
    pts = [alpha.map[p] for p in alpha.source.lines[line]]
    if None in pts or len(set(pts)) != 3:
        return None
    p, q, r = pts
    li = alpha.target.line_through(p, q)
    if li is None or r not in alpha.target.lines[li]:
        return None
    return li


def _transport(alpha: GeoMorphism, d: Direction) -> tuple[Direction | None, str, tuple]:
    G1, G2 = alpha.source, alpha.target
    if not d.is_point:
        return d, "", ()
    p = d.point
    q = alpha.map[p]
    if q is None:
        # a maps into {0, 1}: to 0 where it is an atom of a line whose other points survive.
        values = set()
        for li in G1.lines_at[p]:
            others = [r for r in G1.lines[li] if r != p]
            if any(alpha.map[r] is not None for r in others):
                values.add(ZERO if d.at(li) is Arrow.DOWN else ONE)
        if not values:
            return None, "undetermined 0/1 image", (p,)
        if len(values) > 1:
            return None, "inconsistent 0/1 image", (p,)
        return values.pop(), "", ()
    wanted = {}
    for li in G1.lines_at[p]:
        image = _image_line(alpha, li)
        if image is not None:
            wanted[image] = d.at(li)
    if not wanted:
        return None, "no line through the point maps onto a line", (p,)
    for e in directions_at(G2, q):
        if all(e.at(li) is arrow for li, arrow in wanted.items()):
            return e, "", ()
    return None, "inconsistent arrow transport", (p, q)


def lift_morphism(alpha: GeoMorphism) -> Lift:
    """The homomorphism between the direction posets induced by ``alpha``.

    A direction at ``p`` goes to the direction at ``alpha(p)`` carrying the
    same arrow on every image line; when ``alpha(p)`` is undefined it goes to
    0 or 1 according to its arrow on a line whose other points survive.
    """
    for G in (alpha.source, alpha.target):
        if not validate_orthogeometry(G):
            raise NotAnOrthogeometry("both ends of a morphism must be orthogeometries")
    P1, P2 = all_directions(alpha.source), all_directions(alpha.target)
    images = []
    for d in P1:
        e, reason, witness = _transport(alpha, d)
        if e is None:
            return Lift(None, reason=reason, witness=witness)
        images.append(e)
    S, T = reconstruct_omp(alpha.source), reconstruct_omp(alpha.target)
    mapping = tuple(P2.index(e) for e in images)
    problem = hom_violation(S, T, mapping)
    if problem:
        return Lift(None, tuple(images), reason=problem[0], witness=problem[1])
    return Lift(OmlHom(S, T, mapping), tuple(images))


def is_valid_morphism(alpha: GeoMorphism) -> bool:
    return bool(lift_morphism(alpha))


def is_proper_geo_morphism(alpha: GeoMorphism) -> bool:
    lifted = lift_morphism(alpha)
    return bool(lifted) and is_proper_hom(lifted.hom)


def is_normal_geo_morphism(alpha: GeoMorphism) -> bool:
    """Minimal cones of direction pairs go to minimal cones of their images."""
    lifted = lift_morphism(alpha)
    if not lifted:
        raise NotLiftable(lifted.reason)
    P1 = all_directions(alpha.source)
    image = dict(zip(P1.directions, lifted.direction_map))
    for d, e in combinations(P1.directions, 2):
        top = minimal_cone(alpha.source, (d, e))
        if top is None:
            continue
        if minimal_cone(alpha.target, (image[d], image[e])) != image[top]:
            return False
    return True


def direction_point_map(G: PreOrthogeometry) -> tuple[int, ...]:
    """Point of ``G`` underlying each point of ``geometry_of(reconstruct_omp(G))``."""
    R = reconstruct_omp(G)
    P = all_directions(G)
    GR = geometry_of(R)
    out = [0] * GR.n_points
    for i, d in enumerate(P.directions):
        p = point_of(R, i)
        if p is not None:
            out[p] = d.point
    return tuple(out)


def as_point_map(beta: GeoMorphism, G1: PreOrthogeometry, G2: PreOrthogeometry) -> GeoMorphism:
    """Rewrite a morphism between reconstructed geometries in terms of ``G1`` and ``G2``."""
    back1, back2 = direction_point_map(G1), direction_point_map(G2)
    images: list[int | None] = [None] * G1.n_points
    for p, q in enumerate(beta.map):
        images[back1[p]] = None if q is None else back2[q]
    return GeoMorphism(G1, G2, tuple(images))
