"""Pre-orthogeometries: points, three-point lines, derived planes."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .bsub import enumerate_lines, enumerate_points
from .greechie import GreechieDiagram, pasting_classes
from .oml import Oml

# Points 0-2 are the corners, 3 the centre, 4-6 the side midpoints.
PLANE_TEMPLATE_LINES: tuple[tuple[int, int, int], ...] = (
    (0, 1, 4),
    (1, 2, 5),
    (0, 2, 6),
    (0, 3, 5),
    (2, 3, 4),
    (1, 3, 6),
)


class LineCollision(ValueError):
    """Two distinct lines share two points."""


class LinesDontMeetAtP(ValueError):
    pass


class PreOrthogeometry:
    """Points ``0..n-1`` with names, and lines as sorted index triples."""

    def __init__(self, names: Sequence[str], lines: Iterable[Sequence[int]]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("point names must be unique")
        self.lines = tuple(tuple(sorted(int(p) for p in line)) for line in lines)
        n = len(self.names)
        pair_line: dict[tuple[int, int], int] = {}
        for li, line in enumerate(self.lines):
            if len(line) != 3 or len(set(line)) != 3:
                raise ValueError(f"line {li} does not have 3 distinct points")
            if not all(0 <= p < n for p in line):
                raise ValueError(f"line {li} refers to an unknown point")
            for p, q in combinations(line, 2):
                if (p, q) in pair_line:
                    raise LineCollision(
                        f"points {self.names[p]}, {self.names[q]} lie on lines "
                        f"{pair_line[(p, q)]} and {li}"
                    )
                pair_line[(p, q)] = li
        self._pair_line = pair_line

    def __repr__(self) -> str:
        return f"PreOrthogeometry(points={len(self.names)}, lines={len(self.lines)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreOrthogeometry):
            return NotImplemented
        return self.names == other.names and self.lines == other.lines

    def __hash__(self) -> int:
        return hash((self.names, self.lines))

    @property
    def n_points(self) -> int:
        return len(self.names)

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def point(self, name: str) -> int:
        return self._name_index[name]

    def line_through(self, p: int, q: int) -> int | None:
        """Index of the line containing distinct points ``p`` and ``q``."""
        return self._pair_line.get((min(p, q), max(p, q)))

    def collinear(self, p: int, q: int) -> bool:
        return p != q and self.line_through(p, q) is not None

    @cached_property
    def lines_at(self) -> tuple[tuple[int, ...], ...]:
        """Line indices through each point, ascending."""
        at: list[list[int]] = [[] for _ in self.names]
        for li, line in enumerate(self.lines):
            for p in line:
                at[p].append(li)
        return tuple(tuple(x) for x in at)

    def is_proper(self) -> bool:
        return all(self.lines_at)

    @cached_property
    def planes(self) -> tuple[PlaneConfig, ...]:
        return tuple(detect_planes(self))


@dataclass(frozen=True)
class Subspace:
    carrier: frozenset[int]


@dataclass(frozen=True)
class PlaneConfig:
    """Seven points and the six lines inside them, matched to the template.

    ``matching[t]`` is the point playing template point ``t``.
    """

    points: tuple[int, ...]
    lines: tuple[int, ...]
    matching: tuple[int, ...]

    def lines_through(self, G: PreOrthogeometry, p: int) -> tuple[int, ...]:
        return tuple(li for li in self.lines if p in G.lines[li])


def subspace_closure(G: PreOrthogeometry, points: Iterable[int]) -> Subspace:
    members = set(points)
    changed = True
    while changed:
        changed = False
        for line in G.lines:
            inside = sum(p in members for p in line)
            if inside == 2:
                members.update(line)
                changed = True
    return Subspace(frozenset(members))


def is_subspace(G: PreOrthogeometry, points: Iterable[int]) -> bool:
    s = set(points)
    return all(sum(p in s for p in line) != 2 for line in G.lines)


def match_template(G: PreOrthogeometry, points: Sequence[int], lines: Sequence[int]) -> tuple[int, ...] | None:
    """Bijection template -> ``points`` carrying template lines onto ``lines``."""
    if len(points) != 7 or len(lines) != 6:
        return None
    target = {frozenset(G.lines[li]) for li in lines}
    degree = {p: sum(p in G.lines[li] for li in lines) for p in points}
    tdegree = [sum(t in line for line in PLANE_TEMPLATE_LINES) for t in range(7)]
    if sorted(degree.values()) != sorted(tdegree):
        return None
    assignment: list[int] = []

    def ok() -> bool:
        k = len(assignment)
        for line in PLANE_TEMPLATE_LINES:
            if max(line) == k - 1 and frozenset(assignment[t] for t in line) not in target:
                return False
        return True

    def search() -> bool:
        t = len(assignment)
        if t == 7:
            return True
        for p in points:
            if p in assignment or degree[p] != tdegree[t]:
                continue
            assignment.append(p)
            if ok() and search():
                return True
            assignment.pop()
        return False

    return tuple(assignment) if search() else None


def plane_from_points(G: PreOrthogeometry, points: Iterable[int]) -> PlaneConfig | None:
    """The plane on ``points`` if they form a 7-point subspace configured as a plane."""
    pts = tuple(sorted(set(points)))
    if len(pts) != 7 or not is_subspace(G, pts):
        return None
    s = set(pts)
    touching = [li for li, line in enumerate(G.lines) if sum(p in s for p in line) >= 2]
    if len(touching) != 6:
        return None
    matching = match_template(G, pts, touching)
    if matching is None:
        return None
    return PlaneConfig(pts, tuple(touching), matching)


def detect_planes(G: PreOrthogeometry) -> list[PlaneConfig]:
    """All planes, found by closing pairs of lines that meet in one point."""
    seen: set[tuple[int, ...]] = set()
    out = []
    for p, through in enumerate(G.lines_at):
        for l1, l2 in combinations(through, 2):
            closed = subspace_closure(G, set(G.lines[l1]) | set(G.lines[l2])).carrier
            key = tuple(sorted(closed))
            if len(key) != 7 or key in seen:
                continue
            seen.add(key)
            plane = plane_from_points(G, key)
            if plane is not None:
                out.append(plane)
    return sorted(out, key=lambda pl: pl.points)


def nondegenerate_triangles(G: PreOrthogeometry) -> list[tuple[int, int, int]]:
    out = []
    for p in range(G.n_points):
        nbrs = sorted({q for li in G.lines_at[p] for q in G.lines[li] if q > p})
        for q, r in combinations(nbrs, 2):
            if G.collinear(q, r) and G.line_through(p, q) != G.line_through(p, r):
                out.append((p, q, r))
    return out


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def check_triangle_axiom(G: PreOrthogeometry) -> Verdict:
    """Every non-degenerate triangle must lie inside some plane."""
    planes = [set(pl.points) for pl in G.planes]
    for tri in nondegenerate_triangles(G):
        if not any(set(tri) <= pl for pl in planes):
            return Verdict(False, tri)
    return Verdict(True)


def spans_exclusive_plane(G: PreOrthogeometry, p: int, l1: int, l2: int) -> bool:
    """Some plane holds both lines, and they are its only lines through ``p``."""
    if l1 == l2 or p not in G.lines[l1] or p not in G.lines[l2]:
        raise LinesDontMeetAtP(f"lines {l1} and {l2} are not distinct lines through point {p}")
    for plane in G.planes:
        if l1 in plane.lines and l2 in plane.lines:
            return len(plane.lines_through(G, p)) == 2
    return False


@lru_cache(maxsize=128)
def geometry_of(A: Oml) -> PreOrthogeometry:
    """Points and lines of the 4- and 8-element Boolean subalgebras of ``A``."""
    points = enumerate_points(A)
    index = {}
    names = []
    for i, pt in enumerate(points):
        a, b = pt.atoms
        index[a] = index[b] = i
        names.append("p_" + A.labels[min(a, b)])
    lines = [sorted(index[x] for x in ln.atoms) for ln in enumerate_lines(A)]
    return PreOrthogeometry(names, sorted(lines))


def point_of(A: Oml, a: int) -> int | None:
    """Point index of ``{0, a, a', 1}`` in :func:`geometry_of`, None for 0 and 1."""
    if a in (A.bottom, A.top):
        return None
    return _point_index(A)[a]


@lru_cache(maxsize=128)
def _point_index(A: Oml) -> dict[int, int]:
    out = {}
    for i, pt in enumerate(enumerate_points(A)):
        for x in pt.atoms:
            out[x] = i
    return out


def geometry_of_diagram(diagram: GreechieDiagram) -> PreOrthogeometry:
    """Points and lines of a pasting read off block by block.

    No order validation happens, so this also works for pastings that are not
    orthomodular posets, such as a loop of three blocks. Lines are the 3-part
    partitions of each block's atoms.
    """
    pc = pasting_classes(diagram)
    point = {}
    names = []
    for ci, label in enumerate(pc.labels):
        co = pc.complement[ci]
        if ci < co:
            point[ci] = point[co] = len(names)
            names.append("p_" + label)
        elif ci == co:
            raise ValueError(f"element {label} is its own complement")
    blocks = [frozenset(b) for b in diagram.blocks]
    lines = set()
    for bi, b in enumerate(blocks):
        for parts in _three_partitions(sorted(b)):
            lines.add(tuple(sorted(point[pc.of[(bi, frozenset(part))]] for part in parts)))
    # Canonical point order agrees with geometry_of(paste_greechie(diagram)).
    old_order = sorted(range(len(names)), key=lambda i: _point_carrier_key(pc, point, i))
    renumber = {old: new for new, old in enumerate(old_order)}
    return PreOrthogeometry(
        [names[i] for i in old_order],
        sorted(tuple(sorted(renumber[p] for p in line)) for line in lines),
    )


def _point_carrier_key(pc, point, i):
    members = sorted(ci for ci, pi in point.items() if pi == i)
    return tuple(sorted([0, 1, *(m + 2 for m in members)]))


def _three_partitions(items: list[str]):
    """Unordered partitions of ``items`` into three nonempty parts."""
    n = len(items)
    for labels in _rgs(n, 3):
        parts = [[], [], []]
        for item, k in zip(items, labels):
            parts[k].append(item)
        yield parts


def _rgs(n: int, k: int):
    """Restricted growth strings of length ``n`` using exactly ``k`` values."""
    def rec(prefix: list[int], top: int):
        if len(prefix) == n:
            if top == k:
                yield tuple(prefix)
            return
        for v in range(min(top + 1, k)):
            yield from rec(prefix + [v], max(top, v + 1))
    yield from rec([], 0)
