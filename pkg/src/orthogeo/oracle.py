"""Deliberately naive reference computations.

These share no code path with the fast routines they check: subalgebras come
from subset enumeration, directions from trying every arrow assignment, and
least upper bounds from scanning every direction.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterable

from .directions import Arrow, DirPoset, Direction
from .geometry import PreOrthogeometry, spans_exclusive_plane
from .oml import Oml

ORACLE_MAX_ELEMENTS = 32
ORACLE_MAX_LINES = 20


class TooLarge(ValueError):
    pass


class TooManyLines(ValueError):
    pass


def _is_boolean_subset(A: Oml, s: frozenset[int]) -> bool:
    members = sorted(s)
    for x in members:
        if A.ortho[x] not in s:
            return False
    for x, y in combinations(members, 2):
        j, m = A.join(x, y), A.meet(x, y)
        if j is None or m is None or j not in s or m not in s:
            return False
    for x, y, z in product(members, repeat=3):
        if A.meet(x, A.join(y, z)) != A.join(A.meet(x, y), A.meet(x, z)):
            return False
    return True


def brute_boolean_subalgebras(A: Oml, max_size: int = 16) -> list[frozenset[int]]:
    """Every Boolean subalgebra with at most ``max_size`` elements.

    Ortho-closure means a candidate is {0, 1} plus whole complement pairs, so
    subsets of pairs are enumerated instead of subsets of elements.
    """
    if A.n > ORACLE_MAX_ELEMENTS:
        raise TooLarge(f"{A.n} elements; the oracle handles at most {ORACLE_MAX_ELEMENTS}")
    if max_size > 16:
        raise TooLarge("max_size above 16 is not supported")
    pairs = sorted({tuple(sorted((x, A.ortho[x]))) for x in range(A.n) if x not in (A.bottom, A.top)})
    base = frozenset({A.bottom, A.top})
    out = []
    for k in range(0, (max_size - 2) // 2 + 1):
        for chosen in combinations(pairs, k):
            s = base.union(*map(frozenset, chosen)) if chosen else base
            if _is_boolean_subset(A, s):
                out.append(s)
    return sorted(out, key=lambda s: sorted(s))


def brute_commutes(A: Oml, a: int, b: int) -> bool:
    return any(a in s and b in s for s in brute_boolean_subalgebras(A, 16))


def brute_directions_at(G: PreOrthogeometry, p: int) -> list[tuple[tuple[int, Arrow], ...]]:
    """Every arrow assignment at ``p`` satisfying the direction condition literally."""
    lines = G.lines_at[p]
    if len(lines) > ORACLE_MAX_LINES:
        raise TooManyLines(f"{len(lines)} lines through point {p}")
    out = []
    for arrows in product((Arrow.DOWN, Arrow.UP), repeat=len(lines)):
        if all(
            (arrows[i] != arrows[j]) == spans_exclusive_plane(G, p, lines[i], lines[j])
            for i, j in combinations(range(len(lines)), 2)
        ):
            out.append(tuple(zip(lines, arrows)))
    return out


def brute_lub(P: DirPoset, D: Iterable[Direction]) -> Direction | None:
    D = list(D)
    uppers = [e for e in P if all(P.leq(d, e) for d in D)]
    least = [e for e in uppers if all(P.leq(e, f) for f in uppers)]
    return least[0] if len(least) == 1 else None


def brute_planes(G: PreOrthogeometry) -> list[frozenset[int]]:
    """7-point subsets meeting exactly 6 lines in two or more points, all inside.

    Only the incidence counts of the plane picture are checked (degrees
    3,3,3,3,2,2,2 and three non-collinear pairs among the degree-2 points).
    """
    out = []
    for pts in combinations(range(G.n_points), 7):
        s = set(pts)
        touching = [line for line in G.lines if len(s.intersection(line)) >= 2]
        if len(touching) != 6 or any(not s.issuperset(line) for line in touching):
            continue
        degree = {p: sum(p in line for line in touching) for p in pts}
        if sorted(degree.values()) != [2, 2, 2, 3, 3, 3, 3]:
            continue
        apart = [
            (p, q) for p, q in combinations(pts, 2)
            if not any(p in line and q in line for line in touching)
        ]
        if len(apart) == 3 and all(degree[p] == 2 and degree[q] == 2 for p, q in apart):
            out.append(frozenset(pts))
    return out


def brute_triangles(G: PreOrthogeometry) -> list[tuple[int, int, int]]:
    lines = [set(line) for line in G.lines]

    def together(*pts):
        return any(set(pts) <= line for line in lines)

    return [
        t for t in combinations(range(G.n_points), 3)
        if together(t[0], t[1]) and together(t[0], t[2]) and together(t[1], t[2])
        and not together(*t)
    ]
