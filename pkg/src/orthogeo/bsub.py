"""Boolean subalgebras with 4, 8 and 16 elements.

Enumeration goes through orthogonal decompositions of the top element: a
Boolean subalgebra of rank k is spanned by k nonzero pairwise orthogonal
elements whose join is the top.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .oml import BooleanSubalgebra, Oml, commutes, subalgebra_from_atoms

MAX_GENERATED = 16


def _nontrivial(A: Oml) -> list[int]:
    return [x for x in range(A.n) if x not in (A.bottom, A.top)]


def enumerate_points(A: Oml) -> list[BooleanSubalgebra]:
    """One ``{0, a, a', 1}`` per complement pair."""
    out = []
    for a in _nontrivial(A):
        b = A.ortho[a]
        if a < b:
            out.append(BooleanSubalgebra(tuple(sorted({A.bottom, A.top, a, b})), (a, b)))
    return sorted(out)


def _decompositions(A: Oml, parts: int) -> Iterable[tuple[int, ...]]:
    """Increasing tuples of ``parts`` nonzero pairwise orthogonal elements joining to top."""
    elems = _nontrivial(A)

    def extend(chosen: tuple[int, ...], acc: int):
        if len(chosen) == parts - 1:
            last = A.ortho[acc]
            if last != A.bottom and last > chosen[-1]:
                yield (*chosen, last)
            return
        for x in elems:
            if x <= chosen[-1] or not A.orthogonal(x, acc):
                continue
            j = A.join(acc, x)
            if j is None or j == A.top:
                continue
            yield from extend((*chosen, x), j)

    for a in elems:
        yield from extend((a,), a)


def _by_decomposition(A: Oml, parts: int) -> list[BooleanSubalgebra]:
    out = []
    for atoms in _decompositions(A, parts):
        sub = subalgebra_from_atoms(A, atoms)
        if sub is None:
            raise ValueError(f"orthogonal elements {atoms} do not span a Boolean subalgebra")
        out.append(sub)
    return sorted(out)


def enumerate_lines(A: Oml) -> list[BooleanSubalgebra]:
    return _by_decomposition(A, 3)


def enumerate_planes16(A: Oml) -> list[BooleanSubalgebra]:
    return _by_decomposition(A, 4)


def _closure(A: Oml, seed: Iterable[int]) -> tuple[set[int] | None, str | None]:
    members = set(seed) | {A.bottom, A.top}
    for a, b in combinations(sorted(members), 2):
        if not commutes(A, a, b):
            return None, f"non-commuting pair ({A.labels[a]}, {A.labels[b]})"
    members |= {A.ortho[x] for x in members}
    frontier = list(members)
    while frontier:
        if len(members) > MAX_GENERATED:
            return None, f"closure exceeds {MAX_GENERATED} elements"
        new = []
        for x in frontier:
            for y in list(members):
                for z in (A.join(x, y), A.meet(x, y)):
                    if z is None:
                        return None, f"missing meet or join of ({A.labels[x]}, {A.labels[y]})"
                    if z not in members:
                        members.add(z)
                        members.add(A.ortho[z])
                        new.extend((z, A.ortho[z]))
        frontier = new
    if len(members) > MAX_GENERATED:
        return None, f"closure exceeds {MAX_GENERATED} elements"
    return members, None


def _atoms_of(A: Oml, members: set[int]) -> list[int]:
    return [
        x for x in members
        if x != A.bottom and not any(y != x and y != A.bottom and A.le(y, x) for y in members)
    ]


def generation_obstacle(A: Oml, seed: Iterable[int]) -> str | None:
    """Why ``seed`` generates no Boolean subalgebra of at most 16 elements, or None."""
    members, reason = _closure(A, seed)
    if reason:
        return reason
    atoms = _atoms_of(A, members)
    sub = subalgebra_from_atoms(A, atoms)
    if sub is None or set(sub.carrier) != members:
        return "closure is not Boolean"
    return None


def generated_subalgebra(A: Oml, seed: Iterable[int]) -> BooleanSubalgebra | None:
    """Boolean subalgebra generated by pairwise commuting ``seed``.

    Returns None when two members fail to commute or the closure would exceed
    16 elements; :func:`generation_obstacle` reports which.
    """
    members, reason = _closure(A, seed)
    if reason:
        return None
    sub = subalgebra_from_atoms(A, _atoms_of(A, members))
    if sub is None or set(sub.carrier) != members:
        return None
    return sub
