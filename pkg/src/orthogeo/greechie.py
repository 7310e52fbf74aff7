"""Greechie diagrams and their pastings."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .oml import Oml, build_oml


class InvalidDiagram(ValueError):
    pass


class BlockTooSmall(InvalidDiagram):
    pass


@dataclass(frozen=True)
class GreechieDiagram:
    """Atoms and blocks. Two blocks may share at most one atom."""

    atoms: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        if len(set(self.atoms)) != len(self.atoms):
            raise InvalidDiagram("duplicate atom names")
        known = set(self.atoms)
        for b in self.blocks:
            if len(b) < 2:
                raise BlockTooSmall(f"block {' '.join(b)} has fewer than 2 atoms")
            if len(set(b)) != len(b):
                raise InvalidDiagram(f"block {' '.join(b)} repeats an atom")
            unknown = set(b) - known
            if unknown:
                raise InvalidDiagram(f"unknown atoms {sorted(unknown)}")
        used = {x for b in self.blocks for x in b}
        if used != known:
            raise InvalidDiagram(f"atoms {sorted(known - used)} lie in no block")
        for b, c in combinations(self.blocks, 2):
            shared = set(b) & set(c)
            if shared == set(b) or shared == set(c):
                raise InvalidDiagram(f"block {' '.join(b)} and block {' '.join(c)} are nested")
            if len(shared) > 1:
                raise InvalidDiagram(
                    f"blocks {' '.join(b)} and {' '.join(c)} share more than one atom"
                )


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass(frozen=True)
class PastingClasses:
    """Nontrivial elements of a pasting as classes of (block, atom subset) pairs.

    ``classes`` is in canonical order: atoms, their complements, then the rest
    by label. ``of[(block_index, subset)]`` gives the class index.
    """

    diagram: GreechieDiagram
    classes: tuple[tuple[tuple[int, frozenset[str]], ...], ...]
    labels: tuple[str, ...]
    of: dict
    complement: tuple[int, ...]


def pasting_classes(diagram: GreechieDiagram) -> PastingClasses:
    blocks = [frozenset(b) for b in diagram.blocks]
    uf = _UnionFind()
    reps = []
    for bi, b in enumerate(blocks):
        members = sorted(b)
        for r in range(1, len(members)):
            for s in combinations(members, r):
                reps.append((bi, frozenset(s)))
                uf.find((bi, frozenset(s)))
    for x in diagram.atoms:
        holders = [bi for bi, b in enumerate(blocks) if x in b]
        for bi in holders[1:]:
            uf.union((holders[0], frozenset([x])), (bi, frozenset([x])))
            uf.union((holders[0], blocks[holders[0]] - {x}), (bi, blocks[bi] - {x}))

    groups: dict = {}
    for rep in reps:
        groups.setdefault(uf.find(rep), []).append(rep)

    order = {x: i for i, x in enumerate(diagram.atoms)}

    def label_and_key(members):
        singles = sorted((next(iter(s)) for _, s in members if len(s) == 1), key=order.get)
        if singles:
            return singles[0], (0, order[singles[0]])
        cosingles = sorted(
            (next(iter(blocks[bi] - s)) for bi, s in members if len(blocks[bi] - s) == 1),
            key=order.get,
        )
        if cosingles:
            return cosingles[0] + "'", (1, order[cosingles[0]])
        bi, s = min(members, key=lambda m: (m[0], sorted(order[x] for x in m[1])))
        text = "+".join(sorted(s, key=order.get))
        return text, (2, len(s), [order[x] for x in sorted(s, key=order.get)], bi)

    decorated = []
    for members in groups.values():
        members = sorted(members, key=lambda m: (m[0], sorted(order[x] for x in m[1])))
        label, key = label_and_key(members)
        decorated.append((key, label, tuple(members)))
    decorated.sort(key=lambda t: t[0])

    of = {}
    for ci, (_, _, members) in enumerate(decorated):
        for m in members:
            of[m] = ci
    complement = tuple(
        of[(members[0][0], blocks[members[0][0]] - members[0][1])]
        for _, _, members in decorated
    )
    return PastingClasses(
        diagram,
        tuple(members for _, _, members in decorated),
        tuple(label for _, label, _ in decorated),
        of,
        complement,
    )


def paste_greechie(diagram: GreechieDiagram) -> Oml:
    """Paste the blocks into one structure and validate it.

    Element 0 is the bottom and element 1 the top. Pastings that are not
    orthomodular posets (loops of order 3, for instance) raise the
    corresponding :class:`~orthogeo.oml.OmlError`.
    """
    pc = pasting_classes(diagram)
    off = 2
    n = len(pc.classes) + off
    labels = ["0", "1", *pc.labels]
    ortho = [1, 0, *(c + off for c in pc.complement)]
    pairs = []
    for i in range(n):
        pairs.append((0, i))
        pairs.append((i, 1))
    by_block: dict[int, list[tuple[frozenset[str], int]]] = {}
    for (bi, s), ci in pc.of.items():
        by_block.setdefault(bi, []).append((s, ci + off))
    for members in by_block.values():
        for s, x in members:
            for t, y in members:
                if s < t:
                    pairs.append((x, y))
    return build_oml(labels, pairs, ortho)
