"""Finite orthomodular posets and lattices.

An :class:`Oml` is a bounded poset on the indices ``0..n-1`` with an
orthocomplementation. The same type carries orthomodular posets that are not
lattices (for example the pasting of a loop of four blocks); use
:func:`is_lattice` to tell them apart. Meets and joins are partial and are
computed from the order relation when asked for.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ELEMENTS = 64


class OmlError(ValueError):
    """Validation failure; ``witness`` holds the offending element indices."""

    def __init__(self, message: str, witness: Sequence[int] = ()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotAPartialOrder(OmlError):
    pass


class NoBounds(OmlError):
    pass


class OrthoNotInvolution(OmlError):
    pass


class OrthoNotAntitone(OmlError):
    pass


class ComplementLawFails(OmlError):
    pass


class OrthomodularLawFails(OmlError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


class Oml:
    """Bounded orthoposet with an explicit order matrix.

    ``leq[i, j]`` is true iff element ``i`` is below element ``j``. Instances
    are treated as immutable; the matrix is stored read-only. Use
    :func:`build_oml` to construct a validated value from raw pairs.
    """

    def __init__(self, labels: Sequence[str], leq: np.ndarray, ortho: Sequence[int]):
        leq = np.array(leq, dtype=bool)
        leq.flags.writeable = False
        self.labels = tuple(str(x) for x in labels)
        self.leq = leq
        self.ortho = tuple(int(x) for x in ortho)
        self.n = len(self.labels)
        if leq.shape != (self.n, self.n) or len(self.ortho) != self.n:
            raise ValueError("labels, leq and ortho disagree on the number of elements")
        below_all = [i for i in range(self.n) if leq[i].all()]
        above_all = [i for i in range(self.n) if leq[:, i].all()]
        self.bottom = below_all[0] if below_all else -1
        self.top = above_all[0] if above_all else -1

    def __repr__(self) -> str:
        return f"Oml(n={self.n})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Oml):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.ortho == other.ortho
            and np.array_equal(self.leq, other.leq)
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.ortho, self.leq.tobytes()))

    def __len__(self) -> int:
        return self.n

    @cached_property
    def up(self) -> tuple[int, ...]:
        """Bitmask of the up-set of each element."""
        return tuple(_mask(np.flatnonzero(self.leq[i])) for i in range(self.n))

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(_mask(np.flatnonzero(self.leq[:, i])) for i in range(self.n))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        return self._index[label]

    def le(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def orthogonal(self, a: int, b: int) -> bool:
        return self.le(a, self.ortho[b])

    def join(self, a: int, b: int) -> int | None:
        """Least upper bound of ``a`` and ``b``, or None when it does not exist."""
        ub = self.up[a] & self.up[b]
        for u in iter_bits(ub):
            if ub & ~self.up[u] == 0:
                return u
        return None

    def meet(self, a: int, b: int) -> int | None:
        lb = self.down[a] & self.down[b]
        for v in iter_bits(lb):
            if lb & ~self.down[v] == 0:
                return v
        return None

    def join_all(self, elements: Iterable[int]) -> int | None:
        acc = self.bottom
        for x in elements:
            acc = self.join(acc, x)
            if acc is None:
                return None
        return acc

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        bot = 1 << self.bottom
        return tuple(
            i for i in range(self.n) if i != self.bottom and self.down[i] == bot | 1 << i
        )


def transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    rel = np.eye(n, dtype=bool)
    for a, b in pairs:
        rel[a, b] = True
    for k in range(n):
        rel |= np.outer(rel[:, k], rel[k, :])
    return rel


def validate(A: Oml) -> None:
    """Raise an :class:`OmlError` subclass unless ``A`` is an orthomodular poset."""
    n, leq = A.n, A.leq
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = (int(x) for x in np.argwhere(both)[0])
        raise NotAPartialOrder(f"{A.labels[i]} and {A.labels[j]} are mutually below", (i, j))
    if not np.diagonal(leq).all():
        i = int(np.flatnonzero(~np.diagonal(leq))[0])
        raise NotAPartialOrder(f"relation is not reflexive at {A.labels[i]}", (i,))
    closed = np.matmul(leq.astype(np.int32), leq.astype(np.int32)) > 0
    if (closed & ~leq).any():
        i, j = (int(x) for x in np.argwhere(closed & ~leq)[0])
        raise NotAPartialOrder(f"relation is not transitive at ({A.labels[i]}, {A.labels[j]})", (i, j))
    if A.bottom < 0 or A.top < 0:
        raise NoBounds("no least or no greatest element")

    o = A.ortho
    if sorted(o) != list(range(n)):
        bad = next(i for i in range(n) if not 0 <= o[i] < n or o.count(o[i]) > 1)
        raise OrthoNotInvolution(f"ortho is not a permutation at {bad}", (bad,))
    for a in range(n):
        if o[o[a]] != a:
            raise OrthoNotInvolution(f"ortho(ortho({A.labels[a]})) != {A.labels[a]}", (a,))
    oarr = np.array(o)
    flipped = leq[np.ix_(oarr, oarr)].T
    bad = leq & ~flipped
    if bad.any():
        a, b = (int(x) for x in np.argwhere(bad)[0])
        raise OrthoNotAntitone(f"{A.labels[a]} <= {A.labels[b]} but not {A.labels[o[b]]} <= {A.labels[o[a]]}", (a, b))
    for a in range(n):
        if A.meet(a, o[a]) != A.bottom or A.join(a, o[a]) != A.top:
            raise ComplementLawFails(f"{A.labels[a]} is not complemented by its ortho", (a,))

    for a, b in combinations(range(n), 2):
        if A.orthogonal(a, b) and A.join(a, b) is None:
            raise OrthomodularLawFails(
                f"orthogonal elements {A.labels[a]}, {A.labels[b]} have no join", (a, b)
            )
    for a in range(n):
        for b in iter_bits(A.up[a]):
            m = A.meet(b, o[a])
            if m is None or A.join(a, m) != b:
                raise OrthomodularLawFails(
                    f"{A.labels[b]} != {A.labels[a]} v ({A.labels[b]} ^ {A.labels[a]}')", (a, b)
                )


def build_oml(
    elements: int | Sequence[str],
    leq_pairs: Iterable[tuple[int, int]],
    ortho_map: Sequence[int],
) -> Oml:
    """Close ``leq_pairs`` reflexively and transitively, then validate.

    ``elements`` is either a count or a sequence of labels. Raises one of the
    :class:`OmlError` subclasses, each carrying a witness tuple.
    """
    labels = [str(i) for i in range(elements)] if isinstance(elements, int) else list(elements)
    n = len(labels)
    if n > MAX_ELEMENTS:
        raise ValueError(f"{n} elements exceeds the supported {MAX_ELEMENTS}")
    pairs = list(leq_pairs)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"pair ({a}, {b}) out of range")
    if len(ortho_map) != n:
        raise OrthoNotInvolution("ortho map has the wrong length")
    for x in ortho_map:
        if not 0 <= x < n:
            raise OrthoNotInvolution(f"ortho image {x} out of range", (x,))
    A = Oml(labels, transitive_closure(n, pairs), ortho_map)
    validate(A)
    return A


def is_lattice(A: Oml) -> bool:
    return all(A.join(a, b) is not None for a, b in combinations(range(A.n), 2))


def commutes(A: Oml, a: int, b: int) -> bool:
    """True iff ``a`` and ``b`` lie in a common Boolean subalgebra.

    Uses ``a = (a ^ b) v (a ^ b')``, which characterises compatibility in
    orthomodular posets whenever the two meets exist.
    """
    x = A.meet(a, b)
    y = A.meet(a, A.ortho[b])
    if x is None or y is None:
        return False
    return A.join(x, y) == a


@dataclass(frozen=True, order=True)
class BooleanSubalgebra:
    """Boolean subalgebra given by its sorted carrier and its atoms."""

    carrier: tuple[int, ...]
    atoms: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.atoms)

    def __len__(self) -> int:
        return len(self.carrier)

    def __contains__(self, x: int) -> bool:
        return x in self.carrier


BlockSet = tuple[BooleanSubalgebra, ...]


def span(A: Oml, atoms: Sequence[int]) -> dict[int, int] | None:
    """Map each subset bitmask of ``atoms`` to its join in ``A``.

    ``atoms`` must be pairwise orthogonal; returns None if some join is missing.
    """
    k = len(atoms)
    out = {0: A.bottom}
    for s in range(1, 1 << k):
        low = s & -s
        rest = out[s ^ low]
        j = A.join(rest, atoms[low.bit_length() - 1])
        if j is None:
            return None
        out[s] = j
    return out


def subalgebra_from_atoms(A: Oml, atoms: Sequence[int]) -> BooleanSubalgebra | None:
    joins = span(A, atoms)
    if joins is None or len(set(joins.values())) != len(joins):
        return None
    return BooleanSubalgebra(tuple(sorted(joins.values())), tuple(sorted(atoms)))


def is_boolean_embedding(A: Oml, atoms: Sequence[int]) -> bool:
    """Direct check that the atoms span a Boolean subalgebra of ``A``.

    Every meet, join and ortho computed in ``A`` must agree with the
    corresponding set operation on atom subsets.
    """
    joins = span(A, atoms)
    if joins is None or len(set(joins.values())) != len(joins):
        return False
    full = (1 << len(atoms)) - 1
    if joins[full] != A.top:
        return False
    for s, x in joins.items():
        if A.ortho[x] != joins[full ^ s]:
            return False
        for t, y in joins.items():
            if A.join(x, y) != joins[s | t] or A.meet(x, y) != joins[s & t]:
                return False
    return True


def _maximal_cliques(adj: dict[int, set[int]]) -> list[frozenset[int]]:
    out: list[frozenset[int]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adj), set())
    return out


def blocks(A: Oml) -> BlockSet:
    """Maximal Boolean subalgebras, sorted by carrier.

    In a finite orthomodular poset every block is spanned by a maximal set of
    pairwise orthogonal atoms, so these are the maximal cliques of the atom
    orthogonality graph.
    """
    if A.n == 1:
        return (BooleanSubalgebra((0,), ()),)
    atoms = A.atoms
    adj = {a: {b for b in atoms if b != a and A.orthogonal(a, b)} for a in atoms}
    found = []
    for clique in _maximal_cliques(adj):
        members = sorted(clique)
        if not is_boolean_embedding(A, members):
            raise OmlError("maximal orthogonal atom set does not span a Boolean block", members)
        found.append(subalgebra_from_atoms(A, members))
    return tuple(sorted(found))


def is_proper(A: Oml) -> bool:
    return all(len(b) > 4 for b in blocks(A))


def is_boolean(A: Oml) -> bool:
    bs = blocks(A)
    return len(bs) == 1 and len(bs[0]) == A.n


def _signature(A: Oml, x: int) -> tuple[int, int, bool, bool]:
    return (
        A.down[x].bit_count(),
        A.up[x].bit_count(),
        x in A.atoms,
        A.ortho[x] == x,
    )


def iso_oml(A: Oml, B: Oml) -> tuple[int, ...] | None:
    """Order- and ortho-preserving bijection ``A -> B`` or None.

    Backtracking over elements grouped by (down-set size, up-set size)
    signature; each assignment also fixes the image of the orthocomplement.
    """
    if A.n != B.n:
        return None
    sa = [_signature(A, x) for x in range(A.n)]
    sb = [_signature(B, x) for x in range(B.n)]
    if sorted(sa) != sorted(sb):
        return None
    candidates = {x: [y for y in range(B.n) if sb[y] == sa[x]] for x in range(A.n)}
    order = sorted(range(A.n), key=lambda x: (len(candidates[x]), x))
    f: dict[int, int] = {}
    used: set[int] = set()

    def consistent(x: int, y: int) -> bool:
        for u, v in f.items():
            if A.le(x, u) != B.le(y, v) or A.le(u, x) != B.le(v, y):
                return False
        return True

    def assign(x: int, y: int) -> list[int] | None:
        xo, yo = A.ortho[x], B.ortho[y]
        if (xo == x) != (yo == y):
            return None
        pairs = [(x, y)] if xo == x else [(x, y), (xo, yo)]
        added = []
        for u, v in pairs:
            if u in f:
                if f[u] != v:
                    break
                continue
            if v in used or not consistent(u, v):
                break
            f[u] = v
            used.add(v)
            added.append(u)
        else:
            return added
        for u in added:
            used.discard(f.pop(u))
        return None

    def search(i: int) -> bool:
        while i < len(order) and order[i] in f:
            i += 1
        if i == len(order):
            return True
        x = order[i]
        for y in candidates[x]:
            if y in used:
                continue
            added = assign(x, y)
            if added is None:
                continue
            if search(i + 1):
                return True
            for u in added:
                used.discard(f.pop(u))
        return False

    if not search(0):
        return None
    return tuple(f[x] for x in range(A.n))


def is_isomorphism(A: Oml, B: Oml, f: Sequence[int]) -> bool:
    if len(f) != A.n or sorted(f) != list(range(B.n)):
        return False
    for x in range(A.n):
        if f[A.ortho[x]] != B.ortho[f[x]]:
            return False
        for y in range(A.n):
            if A.le(x, y) != B.le(f[x], f[y]):
                return False
    return True
