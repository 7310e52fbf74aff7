"""Standard Greechie diagrams used throughout the tests and walkthroughs."""
from __future__ import annotations

from string import ascii_lowercase

from .geometry import PLANE_TEMPLATE_LINES, PreOrthogeometry
from .greechie import GreechieDiagram


def boolean(k: int) -> GreechieDiagram:
    """One block of ``k`` atoms named a, b, c, ...; pastes to 2^k."""
    atoms = tuple(ascii_lowercase[:k])
    return GreechieDiagram(atoms, (atoms,))


def two_block() -> GreechieDiagram:
    return GreechieDiagram(tuple("abcde"), (tuple("abc"), tuple("cde")))


def chain(m: int) -> GreechieDiagram:
    """``m`` three-atom blocks, consecutive blocks sharing one atom."""
    atoms = tuple(ascii_lowercase[: 2 * m + 1])
    blocks = tuple(atoms[2 * i : 2 * i + 3] for i in range(m))
    return GreechieDiagram(atoms, blocks)


def loop(m: int) -> GreechieDiagram:
    """Cycle of ``m`` three-atom blocks; the last block wraps to atom a."""
    atoms = tuple(ascii_lowercase[: 2 * m])
    blocks = tuple((atoms[2 * i], atoms[2 * i + 1], atoms[(2 * i + 2) % (2 * m)]) for i in range(m))
    return GreechieDiagram(atoms, blocks)


def mo2() -> GreechieDiagram:
    return GreechieDiagram(tuple("abcd"), (("a", "b"), ("c", "d")))


STANDARD = {
    "b8": lambda: boolean(3),
    "b16": lambda: boolean(4),
    "b32": lambda: boolean(5),
    "two_block": two_block,
    "loop4": lambda: loop(4),
}


def three_plane_star() -> PreOrthogeometry:
    """A point on three lines, each pair of which spans a plane exclusively.

    The three "arrows differ" constraints form an odd cycle, so the centre
    point has no direction.
    """
    names = ["p"]
    lines = []
    legs = []
    for i in range(3):
        a, b = len(names), len(names) + 1
        names += [f"x{i}a", f"x{i}b"]
        legs.append((a, b))
        lines.append((0, a, b))
    for i, j in ((0, 1), (1, 2), (0, 2)):
        # Template points 0,1 are leg i, 2,3 are leg j, 4 is the centre, 5,6 are new.
        t = [legs[i][0], legs[i][1], legs[j][0], legs[j][1], 0, len(names), len(names) + 1]
        names += [f"y{i}{j}", f"z{i}{j}"]
        for line in PLANE_TEMPLATE_LINES:
            pts = tuple(sorted(t[k] for k in line))
            if 0 not in pts:
                lines.append(pts)
    return PreOrthogeometry(names, lines)
