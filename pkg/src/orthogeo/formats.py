"""Text formats: Greechie diagrams, explicit OML documents, geometries, morphisms.

All parsers report the 1-based line and column of the first problem.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .geometry import PreOrthogeometry
from .greechie import GreechieDiagram, InvalidDiagram
from .morphisms import BOTTOM_TOKEN, GeoMorphism
from .oml import Oml, build_oml


class ParseError(ValueError):
    kind = "ParseError"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.line = line
        self.column = column
        self.message = message


class InputSyntaxError(ParseError):
    kind = "SyntaxError"


class DuplicateName(ParseError):
    kind = "DuplicateName"


class UnknownName(ParseError):
    kind = "UnknownName"


class ArityError(ParseError):
    kind = "ArityError"


def _records(text: str):
    """Yield (line number, [(column, token), ...]) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = []
        col = 0
        for tok in raw.split():
            col = raw.index(tok, col)
            tokens.append((col + 1, tok))
            col += len(tok)
        yield lineno, tokens


def parse_greechie(text: str) -> GreechieDiagram:
    atoms: list[str] | None = None
    blocks = []
    for lineno, tokens in _records(text):
        col, head = tokens[0]
        names = tokens[1:]
        if head == "atoms":
            if atoms is not None:
                raise InputSyntaxError("second atoms line", lineno, col)
            atoms = []
            for c, name in names:
                if name in atoms:
                    raise DuplicateName(f"atom {name} declared twice", lineno, c)
                atoms.append(name)
        elif head == "block":
            if atoms is None:
                raise InputSyntaxError("block before atoms line", lineno, col)
            for c, name in names:
                if name not in atoms:
                    raise UnknownName(f"unknown atom {name}", lineno, c)
            if len(names) < 2:
                raise ArityError("a block needs at least 2 atoms", lineno, col)
            blocks.append(tuple(name for _, name in names))
        else:
            raise InputSyntaxError(f"expected 'atoms' or 'block', got {head!r}", lineno, col)
    if atoms is None:
        raise InputSyntaxError("missing atoms line", 1, 1)
    try:
        return GreechieDiagram(tuple(atoms), tuple(blocks))
    except InvalidDiagram as exc:
        raise InputSyntaxError(str(exc)) from exc


def serialize_greechie(diagram: GreechieDiagram) -> str:
    lines = ["atoms " + " ".join(diagram.atoms)]
    lines += ["block " + " ".join(b) for b in diagram.blocks]
    return "\n".join(lines) + "\n"


def parse_oml(text: str) -> Oml:
    """Explicit document with fields ``elements``, ``leq`` and ``ortho``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise InputSyntaxError("document must be an object", 1, 1)
    for key in ("elements", "leq", "ortho"):
        if key not in doc:
            raise InputSyntaxError(f"missing field {key!r}", 1, 1)
    labels = doc["elements"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise InputSyntaxError("elements must be a list of strings", 1, 1)
    if len(set(labels)) != len(labels):
        raise DuplicateName("duplicate element label", 1, 1)
    n = len(labels)
    pairs = doc["leq"]
    if not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) and 0 <= x < n for x in p)
        for p in pairs
    ):
        raise InputSyntaxError("leq must be a list of in-range index pairs", 1, 1)
    ortho = doc["ortho"]
    if not isinstance(ortho, list) or len(ortho) != n or not all(isinstance(x, int) for x in ortho):
        raise ArityError("ortho must list one index per element", 1, 1)
    return build_oml(labels, [tuple(p) for p in pairs], ortho)


def serialize_oml(A: Oml) -> str:
    """Canonical document: bottom first, top second, then the rest; cover pairs only."""
    order = [A.bottom, A.top] + [x for x in range(A.n) if x not in (A.bottom, A.top)]
    pos = {x: i for i, x in enumerate(order)}
    covers = []
    for x in range(A.n):
        for y in range(A.n):
            if x != y and A.le(x, y):
                if not any(z not in (x, y) and A.le(x, z) and A.le(z, y) for z in range(A.n)):
                    covers.append([pos[x], pos[y]])
    doc = {
        "elements": [A.labels[x] for x in order],
        "leq": sorted(covers),
        "ortho": [pos[A.ortho[x]] for x in order],
    }
    return json.dumps(doc, indent=None, separators=(", ", ": ")) + "\n"


def parse_geometry(text: str) -> PreOrthogeometry:
    names: list[str] = []
    index: dict[str, int] = {}
    lines = []
    for lineno, tokens in _records(text):
        col, head = tokens[0]
        args = tokens[1:]
        if head == "point":
            if len(args) != 1:
                raise ArityError("point takes exactly one name", lineno, col)
            c, name = args[0]
            if lines:
                raise InputSyntaxError("point after the first line", lineno, col)
            if name in index:
                raise DuplicateName(f"point {name} declared twice", lineno, c)
            index[name] = len(names)
            names.append(name)
        elif head == "line":
            if len(args) != 3:
                raise ArityError(f"a line needs exactly 3 points, got {len(args)}", lineno, col)
            pts = []
            for c, name in args:
                if name not in index:
                    raise UnknownName(f"unknown point {name}", lineno, c)
                pts.append(index[name])
            if len(set(pts)) != 3:
                raise InputSyntaxError("a line needs 3 distinct points", lineno, col)
            lines.append(pts)
        else:
            raise InputSyntaxError(f"expected 'point' or 'line', got {head!r}", lineno, col)
    try:
        return PreOrthogeometry(names, lines)
    except ValueError as exc:
        raise InputSyntaxError(str(exc)) from exc


def serialize_geometry(G: PreOrthogeometry) -> str:
    out = [f"point {name}" for name in G.names]
    out += ["line " + " ".join(G.names[p] for p in line) for line in G.lines]
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class MorphismFile:
    source_path: str
    target_path: str
    pairs: tuple[tuple[str, str], ...]


def parse_morphism_text(text: str) -> MorphismFile:
    source = target = None
    pairs = []
    seen = set()
    for lineno, tokens in _records(text):
        col, head = tokens[0]
        args = tokens[1:]
        if head in ("source", "target"):
            if len(args) != 1:
                raise ArityError(f"{head} takes one file name", lineno, col)
            if head == "source":
                source = args[0][1]
            else:
                target = args[0][1]
        elif head == "map":
            if len(args) != 2:
                raise ArityError("map takes a point and an image", lineno, col)
            if args[0][1] in seen:
                raise DuplicateName(f"point {args[0][1]} mapped twice", lineno, args[0][0])
            seen.add(args[0][1])
            pairs.append((args[0][1], args[1][1]))
        else:
            raise InputSyntaxError(f"expected source, target or map, got {head!r}", lineno, col)
    if source is None or target is None:
        raise InputSyntaxError("morphism needs source and target lines", 1, 1)
    return MorphismFile(source, target, tuple(pairs))


def resolve_morphism(header: MorphismFile, source: PreOrthogeometry, target: PreOrthogeometry) -> GeoMorphism:
    images: list[int | None] = [None] * source.n_points
    src = {name: i for i, name in enumerate(source.names)}
    tgt = {name: i for i, name in enumerate(target.names)}
    for p, q in header.pairs:
        if p not in src:
            raise UnknownName(f"unknown source point {p}")
        if q == BOTTOM_TOKEN:
            continue
        if q not in tgt:
            raise UnknownName(f"unknown target point {q}")
        images[src[p]] = tgt[q]
    return GeoMorphism(source, target, tuple(images))


def parse_morphism(text: str, base: Path | str = ".") -> GeoMorphism:
    """Parse a morphism and load its ``source``/``target`` geometry files relative to ``base``."""
    header = parse_morphism_text(text)
    base = Path(base)
    source = parse_geometry((base / header.source_path).read_text(encoding="utf-8"))
    target = parse_geometry((base / header.target_path).read_text(encoding="utf-8"))
    return resolve_morphism(header, source, target)


def serialize_morphism(alpha: GeoMorphism, source_path: str, target_path: str) -> str:
    out = [f"source {source_path}", f"target {target_path}"]
    for p, q in enumerate(alpha.map):
        image = BOTTOM_TOKEN if q is None else alpha.target.names[q]
        out.append(f"map {alpha.source.names[p]} {image}")
    return "\n".join(out) + "\n"


def export_dot(G: PreOrthogeometry) -> str:
    """Graphviz text: points as nodes, each line a triangle of edges in a cluster."""
    out = ["graph orthogeometry {", "  node [shape=point, xlabel=\"\\N\"];"]
    if G.n_points == 0:
        out.append("}")
        return "\n".join(out) + "\n"
    for name in G.names:
        out.append(f'  "{name}";')
    for li, line in enumerate(G.lines):
        a, b, c = (G.names[p] for p in line)
        out.append(f"  subgraph line_{li} {{")
        out.append(f'    "{a}" -- "{b}"; "{b}" -- "{c}"; "{a}" -- "{c}";')
        out.append("  }")
    for pi, plane in enumerate(G.planes):
        pts = " ".join(f'"{G.names[p]}"' for p in plane.points)
        out.append(f"  // plane_{pi}: {pts}")
    out.append("}")
    return "\n".join(out) + "\n"
