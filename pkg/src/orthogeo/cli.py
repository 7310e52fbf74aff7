"""Command line driver.

Exit status: 0 when the command succeeds and its verdict is true, 1 when the
verdict is false, 2 when the input cannot be read or parsed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable

from . import formats
from .bsub import enumerate_lines, enumerate_planes16, enumerate_points
from .directions import (
    all_directions,
    canonical_embedding,
    check_boolean,
    check_lattice,
    directions_at,
    reconstruct_omp,
    validate_orthogeometry,
)
from .geometry import (
    PreOrthogeometry,
    geometry_of,
    geometry_of_diagram,
    nondegenerate_triangles,
)
from .greechie import GreechieDiagram, InvalidDiagram, paste_greechie
from .morphisms import (
    HomError,
    OmlHom,
    geo_of_hom,
    hom_from_atoms,
    is_normal_geo_morphism,
    is_normal_hom,
    is_proper_hom,
    lift_morphism,
)
from .oml import Oml, OmlError, blocks, is_boolean, is_lattice, is_proper, iso_oml
from .oracle import ORACLE_MAX_ELEMENTS, brute_boolean_subalgebras, brute_directions_at, brute_lub

SCHEMA = 1

COMMANDS = (
    "validate-oml",
    "geometry",
    "validate-geometry",
    "directions",
    "reconstruct",
    "check-lattice",
    "check-boolean",
    "lift-morphism",
    "apply-hom",
    "export-dot",
)

SUFFIX_FORMAT = {
    ".greechie": "greechie",
    ".json": "oml",
    ".oml": "oml",
    ".geo": "geometry",
    ".morph": "morphism",
    ".hom": "hom",
}


class InputError(Exception):
    pass


def infer_format(path: Path, given: str | None) -> str:
    if given:
        return given
    try:
        return SUFFIX_FORMAT[path.suffix]
    except KeyError:
        raise InputError(f"cannot infer the format of {path.name}; pass --format") from None


def load(path: Path, fmt: str | None = None):
    fmt = infer_format(path, fmt)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path.name}: {exc.strerror}") from exc
    if fmt == "greechie":
        return formats.parse_greechie(text)
    if fmt == "oml":
        return formats.parse_oml(text)
    if fmt == "geometry":
        return formats.parse_geometry(text)
    if fmt == "morphism":
        header = formats.parse_morphism_text(text)
        source = as_geometry(load(path.parent / header.source_path))
        target = as_geometry(load(path.parent / header.target_path))
        return formats.resolve_morphism(header, source, target)
    if fmt == "hom":
        return load_hom(path, text)
    raise InputError(f"unknown format {fmt!r}")


def as_algebra(obj) -> Oml:
    if isinstance(obj, Oml):
        return obj
    if isinstance(obj, GreechieDiagram):
        return paste_greechie(obj)
    raise InputError("this command needs a Greechie diagram or an explicit OML")


def as_geometry(obj) -> PreOrthogeometry:
    if isinstance(obj, PreOrthogeometry):
        return obj
    if isinstance(obj, GreechieDiagram):
        return geometry_of_diagram(obj)
    if isinstance(obj, Oml):
        return geometry_of(obj)
    raise InputError("this command needs a geometry, Greechie diagram or explicit OML")


def load_hom(path: Path, text: str) -> OmlHom:
    """JSON with ``source``, ``target`` files and an ``atoms`` label map."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise formats.InputSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    for key in ("source", "target", "atoms"):
        if key not in doc:
            raise formats.InputSyntaxError(f"missing field {key!r}", 1, 1)
    source = as_algebra(load(path.parent / doc["source"]))
    target = as_algebra(load(path.parent / doc["target"]))
    images = {}
    for a, b in doc["atoms"].items():
        try:
            images[source.index(a)] = target.index(b)
        except KeyError as exc:
            raise formats.UnknownName(f"unknown element {exc.args[0]}") from None
    missing = [source.labels[a] for a in source.atoms if a not in images]
    if missing:
        raise formats.InputSyntaxError(f"no image for atoms {missing}", 1, 1)
    return hom_from_atoms(source, target, images)


def _names(G: PreOrthogeometry, points) -> list[str]:
    return [G.names[p] for p in points]


def _oracle_algebra(A: Oml) -> dict:
    if A.n > ORACLE_MAX_ELEMENTS:
        return {"skipped": f"more than {ORACLE_MAX_ELEMENTS} elements"}
    brute = brute_boolean_subalgebras(A, 16)
    fast = {
        4: enumerate_points(A),
        8: enumerate_lines(A),
        16: enumerate_planes16(A),
    }
    agrees = all(
        sorted(tuple(s.carrier) for s in fast[size])
        == sorted(tuple(sorted(s)) for s in brute if len(s) == size)
        for size in fast
    )
    return {"agrees": agrees}


def _oracle_directions(G: PreOrthogeometry) -> dict:
    agrees = all(
        {d.arrows for d in directions_at(G, p)} == set(brute_directions_at(G, p))
        for p in range(G.n_points)
        if G.lines_at[p]
    )
    return {"agrees": agrees}


def cmd_validate_oml(obj, args) -> dict:
    try:
        A = as_algebra(obj)
    except OmlError as exc:
        return {
            "verdicts": {"omp_valid": False},
            "error": {"kind": type(exc).__name__, "message": str(exc)},
            "witnesses": {"elements": list(exc.witness)},
            "verdict": False,
        }
    bs = blocks(A)
    report = {
        "verdicts": {
            "omp_valid": True,
            "lattice": is_lattice(A),
            "boolean": is_boolean(A),
            "proper": is_proper(A),
        },
        "counts": {"elements": A.n, "blocks": len(bs)},
        "blocks": [[A.labels[x] for x in b.carrier] for b in bs],
        "verdict": True,
    }
    if args.oracle:
        report["oracle"] = _oracle_algebra(A)
    return report


def _geometry_counts(G: PreOrthogeometry) -> dict:
    return {
        "points": G.n_points,
        "lines": len(G.lines),
        "planes": len(G.planes),
        "triangles": len(nondegenerate_triangles(G)),
    }


def cmd_geometry(obj, args) -> dict:
    G = as_geometry(obj)
    report = {
        "verdicts": {"proper": G.is_proper()},
        "counts": _geometry_counts(G),
        "points": list(G.names),
        "lines": [_names(G, line) for line in G.lines],
        "planes": [_names(G, pl.points) for pl in G.planes],
    }
    if args.oracle and not isinstance(obj, PreOrthogeometry):
        try:
            report["oracle"] = _oracle_algebra(as_algebra(obj))
        except OmlError:
            report["oracle"] = {"skipped": "input is not an orthomodular poset"}
    report["_text"] = formats.serialize_geometry(G)
    report["verdict"] = True
    return report


def _validation(G: PreOrthogeometry) -> dict:
    r = validate_orthogeometry(G)
    return {
        "verdicts": {
            "pre_geometry_ok": r.pre_geometry_ok,
            "proper": r.proper,
            "triangle_axiom": r.triangle_axiom.ok,
            "direction_axiom": r.direction_axiom.ok,
            "orthogeometry": r.verdict,
        },
        "witnesses": {
            "triangle": _names(G, r.triangle_axiom.witness),
            "direction": _names(G, r.direction_axiom.witness),
            "improper_points": [G.names[p] for p in range(G.n_points) if not G.lines_at[p]],
        },
        "counts": _geometry_counts(G),
    }


def cmd_validate_geometry(obj, args) -> dict:
    G = as_geometry(obj)
    report = _validation(G)
    report["verdict"] = report["verdicts"]["orthogeometry"]
    if args.oracle:
        report["oracle"] = _oracle_directions(G)
    return report


def cmd_directions(obj, args) -> dict:
    G = as_geometry(obj)
    per_point = {}
    for p in range(G.n_points):
        per_point[G.names[p]] = sorted(d.name(G) for d in directions_at(G, p))
    axiom = all(per_point.values())
    report = {
        "verdicts": {"direction_axiom": axiom},
        "counts": {"points": G.n_points, "directions": sum(map(len, per_point.values())) + 2},
        "directions": per_point,
        "witnesses": {"point": [name for name, ds in per_point.items() if not ds][:1]},
        "verdict": axiom,
    }
    if args.oracle:
        report["oracle"] = _oracle_directions(G)
    return report


def _orthogeometry_or_report(G: PreOrthogeometry) -> dict | None:
    report = _validation(G)
    if not report["verdicts"]["orthogeometry"]:
        report["verdict"] = False
        return report
    return None


def cmd_reconstruct(obj, args) -> dict:
    G = as_geometry(obj)
    failed = _orthogeometry_or_report(G)
    if failed:
        failed["verdicts"]["omp_valid"] = False
        return failed
    P = all_directions(G)
    R = reconstruct_omp(G)
    report = {
        "verdicts": {"omp_valid": True, "lattice": is_lattice(R)},
        "counts": {"directions": len(P), "reconstructed_size": R.n, "points": G.n_points},
        "elements": list(R.labels),
        "verdict": True,
    }
    if isinstance(obj, (Oml, GreechieDiagram)):
        try:
            A = as_algebra(obj)
        except OmlError:
            A = None
        if A is not None:
            report["verdicts"]["isomorphic_to_input"] = iso_oml(A, R) is not None
            report["verdicts"]["canonical_map_is_iso"] = sorted(canonical_embedding(A)) == list(range(R.n))
    report["_out"] = formats.serialize_oml(R)
    return report


def cmd_check_lattice(obj, args) -> dict:
    G = as_geometry(obj)
    failed = _orthogeometry_or_report(G)
    if failed:
        return failed
    v = check_lattice(G)
    report = {
        "verdicts": {"lattice": v.ok},
        "verdict": v.ok,
        "witnesses": {"pair": [d.name(G) for d in v.witness]},
    }
    if args.oracle:
        if v.witness:
            report["oracle"] = {"agrees": brute_lub(all_directions(G), v.witness) is None}
        else:
            report["oracle"] = {"agrees": True}
    return report


def cmd_check_boolean(obj, args) -> dict:
    G = as_geometry(obj)
    failed = _orthogeometry_or_report(G)
    if failed:
        return failed
    v = check_boolean(G)
    return {
        "verdicts": {"boolean": v.ok},
        "verdict": v.ok,
        "witnesses": {"pair": _names(G, v.witness)},
    }


def cmd_lift_morphism(obj, args) -> dict:
    if not hasattr(obj, "source") or isinstance(obj, OmlHom):
        raise InputError("lift-morphism needs a morphism file")
    alpha = obj
    for G in (alpha.source, alpha.target):
        failed = _orthogeometry_or_report(G)
        if failed:
            failed["verdicts"]["liftable"] = False
            return failed
    lifted = lift_morphism(alpha)
    report = {
        "verdicts": {"liftable": bool(lifted)},
        "map": alpha.named(),
    }
    if lifted:
        report["verdicts"]["proper"] = is_proper_hom(lifted.hom)
        report["verdicts"]["normal"] = is_normal_geo_morphism(alpha)
        P1 = all_directions(alpha.source)
        report["direction_map"] = {
            d.name(alpha.source): e.name(alpha.target)
            for d, e in zip(P1.directions, lifted.direction_map)
        }
    else:
        report["reason"] = lifted.reason
    report["verdict"] = bool(lifted)
    return report


def cmd_apply_hom(obj, args) -> dict:
    if not isinstance(obj, OmlHom):
        raise InputError("apply-hom needs a homomorphism file")
    alpha = geo_of_hom(obj)
    report = {
        "verdicts": {"proper": is_proper_hom(obj), "normal": is_normal_hom(obj)},
        "map": alpha.named(),
        "counts": {"undefined": sum(q is None for q in alpha.map)},
    }
    text = [f"map {p} {q}" for p, q in alpha.named().items()]
    report["_text"] = "\n".join(text) + "\n"
    report["verdict"] = True
    return report


def cmd_export_dot(obj, args) -> dict:
    G = as_geometry(obj)
    text = formats.export_dot(G)
    return {"counts": _geometry_counts(G), "_text": text, "verdict": True}


HANDLERS: dict[str, Callable] = {
    "validate-oml": cmd_validate_oml,
    "geometry": cmd_geometry,
    "validate-geometry": cmd_validate_geometry,
    "directions": cmd_directions,
    "reconstruct": cmd_reconstruct,
    "check-lattice": cmd_check_lattice,
    "check-boolean": cmd_check_boolean,
    "lift-morphism": cmd_lift_morphism,
    "apply-hom": cmd_apply_hom,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthogeo", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, type=Path)
    parser.add_argument("--format", choices=("greechie", "oml", "geometry", "morphism", "hom"))
    parser.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    parser.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    parser.add_argument("--out", type=Path, help="write the command's artifact here")
    parser.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    return parser


def exit_code(report: dict) -> int:
    ok = bool(report["verdict"])
    if report.get("oracle", {}).get("agrees") is False:
        ok = False
    return 0 if ok else 1


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for key, tag in (("verdicts", "verdict"), ("counts", "count"), ("witnesses", "witness")):
        for name, value in sorted(report.get(key, {}).items()):
            lines.append(f"{tag} {name}: {value}")
    for key in ("error", "reason"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        obj = load(args.input, args.format)
        report = HANDLERS[args.command](obj, args)
    except (InputError, formats.ParseError, InvalidDiagram, HomError, OmlError) as exc:
        print(f"orthogeo: input error: {exc}", file=sys.stderr)
        if args.json:
            doc = {
                "schema": SCHEMA,
                "command": args.command,
                "input": args.input.name,
                "error": {"kind": getattr(exc, "kind", type(exc).__name__), "message": str(exc)},
            }
            stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return 2

    artifact = report.pop("_out", None) or report.pop("_text", None)
    report.update(
        {
            "schema": SCHEMA,
            "command": args.command,
            "input": args.input.name,
            "flags": sorted(k for k in ("oracle",) if getattr(args, k)),
        }
    )
    if args.timing:
        report["timing"] = round(time.perf_counter() - started, 6)
    code = exit_code(report)
    if args.out is not None and artifact is not None:
        args.out.write_text(artifact, encoding="utf-8")
    if args.json:
        stdout.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    elif artifact is not None and args.out is None and args.command in ("geometry", "export-dot", "apply-hom"):
        stdout.write(artifact)
    else:
        stdout.write(render_text(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
