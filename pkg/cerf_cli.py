"""
Command-line surface for cerf-forge.

    python cerf_cli.py validate fixtures/torus.json
    python cerf_cli.py enumerate figure1
    python cerf_cli.py invariants --trisection fixtures/cp2.json
    python cerf_cli.py compile-trisection fixtures/cp2.json --format svg

Reports go to stdout (or --output) as canonical JSON: sorted keys, two-space
indent, trailing newline. Diagnostics go to stderr. Exit codes:

    0  success
    1  validation failure or document error
    2  usage error
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from cerf_io import (
    DocumentEnvelope,
    SurfaceDocument,
    canonical_json,
    load_document,
    make_envelope,
    serialize_document,
)
from cerf_svg import render_svg
from checks import CerfError, CheckReport, log_failures
from family_one import (
    IntervalType,
    assemble_circle_family,
    assemble_interval_family,
    classify_interval,
    enumerate_switch_neighborhoods,
    interpolate_cut_systems,
    standard_family_from_trisection,
    validate_graphic,
)
from family_two import (
    TripleSwitch,
    assemble_disk_family,
    cap_trisection_family,
    classify_polygon,
    enumerate_triple_graphs,
    permutahedron_edge_types,
    validate_decomposition,
)
from invariants import trisection_invariants, validate_trisection
from morse_slice import critical_neighborhood, cut_system_from_morse, reeb_graph, validate_sliced
from settings import SettingsError, configure_logging, get_logger, thread_count
from surface_core import SymplecticLattice, lagrangian_span, validate_cut_system

logger = get_logger("cli")


class UsageError(CerfError):
    code = "USAGE"


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run_command owns the exit code."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="input document (alternative to the positional path)")
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "svg"), default="json")
    common.add_argument("--verbose", action="store_true", help="log progress to stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="cerf-forge", description="Combinatorial Cerf theory on closed surfaces.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def with_path(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("path", nargs="?", type=Path)
        return p

    with_path("validate", "check any document and report every failed check")
    with_path("reeb", "Reeb graph and critical neighborhoods of a morse document")
    with_path("cut-system", "handlebody cut system of a morse document")
    p = with_path("classify-interval", "Type0/Type1 of each segment of a graphic1 document")
    p.add_argument("--segment", type=int)
    p = with_path("classify-polygon", "polygon types of a decomposition document")
    p.add_argument("--polygon", type=int)
    with_path("assemble-b1", "4-manifold record of an interval family")
    with_path("assemble-s1", "4-manifold record of a circle family")
    with_path("compile-trisection", "closed family compiled from a trisection document")
    p = sub.add_parser("interpolate", parents=[common], help="slide sequence between two cut systems")
    p.add_argument("--source", type=Path, required=True)
    p.add_argument("--target", type=Path, required=True)
    with_path("assemble-b2", "capping report of a decomposition (or of a capped genus-1 trisection)")
    p = sub.add_parser("invariants", parents=[common], help="chi, sigma and H1 rank of a trisection")
    p.add_argument("--trisection", type=Path, required=True)
    p = sub.add_parser("enumerate", parents=[common], help="ribbon neighborhood census")
    p.add_argument("census", choices=("figure1", "triple"))
    with_path("render", "SVG of a graphic1, trisection or decomposition document")
    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _document(args: argparse.Namespace, *kinds: str) -> DocumentEnvelope:
    path = getattr(args, "path", None) or args.input
    if path is None:
        raise UsageError(f"{args.command}: an input document is required")
    envelope = load_document(path)
    if kinds and envelope.kind not in kinds:
        raise UsageError(f"{args.command} expects a {' or '.join(kinds)} document, got {envelope.kind}")
    return envelope


def _report_failures(report: CheckReport, subject: str) -> None:
    if not log_failures(report, logger, subject):
        raise CerfError(f"{subject} failed validation", code="VALIDATION")


def _neighborhood_row(N) -> dict:
    return {
        "pairing": list(N.pairing),
        "offsets": list(N.offsets),
        "genus": N.genus,
        "boundary_circles": N.boundary_circles,
        "euler_characteristic": N.euler_characteristic,
        "sides": list(N.sides),
    }


# ---------------------------------------------------------------------------
# Commands. Each returns (report, exit code); the report is a dict or SVG text.
# ---------------------------------------------------------------------------


def cmd_validate(args) -> tuple[object, int]:
    env = _document(args)
    payload = env.payload
    out: dict = {"kind": env.kind}
    if env.kind == "surface":
        report = CheckReport()
        if payload.cut_system is not None:
            report = validate_cut_system(payload.cut_system, SymplecticLattice(payload.genus))
    elif env.kind == "morse":
        result = validate_sliced(payload)
        report = result.report
        out["genus"] = result.genus
    elif env.kind == "graphic1":
        report = validate_graphic(payload)
    elif env.kind == "trisection":
        report = validate_trisection(payload)
    else:
        report = validate_decomposition(payload)
    out.update(report.as_dict())
    ok = log_failures(report, logger, env.kind)
    return out, 0 if ok else 1


def cmd_reeb(args):
    f = _document(args, "morse").payload
    graph = reeb_graph(f)
    return {
        "vertices": list(graph.vertices),
        "edges": [
            {
                "circle": e.circle,
                "lower": e.lower,
                "upper": e.upper,
                "created_at": str(e.created_at),
                "destroyed_at": str(e.destroyed_at),
            }
            for e in graph.edges
        ],
        "betti": graph.betti,
        "degrees": graph.degrees(),
        "critical_neighborhoods": [
            {
                "event": cn.event,
                "kind": cn.kind,
                "genus": cn.genus,
                "boundary_circles": cn.boundary_circles,
            }
            for cn in (critical_neighborhood(f, n) for n in range(len(f.events)))
        ],
    }, 0


def cmd_cut_system(args):
    f = _document(args, "morse").payload
    result = validate_sliced(f)
    _report_failures(result.report, "morse")
    genus = result.genus
    lattice = SymplecticLattice(genus)
    cs = cut_system_from_morse(f, lattice)
    return {
        "genus": genus,
        "curves": cs.rows(),
        "labels": cs.labels(),
        "circles": list(cs.provenance or ()),
        "span": [list(row) for row in lagrangian_span(cs, lattice).basis],
    }, 0


def cmd_classify_interval(args):
    gr = _document(args, "graphic1").payload
    if args.segment is not None:
        if not 0 <= args.segment < len(gr.segments):
            raise UsageError(f"segment {args.segment} outside 0..{len(gr.segments) - 1}")
        return {"segment": args.segment, "type": classify_interval(gr.segments[args.segment]).value}, 0
    return {"types": [t.value for t in gr.types()]}, 0


def cmd_classify_polygon(args):
    D = _document(args, "decomposition").payload
    indices = range(len(D.polygons)) if args.polygon is None else [args.polygon]
    rows = []
    for i in indices:
        if not 0 <= i < len(D.polygons):
            raise UsageError(f"polygon {i} outside 0..{len(D.polygons) - 1}")
        P = D.polygons[i]
        row = {"polygon": i, **classify_polygon(P).as_dict()}
        if isinstance(P.center, TripleSwitch):
            row["permutahedron"] = [e.as_dict() for e in permutahedron_edge_types(P.center)]
        rows.append(row)
    return {"polygons": rows}, 0


def cmd_assemble_b1(args):
    gr = _document(args, "graphic1").payload
    return assemble_interval_family(gr).as_dict(), 0


def cmd_assemble_s1(args):
    gr = _document(args, "graphic1").payload
    return assemble_circle_family(gr).as_dict(), 0


def cmd_compile_trisection(args):
    T = _document(args, "trisection").payload
    gr = standard_family_from_trisection(T)
    if args.format == "svg":
        return render_svg(gr), 0
    return serialize_document(make_envelope("graphic1", gr)), 0


def _cut_system_of(path: Path):
    env = load_document(path)
    if env.kind != "surface" or env.payload.cut_system is None:
        raise UsageError(f"{path}: expected a surface document with a cut_system")
    return env.payload


def cmd_interpolate(args):
    source: SurfaceDocument = _cut_system_of(args.source)
    target: SurfaceDocument = _cut_system_of(args.target)
    if source.genus != target.genus:
        raise UsageError(f"genus {source.genus} and genus {target.genus} cut systems")
    seq = interpolate_cut_systems(source.cut_system, target.cut_system, SymplecticLattice(source.genus))
    return seq.as_dict(), 0


def cmd_assemble_b2(args):
    env = _document(args, "decomposition", "trisection", "graphic1")
    if env.kind == "decomposition":
        D = env.payload
    elif env.kind == "trisection":
        D = cap_trisection_family(standard_family_from_trisection(env.payload))
    else:
        D = cap_trisection_family(env.payload)
    report = assemble_disk_family(D)
    return report.as_dict(), 0 if report.sigma_identity_holds else 1


def cmd_invariants(args):
    env = load_document(args.trisection)
    if env.kind != "trisection":
        raise UsageError(f"--trisection expects a trisection document, got {env.kind}")
    return trisection_invariants(env.payload), 0


def cmd_enumerate(args):
    threads = thread_count()
    if args.census == "figure1":
        census = enumerate_switch_neighborhoods(threads=threads)
        rows = [_neighborhood_row(N) for N in census]
    else:
        census = enumerate_triple_graphs(threads=threads)
        rows = []
        for N in census:
            row = _neighborhood_row(N)
            edges = permutahedron_edge_types(TripleSwitch(N))
            row["type1_switches"] = sum(1 for e in edges if e.interval_type is IntervalType.TYPE1)
            rows.append(row)
    return {"census": args.census, "count": len(rows), "entries": rows}, 0


def cmd_render(args):
    env = _document(args, "graphic1", "trisection", "decomposition")
    item = env.payload
    if env.kind == "trisection":
        item = standard_family_from_trisection(item)
    if args.format == "json":
        # the document itself, compiled first when needed
        if env.kind == "trisection":
            return serialize_document(make_envelope("graphic1", item)), 0
        return serialize_document(env), 0
    return render_svg(item), 0


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "reeb": cmd_reeb,
    "cut-system": cmd_cut_system,
    "classify-interval": cmd_classify_interval,
    "classify-polygon": cmd_classify_polygon,
    "assemble-b1": cmd_assemble_b1,
    "assemble-s1": cmd_assemble_s1,
    "compile-trisection": cmd_compile_trisection,
    "interpolate": cmd_interpolate,
    "assemble-b2": cmd_assemble_b2,
    "invariants": cmd_invariants,
    "enumerate": cmd_enumerate,
    "render": cmd_render,
}


def _emit(report: object, args: argparse.Namespace, stdout: TextIO) -> None:
    text = report if isinstance(report, str) else canonical_json(report)
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def run_command(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    out = sys.stdout if stdout is None else stdout
    err = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        err.write(f"[cerf-forge] USAGE: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    configure_logging(verbose=args.verbose)
    try:
        report, code = COMMANDS[args.command](args)
    except (UsageError, SettingsError) as exc:
        err.write(f"[cerf-forge] {exc.code}: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"[cerf-forge] USAGE: cannot read input: {exc}\n")
        return 2
    except CerfError as exc:
        err.write(f"[cerf-forge] {exc.code}: {exc}\n")
        return 1
    _emit(report, args, out)
    return code


def main() -> int:
    return run_command(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
