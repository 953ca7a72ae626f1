"""
Table builders for the dashboard pages.

Pure functions from library objects to pandas DataFrames. Pages only lay
these out, so everything here is testable without a Streamlit runtime.
Empty inputs give empty frames with the documented columns.
"""

from __future__ import annotations

from pathlib import Path

import pandas as pd

from cerf_io import DocumentEnvelope, DocumentError, load_document
from checks import CheckReport
from family_one import (
    BirthDeath,
    CerfGraphic1,
    HeightSwitch,
    IntervalType,
    classify_interval,
    enumerate_switch_neighborhoods,
    handlebody_sequence,
)
from family_two import (
    CappingReport,
    TripleSwitch,
    enumerate_triple_graphs,
    permutahedron_edge_types,
)
from invariants import TrisectionDiagram, standard_trisections, trisection_h1, trisection_invariants
from morse_slice import SlicedMorseFunction, critical_neighborhood, reeb_graph
from settings import get_logger
from surface_core import CutSystem

logger = get_logger("dashboard_data")

FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"

CENSUS_COLUMNS = ["entry", "genus", "boundary_circles", "euler_characteristic", "sides", "pairing", "offsets"]
CHECK_COLUMNS = ["check", "passed", "detail"]
REEB_COLUMNS = ["circle", "lower", "upper", "created_at", "destroyed_at"]
NEIGHBORHOOD_COLUMNS = ["event", "kind", "genus", "boundary_circles", "euler_characteristic"]
CUT_SYSTEM_COLUMNS = ["curve", "circle", "class"]
CATALOG_COLUMNS = ["manifold", "g", "k", "chi", "sigma", "h1"]
SEGMENT_COLUMNS = ["segment", "event", "type", "before", "after"]
POLYGON_COLUMNS = ["polygon", "center", "edges", "type", "sign"]


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


def fixture_documents(kind: str, directory: Path = FIXTURES_DIR) -> dict[str, DocumentEnvelope]:
    """Every parseable fixture of the given kind, keyed by file stem.

    Broken fixtures are skipped with a warning; some exist on purpose to
    exercise the error paths.
    """
    found: dict[str, DocumentEnvelope] = {}
    for path in sorted(directory.glob("*.json")):
        try:
            env = load_document(path)
        except DocumentError as exc:
            logger.warning("skipping fixture %s: %s %s", path.name, exc.code, exc)
            continue
        if env.kind == kind:
            found[path.stem] = env
    return found


# ---------------------------------------------------------------------------
# Switch census
# ---------------------------------------------------------------------------


def census_table(census: str, threads: int | None = None) -> pd.DataFrame:
    """One row per ribbon neighborhood, in canonical census order.

    `census` is "figure1" (two vertices) or "triple" (three vertices); the
    triple census adds the number of Type1 switches around its hexagon.
    """
    if census == "figure1":
        graphs = enumerate_switch_neighborhoods(threads=threads)
    elif census == "triple":
        graphs = enumerate_triple_graphs(threads=threads)
    else:
        raise ValueError(f"unknown census {census!r}")
    rows = []
    for n, N in enumerate(graphs):
        row = {
            "entry": n,
            "genus": N.genus,
            "boundary_circles": N.boundary_circles,
            "euler_characteristic": N.euler_characteristic,
            "sides": f"{N.sides[0]}+{N.sides[1]}",
            "pairing": " ".join(str(h) for h in N.pairing),
            "offsets": " ".join(str(o) for o in N.offsets),
        }
        if census == "triple":
            edges = permutahedron_edge_types(TripleSwitch(N))
            row["type1_switches"] = sum(1 for e in edges if e.interval_type is IntervalType.TYPE1)
        rows.append(row)
    columns = CENSUS_COLUMNS + (["type1_switches"] if census == "triple" else [])
    return pd.DataFrame(rows, columns=columns)


def profile_counts(table: pd.DataFrame) -> pd.DataFrame:
    """Entries per (genus, boundary) profile, labelled for a bar chart."""
    if table.empty:
        return pd.DataFrame(columns=["genus", "boundary_circles", "entries", "profile"])
    counts = (
        table.groupby(["genus", "boundary_circles"], as_index=False)
        .size()
        .rename(columns={"size": "entries"})
        .sort_values(["genus", "boundary_circles"])
        .reset_index(drop=True)
    )
    counts["profile"] = [f"g={g}, b={b}" for g, b in zip(counts["genus"], counts["boundary_circles"])]
    return counts


# ---------------------------------------------------------------------------
# Morse slices
# ---------------------------------------------------------------------------


def check_table(report: CheckReport) -> pd.DataFrame:
    return pd.DataFrame(
        [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
        columns=CHECK_COLUMNS,
    )


def reeb_edge_table(f: SlicedMorseFunction) -> pd.DataFrame:
    graph = reeb_graph(f)
    return pd.DataFrame(
        [
            {
                "circle": e.circle,
                "lower": e.lower,
                "upper": e.upper,
                "created_at": str(e.created_at),
                "destroyed_at": str(e.destroyed_at),
            }
            for e in graph.edges
        ],
        columns=REEB_COLUMNS,
    )


def neighborhood_table(f: SlicedMorseFunction) -> pd.DataFrame:
    rows = []
    for n in range(len(f.events)):
        cn = critical_neighborhood(f, n)
        rows.append(
            {
                "event": cn.event,
                "kind": cn.kind,
                "genus": cn.genus,
                "boundary_circles": cn.boundary_circles,
                "euler_characteristic": cn.euler_characteristic,
            }
        )
    return pd.DataFrame(rows, columns=NEIGHBORHOOD_COLUMNS)


def cut_system_table(cs: CutSystem) -> pd.DataFrame:
    circles = [c or "" for c in cs.provenance] if cs.provenance else [""] * len(cs.curves)
    return pd.DataFrame(
        [
            {"curve": i, "circle": circle, "class": cls.label()}
            for i, (circle, cls) in enumerate(zip(circles, cs.curves))
        ],
        columns=CUT_SYSTEM_COLUMNS,
    )


# ---------------------------------------------------------------------------
# Trisections
# ---------------------------------------------------------------------------


def trisection_catalog_table(catalog: dict[str, TrisectionDiagram] | None = None) -> pd.DataFrame:
    if catalog is None:
        catalog = standard_trisections()
    rows = []
    for name, T in catalog.items():
        values = trisection_invariants(T)
        rows.append(
            {
                "manifold": name,
                "g": T.g,
                "k": T.k,
                "chi": values["chi"],
                "sigma": values["sigma"],
                "h1": trisection_h1(T).label(),
            }
        )
    return pd.DataFrame(rows, columns=CATALOG_COLUMNS)


def _event_label(seg) -> str:
    event = seg.event
    if event is None:
        return "collar"
    if isinstance(event, BirthDeath):
        return event.direction
    if isinstance(event, HeightSwitch):
        return f"switch ({event.locale})"
    return type(event).__name__


def segment_table(gr: CerfGraphic1) -> pd.DataFrame:
    """Per segment: event, interval type and the cut systems on either side."""
    states = handlebody_sequence(gr)
    rows = [
        {
            "segment": i,
            "event": _event_label(seg),
            "type": classify_interval(seg).value,
            "before": ", ".join(states[i].labels()),
            "after": ", ".join(states[i + 1].labels()),
        }
        for i, seg in enumerate(gr.segments)
    ]
    return pd.DataFrame(rows, columns=SEGMENT_COLUMNS)


# ---------------------------------------------------------------------------
# Capping
# ---------------------------------------------------------------------------


def polygon_log_table(report: CappingReport) -> pd.DataFrame:
    rows = [
        {**entry, "center": entry["center"] or "none"}
        for entry in report.polygon_log
    ]
    return pd.DataFrame(rows, columns=POLYGON_COLUMNS)


def capping_summary(report: CappingReport) -> dict:
    """Headline numbers for the capping page; missing values become "n/a"."""
    def shown(value):
        return "n/a" if value is None else value

    return {
        "p": report.p,
        "q": report.q,
        "sigma": report.sigma,
        "genus": report.boundary_genus,
        "k": shown(report.boundary_k),
        "chi": shown(report.chi),
        "identity": "holds" if report.sigma_identity_holds else "fails",
    }
