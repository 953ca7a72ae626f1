"""
Two-parameter families: elementary polygons and the disk capping report.

A disk of functions is cut into elementary polygons, each with at most one
central event: a swallowtail, a birth crossing a Morse point, or three
saddles sharing a critical value (a triple switch, surrounded by the six
orderings of the permutahedron). Filling a polygon either changes nothing
(Type0), doubles a one-parameter family (Type1) or caps off a ±ℂP²
(Type2). Counting the caps gives (p, q) with

    σ(boundary 4-manifold) + p − q = 0
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Sequence, Union

from checks import CerfError, Check, CheckReport
from family_one import (
    CerfGraphic1,
    ElementaryInterval,
    FourManifoldRecord,
    IntervalType,
    assemble_circle_family,
    classify_interval,
    handlebody_sequence,
    reverse_interval,
)
from invariants import cyclic_signature, wall_signature
from ribbon_graphs import (
    RibbonNeighborhood,
    component_profile,
    enumerate_ribbon_neighborhoods,
    resolve_vertex,
    same_component,
    validate_neighborhood,
)
from settings import get_logger
from surface_core import CutSystem, HomologyClass, SymplecticLattice, lagrangian_span

logger = get_logger("family_two")


class PolygonError(CerfError):
    code = "INVALID_POLYGON"


# ---------------------------------------------------------------------------
# Central events
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Swallowtail:
    kind = "swallowtail"


@dataclass(frozen=True)
class BirthMorseCross:
    kind = "birth_morse_cross"


@dataclass(frozen=True)
class TripleSwitch:
    neighborhood: RibbonNeighborhood
    points: tuple[str, str, str] = ("p", "q", "r")
    # genus-1 case: one class per critical point, in a genus-1 summand
    local_classes: tuple[HomologyClass, HomologyClass, HomologyClass] | None = None
    kind = "triple_switch"


Event2 = Union[Swallowtail, BirthMorseCross, TripleSwitch]


@dataclass(frozen=True)
class PolygonType:
    kind: str
    sign: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("type0", "type1", "type2"):
            raise PolygonError(f"unknown polygon type {self.kind!r}")
        if (self.kind == "type2") != (self.sign is not None):
            raise PolygonError("a sign is carried exactly by Type2 polygons")
        if self.sign is not None and self.sign not in (1, -1):
            raise PolygonError(f"Type2 sign must be ±1, got {self.sign}")

    def label(self) -> str:
        if self.sign is None:
            return self.kind
        return f"{self.kind}{'+' if self.sign > 0 else '-'}"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "sign": self.sign}


TYPE0 = PolygonType("type0")
TYPE1 = PolygonType("type1")


@dataclass(frozen=True)
class ElementaryPolygon:
    boundary: tuple[ElementaryInterval, ...]
    center: Event2 | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(self.boundary))


EdgeRef = tuple[int, int]


@dataclass(frozen=True)
class PolygonDecomposition:
    genus: int
    polygons: tuple[ElementaryPolygon, ...]
    gluings: tuple[tuple[EdgeRef, EdgeRef], ...]
    boundary: tuple[EdgeRef, ...]
    start_cut_system: CutSystem | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "polygons", tuple(self.polygons))
        object.__setattr__(
            self, "gluings", tuple((tuple(a), tuple(b)) for a, b in self.gluings)
        )
        object.__setattr__(self, "boundary", tuple(tuple(e) for e in self.boundary))

    def edge(self, ref: EdgeRef) -> ElementaryInterval:
        p, e = ref
        return self.polygons[p].boundary[e]

    def boundary_graphic(self) -> CerfGraphic1:
        return CerfGraphic1(
            self.genus,
            tuple(self.edge(ref) for ref in self.boundary),
            True,
            self.start_cut_system,
        )


@dataclass(frozen=True)
class HexagonEdge:
    pair: tuple[str, str]
    third: str
    # +1: the third point sits above the switching pair, −1 below
    direction: int
    interval_type: IntervalType
    genus: int | None

    def as_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "third": self.third,
            "direction": self.direction,
            "type": self.interval_type.value,
            "genus": self.genus,
        }


@dataclass(frozen=True)
class CappingReport:
    p: int
    q: int
    polygon_log: tuple[dict, ...]
    boundary_genus: int
    boundary_k: int | None
    chi: int | None
    sigma: int
    sigma_identity_holds: bool

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "polygons": list(self.polygon_log),
            "boundary": {
                "genus": self.boundary_genus,
                "k": self.boundary_k,
                "chi": self.chi,
                "sigma": self.sigma,
            },
            "sigma_identity_holds": self.sigma_identity_holds,
        }


# ---------------------------------------------------------------------------
# Triple switches
# ---------------------------------------------------------------------------


def enumerate_triple_graphs(threads: int | None = None) -> list[RibbonNeighborhood]:
    return enumerate_ribbon_neighborhoods(3, threads=threads)


# Around the permutahedron: (pair, third, direction) for the six switches,
# starting from the ordering p < q < r.
HEXAGON = (
    ((0, 1), 2, 1),
    ((0, 2), 1, -1),
    ((1, 2), 0, 1),
    ((0, 1), 2, -1),
    ((0, 2), 1, 1),
    ((1, 2), 0, -1),
)


def _check_triple(event: TripleSwitch) -> None:
    N = event.neighborhood
    if N.n_vertices != 3:
        raise PolygonError(f"triple switch neighborhood must have 3 vertices, got {N.n_vertices}")
    report = validate_neighborhood(N)
    if not report.ok:
        raise PolygonError(
            "triple switch neighborhood is not separating: "
            + ", ".join(c.name for c in report.failures)
        )
    if N.profile not in ((0, 5), (1, 3)):
        raise PolygonError(f"triple switch neighborhood has profile {N.profile}")
    if len(event.points) != 3 or len(set(event.points)) != 3:
        raise PolygonError(f"triple switch needs three distinct points, got {event.points}")


def permutahedron_edge_types(event: TripleSwitch) -> list[HexagonEdge]:
    """Type of each of the six switches around a triple critical value.

    The switch of (x, y) with z off the level is Type1 when x and y stay on
    one component of the resolved level graph and that component's
    neighborhood has genus 1. At most three can be.
    """
    _check_triple(event)
    N = event.neighborhood
    edges = []
    for (x, y), z, direction in HEXAGON:
        resolved = resolve_vertex(N, z, direction)
        position = {old: new for new, old in enumerate(resolved.kept)}
        genus = None
        kind = IntervalType.TYPE0
        if same_component(resolved.graph, position[x], position[y]):
            genus, _ = component_profile(resolved.graph, position[x])
            if genus == 1:
                kind = IntervalType.TYPE1
        edges.append(
            HexagonEdge(
                (event.points[x], event.points[y]), event.points[z], direction, kind, genus
            )
        )
    count = sum(1 for e in edges if e.interval_type is IntervalType.TYPE1)
    if count > 3:
        raise PolygonError(f"{count} Type1 switches around one triple point")
    return edges


def _local_spans(classes: Sequence[HomologyClass]):
    lattice = SymplecticLattice(1)
    if any(len(c.coeffs) != 2 for c in classes):
        raise PolygonError("local classes of a triple switch live in a genus-1 summand")
    return [lagrangian_span(CutSystem((c,)), lattice) for c in classes]


def triple_sign(classes: Sequence[HomologyClass]) -> int:
    """Sign of a Type2 cap: the Wall signature of the local triple."""
    sign = wall_signature(*_local_spans(classes))
    if sign not in (1, -1):
        raise PolygonError(f"local classes give Wall signature {sign}; a cap needs ±1")
    return sign


# ---------------------------------------------------------------------------
# Polygons
# ---------------------------------------------------------------------------


def validate_polygon(P: ElementaryPolygon) -> CheckReport:
    checks = [Check("has_boundary", bool(P.boundary))]
    n = len(P.boundary)
    breaks = [i for i in range(n) if P.boundary[i].end != P.boundary[(i + 1) % n].start]
    checks.append(Check("boundary_closes", not breaks, f"edges {breaks} do not meet the next" if breaks else ""))
    if isinstance(P.center, TripleSwitch):
        checks.append(Check("hexagon", n == 6, f"{n} edges"))
    return CheckReport.from_checks(checks)


def classify_polygon(P: ElementaryPolygon) -> PolygonType:
    report = validate_polygon(P)
    if not report.ok:
        raise PolygonError(
            "invalid polygon: "
            + ", ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in report.failures)
        )
    count = sum(1 for seg in P.boundary if classify_interval(seg) is IntervalType.TYPE1)
    center = P.center

    if isinstance(center, (Swallowtail, BirthMorseCross)):
        if count:
            raise PolygonError(f"{center.kind} polygon with {count} Type1 edges")
        return TYPE0
    if center is None:
        if count == 0:
            return TYPE0
        if count == 2:
            return TYPE1
        raise PolygonError(f"polygon without a center has {count} Type1 edges; need 0 or 2")
    if not isinstance(center, TripleSwitch):
        raise PolygonError(f"unknown polygon center {center!r}")

    _check_triple(center)
    if center.neighborhood.genus == 0:
        if count:
            raise PolygonError(f"genus-0 triple switch with {count} Type1 edges")
        return TYPE0
    if count == 0:
        return TYPE0
    if count == 2:
        return TYPE1
    if count == 3:
        if center.local_classes is None:
            raise PolygonError("a genus-1 triple switch with three Type1 edges needs its local classes")
        return PolygonType("type2", triple_sign(center.local_classes))
    raise PolygonError(f"genus-1 triple switch with {count} Type1 edges")


# ---------------------------------------------------------------------------
# Decompositions
# ---------------------------------------------------------------------------


def validate_decomposition(D: PolygonDecomposition) -> CheckReport:
    checks = [Check("has_polygons", bool(D.polygons))]
    refs = [(p, e) for p, P in enumerate(D.polygons) for e in range(len(P.boundary))]
    known = set(refs)
    used = [ref for pair in D.gluings for ref in pair] + list(D.boundary)
    dangling = sorted({ref for ref in used if ref not in known})
    checks.append(Check("edge_refs", not dangling, f"unknown edges {dangling}" if dangling else ""))
    if dangling:
        return CheckReport.from_checks(checks)

    twice = sorted({ref for ref in used if used.count(ref) > 1})
    missing = sorted(known - set(used))
    checks.append(
        Check(
            "edges_used_once",
            not twice and not missing,
            f"repeated {twice}, unused {missing}" if twice or missing else "",
        )
    )
    mismatched = [
        (a, b) for a, b in D.gluings if D.edge(a) != reverse_interval(D.edge(b))
    ]
    checks.append(
        Check("gluings_reverse", not mismatched, f"gluings {mismatched} disagree" if mismatched else "")
    )
    bad_polygons = [i for i, P in enumerate(D.polygons) if not validate_polygon(P).ok]
    checks.append(Check("polygons_close", not bad_polygons, f"polygons {bad_polygons}" if bad_polygons else ""))
    n = len(D.boundary)
    breaks = [
        i for i in range(n)
        if D.edge(D.boundary[i]).end != D.edge(D.boundary[(i + 1) % n]).start
    ]
    checks.append(Check("boundary_cycle", not breaks, f"boundary breaks after {breaks}" if breaks else ""))
    return CheckReport.from_checks(checks)


def _require_decomposition(D: PolygonDecomposition) -> None:
    report = validate_decomposition(D)
    if not report.ok:
        raise PolygonError(
            "invalid decomposition: "
            + ", ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in report.failures)
        )


def boundary_signature(gr: CerfGraphic1, start_cs: CutSystem | None = None) -> int:
    """σ of a closed family: fan sum over the handlebodies met around the circle."""
    lattice = gr.lattice
    spans = []
    for cs in handlebody_sequence(gr, start_cs)[:-1]:
        span = lagrangian_span(cs, lattice)
        if not spans or spans[-1] != span:
            spans.append(span)
    while len(spans) > 1 and spans[0] == spans[-1]:
        spans.pop()
    return cyclic_signature(spans)


def assemble_disk_family(D: PolygonDecomposition) -> CappingReport:
    """Fill every polygon and count the ±ℂP² caps."""
    _require_decomposition(D)
    log = []
    p = q = 0
    for i, P in enumerate(D.polygons):
        try:
            kind = classify_polygon(P)
        except CerfError as exc:
            raise PolygonError(f"polygon {i}: {exc}", code=exc.code) from exc
        if kind.sign == 1:
            p += 1
        elif kind.sign == -1:
            q += 1
        log.append(
            {
                "polygon": i,
                "center": None if P.center is None else P.center.kind,
                "edges": len(P.boundary),
                "type": kind.kind,
                "sign": kind.sign,
            }
        )

    gr = D.boundary_graphic()
    record: FourManifoldRecord = assemble_circle_family(gr)
    sigma = boundary_signature(gr)
    holds = sigma + p - q == 0
    if not holds:
        logger.warning("signature identity fails: sigma=%d p=%d q=%d", sigma, p, q)
    return CappingReport(
        p=p,
        q=q,
        polygon_log=tuple(log),
        boundary_genus=D.genus,
        boundary_k=record.k if record.trisection is not None else None,
        chi=record.chi,
        sigma=sigma,
        sigma_identity_holds=holds,
    )


@lru_cache(maxsize=None)
def _cap_neighborhood() -> RibbonNeighborhood:
    """Genus-1 triple graph with the most Type1 switches around it."""
    best = None
    best_count = -1
    for N in enumerate_triple_graphs(threads=1):
        if N.genus != 1:
            continue
        count = sum(
            1 for e in permutahedron_edge_types(TripleSwitch(N))
            if e.interval_type is IntervalType.TYPE1
        )
        if count > best_count:
            best, best_count = N, count
    if best is None:
        raise PolygonError("no genus-1 triple graph in the census")
    return best


def cap_trisection_family(gr: CerfGraphic1, start_cs: CutSystem | None = None) -> PolygonDecomposition:
    """One hexagon filling a compiled genus-1 trisection family."""
    if not gr.cyclic or len(gr.segments) != 6 or gr.genus != 1:
        raise PolygonError("only a six-segment genus-1 cyclic family bounds a single hexagon")
    record = assemble_circle_family(gr, start_cs)
    if record.trisection is None or record.trisection.k != 0:
        raise PolygonError("boundary family is not a genus-1 trisection with k = 0")
    T = record.trisection
    # inner boundary orientation: the triple is read backwards
    local = (T.gamma.curves[0], T.beta.curves[0], T.alpha.curves[0])
    center = TripleSwitch(_cap_neighborhood(), ("p", "q", "r"), local)
    hexagon = ElementaryPolygon(gr.segments, center)
    start = start_cs if start_cs is not None else gr.start_cut_system
    return PolygonDecomposition(1, (hexagon,), (), tuple((0, e) for e in range(6)), start)


def glue_decompositions(
    first: PolygonDecomposition,
    second: PolygonDecomposition,
    first_edge: int,
    second_edge: int,
) -> PolygonDecomposition:
    """Glue two disks along one boundary edge each; edges are positions in the boundary cycles."""
    if first.genus != second.genus:
        raise PolygonError(f"cannot glue genus {first.genus} to genus {second.genus}")
    _require_decomposition(first)
    _require_decomposition(second)
    n1, n2 = len(first.boundary), len(second.boundary)
    if not (0 <= first_edge < n1 and 0 <= second_edge < n2):
        raise PolygonError("gluing edge outside the boundary cycle")
    ref1 = first.boundary[first_edge]
    ref2 = second.boundary[second_edge]
    if first.edge(ref1) != reverse_interval(second.edge(ref2)):
        raise PolygonError("glued edges must carry mutually reverse intervals")

    offset = len(first.polygons)

    def shift(ref: EdgeRef) -> EdgeRef:
        return (ref[0] + offset, ref[1])

    boundary = [first.boundary[(first_edge + 1 + t) % n1] for t in range(n1 - 1)]
    boundary += [shift(second.boundary[(second_edge + 1 + t) % n2]) for t in range(n2 - 1)]
    gluings = list(first.gluings)
    gluings += [(shift(a), shift(b)) for a, b in second.gluings]
    gluings.append((ref1, shift(ref2)))

    start = None
    if first.start_cut_system is not None:
        states = handlebody_sequence(first.boundary_graphic())
        start = states[(first_edge + 1) % n1]
    return replace(
        first,
        polygons=first.polygons + second.polygons,
        gluings=tuple(gluings),
        boundary=tuple(boundary),
        start_cut_system=start,
    )
