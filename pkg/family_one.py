"""
One-parameter families of functions on a surface.

A family over an interval (or a circle) is cut into elementary intervals,
each crossing at most one event: a birth/death or a height switch of two
critical points. An interval is Type1 exactly when it switches two saddles
on one critical level component whose neighborhood has genus 1. Folding a
family over a handlebody cut system replaces one curve per Type1 interval
and leaves the handlebody alone otherwise; the list of replacements is the
4-manifold record of the family.

Slide indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from checks import CerfError, Check, CheckReport
from integer_matrix import as_integer_matrix, smith_normal_form, to_lists
from invariants import (
    AbelianGroupDescriptor,
    TrisectionDiagram,
    heegaard_h1,
    trisection_euler_characteristic,
    trisection_signature,
    validate_trisection,
)
from morse_slice import SlicedMorseFunction, stacked_torus_function, validate_sliced
from ribbon_graphs import (
    RibbonNeighborhood,
    enumerate_ribbon_neighborhoods,
    validate_neighborhood,
)
from settings import get_logger
from surface_core import (
    CutSystem,
    HomologyClass,
    SymplecticLattice,
    coordinates_in,
    intersection_pairing,
    lagrangian_span,
    require_valid,
    same_up_to_sign,
    slide,
    validate_cut_system,
)

logger = get_logger("family_one")


class FamilyError(CerfError):
    code = "INVALID_FAMILY"


class IntervalType(str, Enum):
    TYPE0 = "type0"
    TYPE1 = "type1"


# ---------------------------------------------------------------------------
# Events and intervals
# ---------------------------------------------------------------------------


DIFFERENT_COMPONENTS = "different_components"
SAME_COMPONENT = "same_component"


@dataclass(frozen=True)
class BirthDeath:
    direction: str  # "birth" or "death", read in the increasing parameter direction
    kind = "birth_death"

    def __post_init__(self) -> None:
        if self.direction not in ("birth", "death"):
            raise FamilyError(f"birth/death direction must be 'birth' or 'death', got {self.direction!r}")


@dataclass(frozen=True)
class HeightSwitch:
    points: tuple[str, str]
    indices: tuple[int, int]
    locale: str
    neighborhood: RibbonNeighborhood | None = None
    # (i, j, sign): the handlebody curve i slides over curve j
    slide: tuple[int, int, int] | None = None
    # genus-1 switches: the curve that stops bounding (C₋₁) and the one that starts (C₁)
    before: HomologyClass | None = None
    after: HomologyClass | None = None
    kind = "height_switch"


Event1 = Union[BirthDeath, HeightSwitch]


@dataclass(frozen=True)
class ElementaryInterval:
    start: SlicedMorseFunction
    event: Event1 | None
    end: SlicedMorseFunction


@dataclass(frozen=True)
class CerfGraphic1:
    genus: int
    segments: tuple[ElementaryInterval, ...]
    cyclic: bool = False
    start_cut_system: CutSystem | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def lattice(self) -> SymplecticLattice:
        return SymplecticLattice(self.genus)

    def types(self) -> list[IntervalType]:
        return [classify_interval(s) for s in self.segments]


@dataclass(frozen=True)
class Surgery:
    replaced: HomologyClass
    new: HomologyClass

    def as_dict(self) -> dict:
        return {"replaced": list(self.replaced.coeffs), "new": list(self.new.coeffs)}


@dataclass(frozen=True)
class FourManifoldRecord:
    genus: int
    initial: CutSystem
    surgeries: tuple[Surgery, ...]
    final: CutSystem
    k: int | None
    boundary_h1: AbelianGroupDescriptor
    trisection: TrisectionDiagram | None = None
    chi: int | None = None
    sigma: int | None = None

    def as_dict(self) -> dict:
        out = {
            "genus": self.genus,
            "initial_cut_system": self.initial.rows(),
            "surgeries": [s.as_dict() for s in self.surgeries],
            "final_cut_system": self.final.rows(),
            "k": self.k,
            "boundary_h1": self.boundary_h1.as_dict(),
        }
        if self.trisection is not None:
            T = self.trisection
            out["trisection"] = {
                "g": T.g,
                "k": T.k,
                "alpha": T.alpha.rows(),
                "beta": T.beta.rows(),
                "gamma": T.gamma.rows(),
            }
            out["chi"] = self.chi
            out["sigma"] = self.sigma
        return out


# ---------------------------------------------------------------------------
# Switch neighborhoods
# ---------------------------------------------------------------------------


def enumerate_switch_neighborhoods(threads: int | None = None) -> list[RibbonNeighborhood]:
    """The two-saddle census: every way a height switch can sit on one level component."""
    return enumerate_ribbon_neighborhoods(2, threads=threads)


def classify_neighborhood(N: RibbonNeighborhood) -> tuple[int, int]:
    return N.profile


@lru_cache(maxsize=None)
def switch_neighborhood(genus: int) -> RibbonNeighborhood:
    """First census entry of the given genus; used for compiled events."""
    for N in enumerate_switch_neighborhoods(threads=1):
        if N.genus == genus:
            return N
    raise FamilyError(f"no two-saddle neighborhood of genus {genus}")


# ---------------------------------------------------------------------------
# Classification and application
# ---------------------------------------------------------------------------


def _check_switch(event: HeightSwitch) -> None:
    if len(event.indices) != 2 or any(i not in (0, 1, 2) for i in event.indices):
        raise FamilyError(f"critical point indices must be 0, 1 or 2, got {event.indices}")
    if event.locale not in (DIFFERENT_COMPONENTS, SAME_COMPONENT):
        raise FamilyError(f"unknown switch locale {event.locale!r}")
    if event.locale == DIFFERENT_COMPONENTS:
        if event.neighborhood is not None or event.slide is not None or event.before is not None:
            raise FamilyError("a switch on different components carries no local data")
        return
    if tuple(event.indices) != (1, 1):
        raise FamilyError("a same-component switch needs two index-1 points")
    N = event.neighborhood
    if N is None:
        raise FamilyError("a same-component switch needs its ribbon neighborhood")
    if N.n_vertices != 2:
        raise FamilyError(f"switch neighborhood must have 2 vertices, got {N.n_vertices}")
    report = validate_neighborhood(N)
    if not report.ok:
        raise FamilyError(
            "switch neighborhood is not separating: " + ", ".join(c.name for c in report.failures)
        )
    if N.genus == 1:
        if event.before is None or event.after is None:
            raise FamilyError("a genus-1 switch needs the classes it exchanges")
        if event.slide is not None:
            raise FamilyError("a genus-1 switch cannot carry a slide")
    elif event.before is not None or event.after is not None:
        raise FamilyError("only genus-1 switches exchange classes")


def classify_interval(ei: ElementaryInterval) -> IntervalType:
    event = ei.event
    if event is None or isinstance(event, BirthDeath):
        return IntervalType.TYPE0
    if not isinstance(event, HeightSwitch):
        raise FamilyError(f"unknown interval event {event!r}")
    _check_switch(event)
    if event.locale == SAME_COMPONENT and event.neighborhood.genus == 1:  # type: ignore[union-attr]
        return IntervalType.TYPE1
    return IntervalType.TYPE0


def _reduce_to_unit(
    cs: CutSystem, x: list[int], lattice: SymplecticLattice
) -> tuple[CutSystem, list[int]]:
    """Slide curves until some coordinate of x in cs is ±1."""
    x = list(x)
    while not any(abs(v) == 1 for v in x):
        live = [i for i, v in enumerate(x) if v]
        if len(live) < 2:
            raise FamilyError(f"class with coordinates {x} is not primitive in the cut system")
        i = min(live, key=lambda t: (abs(x[t]), t))
        for j in live:
            if j == i:
                continue
            q = x[j] // x[i]
            step = 1 if q > 0 else -1
            for _ in range(abs(q)):
                # c_i ← c_i + step·c_j changes x_j by −step·x_i
                cs = slide(cs, i, j, step, lattice)
                x[j] -= step * x[i]
    return cs, x


def apply_interval(cs: CutSystem, ei: ElementaryInterval, lattice: SymplecticLattice) -> CutSystem:
    """Carry a handlebody cut system across one elementary interval."""
    require_valid(cs, lattice)
    kind = classify_interval(ei)
    event = ei.event
    if kind is IntervalType.TYPE0:
        if isinstance(event, HeightSwitch) and event.slide is not None:
            i, j, s = event.slide
            return slide(cs, i, j, s, lattice)
        return cs

    assert isinstance(event, HeightSwitch)
    lower, upper = event.before, event.after
    assert lower is not None and upper is not None
    eps = intersection_pairing(lower, upper, lattice)
    if abs(eps) != 1:
        raise FamilyError(
            f"switched classes {lower.label()} and {upper.label()} pair to {eps}, need ±1"
        )
    x = coordinates_in(cs, lower, lattice)
    if x is None:
        raise FamilyError(f"class {lower.label()} does not bound in the current handlebody")
    cs, x = _reduce_to_unit(cs, x, lattice)
    i = next(t for t, v in enumerate(x) if abs(v) == 1)

    curves = []
    for t, c in enumerate(cs.curves):
        if t == i:
            curves.append(upper)
            continue
        # project off C₋₁ so the curve misses C₁
        curves.append(c - (eps * intersection_pairing(c, upper, lattice)) * lower)
    out = CutSystem(tuple(curves))
    require_valid(out, lattice)
    return out


def reverse_interval(ei: ElementaryInterval) -> ElementaryInterval:
    event = ei.event
    if isinstance(event, BirthDeath):
        event = BirthDeath("death" if event.direction == "birth" else "birth")
    elif isinstance(event, HeightSwitch):
        slide_move = None
        if event.slide is not None:
            i, j, s = event.slide
            slide_move = (i, j, -s)
        event = replace(
            event,
            points=(event.points[1], event.points[0]),
            indices=(event.indices[1], event.indices[0]),
            slide=slide_move,
            before=event.after,
            after=event.before,
        )
    return ElementaryInterval(ei.end, event, ei.start)


# ---------------------------------------------------------------------------
# Graphic validation and assembly
# ---------------------------------------------------------------------------


def validate_graphic(gr: CerfGraphic1) -> CheckReport:
    checks = []
    bad_ends = []
    for n, seg in enumerate(gr.segments):
        for label, f in (("start", seg.start), ("end", seg.end)):
            result = validate_sliced(f)
            if not result.ok or result.genus != gr.genus:
                bad_ends.append(f"{n}.{label}")
    checks.append(
        Check("endpoint_functions", not bad_ends, f"invalid or wrong genus: {bad_ends}" if bad_ends else "")
    )
    breaks = [
        n for n in range(len(gr.segments) - 1)
        if gr.segments[n].end != gr.segments[n + 1].start
    ]
    checks.append(Check("chained", not breaks, f"segments {breaks} do not meet the next" if breaks else ""))
    if gr.cyclic and gr.segments:
        closes = gr.segments[-1].end == gr.segments[0].start
        checks.append(Check("closed", closes))
    malformed = []
    for n, seg in enumerate(gr.segments):
        try:
            classify_interval(seg)
        except CerfError as exc:
            malformed.append(f"{n}: {exc}")
    checks.append(Check("events", not malformed, "; ".join(malformed)))
    if gr.start_cut_system is not None:
        start = validate_cut_system(gr.start_cut_system, gr.lattice)
        checks.append(Check("start_cut_system", start.ok))
    return CheckReport.from_checks(checks)


def _require_graphic(gr: CerfGraphic1) -> None:
    report = validate_graphic(gr)
    if not report.ok:
        raise FamilyError(
            "invalid Cerf graphic: "
            + ", ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in report.failures)
        )


def _fold(gr: CerfGraphic1, start_cs: CutSystem) -> tuple[list[CutSystem], list[Surgery], list[IntervalType]]:
    lattice = gr.lattice
    require_valid(start_cs, lattice)
    states = [start_cs]
    surgeries = []
    kinds = []
    cs = start_cs
    for n, seg in enumerate(gr.segments):
        kind = classify_interval(seg)
        try:
            cs = apply_interval(cs, seg, lattice)
        except CerfError as exc:
            raise FamilyError(f"segment {n}: {exc}", code=exc.code) from exc
        if kind is IntervalType.TYPE1:
            surgeries.append(Surgery(seg.event.before, seg.event.after))  # type: ignore[union-attr,arg-type]
        states.append(cs)
        kinds.append(kind)
    return states, surgeries, kinds


def _independent(surgeries: Sequence[Surgery], lattice: SymplecticLattice) -> bool:
    """Every surgery on its own handle summand."""
    for i, s in enumerate(surgeries):
        if abs(intersection_pairing(s.replaced, s.new, lattice)) != 1:
            return False
        for t in surgeries[i + 1 :]:
            pairs = (
                (s.replaced, t.replaced),
                (s.new, t.new),
                (s.replaced, t.new),
                (s.new, t.replaced),
            )
            if any(intersection_pairing(x, y, lattice) for x, y in pairs):
                return False
    return True


def _start_of(gr: CerfGraphic1, start_cs: CutSystem | None) -> CutSystem:
    cs = start_cs if start_cs is not None else gr.start_cut_system
    if cs is None:
        cs = gr.lattice.standard_cut_system()
    return cs.without_provenance()


def handlebody_sequence(gr: CerfGraphic1, start_cs: CutSystem | None = None) -> list[CutSystem]:
    """Cut systems before and after each segment: len(segments) + 1 entries."""
    _require_graphic(gr)
    states, _, _ = _fold(gr, _start_of(gr, start_cs))
    return states


def assemble_interval_family(gr: CerfGraphic1, start_cs: CutSystem | None = None) -> FourManifoldRecord:
    """The 4-manifold a family over an interval builds on top of a handlebody."""
    if gr.cyclic:
        raise FamilyError("assemble_interval_family needs an interval family, got a cyclic one")
    _require_graphic(gr)
    lattice = gr.lattice
    start = _start_of(gr, start_cs)
    states, surgeries, _ = _fold(gr, start)
    k = gr.genus - len(surgeries) if _independent(surgeries, lattice) else None
    record = FourManifoldRecord(
        genus=gr.genus,
        initial=start,
        surgeries=tuple(surgeries),
        final=states[-1],
        k=k,
        boundary_h1=heegaard_h1(start, states[-1], lattice),
    )
    logger.info("interval family: %d segments, %d surgeries, k=%s", len(gr.segments), len(surgeries), k)
    return record


def _type1_runs(kinds: Sequence[IntervalType]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive Type1 segments as (first, length), wrapping cyclically."""
    n = len(kinds)
    if not n or all(k is IntervalType.TYPE1 for k in kinds):
        return [(0, n)] if n else []
    # start scanning right after a Type0 segment so no run wraps
    origin = next(i for i in range(n) if kinds[i] is IntervalType.TYPE0) + 1
    runs = []
    length = 0
    first = None
    for step in range(n):
        i = (origin + step) % n
        if kinds[i] is IntervalType.TYPE1:
            if length == 0:
                first = i
            length += 1
        elif length:
            runs.append((first, length))
            length = 0
    if length:
        runs.append((first, length))
    return sorted(runs)


def assemble_circle_family(gr: CerfGraphic1, start_cs: CutSystem | None = None) -> FourManifoldRecord:
    """Closed family over S¹: the handlebody must come back; three equal runs give a trisection."""
    if not gr.cyclic:
        raise FamilyError("assemble_circle_family needs a cyclic family")
    _require_graphic(gr)
    lattice = gr.lattice
    start = _start_of(gr, start_cs)
    states, surgeries, kinds = _fold(gr, start)
    if lagrangian_span(states[-1], lattice) != lagrangian_span(start, lattice):
        raise FamilyError("the handlebody does not close up around the circle")

    candidate = None
    runs = _type1_runs(kinds)
    n = len(gr.segments)
    if len(runs) == 3 and len({length for _, length in runs}) == 1:
        run_length = runs[0][1]
        alpha = states[runs[0][0]]
        beta = states[(runs[0][0] + run_length) % n]
        gamma = states[(runs[1][0] + run_length) % n]
        candidate = TrisectionDiagram(gr.genus, gr.genus - run_length, alpha, beta, gamma)
    elif not runs:
        # no surgery at all: three copies of one handlebody, #^g S¹×S³
        candidate = TrisectionDiagram(gr.genus, gr.genus, start, start, start)

    trisection = k = chi = sigma = None
    if candidate is not None and validate_trisection(candidate).ok:
        trisection = candidate
        k = candidate.k
        chi = trisection_euler_characteristic(candidate.g, candidate.k)
        sigma = trisection_signature(candidate)
    record = FourManifoldRecord(
        genus=gr.genus,
        initial=start,
        surgeries=tuple(surgeries),
        final=states[-1],
        k=k,
        boundary_h1=heegaard_h1(start, states[-1], lattice),
        trisection=trisection,
        chi=chi,
        sigma=sigma,
    )
    logger.info("circle family: %d segments, runs %s", len(gr.segments), runs)
    return record


def subdivide_segment(gr: CerfGraphic1, index: int) -> CerfGraphic1:
    """Split a Type0 segment in two by inserting an event-free collar after it."""
    if not 0 <= index < len(gr.segments):
        raise FamilyError(f"segment {index} outside 0..{len(gr.segments) - 1}")
    seg = gr.segments[index]
    if classify_interval(seg) is not IntervalType.TYPE0:
        raise FamilyError(f"segment {index} is Type1 and cannot be split without changing the event")
    collar = ElementaryInterval(seg.end, None, seg.end)
    segments = gr.segments[: index + 1] + (collar,) + gr.segments[index + 1 :]
    return replace(gr, segments=segments)


# ---------------------------------------------------------------------------
# Slide interpolation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlideSequence:
    moves: tuple[tuple[int, int, int], ...]
    bound: int
    result: CutSystem

    @property
    def length(self) -> int:
        return len(self.moves)

    @property
    def within_bound(self) -> bool:
        return self.length <= self.bound

    def as_dict(self) -> dict:
        return {
            "moves": [list(m) for m in self.moves],
            "length": self.length,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "result": self.result.rows(),
        }


def _transvection_reduction(A: list[list[int]]) -> tuple[list[tuple[int, int, int]], list[int]]:
    """Row-reduce a unimodular A to diagonal ±1 with transvections only.

    Returns the row operations (target, source, q), each row_target += q·row_source,
    and the final diagonal.
    """
    g = len(A)
    M = [list(row) for row in A]
    ops: list[tuple[int, int, int]] = []

    def add_row(target: int, source: int, q: int) -> None:
        if q:
            M[target] = [a + q * b for a, b in zip(M[target], M[source])]
            ops.append((target, source, q))

    for c in range(g):
        while True:
            live = [r for r in range(c, g) if M[r][c] != 0]
            if not live:
                raise FamilyError("change of basis is singular")
            p = min(live, key=lambda r: (abs(M[r][c]), r))
            others = [r for r in live if r != p]
            if not others:
                break
            for r in others:
                add_row(r, p, -(M[r][c] // M[p][c]))
        if abs(M[p][c]) != 1:
            raise FamilyError("change of basis is not unimodular")
        if p != c:
            add_row(c, p, 1)
        d = M[c][c]
        for r in range(g):
            if r != c and M[r][c]:
                add_row(r, c, -M[r][c] * d)
    return ops, [M[i][i] for i in range(g)]


def interpolate_cut_systems(
    source: CutSystem, target: CutSystem, lattice: SymplecticLattice
) -> SlideSequence:
    """Unit slides taking `source` to `target` (up to the sign of each curve), verified by replay."""
    require_valid(source, lattice)
    require_valid(target, lattice)
    if lagrangian_span(source, lattice) != lagrangian_span(target, lattice):
        raise FamilyError("cut systems span different handlebodies; no slide sequence exists")
    g = lattice.genus
    A = []
    for c in target.curves:
        row = coordinates_in(source, c, lattice)
        if row is None:
            raise FamilyError(f"class {c.label()} is outside the source span")
        A.append(row)

    ops, diag = _transvection_reduction(A)
    # D·A = Π_t (I − q·d_i·d_j·e_ij); the first factor is applied last
    moves: list[tuple[int, int, int]] = []
    for target_row, source_row, q in reversed(ops):
        coeff = -q * diag[target_row] * diag[source_row]
        step = 1 if coeff > 0 else -1
        moves.extend([(target_row, source_row, step)] * abs(coeff))

    cs = source.without_provenance()
    for i, j, s in moves:
        cs = slide(cs, i, j, s, lattice)
    if not same_up_to_sign(cs, target.without_provenance()):
        raise FamilyError("slide replay did not reach the target cut system")

    height = max((abs(v) for row in A for v in row), default=0)
    bound = (g * g + 2 * g) * (1 + height) ** g
    return SlideSequence(tuple(moves), bound, cs)


# ---------------------------------------------------------------------------
# Standard families
# ---------------------------------------------------------------------------


def standard_heegaard_diagram(g: int, k: int) -> tuple[CutSystem, CutSystem]:
    """α = (a₁, …, a_g), β = (a₁, …, a_k, b_{k+1}, …, b_g): presents #^k S¹×S²."""
    if k < 0 or g < k:
        raise FamilyError(f"need g >= k >= 0, got g={g}, k={k}")
    lattice = SymplecticLattice(g)
    alpha = lattice.standard_cut_system()
    beta = CutSystem(
        tuple(lattice.a(i) for i in range(1, k + 1)) + tuple(lattice.b(i) for i in range(k + 1, g + 1))
    )
    return alpha, beta


@dataclass(frozen=True)
class _AdaptedPair:
    first: CutSystem  # X' = U·X
    dual: CutSystem  # Y' = Vᵀ·Y
    surgeries: int  # number of dual pairs


def _combine(matrix: np.ndarray, cs: CutSystem) -> CutSystem:
    rows = to_lists(matrix.dot(as_integer_matrix(cs.rows(), ncols=len(cs.curves[0]))))
    return CutSystem.from_rows(rows)


def _adapted_pair(X: CutSystem, Y: CutSystem, lattice: SymplecticLattice) -> _AdaptedPair:
    """Bases of X and Y whose pairing matrix is diag(1, …, 1, 0, …, 0)."""
    if lattice.genus == 0:
        return _AdaptedPair(X, Y, 0)
    Q = [[intersection_pairing(x, y, lattice) for y in Y.curves] for x in X.curves]
    D, U, V = smith_normal_form(Q)
    diagonal = [int(D[i, i]) for i in range(lattice.genus)]
    if any(d not in (0, 1) for d in diagonal):
        raise FamilyError(f"pair does not present a free group: invariant factors {diagonal}")
    return _AdaptedPair(_combine(U, X), _combine(V.T, Y), diagonal.count(1))


def _event_free(f: SlicedMorseFunction) -> ElementaryInterval:
    return ElementaryInterval(f, None, f)


def _slide_segments(moves: Sequence[tuple[int, int, int]], f: SlicedMorseFunction) -> list[ElementaryInterval]:
    N = switch_neighborhood(0)
    return [
        ElementaryInterval(f, HeightSwitch(("p", "q"), (1, 1), SAME_COMPONENT, N, slide=m), f)
        for m in moves
    ]


def _compile_block(
    current: CutSystem,
    X: CutSystem,
    Y: CutSystem,
    lattice: SymplecticLattice,
    f: SlicedMorseFunction,
) -> tuple[list[ElementaryInterval], list[ElementaryInterval], CutSystem]:
    """Junction slides from `current` to an adapted basis of X, then the dual-pair switches to Y."""
    adapted = _adapted_pair(X, Y, lattice)
    seq = interpolate_cut_systems(current, adapted.first, lattice)
    junction = _slide_segments(seq.moves, f) or [_event_free(f)]

    reached = list(seq.result.curves)
    duals = list(adapted.dual.curves)
    N1 = switch_neighborhood(1)
    block = []
    for i in range(adapted.surgeries):
        # the replay may have flipped curve i; keep ⟨C₋₁, C₁⟩ = +1
        if reached[i] != adapted.first.curves[i]:
            duals[i] = -duals[i]
        block.append(
            ElementaryInterval(
                f,
                HeightSwitch(
                    (f"x{i + 1}", f"y{i + 1}"), (1, 1), SAME_COMPONENT, N1,
                    before=reached[i], after=duals[i],
                ),
                f,
            )
        )
        reached[i] = duals[i]
    return junction, block, CutSystem(tuple(reached))


def standard_interval_family(alpha: CutSystem, beta: CutSystem, lattice: SymplecticLattice) -> CerfGraphic1:
    """Slides to the adapted basis of α, then one genus-1 switch per dual pair."""
    require_valid(alpha, lattice)
    require_valid(beta, lattice)
    f = stacked_torus_function(lattice.genus)
    if lattice.genus == 0:
        return CerfGraphic1(0, (), False, alpha)
    junction, block, _ = _compile_block(alpha, alpha, beta, lattice, f)
    segments = [s for s in junction if s.event is not None] + block
    return CerfGraphic1(lattice.genus, tuple(segments), False, alpha.without_provenance())


def standard_family_from_trisection(T: TrisectionDiagram) -> CerfGraphic1:
    """Closed family running α → β → γ → α with one junction before each block."""
    report = validate_trisection(T)
    if not report.ok:
        raise FamilyError(
            "not a trisection diagram: " + ", ".join(c.name for c in report.failures)
        )
    lattice = T.lattice
    if T.g == 0:
        return CerfGraphic1(0, (), True, CutSystem(()))
    f = stacked_torus_function(T.g)
    start = _adapted_pair(T.alpha, T.beta, lattice).first
    current = start
    segments: list[ElementaryInterval] = []
    for X, Y in ((T.alpha, T.beta), (T.beta, T.gamma), (T.gamma, T.alpha)):
        junction, block, current = _compile_block(current, X, Y, lattice, f)
        segments.extend(junction)
        segments.extend(block)
    gr = CerfGraphic1(T.g, tuple(segments), True, start)
    if lagrangian_span(current, lattice) != lagrangian_span(start, lattice):
        raise FamilyError("compiled family does not close up")
    return gr
