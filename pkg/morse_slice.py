"""
Sliced Morse functions on closed oriented surfaces.

A function is stored as its critical events in height order. Level circles
carry string ids: a birth creates one, a death consumes one, a merge turns
two into one and a split turns one into two. From that list we recover the
Reeb graph, the genus and the handlebody cut system whose curves are level
circles (every regular level circle of a function bounds a disk in the
handlebody the function extends to).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from checks import CerfError, Check, CheckReport
from invariants import HeegaardDiagram
from settings import get_logger
from surface_core import (
    CutSystem,
    HomologyClass,
    SymplecticLattice,
    validate_cut_system,
)

logger = get_logger("morse_slice")


class MorseError(CerfError):
    code = "INVALID_MORSE"


# ---------------------------------------------------------------------------
# Events
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Birth:
    circle: str
    height: Fraction
    kind = "birth"

    def consumed(self) -> tuple[str, ...]:
        return ()

    def created(self) -> tuple[str, ...]:
        return (self.circle,)


@dataclass(frozen=True)
class Death:
    circle: str
    height: Fraction
    kind = "death"

    def consumed(self) -> tuple[str, ...]:
        return (self.circle,)

    def created(self) -> tuple[str, ...]:
        return ()


@dataclass(frozen=True)
class Merge:
    inputs: tuple[str, str]
    output: str
    height: Fraction
    kind = "merge"

    def consumed(self) -> tuple[str, ...]:
        return tuple(self.inputs)

    def created(self) -> tuple[str, ...]:
        return (self.output,)


@dataclass(frozen=True)
class Split:
    input: str
    outputs: tuple[str, str]
    height: Fraction
    kind = "split"

    def consumed(self) -> tuple[str, ...]:
        return (self.input,)

    def created(self) -> tuple[str, ...]:
        return tuple(self.outputs)


MorseEvent = Union[Birth, Death, Merge, Split]

# Index of the critical point each event kind models.
EVENT_INDEX = {"birth": 0, "death": 2, "merge": 1, "split": 1}


@dataclass(frozen=True)
class SlicedMorseFunction:
    events: tuple[MorseEvent, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))

    def __len__(self) -> int:
        return len(self.events)

    @property
    def heights(self) -> list[Fraction]:
        return [e.height for e in self.events]

    def circles(self) -> list[str]:
        seen: list[str] = []
        for e in self.events:
            for c in e.created():
                if c not in seen:
                    seen.append(c)
        return seen

    def euler_characteristic(self) -> int:
        extrema = sum(1 for e in self.events if e.kind in ("birth", "death"))
        return extrema - (len(self.events) - extrema)

    def counts(self) -> dict[str, int]:
        out = {"birth": 0, "death": 0, "merge": 0, "split": 0}
        for e in self.events:
            out[e.kind] += 1
        return out


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SliceValidation:
    genus: int | None
    report: CheckReport

    @property
    def ok(self) -> bool:
        return self.report.ok


def _id_checks(f: SlicedMorseFunction) -> list[Check]:
    """Circle bookkeeping: created before use, consumed once, none left over."""
    live: set[str] = set()
    ever: set[str] = set()
    problems: list[str] = []
    for n, e in enumerate(f.events):
        consumed = e.consumed()
        if len(set(consumed)) != len(consumed):
            problems.append(f"event {n} consumes {consumed[0]} twice")
        for c in consumed:
            if c not in live:
                state = "already consumed" if c in ever else "never created"
                problems.append(f"event {n} uses {c}, {state}")
            live.discard(c)
        created = e.created()
        if len(set(created)) != len(created):
            problems.append(f"event {n} creates {created[0]} twice")
        for c in created:
            if c in ever:
                problems.append(f"event {n} re-creates {c}")
            live.add(c)
            ever.add(c)
    checks = [Check("circle_ids", not problems, "; ".join(problems))]
    leftover = sorted(live)
    checks.append(
        Check("closed_at_top", not leftover, f"live after last event: {leftover}" if leftover else "")
    )
    return checks


def validate_sliced(f: SlicedMorseFunction) -> SliceValidation:
    """Check every structural condition; returns the genus when they all hold."""
    checks = [Check("non_empty", bool(f.events), "" if f.events else "no events")]

    heights = f.heights
    ties = [str(h) for a, h in zip(heights, heights[1:]) if h <= a]
    checks.append(
        Check("heights_increasing", not ties, f"not above predecessor: {ties}" if ties else "")
    )
    checks.extend(_id_checks(f))

    structural_ok = all(c.passed for c in checks)
    if structural_ok:
        graph = _build_graph(f)
        connected = graph.components == 1
        checks.append(
            Check("connected", connected, "" if connected else f"{graph.components} components")
        )
    chi = f.euler_characteristic()
    euler_ok = chi <= 2 and chi % 2 == 0
    checks.append(Check("euler_characteristic", euler_ok, f"chi = {chi}"))

    report = CheckReport.from_checks(checks)
    genus = (2 - chi) // 2 if report.ok else None
    return SliceValidation(genus, report)


def require_valid_sliced(f: SlicedMorseFunction) -> int:
    result = validate_sliced(f)
    if not result.ok:
        names = ", ".join(
            f"{c.name} ({c.detail})" if c.detail else c.name for c in result.report.failures
        )
        raise MorseError(f"invalid sliced Morse function: {names}")
    return result.genus  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Reeb graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReebEdge:
    circle: str
    lower: int
    upper: int
    created_at: Fraction
    destroyed_at: Fraction


@dataclass(frozen=True)
class ReebGraph:
    vertices: tuple[str, ...]
    edges: tuple[ReebEdge, ...]
    components: int
    betti: int

    def degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for e in self.edges:
            deg[e.lower] += 1
            deg[e.upper] += 1
        return deg

    def edge(self, circle: str) -> ReebEdge:
        for e in self.edges:
            if e.circle == circle:
                return e
        raise MorseError(f"no level circle named {circle!r}")


def _build_graph(f: SlicedMorseFunction) -> ReebGraph:
    born: dict[str, int] = {}
    edges: list[ReebEdge] = []
    for n, e in enumerate(f.events):
        for c in e.consumed():
            lo = born[c]
            edges.append(ReebEdge(c, lo, n, f.events[lo].height, e.height))
        for c in e.created():
            born[c] = n
    edges.sort(key=lambda r: (r.created_at, r.lower, r.destroyed_at, r.circle))

    n_vertices = len(f.events)
    if n_vertices == 0:
        components = 0
    else:
        rows = [e.lower for e in edges]
        cols = [e.upper for e in edges]
        adjacency = coo_matrix(
            (np.ones(len(edges), dtype=np.int8), (rows, cols)),
            shape=(n_vertices, n_vertices),
        )
        components, _ = connected_components(adjacency, directed=False)
        components = int(components)
    betti = len(edges) - n_vertices + components
    return ReebGraph(
        vertices=tuple(e.kind for e in f.events),
        edges=tuple(edges),
        components=components,
        betti=betti,
    )


def reeb_graph(f: SlicedMorseFunction) -> ReebGraph:
    genus = require_valid_sliced(f)
    graph = _build_graph(f)
    if graph.betti != genus:
        raise MorseError(f"Reeb graph has first Betti number {graph.betti}, genus is {genus}")
    return graph


@dataclass(frozen=True)
class ReebCycle:
    """A fundamental cycle: one non-tree circle closed up through the spanning tree.

    `incidences` holds (circle, ±1); +1 means the cycle runs upward along
    that circle's edge.
    """

    circle: str
    incidences: tuple[tuple[str, int], ...]

    def sign_of(self, circle: str) -> int:
        for c, s in self.incidences:
            if c == circle:
                return s
        return 0


def _spanning_tree(graph: ReebGraph) -> tuple[dict[int, ReebEdge], set[str]]:
    """BFS from the lowest event; returns parent edges and tree circle ids."""
    adjacency: dict[int, list[ReebEdge]] = {v: [] for v in range(len(graph.vertices))}
    for e in graph.edges:
        adjacency[e.lower].append(e)
        adjacency[e.upper].append(e)
    parent: dict[int, ReebEdge] = {}
    seen = {0}
    tree: set[str] = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e in adjacency[v]:
            w = e.upper if e.lower == v else e.lower
            if w in seen:
                continue
            seen.add(w)
            parent[w] = e
            tree.add(e.circle)
            queue.append(w)
    return parent, tree


def _path_to_root(v: int, parent: Mapping[int, ReebEdge]) -> list[int]:
    path = [v]
    while path[-1] in parent:
        e = parent[path[-1]]
        path.append(e.lower if e.upper == path[-1] else e.upper)
    return path


def reeb_cycles(f: SlicedMorseFunction) -> list[ReebCycle]:
    """Fundamental cycles ordered by the creation height of their non-tree circle."""
    graph = reeb_graph(f)
    if not graph.edges:
        return []
    parent, tree = _spanning_tree(graph)
    cycles = []
    for e in graph.edges:
        if e.circle in tree:
            continue
        # up along e, then back down from e.upper to e.lower through the tree
        up_path = _path_to_root(e.upper, parent)
        down_path = _path_to_root(e.lower, parent)
        meet = next(v for v in up_path if v in set(down_path))
        signs: dict[str, int] = {e.circle: 1}
        for v in up_path[: up_path.index(meet)]:
            t = parent[v]
            # leaving v towards its parent
            signs[t.circle] = signs.get(t.circle, 0) + (1 if t.lower == v else -1)
        for v in down_path[: down_path.index(meet)]:
            t = parent[v]
            # arriving at v from its parent
            signs[t.circle] = signs.get(t.circle, 0) + (1 if t.upper == v else -1)
        incidences = tuple((c, s) for c, s in signs.items() if s)
        cycles.append(ReebCycle(e.circle, incidences))
    return cycles


# ---------------------------------------------------------------------------
# Critical neighborhoods
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalNeighborhood:
    event: int
    kind: str
    genus: int
    boundary_circles: int

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_circles


def critical_neighborhood(f: SlicedMorseFunction, event: int | MorseEvent) -> CriticalNeighborhood:
    """Genus and boundary count of a regular neighborhood of the critical level component.

    The critical level component is a point for an extremum and a figure
    eight for a saddle; N deformation retracts onto it.
    """
    require_valid_sliced(f)
    if isinstance(event, int):
        if not 0 <= event < len(f.events):
            raise MorseError(f"event index {event} outside 0..{len(f.events) - 1}")
        n = event
    else:
        try:
            n = f.events.index(event)
        except ValueError:
            raise MorseError(f"event {event!r} is not part of this function") from None
    e = f.events[n]
    boundary = len(e.consumed()) + len(e.created())
    if e.kind in ("birth", "death"):
        graph_vertices, graph_edges = 1, 0
    else:
        graph_vertices, graph_edges = 1, 2
    chi = graph_vertices - graph_edges
    twice_genus = 2 - chi - boundary
    if twice_genus < 0 or twice_genus % 2:
        raise MorseError(f"event {n} has an impossible neighborhood (chi={chi}, boundary={boundary})")
    return CriticalNeighborhood(n, e.kind, twice_genus // 2, boundary)


# ---------------------------------------------------------------------------
# Cut systems from functions
# ---------------------------------------------------------------------------


def _resolve_basis_map(basis_map: Sequence[int] | None, genus: int) -> list[int]:
    if basis_map is None:
        return list(range(1, genus + 1))
    handles = [int(h) for h in basis_map]
    if sorted(handles) != list(range(1, genus + 1)):
        raise MorseError(
            f"basis map must assign handles 1..{genus} once each, got {handles}"
        )
    return handles


def circle_class(
    circle: str,
    cycles: Sequence[ReebCycle],
    frame: Sequence[HomologyClass],
    handles: Sequence[int],
) -> HomologyClass:
    """Class of a level circle: Σ_j ε_j(circle) · frame[handle(j)]."""
    total = [0] * len(frame[0].coeffs)
    for cycle, handle in zip(cycles, handles):
        s = cycle.sign_of(circle)
        if s:
            for t, v in enumerate(frame[handle - 1].coeffs):
                total[t] += s * v
    return HomologyClass(tuple(total))


def cut_system_from_morse(
    f: SlicedMorseFunction,
    lattice: SymplecticLattice,
    basis_map: Sequence[int] | None = None,
    circle_choice: Mapping[int, str] | None = None,
    frame: CutSystem | None = None,
) -> CutSystem:
    """Handlebody cut system made of level circles, one per independent Reeb cycle.

    basis_map[j] is the (1-based) handle the j-th cycle is identified with;
    the transverse level circle of that handle is frame[handle], which is
    a_handle unless another frame is given. circle_choice may replace the
    default (non-tree) circle of cycle j by any other circle on it.
    """
    genus = require_valid_sliced(f)
    if genus != lattice.genus:
        raise MorseError(f"function has genus {genus}, lattice has genus {lattice.genus}")
    if genus == 0:
        return CutSystem((), ())
    handles = _resolve_basis_map(basis_map, genus)
    if frame is None:
        frame = lattice.standard_cut_system()
    if len(frame.curves) != genus:
        raise MorseError(f"frame has {len(frame.curves)} classes, genus is {genus}")

    cycles = reeb_cycles(f)
    chosen = []
    for j, cycle in enumerate(cycles):
        circle = cycle.circle
        if circle_choice and j in circle_choice:
            circle = circle_choice[j]
            if cycle.sign_of(circle) == 0:
                raise MorseError(f"circle {circle!r} does not lie on Reeb cycle {j}")
        chosen.append(circle)
    cs = CutSystem(
        tuple(circle_class(c, cycles, frame.curves, handles) for c in chosen),
        tuple(chosen),
    )
    report = validate_cut_system(cs, lattice)
    if not report.ok:
        raise MorseError(
            "chosen level circles do not form a cut system: "
            + ", ".join(c.name for c in report.failures)
        )
    logger.info("extracted cut system %s from circles %s", cs.labels(), chosen)
    return cs


def heegaard_from_morse_pair(
    lower: SlicedMorseFunction,
    upper: SlicedMorseFunction,
    lattice: SymplecticLattice,
    lower_frame: CutSystem | None = None,
    upper_frame: CutSystem | None = None,
    lower_map: Sequence[int] | None = None,
    upper_map: Sequence[int] | None = None,
) -> HeegaardDiagram:
    """Each function fills Σ with a handlebody; together they give a Heegaard diagram.

    The frames say where each function's handles sit on Σ.
    """
    alpha = cut_system_from_morse(lower, lattice, lower_map, frame=lower_frame)
    beta = cut_system_from_morse(upper, lattice, upper_map, frame=upper_frame)
    return HeegaardDiagram(lattice.genus, alpha.without_provenance(), beta.without_provenance())


# ---------------------------------------------------------------------------
# Standard and random functions
# ---------------------------------------------------------------------------


def stacked_torus_function(g: int) -> SlicedMorseFunction:
    """Birth, then g split/merge torus blocks, then death."""
    if g < 0:
        raise MorseError(f"genus must be non-negative, got {g}")
    events: list[MorseEvent] = [Birth("c0", Fraction(0))]
    current = "c0"
    for i in range(1, g + 1):
        left, right, joined = f"c{3 * i - 2}", f"c{3 * i - 1}", f"c{3 * i}"
        events.append(Split(current, (left, right), Fraction(2 * i - 1)))
        events.append(Merge((left, right), joined, Fraction(2 * i)))
        current = joined
    events.append(Death(current, Fraction(2 * g + 1)))
    return SlicedMorseFunction(tuple(events))


def _closable(live: Sequence[str], owner: Mapping[str, int], find) -> list[str]:
    """Live circles whose component keeps another live circle after they die."""
    roots = [find(owner[c]) for c in live]
    return [c for c, r in zip(live, roots) if roots.count(r) >= 2]


def random_sliced_function(rng: np.random.Generator, max_events: int = 30) -> SlicedMorseFunction:
    """A random valid function with at most `max_events` events.

    Live circles are grouped by the sublevel component they bound. A death
    may only close a circle whose component still has another live circle,
    so every component survives until the closing merges join them.
    """
    if max_events < 2:
        raise MorseError(f"a closed surface needs at least 2 events, got {max_events}")
    counter = iter(range(10**9))

    def fresh() -> str:
        return f"c{next(counter)}"

    height = Fraction(0)

    def step() -> Fraction:
        nonlocal height
        height += Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        return height

    owner: dict[str, int] = {}
    parent_of: dict[int, int] = {}

    def find(x: int) -> int:
        while parent_of[x] != x:
            parent_of[x] = parent_of[parent_of[x]]
            x = parent_of[x]
        return x

    events: list[MorseEvent] = []
    first = fresh()
    events.append(Birth(first, step()))
    owner[first] = 0
    parent_of[0] = 0
    n_components = 1

    while True:
        live = sorted(owner, key=lambda c: int(c[1:]))
        # closing needs len(live) - 1 merges and one death
        room = max_events - len(events) - len(live)
        if room <= 0 or rng.random() < 0.08:
            break
        # birth and split each use up two of the remaining event slots
        moves = ["birth", "split"] if room >= 2 else []
        if len(live) >= 2:
            moves.append("merge")
            if _closable(live, owner, find):
                moves.append("death")
        if not moves:
            break
        move = moves[int(rng.integers(len(moves)))]

        if move == "birth":
            c = fresh()
            parent_of[n_components] = n_components
            owner[c] = n_components
            n_components += 1
            events.append(Birth(c, step()))
        elif move == "split":
            c = live[int(rng.integers(len(live)))]
            x, y = fresh(), fresh()
            comp = owner.pop(c)
            owner[x] = owner[y] = comp
            events.append(Split(c, (x, y), step()))
        elif move == "merge":
            i, j = rng.choice(len(live), size=2, replace=False)
            x, y = live[int(i)], live[int(j)]
            root = find(owner[x])
            other = find(owner[y])
            if root != other:
                parent_of[other] = root
            owner.pop(x)
            owner.pop(y)
            z = fresh()
            owner[z] = root
            events.append(Merge((x, y), z, step()))
        else:
            closable = _closable(live, owner, find)
            c = closable[int(rng.integers(len(closable)))]
            owner.pop(c)
            events.append(Death(c, step()))

    live = sorted(owner, key=lambda c: int(c[1:]))
    while len(live) > 1:
        x, y = live[0], live[1]
        z = fresh()
        events.append(Merge((x, y), z, step()))
        live = [z] + live[2:]
    events.append(Death(live[0], step()))
    return SlicedMorseFunction(tuple(events))
