"""
Ribbon neighborhoods of critical level graphs.

When several saddles share a critical value, the critical level component
Γ is a 4-valent graph and its regular neighborhood N is a ribbon surface.
We store Γ as a rotation system on half-edges:

    half-edge h sits at vertex h // 4, in cyclic position h % 4
    next(h) = 4 * (h // 4) + (h % 4 + 1) % 4
    pairing[h] is the other end of h's edge

The corner between h and next(h) lies above the critical value (+) when
(h % 4 + offsets[vertex]) is even and below it (−) otherwise, so corners
alternate around every vertex. Walking the boundary of N goes corner to
corner by c ↦ pairing[next(c)]; each orbit is one boundary circle. N is
separating when every boundary circle is monochromatic.

No edge is twisted, so every neighborhood here is orientable.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from checks import CerfError, Check, CheckReport
from settings import get_logger, thread_count

logger = get_logger("ribbon_graphs")


class RibbonError(CerfError):
    code = "INVALID_RIBBON"


def next_half_edge(h: int) -> int:
    return 4 * (h // 4) + (h % 4 + 1) % 4


@dataclass(frozen=True)
class RibbonNeighborhood:
    pairing: tuple[int, ...]
    offsets: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairing", tuple(int(p) for p in self.pairing))
        object.__setattr__(self, "offsets", tuple(int(s) % 2 for s in self.offsets))

    @property
    def n_vertices(self) -> int:
        return len(self.offsets)

    @property
    def n_edges(self) -> int:
        return len(self.pairing) // 2

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges

    def corner_sign(self, h: int) -> int:
        """+1 when the corner (h, next h) lies above the critical level."""
        return 1 if (h % 4 + self.offsets[h // 4]) % 2 == 0 else -1

    def faces(self) -> list[tuple[int, ...]]:
        """Boundary circles as corner orbits, each starting at its smallest corner."""
        seen: set[int] = set()
        out = []
        for start in range(len(self.pairing)):
            if start in seen:
                continue
            orbit = []
            c = start
            while c not in seen:
                seen.add(c)
                orbit.append(c)
                c = self.pairing[next_half_edge(c)]
            out.append(tuple(orbit))
        return out

    def face_signs(self) -> list[int | None]:
        """Sign of each boundary circle, None when it mixes both sides."""
        signs = []
        for face in self.faces():
            colors = {self.corner_sign(c) for c in face}
            signs.append(colors.pop() if len(colors) == 1 else None)
        return signs

    @property
    def boundary_circles(self) -> int:
        return len(self.faces())

    @property
    def genus(self) -> int:
        twice = 2 - self.euler_characteristic - self.boundary_circles
        if twice % 2:
            raise RibbonError(f"odd twice-genus {twice}; the rotation system is malformed")
        return twice // 2

    @property
    def profile(self) -> tuple[int, int]:
        return self.genus, self.boundary_circles

    @property
    def sides(self) -> tuple[int, int]:
        """(# boundary circles above, # below)."""
        signs = self.face_signs()
        return signs.count(1), signs.count(-1)

    def components(self) -> tuple[int, np.ndarray]:
        n = self.n_vertices
        if n == 0:
            return 0, np.zeros(0, dtype=np.int32)
        rows = [h // 4 for h in range(len(self.pairing))]
        cols = [p // 4 for p in self.pairing]
        adjacency = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        count, labels = connected_components(adjacency, directed=False)
        return int(count), labels

    def is_connected(self) -> bool:
        return self.components()[0] == 1

    def encoding(self) -> tuple[int, ...]:
        return self.pairing + self.offsets

    def as_dict(self) -> dict:
        return {"pairing": list(self.pairing), "offsets": list(self.offsets)}


def _structure_checks(N: RibbonNeighborhood) -> list[Check]:
    size = 4 * N.n_vertices
    ok_len = len(N.pairing) == size
    checks = [Check("half_edge_count", ok_len, f"{len(N.pairing)} half-edges for {N.n_vertices} vertices")]
    if not ok_len:
        return checks
    bad = [
        h for h, p in enumerate(N.pairing)
        if not 0 <= p < size or p == h or N.pairing[p] != h
    ]
    checks.append(
        Check("edge_involution", not bad, f"half-edges {bad} are not paired" if bad else "")
    )
    return checks


def validate_neighborhood(N: RibbonNeighborhood) -> CheckReport:
    """Structure, connectivity and the separating condition."""
    checks = [Check("has_vertices", N.n_vertices > 0)]
    checks.extend(_structure_checks(N))
    if not all(c.passed for c in checks):
        return CheckReport.from_checks(checks)
    count, _ = N.components()
    checks.append(Check("connected", count == 1, f"{count} components"))
    signs = N.face_signs()
    mixed = [i for i, s in enumerate(signs) if s is None]
    checks.append(
        Check("monochromatic_boundary", not mixed, f"boundary circles {mixed} change side" if mixed else "")
    )
    checks.append(Check("both_sides", 1 in signs and -1 in signs))
    return CheckReport.from_checks(checks)


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


def relabel(
    N: RibbonNeighborhood,
    order: Sequence[int],
    shifts: Sequence[int],
    swap_sides: bool = False,
) -> RibbonNeighborhood:
    """Move old vertex v to order[v] and rotate its half-edges back by shifts[v].

    A one-step rotation flips the vertex's corner parity; swap_sides flips
    every corner (the function reversed).
    """
    def image(h: int) -> int:
        v = h // 4
        return 4 * order[v] + (h % 4 - shifts[v]) % 4

    pairing = [0] * len(N.pairing)
    for h, p in enumerate(N.pairing):
        pairing[image(h)] = image(p)
    offsets = [0] * N.n_vertices
    for v, s in enumerate(N.offsets):
        offsets[order[v]] = (s + shifts[v] + (1 if swap_sides else 0)) % 2
    return RibbonNeighborhood(tuple(pairing), tuple(offsets))


def _normalized(N: RibbonNeighborhood) -> RibbonNeighborhood:
    """Rotate odd-offset vertices once so every offset is 0."""
    return relabel(N, range(N.n_vertices), N.offsets)


def _zero_offset_symmetries(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], bool]]:
    """Relabelings that keep all offsets 0."""
    for order in permutations(range(n)):
        for shifts in product((0, 2), repeat=n):
            yield order, shifts, False
        for shifts in product((1, 3), repeat=n):
            yield order, shifts, True


def canonical_form(N: RibbonNeighborhood) -> RibbonNeighborhood:
    """Lexicographically smallest encoding over vertex relabeling, rotation and side swap."""
    base = _normalized(N)
    best = None
    for order, shifts, swap in _zero_offset_symmetries(base.n_vertices):
        candidate = relabel(base, order, shifts, swap)
        if best is None or candidate.pairing < best.pairing:
            best = candidate
    return best  # type: ignore[return-value]


def isomorphic(first: RibbonNeighborhood, second: RibbonNeighborhood) -> bool:
    if first.n_vertices != second.n_vertices or len(first.pairing) != len(second.pairing):
        return False
    return canonical_form(first) == canonical_form(second)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        partner = items[i]
        rest = items[1:i] + items[i + 1 :]
        for tail in _matchings(rest):
            yield [(first, partner)] + tail


def _as_pairing(matching: list[tuple[int, int]], size: int) -> tuple[int, ...]:
    pairing = [0] * size
    for a, b in matching:
        pairing[a] = b
        pairing[b] = a
    return tuple(pairing)


def _census_chunk(pairings: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    found = set()
    zero = (0,) * n
    for pairing in pairings:
        N = RibbonNeighborhood(pairing, zero)
        if validate_neighborhood(N).ok:
            found.add(canonical_form(N).pairing)
    return found


def enumerate_ribbon_neighborhoods(n_vertices: int, threads: int | None = None) -> list[RibbonNeighborhood]:
    """Census up to isomorphism of connected separating 4-valent ribbon neighborhoods.

    Every class has a representative with all offsets 0 (rotate odd
    vertices once), so only edge pairings are searched. Output is sorted
    by encoding.
    """
    if n_vertices < 1:
        raise RibbonError(f"need at least one vertex, got {n_vertices}")
    size = 4 * n_vertices
    pairings = [_as_pairing(m, size) for m in _matchings(list(range(size)))]
    workers = max(1, threads or thread_count())
    chunk = max(1, -(-len(pairings) // workers))
    pieces = [pairings[i : i + chunk] for i in range(0, len(pairings), chunk)]

    found: set[tuple[int, ...]] = set()
    if workers == 1 or len(pieces) == 1:
        for piece in pieces:
            found |= _census_chunk(piece, n_vertices)
    else:
        # chunks are pure-Python CPU work; processes sidestep the GIL
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(partial(_census_chunk, n=n_vertices), pieces):
                found |= part
    zero = (0,) * n_vertices
    census = [RibbonNeighborhood(p, zero) for p in sorted(found)]
    logger.info(
        "%d-vertex census: %d candidates, %d classes", n_vertices, len(pairings), len(census)
    )
    return census


# ---------------------------------------------------------------------------
# Resolving a vertex off the critical level
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolvedLevel:
    """The level graph after one vertex moved off the common critical value."""

    graph: RibbonNeighborhood
    free_circles: int
    kept: tuple[int, ...]


def resolve_vertex(N: RibbonNeighborhood, v: int, direction: int) -> ResolvedLevel:
    """Move vertex v above (+1) or below (−1) the level and smooth it.

    Raised above, the level passes under v and its arcs hug v's lower
    corners; lowered, they hug the upper corners.
    """
    if direction not in (1, -1):
        raise RibbonError(f"direction must be ±1, got {direction}")
    if not 0 <= v < N.n_vertices:
        raise RibbonError(f"vertex {v} outside 0..{N.n_vertices - 1}")
    hugged = -1 if direction == 1 else 1
    jump: dict[int, int] = {}
    for i in range(4):
        h = 4 * v + i
        if N.corner_sign(h) == hugged:
            nh = next_half_edge(h)
            jump[h], jump[nh] = nh, h

    kept = tuple(w for w in range(N.n_vertices) if w != v)
    new_index = {w: i for i, w in enumerate(kept)}

    def renumber(h: int) -> int:
        return 4 * new_index[h // 4] + h % 4

    visited: set[int] = set()
    pairing = [0] * (4 * len(kept))
    for w in kept:
        for i in range(4):
            h = 4 * w + i
            y = N.pairing[h]
            while y // 4 == v:
                visited.add(y)
                y = jump[y]
                visited.add(y)
                y = N.pairing[y]
            pairing[renumber(h)] = renumber(y)

    free = 0
    for start in range(4 * v, 4 * v + 4):
        if start in visited:
            continue
        free += 1
        y = start
        while y not in visited:
            visited.add(y)
            y = jump[y]
            visited.add(y)
            y = N.pairing[y]
    offsets = tuple(N.offsets[w] for w in kept)
    return ResolvedLevel(RibbonNeighborhood(tuple(pairing), offsets), free, kept)


def component_profile(N: RibbonNeighborhood, vertex: int) -> tuple[int, int]:
    """(genus, boundary circles) of the component of N containing `vertex`."""
    _, labels = N.components()
    members = [w for w in range(N.n_vertices) if labels[w] == labels[vertex]]
    index = {w: i for i, w in enumerate(members)}
    pairing = []
    for w in members:
        for i in range(4):
            p = N.pairing[4 * w + i]
            pairing.append(4 * index[p // 4] + p % 4)
    sub = RibbonNeighborhood(tuple(pairing), tuple(N.offsets[w] for w in members))
    return sub.profile


def same_component(N: RibbonNeighborhood, x: int, y: int) -> bool:
    _, labels = N.components()
    return bool(labels[x] == labels[y])
