"""
Invariant calculators for Heegaard and trisection diagrams.

    heegaard_h1           H₁ of the 3-manifold glued from two handlebodies
    trisection_h1         H₁ of the closed 4-manifold of a trisection
    trisection_euler_characteristic
    wall_signature        signature of the Wall form on three Lagrangians
    trisection_signature  σ of the 4-manifold, sign fixed by σ(ℂP²) = +1

Orientation convention: ⟨a_i, b_i⟩ = +1 (see surface_core). Under it the
diagram (a₁, b₁, a₁+b₁) has signature +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from checks import CerfError, Check, CheckReport
from integer_matrix import (
    as_integer_matrix,
    invariant_factors,
    rational_nullspace,
    smith_normal_form,
    symmetric_signature,
)
from surface_core import (
    CutSystem,
    HomologyClass,
    LagrangianSublattice,
    SymplecticLattice,
    intersection_pairing,
    lagrangian_span,
    require_valid,
    validate_cut_system,
)

__all__ = [
    "AbelianGroupDescriptor",
    "HeegaardDiagram",
    "InvariantError",
    "TrisectionDiagram",
    "connected_sum",
    "cokernel",
    "cyclic_signature",
    "heegaard_h1",
    "smith_normal_form",
    "standard_trisections",
    "trisection_euler_characteristic",
    "trisection_h1",
    "trisection_invariants",
    "trisection_signature",
    "validate_trisection",
    "wall_signature",
]


class InvariantError(CerfError):
    code = "INVARIANT_ERROR"


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise InvariantError(f"torsion factors must divide successively: {self.torsion}")
        if any(t <= 1 for t in self.torsion):
            raise InvariantError(f"torsion factors must exceed 1: {self.torsion}")

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_free(self, rank: int) -> bool:
        return self.rank == rank and not self.torsion

    def label(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def cokernel(matrix, ncols: int) -> AbelianGroupDescriptor:
    """ℤ^ncols modulo the row span of `matrix`."""
    M = as_integer_matrix(matrix, ncols=ncols)
    if M.shape[0] == 0:
        return AbelianGroupDescriptor(ncols)
    factors = invariant_factors(M)
    nonzero = [d for d in factors if d != 0]
    return AbelianGroupDescriptor(
        rank=ncols - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


# ---------------------------------------------------------------------------
# Heegaard diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeegaardDiagram:
    genus: int
    alpha: CutSystem
    beta: CutSystem

    @property
    def lattice(self) -> SymplecticLattice:
        return SymplecticLattice(self.genus)

    def h1(self) -> AbelianGroupDescriptor:
        return heegaard_h1(self.alpha, self.beta, self.lattice)


def _check_same_lattice(lattice: SymplecticLattice, *systems: CutSystem) -> None:
    for cs in systems:
        if len(cs.curves) != lattice.genus or any(len(c) != lattice.rank for c in cs.curves):
            raise InvariantError(
                f"cut system of {len(cs.curves)} curves does not live on the genus-{lattice.genus} lattice"
            )


def pairing_matrix(alpha: CutSystem, beta: CutSystem, lattice: SymplecticLattice) -> np.ndarray:
    rows = [[intersection_pairing(x, y, lattice) for y in beta.curves] for x in alpha.curves]
    return as_integer_matrix(rows, ncols=len(beta.curves))


def heegaard_h1(alpha: CutSystem, beta: CutSystem, lattice: SymplecticLattice) -> AbelianGroupDescriptor:
    """Cokernel of [⟨α_i, β_j⟩]: H₁ of the glued 3-manifold."""
    _check_same_lattice(lattice, alpha, beta)
    require_valid(alpha, lattice)
    require_valid(beta, lattice)
    return cokernel(pairing_matrix(alpha, beta, lattice), lattice.genus)


# ---------------------------------------------------------------------------
# Trisections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrisectionDiagram:
    g: int
    k: int
    alpha: CutSystem
    beta: CutSystem
    gamma: CutSystem

    @property
    def lattice(self) -> SymplecticLattice:
        return SymplecticLattice(self.g)

    def systems(self) -> tuple[CutSystem, CutSystem, CutSystem]:
        return self.alpha, self.beta, self.gamma

    def pairs(self) -> list[tuple[str, CutSystem, CutSystem]]:
        return [
            ("alpha_beta", self.alpha, self.beta),
            ("beta_gamma", self.beta, self.gamma),
            ("gamma_alpha", self.gamma, self.alpha),
        ]


def trisection_euler_characteristic(g: int, k: int) -> int:
    if k < 0 or g < k:
        raise InvariantError(f"need g >= k >= 0, got g={g}, k={k}")
    return g - 3 * k + 2


def validate_trisection(T: TrisectionDiagram) -> CheckReport:
    """Every cut system valid and every pair presenting ℤ^k."""
    shape_ok = T.g >= T.k >= 0
    report = CheckReport.from_checks(
        [Check("genus_bounds", shape_ok, "" if shape_ok else f"g={T.g}, k={T.k}")]
    )
    if T.g < 0:
        return report
    lattice = T.lattice
    systems_ok = True
    for name, cs in zip(("alpha", "beta", "gamma"), T.systems()):
        sub = validate_cut_system(cs, lattice)
        systems_ok = systems_ok and sub.ok
        report = report.merged(sub, prefix=f"{name}.")
    if not systems_ok:
        return report
    pair_checks = []
    for name, first, second in T.pairs():
        h1 = heegaard_h1(first, second, lattice)
        ok = h1.is_free(T.k)
        pair_checks.append(
            Check(f"{name}.h1", ok, "" if ok else f"H1 = {h1.label()}, expected Z^{T.k}")
        )
    return report.merged(CheckReport.from_checks(pair_checks))


def _require_trisection(T: TrisectionDiagram) -> None:
    report = validate_trisection(T)
    if not report.ok:
        names = ", ".join(c.name for c in report.failures)
        raise InvariantError(f"invalid trisection diagram: {names}")


def trisection_h1(T: TrisectionDiagram) -> AbelianGroupDescriptor:
    """H₁(Σ) / (Lα + Lβ + Lγ)."""
    _require_trisection(T)
    rows = T.alpha.rows() + T.beta.rows() + T.gamma.rows()
    return cokernel(rows, T.lattice.rank)


# ---------------------------------------------------------------------------
# Wall form and signatures
# ---------------------------------------------------------------------------


def wall_signature(
    first: LagrangianSublattice,
    second: LagrangianSublattice,
    third: LagrangianSublattice,
) -> int:
    """Signature of Ψ((a,b,c),(a',b',c')) = ⟨a, b'⟩ on {a + b + c = 0}."""
    genus = first.genus
    if second.genus != genus or third.genus != genus:
        raise InvariantError(
            f"Lagrangians live on different lattices: genus {first.genus}, {second.genus}, {third.genus}"
        )
    lattice = SymplecticLattice(genus)
    if genus == 0:
        return 0
    blocks = [list(first.basis), list(second.basis), list(third.basis)]
    for block in blocks:
        if len(block) != genus:
            raise InvariantError(f"Lagrangian basis of size {len(block)} on genus {genus}")
    stacked = as_integer_matrix(blocks[0] + blocks[1] + blocks[2], ncols=lattice.rank)
    solutions = rational_nullspace(stacked.T)
    if not solutions:
        return 0

    J = lattice.form()

    def combine(coeffs: Sequence[Fraction], block: list) -> list[Fraction]:
        out = [Fraction(0)] * lattice.rank
        for c, row in zip(coeffs, block):
            if c:
                for t, v in enumerate(row):
                    out[t] += c * v
        return out

    a_parts = [combine(v[:genus], blocks[0]) for v in solutions]
    b_parts = [combine(v[genus : 2 * genus], blocks[1]) for v in solutions]

    def pair(x: list[Fraction], y: list[Fraction]) -> Fraction:
        total = Fraction(0)
        for s in range(lattice.rank):
            if x[s]:
                for t in range(lattice.rank):
                    if J[s, t]:
                        total += x[s] * J[s, t] * y[t]
        return total

    n = len(solutions)
    psi = [[pair(a_parts[i], b_parts[j]) for j in range(n)] for i in range(n)]
    sym = [[(psi[i][j] + psi[j][i]) / 2 for j in range(n)] for i in range(n)]
    return symmetric_signature(sym)


def trisection_signature(T: TrisectionDiagram) -> int:
    _require_trisection(T)
    lattice = T.lattice
    spans = [lagrangian_span(cs, lattice) for cs in T.systems()]
    return wall_signature(*spans)


def cyclic_signature(lagrangians: Sequence[LagrangianSublattice]) -> int:
    """Fan sum Σ wall(L₀, L_i, L_{i+1}) over a closed cyclic sequence."""
    if len(lagrangians) < 3:
        return 0
    anchor = lagrangians[0]
    return sum(
        wall_signature(anchor, lagrangians[i], lagrangians[i + 1])
        for i in range(1, len(lagrangians) - 1)
    )


def trisection_invariants(T: TrisectionDiagram) -> dict:
    h1 = trisection_h1(T)
    return {
        "chi": trisection_euler_characteristic(T.g, T.k),
        "sigma": trisection_signature(T),
        "h1_rank": h1.rank,
    }


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


def _pad(cls: HomologyClass, before: int, after: int) -> HomologyClass:
    return HomologyClass((0,) * before + cls.coeffs + (0,) * after)


def connected_sum(first: TrisectionDiagram, second: TrisectionDiagram) -> TrisectionDiagram:
    """Block sum: first's handles come before second's."""
    left, right = 2 * first.g, 2 * second.g

    def join(x: CutSystem, y: CutSystem) -> CutSystem:
        return CutSystem(
            tuple(_pad(c, 0, right) for c in x.curves) + tuple(_pad(c, left, 0) for c in y.curves)
        )

    return TrisectionDiagram(
        g=first.g + second.g,
        k=first.k + second.k,
        alpha=join(first.alpha, second.alpha),
        beta=join(first.beta, second.beta),
        gamma=join(first.gamma, second.gamma),
    )


def standard_trisections() -> dict[str, TrisectionDiagram]:
    empty = CutSystem(())
    a1 = CutSystem.from_rows([[1, 0]])
    b1 = CutSystem.from_rows([[0, 1]])
    catalog = {
        "S4": TrisectionDiagram(0, 0, empty, empty, empty),
        "CP2": TrisectionDiagram(1, 0, a1, b1, CutSystem.from_rows([[1, 1]])),
        "CP2bar": TrisectionDiagram(1, 0, a1, b1, CutSystem.from_rows([[1, -1]])),
        "S1xS3": TrisectionDiagram(1, 1, a1, a1, a1),
    }
    catalog["CP2#CP2bar"] = connected_sum(catalog["CP2"], catalog["CP2bar"])
    return catalog
