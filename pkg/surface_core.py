"""
H₁ of a closed oriented genus-g surface, with its intersection pairing.

Basis order is a₁, b₁, a₂, b₂, …, a_g, b_g and the orientation convention
is fixed once here: ⟨a_i, b_i⟩ = +1. Curves are homology classes only;
disjointness of cut curves is declared by the caller and mirrored by
isotropy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from checks import CerfError, Check, CheckReport
from integer_matrix import (
    as_integer_matrix,
    hermite_normal_form,
    invariant_factors,
    row_coordinates,
    to_lists,
)


class LatticeError(CerfError):
    code = "LATTICE_ERROR"


class CutSystemError(CerfError):
    code = "INVALID_CUT_SYSTEM"


@dataclass(frozen=True)
class SymplecticLattice:
    genus: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise LatticeError(f"genus must be non-negative, got {self.genus}")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def labels(self) -> tuple[str, ...]:
        out = []
        for i in range(1, self.genus + 1):
            out.extend((f"a{i}", f"b{i}"))
        return tuple(out)

    def form(self) -> np.ndarray:
        """The skew matrix J with ⟨a_i, b_i⟩ = +1."""
        J = np.zeros((self.rank, self.rank), dtype=object)
        for i in range(self.genus):
            J[2 * i, 2 * i + 1] = 1
            J[2 * i + 1, 2 * i] = -1
        return J

    def zero(self) -> "HomologyClass":
        return HomologyClass((0,) * self.rank)

    def a(self, i: int) -> "HomologyClass":
        return standard_class(self, "a", i)

    def b(self, i: int) -> "HomologyClass":
        return standard_class(self, "b", i)

    def standard_cut_system(self) -> "CutSystem":
        return CutSystem(tuple(self.a(i) for i in range(1, self.genus + 1)))


@dataclass(frozen=True)
class HomologyClass:
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        _same_length(self, other)
        return HomologyClass(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        _same_length(self, other)
        return HomologyClass(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(tuple(-x for x in self.coeffs))

    def __mul__(self, k: int) -> "HomologyClass":
        return HomologyClass(tuple(k * x for x in self.coeffs))

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def label(self) -> str:
        """Human form like 'a1+b1' or '-a2+2b3'."""
        genus = len(self.coeffs) // 2
        terms = []
        for i in range(genus):
            for offset, letter in ((0, "a"), (1, "b")):
                c = self.coeffs[2 * i + offset]
                if c == 0:
                    continue
                sign = "-" if c < 0 else "+"
                mag = "" if abs(c) == 1 else str(abs(c))
                terms.append(f"{sign}{mag}{letter}{i + 1}")
        if not terms:
            return "0"
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text


def _same_length(x: HomologyClass, y: HomologyClass) -> None:
    if len(x.coeffs) != len(y.coeffs):
        raise LatticeError(f"dimension mismatch: {len(x.coeffs)} vs {len(y.coeffs)}")


def standard_class(lattice: SymplecticLattice, letter: str, index: int) -> HomologyClass:
    """a_i or b_i, with 1-based index as in the notation."""
    if letter not in ("a", "b"):
        raise LatticeError(f"basis letter must be 'a' or 'b', got {letter!r}")
    if not 1 <= index <= lattice.genus:
        raise LatticeError(f"basis index {index} outside 1..{lattice.genus}")
    coeffs = [0] * lattice.rank
    coeffs[2 * (index - 1) + (0 if letter == "a" else 1)] = 1
    return HomologyClass(tuple(coeffs))


def intersection_pairing(x: HomologyClass, y: HomologyClass, lattice: SymplecticLattice) -> int:
    """Algebraic intersection number xᵀ J y."""
    if len(x.coeffs) != lattice.rank or len(y.coeffs) != lattice.rank:
        raise LatticeError(
            f"dimension mismatch: classes of length {len(x.coeffs)}, {len(y.coeffs)} "
            f"in a rank-{lattice.rank} lattice"
        )
    total = 0
    for i in range(lattice.genus):
        total += x.coeffs[2 * i] * y.coeffs[2 * i + 1] - x.coeffs[2 * i + 1] * y.coeffs[2 * i]
    return total


# ---------------------------------------------------------------------------
# Cut systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CutSystem:
    curves: tuple[HomologyClass, ...]
    # Optional per-curve tag naming the level circle a curve came from.
    provenance: tuple[str | None, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "curves", tuple(self.curves))
        if self.provenance is not None:
            object.__setattr__(self, "provenance", tuple(self.provenance))
            if len(self.provenance) != len(self.curves):
                raise CutSystemError("provenance must tag every curve")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "CutSystem":
        return cls(tuple(HomologyClass(tuple(r)) for r in rows))

    def __len__(self) -> int:
        return len(self.curves)

    def matrix(self, lattice: SymplecticLattice) -> np.ndarray:
        return as_integer_matrix([c.coeffs for c in self.curves], ncols=lattice.rank)

    def rows(self) -> list[list[int]]:
        return [list(c.coeffs) for c in self.curves]

    def labels(self) -> list[str]:
        return [c.label() for c in self.curves]

    def without_provenance(self) -> "CutSystem":
        return CutSystem(self.curves)


@dataclass(frozen=True)
class LagrangianSublattice:
    genus: int
    # Hermite-reduced basis rows; equal objects iff equal sublattices.
    basis: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def classes(self) -> tuple[HomologyClass, ...]:
        return tuple(HomologyClass(row) for row in self.basis)

    def as_cut_system(self) -> CutSystem:
        return CutSystem(self.classes())


def validate_cut_system(cs: CutSystem, lattice: SymplecticLattice) -> CheckReport:
    """Check count, lengths, isotropy and the unimodular Lagrangian condition."""
    checks = [
        Check(
            "curve_count",
            len(cs.curves) == lattice.genus,
            f"{len(cs.curves)} curves for genus {lattice.genus}",
        )
    ]
    bad_len = [i for i, c in enumerate(cs.curves) if len(c.coeffs) != lattice.rank]
    checks.append(
        Check(
            "curve_length",
            not bad_len,
            f"curves {bad_len} do not have length {lattice.rank}" if bad_len else "",
        )
    )
    if bad_len:
        return CheckReport.from_checks(checks)

    nonzero_pairs = []
    for i in range(len(cs.curves)):
        for j in range(i + 1, len(cs.curves)):
            p = intersection_pairing(cs.curves[i], cs.curves[j], lattice)
            if p != 0:
                nonzero_pairs.append(f"<{i},{j}>={p}")
    checks.append(Check("isotropic", not nonzero_pairs, ", ".join(nonzero_pairs)))

    factors = invariant_factors(cs.matrix(lattice)) if cs.curves else []
    unimodular = len(factors) == len(cs.curves) and all(d == 1 for d in factors)
    checks.append(
        Check("unimodular", unimodular, "" if unimodular else f"invariant factors {factors}")
    )
    return CheckReport.from_checks(checks)


def require_valid(cs: CutSystem, lattice: SymplecticLattice) -> None:
    report = validate_cut_system(cs, lattice)
    if not report.ok:
        names = ", ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in report.failures)
        raise CutSystemError(f"invalid cut system: {names}")


def slide(cs: CutSystem, i: int, j: int, sign: int, lattice: SymplecticLattice) -> CutSystem:
    """Handle slide c_i ← c_i + sign · c_j (0-based indices)."""
    if sign not in (1, -1):
        raise CutSystemError(f"slide sign must be ±1, got {sign}")
    n = len(cs.curves)
    if not (0 <= i < n and 0 <= j < n):
        raise CutSystemError(f"slide indices ({i}, {j}) outside 0..{n - 1}")
    if i == j:
        raise CutSystemError("cannot slide a curve over itself")
    require_valid(cs, lattice)
    curves = list(cs.curves)
    curves[i] = curves[i] + sign * curves[j]
    provenance = None
    if cs.provenance is not None:
        provenance = list(cs.provenance)
        provenance[i] = None
    return CutSystem(tuple(curves), None if provenance is None else tuple(provenance))


def lagrangian_span(cs: CutSystem, lattice: SymplecticLattice) -> LagrangianSublattice:
    require_valid(cs, lattice)
    if not cs.curves:
        return LagrangianSublattice(lattice.genus, ())
    H = hermite_normal_form(cs.matrix(lattice))
    return LagrangianSublattice(lattice.genus, tuple(tuple(row) for row in to_lists(H)))


def coordinates_in(cs: CutSystem, x: HomologyClass, lattice: SymplecticLattice) -> list[int] | None:
    """Coefficients of x in the basis cs, or None when x is not in the span."""
    if len(x.coeffs) != lattice.rank:
        raise LatticeError(f"class of length {len(x.coeffs)} in a rank-{lattice.rank} lattice")
    return row_coordinates(cs.matrix(lattice), x.coeffs)


def same_up_to_sign(first: CutSystem, second: CutSystem) -> bool:
    if len(first.curves) != len(second.curves):
        return False
    return all(x == y or x == -y for x, y in zip(first.curves, second.curves))
