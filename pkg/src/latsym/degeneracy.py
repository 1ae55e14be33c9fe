"""Degeneracy lower bounds from a latent symmetry group, checked against the
exact multiplicity structure of det(H - λI).

A permutation group G of S acts on C^|S|; if a_i copies of an irreducible
representation of dimension d_i occur, at least a_i eigenvalues of H are
d_i-fold degenerate. Closed-form tables cover C_n and D_n. For any other
non-abelian G the action is faithful, so some irreducible constituent has
dimension >= 2 and at least one degenerate eigenvalue is certified.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .characters import Cyclo, irrep_table
from .errors import PreconditionError
from .exact import ExactMatrix, Poly, charpoly_and_adjugate, exact_multiplicity_structure
from .groups import Permutation, SymmetryGroup, dihedral_generators
from .reduction import _square, check_sites
from .symmetry import latent_permutation_group


@dataclass(frozen=True)
class IrrepMultiplicity:
    label: str
    dim: int
    mult: int


@dataclass(frozen=True)
class Bound:
    """At least ``count`` eigenvalues of multiplicity >= ``dim``."""

    dim: int
    count: int
    source: str


@dataclass
class BoundVerdict:
    bound: Bound
    observed: int
    ok: bool


@dataclass
class DegeneracyReport:
    sites: tuple[int, ...]
    group_order: int
    tag: str
    irreps: list[IrrepMultiplicity]
    bounds: list[Bound]
    structure: list[tuple[Poly, int]]
    verdicts: list[BoundVerdict] = field(default_factory=list)
    diagonalizable: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def vacuous(self) -> bool:
        return not any(b.dim >= 2 for b in self.bounds)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def degenerate_factors(self) -> list[tuple[Poly, int]]:
        return [(f, m) for f, m in self.structure if m >= 2]

    def to_data(self) -> dict:
        return {
            "sites": list(self.sites),
            "group_order": self.group_order,
            "tag": self.tag,
            "irreps": [{"label": r.label, "dim": r.dim, "mult": r.mult} for r in self.irreps],
            "bounds": [
                {"dim": v.bound.dim, "count": v.bound.count, "source": v.bound.source, "observed": v.observed, "ok": v.ok}
                for v in self.verdicts
            ],
            "multiplicity_structure": [{"factor": str(f), "degree": f.degree, "mult": m} for f, m in self.structure],
            "diagonalizable": self.diagonalizable,
            "vacuous": self.vacuous,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def permutation_character(g: SymmetryGroup) -> dict[Permutation, int]:
    """Fixed-point counts; asserted constant on conjugacy classes."""
    chi = {p: p.fixed_points() for p in g.elements}
    for cls in g.conjugacy_classes():
        if len({chi[p] for p in cls}) != 1:
            raise AssertionError("permutation character is not a class function")
    return chi


def abstract_labels(g: SymmetryGroup) -> dict[Permutation, tuple[int, int]]:
    """Map each element to (e, j) with element = s^e r^j."""
    kind, n = g.tag.kind, g.tag.n
    if kind == "cyclic":
        r = next(p for p in g.elements if p.order() == n)
        return {r ** j: (0, j) for j in range(n)}
    if kind == "dihedral":
        r, s = dihedral_generators(g.elements, n)
        out = {}
        for j in range(n):
            out[r ** j] = (0, j)
            out[s * r ** j] = (1, j)
        return out
    raise ValueError(f"no closed-form table for {g.tag}")


def irrep_multiplicities(g: SymmetryGroup, chi: dict[Permutation, int] | None = None) -> list[IrrepMultiplicity]:
    """a_i = (1/|G|) Σ_g conj(χ_i(g)) χ(g) with exact cyclotomic arithmetic."""
    if g.tag.kind not in ("cyclic", "dihedral"):
        raise PreconditionError(f"irrep multiplicities need a cyclic or dihedral group, got {g.tag}")
    chi = chi if chi is not None else permutation_character(g)
    table = irrep_table(g.tag.kind, g.tag.n) if g.order > 1 else irrep_table("cyclic", 1)
    labels = abstract_labels(g) if g.order > 1 else {g.elements[0]: (0, 0)}
    if len(labels) != g.order:
        raise AssertionError("element labelling is not a bijection")
    out = []
    for irr in table.irreps:
        tot = Cyclo(table.n)
        for p, ab in labels.items():
            tot = tot + irr.character(ab).conj().scale(chi[p])
        a = tot.rational_value() / g.order
        if a.denominator != 1 or a < 0:
            raise AssertionError(f"multiplicity of {irr.label} is {a}")
        out.append(IrrepMultiplicity(irr.label, irr.dim, int(a)))
    if sum(m.dim * m.mult for m in out) != g.degree:
        raise AssertionError("dimension count Σ a_i d_i differs from |S|")
    return out


def natural_dihedral(g: SymmetryGroup) -> bool:
    """D_n acting on exactly n points through an n-cycle."""
    if g.tag.kind != "dihedral" or g.degree != g.tag.n:
        return False
    r, _ = dihedral_generators(g.elements, g.tag.n)
    return len(r.cycles()) == 1 and len(r.cycles()[0]) == g.tag.n


def degeneracy_bounds(g: SymmetryGroup, mults: list[IrrepMultiplicity] | None = None) -> list[Bound]:
    kind = g.tag.kind
    if kind in ("cyclic", "dihedral"):
        mults = mults if mults is not None else irrep_multiplicities(g)
        bounds = [Bound(m.dim, m.mult, f"irrep {m.label}") for m in mults if m.mult > 0]
        if natural_dihedral(g) and (g.tag.n - 1) // 2 > 0:
            bounds.append(Bound(2, (g.tag.n - 1) // 2, f"dihedral({g.tag.n}) pairs"))
        return bounds
    if kind == "other_nonabelian":
        return [Bound(2, 1, "faithful non-abelian action")]
    return []


def count_at_least(structure, dim: int) -> int:
    """Number of eigenvalues of multiplicity >= dim that fit into the
    observed structure: a root of multiplicity m hosts floor(m/dim)."""
    return sum(f.degree * (m // dim) for f, m in structure)


def is_diagonalizable(h: ExactMatrix, structure) -> bool:
    """Exact test: the squarefree part of the characteristic polynomial annihilates H."""
    sqf = Poly.const(1)
    for f, _ in structure:
        sqf = sqf * f
    n = h.rows
    acc = ExactMatrix.zeros(n)
    ident = ExactMatrix.identity(n)
    for c in reversed(sqf.c):
        acc = acc @ h + ident.scale(c)
    return all(x == 0 for x in acc.entries())


def verify_report(h, g: SymmetryGroup, bounds: list[Bound], mults: list[IrrepMultiplicity] | None = None) -> DegeneracyReport:
    h = _square(h)
    char = charpoly_and_adjugate(h).char
    structure = exact_multiplicity_structure(char) if char.degree > 0 else []
    verdicts = []
    for b in bounds:
        obs = count_at_least(structure, b.dim)
        verdicts.append(BoundVerdict(b, obs, obs >= b.count))
    rep = DegeneracyReport(
        sites=g.points,
        group_order=g.order,
        tag=str(g.tag),
        irreps=list(mults or []),
        bounds=list(bounds),
        structure=structure,
        verdicts=verdicts,
        diagonalizable=is_diagonalizable(h, structure),
    )
    if not rep.diagonalizable:
        rep.notes.append("H is not diagonalizable; multiplicities are algebraic")
    if g.tag.kind == "cyclic" and g.order > 2:
        rep.notes.append("cyclic group: one-dimensional irreps only, no degeneracy is forced")
    if g.tag.kind == "other_abelian":
        rep.notes.append("abelian group without closed-form table: no multiplicity claim")
    if g.tag.kind == "other_nonabelian":
        chi = permutation_character(g)
        norm = Fraction(sum(v * v for v in chi.values()), g.order)
        rep.notes.append(f"faithful non-abelian permutation action; <χ,χ> = {norm}")
    return rep


def analyze_degeneracy(h, sites) -> DegeneracyReport:
    """Latent group over S, its irreducible content and the verified bounds."""
    h = _square(h)
    check_sites(sites, h.rows)
    g = latent_permutation_group(h, sites)
    mults = irrep_multiplicities(g) if g.tag.kind in ("cyclic", "dihedral") else None
    bounds = degeneracy_bounds(g, mults)
    return verify_report(h, g, bounds, mults)


__all__ = [
    "Bound",
    "BoundVerdict",
    "DegeneracyReport",
    "IrrepMultiplicity",
    "analyze_degeneracy",
    "count_at_least",
    "degeneracy_bounds",
    "irrep_multiplicities",
    "is_diagonalizable",
    "natural_dihedral",
    "permutation_character",
    "verify_report",
]
