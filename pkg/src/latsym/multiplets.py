"""Complement multiplets and the single-site extension that keeps latent
symmetry.

A set M of complement sites is a multiplet when the summed walk weights
Σ_{m in M} (H_{SS̄} H_{S̄S̄}^k)_{s,m} are the same for every s in S and all k.
Coupling one new site to multiplets changes R_S(H) by a(λ) times the
all-ones matrix, which commutes with every permutation of S.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError
from .exact import ExactMatrix, Hamiltonian, RationalFunction
from .exact.poly import _frac
from .reduction import _square, blocks, check_sites, complement, isospectral_reduce
from .symmetry import latent_permutation_group

MAX_COMPLEMENT = 16
DEFAULT_MAX_SIZE = 4


def decoupled_matrix(h, sites: Iterable[int]) -> Hamiltonian:
    """H with every coupling between S and its complement set to zero."""
    h = _square(h)
    s0 = set(check_sites(sites, h.rows))
    n = h.rows
    ent = [h[i, j] if (i in s0) == (j in s0) else Fraction(0) for i in range(n) for j in range(n)]
    return Hamiltonian(n, n, ent, labels=getattr(h, "labels", None))


@dataclass(frozen=True)
class Multiplet:
    sites: tuple[int, ...]  # 1-based, sorted
    constants: tuple[Fraction, ...]  # c_k, k = 0 .. N-1
    minimal: bool = True


def _walk_columns(h: ExactMatrix, s0: Sequence[int]) -> tuple[tuple[int, ...], list[ExactMatrix]]:
    """Complement sites and the matrices H_SS̄ H_S̄S̄^k for k = 0 .. N-1."""
    _, b, _, hbb = blocks(h, s0)
    sb = complement(s0, h.rows)
    if not sb:
        return sb, []
    mats = [b]
    for _ in range(h.rows - 1):
        mats.append(mats[-1] @ hbb)
    return sb, mats


def _subset_constants(mats: list[ExactMatrix], cols: Sequence[int]) -> tuple[Fraction, ...] | None:
    out = []
    for m in mats:
        vals = {sum((m[i, c] for c in cols), Fraction(0)) for i in range(m.rows)}
        if len(vals) != 1:
            return None
        out.append(vals.pop())
    return tuple(out)


def _complement_positions(h, s0, members: Iterable[int]) -> tuple[tuple[int, ...], list[int]]:
    sb = complement(s0, h.rows)
    pos = {x + 1: i for i, x in enumerate(sb)}
    members = tuple(sorted(int(x) for x in members))
    if not members:
        raise InputError("a multiplet needs at least one site")
    bad = [x for x in members if x not in pos]
    if bad:
        raise InputError(f"multiplet sites {bad} are not in the complement of S")
    if len(set(members)) != len(members):
        raise InputError(f"repeated site in multiplet {list(members)}")
    return members, [pos[x] for x in members]


def is_multiplet(h, sites: Iterable[int], members: Iterable[int]) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Exact verdict and the constants c_k on success."""
    h = _square(h)
    s0 = check_sites(sites, h.rows)
    _, cols = _complement_positions(h, s0, members)
    _, mats = _walk_columns(h, s0)
    consts = _subset_constants(mats, cols)
    return consts is not None, consts


def find_multiplets(h, sites: Iterable[int], max_size: int = DEFAULT_MAX_SIZE,
                    max_complement: int = MAX_COMPLEMENT) -> list[Multiplet]:
    """All multiplets with at most ``max_size`` sites, in size order."""
    h = _square(h)
    s0 = check_sites(sites, h.rows)
    sb, mats = _walk_columns(h, s0)
    if len(sb) > max_complement:
        raise PreconditionError(f"multiplet search limited to |S̄| <= {max_complement}, got {len(sb)}")
    if max_size < 1:
        raise InputError("max_size must be at least 1")
    found: list[Multiplet] = []
    found_sets: list[frozenset] = []
    for size in range(1, min(max_size, len(sb)) + 1):
        for cols in combinations(range(len(sb)), size):
            consts = _subset_constants(mats, cols)
            if consts is None:
                continue
            members = tuple(sb[c] + 1 for c in cols)
            fs = frozenset(members)
            minimal = not any(f < fs for f in found_sets)
            found.append(Multiplet(members, consts, minimal))
            found_sets.append(fs)
    return found


@dataclass
class ExtensionPlan:
    """Sets coupled to the new site with couplings h_j, plus its on-site value."""

    multiplets: list = field(default_factory=list)  # (sites or Multiplet, coupling)
    onsite: Fraction = Fraction(0)

    def __post_init__(self):
        norm = []
        for m, g in self.multiplets:
            members = m.sites if isinstance(m, Multiplet) else tuple(m)
            norm.append((tuple(sorted(int(x) for x in members)), _frac(g)))
        self.multiplets = norm
        self.onsite = _frac(self.onsite)


def extend_with_site(h, sites: Iterable[int], plan: ExtensionPlan, check: bool = True) -> Hamiltonian:
    """Append a site c with H_{x,c} = H_{c,x} = Σ_{j: x in M_j} h_j."""
    h = _square(h)
    sites = list(sites)
    s0 = check_sites(sites, h.rows)
    n = h.rows
    col = [Fraction(0)] * n
    for members, g in plan.multiplets:
        members, _ = _complement_positions(h, s0, members)
        if check:
            ok, _ = is_multiplet(h, sites, members)
            if not ok:
                raise PreconditionError(f"sites {list(members)} do not form a complement multiplet")
        for x in members:
            col[x - 1] += g
    ent = []
    for i in range(n):
        ent.extend(h[i, j] for j in range(n))
        ent.append(col[i])
    ent.extend(col)
    ent.append(plan.onsite)
    labels = list(getattr(h, "labels", [str(i + 1) for i in range(n)])) + [str(n + 1)]
    meta = dict(getattr(h, "meta", {}) or {})
    return Hamiltonian(n + 1, n + 1, ent, labels=labels, meta=meta)


@dataclass
class ExtensionVerdict:
    shift: RationalFunction | None  # a(λ) when Δ = a(λ) J
    rank_one: bool
    group_preserved: bool
    delta: tuple[tuple[RationalFunction, ...], ...]
    group_orders: tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.rank_one and self.group_preserved

    def to_data(self) -> dict:
        return {
            "a": str(self.shift) if self.shift is not None else None,
            "rank_one": self.rank_one,
            "group_preserved": self.group_preserved,
            "group_orders": list(self.group_orders),
        }


def verify_extension(h, h_new, sites: Iterable[int]) -> ExtensionVerdict:
    """Δ = R_S(H') - R_S(H), whether Δ = a(λ) J, and whether the latent
    permutation group over S survived."""
    h, h_new = _square(h), _square(h_new)
    sites = list(sites)
    n = h.rows
    if h_new.rows != n + 1:
        raise InputError(f"extended system must have {n + 1} sites, got {h_new.rows}")
    if h_new.submatrix(range(n), range(n)) != ExactMatrix(n, n, h.entries()):
        raise InputError("extended system does not contain the original as its leading block")
    r_old = isospectral_reduce(h, sites)
    r_new = isospectral_reduce(h_new, sites)
    k = r_old.size
    delta = tuple(tuple(r_new[i, j] - r_old[i, j] for j in range(k)) for i in range(k))
    first = delta[0][0]
    rank_one = all(d == first for row in delta for d in row)
    g_old = latent_permutation_group(h, sites)
    g_new = latent_permutation_group(h_new, sites)
    preserved = set(g_old.elements) <= set(g_new.elements)
    if rank_one and not preserved:
        raise AssertionError("Δ = a(λ)J but the latent group shrank")
    return ExtensionVerdict(first if rank_one else None, rank_one, preserved, delta, (g_old.order, g_new.order))


__all__ = [
    "ExtensionPlan",
    "ExtensionVerdict",
    "Multiplet",
    "decoupled_matrix",
    "extend_with_site",
    "find_multiplets",
    "is_multiplet",
    "verify_extension",
]
