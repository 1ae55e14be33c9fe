"""Latent and global permutation symmetries.

A constant matrix M commutes with R_S(H, λ) for every λ exactly when it
commutes with every walk matrix (H^k)_SS. Cayley-Hamilton lets the check
stop at k = N - 1, so all verdicts here are finite and exact.

Permutations act on positions of the site list: P e_i = e_{p(i)}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError
from .exact import ExactMatrix, Poly, as_exact
from .groups import Permutation, SymmetryGroup, search_permutations
from .reduction import ReducedMatrix, _square, check_sites

MAX_LATENT_SITES = 10
MAX_GLOBAL_SITES = 12


@lru_cache(maxsize=64)
def _full_powers(h: ExactMatrix) -> tuple[ExactMatrix, ...]:
    return tuple(h.powers(max(h.rows - 1, 0)))


def full_powers(h) -> tuple[ExactMatrix, ...]:
    """H^0 .. H^(N-1) (cached per matrix)."""
    h = _square(h)
    return _full_powers(ExactMatrix(h.rows, h.cols, h.entries()))


@dataclass(frozen=True)
class WalkProfile:
    sites: tuple[int, ...]  # 1-based
    matrices: tuple[ExactMatrix, ...]  # (H^k)_SS, k = 0 .. N-1

    def __len__(self) -> int:
        return len(self.matrices)

    def __getitem__(self, k: int) -> ExactMatrix:
        return self.matrices[k]

    def entry_sequence(self, i: int, j: int) -> tuple:
        return tuple(m[i, j] for m in self.matrices)


def walk_profile(h, sites: Iterable[int]) -> WalkProfile:
    h = _square(h)
    s0 = check_sites(sites, h.rows)
    mats = tuple(p.submatrix(s0, s0) for p in full_powers(h))
    return WalkProfile(tuple(x + 1 for x in s0), mats)


def as_constant_matrix(m, size: int) -> ExactMatrix:
    if isinstance(m, Permutation):
        m = m.matrix()
    m = as_exact(m)
    if m.shape != (size, size):
        raise InputError(f"symmetry matrix must be {size}x{size}, got {m.rows}x{m.cols}")
    return m


def local_power_commute(h, sites: Iterable[int], m) -> bool:
    """True iff [(H^k)_SS, M] = 0 for all 0 <= k <= N-1."""
    prof = walk_profile(h, sites)
    mm = as_constant_matrix(m, len(prof.sites))
    return all(w.commutes_with(mm) for w in prof.matrices)


def symbolic_commute(r: ReducedMatrix, m) -> bool:
    """True iff R(λ) M = M R(λ) identically in λ.

    Works on the cleared polynomial matrix poles·R, which commutes with M
    exactly when R does.
    """
    n = r.size
    mm = as_constant_matrix(m, n)
    cl = r.cleared()
    for i in range(n):
        for j in range(n):
            lhs = Poly()
            rhs = Poly()
            for k in range(n):
                if mm[k, j]:
                    lhs = lhs + cl[i][k] * mm[k, j]
                if mm[i, k]:
                    rhs = rhs + cl[k][j] * mm[i, k]
            if lhs != rhs:
                return False
    return True


def latent_permutation_group(h, sites: Iterable[int], *, max_sites: int = MAX_LATENT_SITES) -> SymmetryGroup:
    """All permutations of S commuting with R_S(H) for every λ.

    Two positions can only be exchanged if their full walk sequences
    (H^k)_uu agree; colour refinement on the pairwise sequences prunes the
    backtracking, which then checks pairwise consistency exactly.
    """
    h = _square(h)
    s0 = check_sites(sites, h.rows)
    if len(s0) > max_sites:
        raise PreconditionError(f"latent search limited to |S| <= {max_sites}, got {len(s0)}")
    prof = walk_profile(h, [x + 1 for x in s0])
    m = len(s0)
    keys = [[prof.entry_sequence(i, j) for j in range(m)] for i in range(m)]
    elems = search_permutations(keys)
    cert = {"max_k": h.rows - 1, "walk_levels": len(prof), "method": "walk-sequence refinement + backtracking"}
    return SymmetryGroup.from_elements(elems, tuple(x + 1 for x in s0), cert)


def global_automorphisms(h, *, max_sites: int = MAX_GLOBAL_SITES, limit: int = 100_000) -> SymmetryGroup:
    """All permutations P of the N sites with P H P^-1 = H."""
    h = _square(h)
    n = h.rows
    if n > max_sites:
        raise PreconditionError(f"automorphism search limited to N <= {max_sites}, got {n}")
    keys = [[h[i, j] for j in range(n)] for i in range(n)]
    elems = search_permutations(keys, limit=limit)
    return SymmetryGroup.from_elements(elems, tuple(range(1, n + 1)), {"method": "row-multiset refinement + backtracking"})


def cyclic_shift(m: int) -> ExactMatrix:
    return ExactMatrix.from_permutation([(i + 1) % m for i in range(m)])


def cyclic_orbit_sets(h, *, min_length: int = 3, group: SymmetryGroup | None = None) -> list[tuple[int, ...]]:
    """Site sets cyclically permuted by an n-cycle automorphism.

    For every automorphism of order n >= min_length, each of its cycles of
    length n is an orbit V; it is returned in cyclic order (1-based) and the
    local commutation [P_VV, (H^k)_VV] = 0 is asserted for all k.
    """
    h = _square(h)
    g = group if group is not None else global_automorphisms(h)
    seen: set[frozenset] = set()
    out: list[tuple[int, ...]] = []
    for p in g.elements:
        n = p.order()
        if n < min_length:
            continue
        for cyc in p.cycles():
            if len(cyc) != n or frozenset(cyc) in seen:
                continue
            seen.add(frozenset(cyc))
            orbit = tuple(g.points[i] for i in cyc)
            if not local_power_commute(h, orbit, cyclic_shift(n)):
                raise AssertionError(f"orbit {orbit} does not commute with its cyclic shift")
            out.append(orbit)
    return sorted(out, key=lambda v: (len(v), sorted(v)))


def _is_symmetric_circulant(r: ReducedMatrix, order: Sequence[int]) -> bool:
    n = len(order)
    first = [r[order[0], order[j]] for j in range(n)]
    for i in range(n):
        for j in range(n):
            if r[order[i], order[j]] != first[(j - i) % n]:
                return False
    return all(first[k] == first[(n - k) % n] for k in range(n))


class CirculantForm(tuple):
    """(reordering, is_symmetric_circulant); row t of the canonical matrix
    is row ``order(t)`` of R."""

    def __new__(cls, order: Permutation, ok: bool):
        return super().__new__(cls, (order, ok))

    @property
    def order(self) -> Permutation:
        return self[0]

    @property
    def ok(self) -> bool:
        return self[1]


def circulant_canonicalize(r: ReducedMatrix, *, limit: int = 100_000) -> CirculantForm:
    """Find a cyclic order of R's sites in which R is a symmetric circulant.

    Candidate orders come from n-cycles commuting with R (its latent C_n
    generators); any rotation or reflection of such an order is equivalent,
    so the lexicographically first one is reported.
    """
    n = r.size
    ident = Permutation.identity(n)
    if n == 1:
        return CirculantForm(ident, True)
    keys = [[r[i, j] for j in range(n)] for i in range(n)]
    try:
        comm = search_permutations(keys, limit=limit)
    except PreconditionError:
        return CirculantForm(ident, False)
    candidates = []
    for p in comm:
        if p.order() == n and len(p.cycles()) == 1:
            order = [0]
            while len(order) < n:
                order.append(p(order[-1]))
            candidates.append(tuple(order))
    for order in sorted(candidates):
        if _is_symmetric_circulant(r, order):
            return CirculantForm(Permutation(order), True)
    return CirculantForm(ident, False)


def cospectral(h, u: int, v: int) -> bool:
    """Exact test (H^k)_uu = (H^k)_vv for k <= N-1 (1-based sites)."""
    h = _square(h)
    a, b = check_sites([u], h.rows)[0], check_sites([v], h.rows)[0]
    return all(p[a, a] == p[b, b] for p in full_powers(h))


def walk_singlet_check(h, pair: tuple[int, int], w: int) -> bool:
    """True iff (H^k)_{w,u} = (H^k)_{w,v} for all k <= N-1."""
    h = _square(h)
    u, v = pair
    if u == v:
        raise InputError("cospectral pair needs two distinct sites")
    if not cospectral(h, u, v):
        raise PreconditionError(f"sites {u} and {v} are not cospectral")
    a, b = check_sites([u, v], h.rows)
    c = check_sites([w], h.rows)[0]
    return all(p[c, a] == p[c, b] for p in full_powers(h))


__all__ = [
    "CirculantForm",
    "WalkProfile",
    "circulant_canonicalize",
    "cospectral",
    "cyclic_orbit_sets",
    "cyclic_shift",
    "full_powers",
    "global_automorphisms",
    "latent_permutation_group",
    "local_power_commute",
    "symbolic_commute",
    "walk_profile",
    "walk_singlet_check",
]
