"""Isospectral reduction R_S(H, λ) over a site set S and its nonlinear spectrum.

Sites are 1-based in every public signature. The reduction is kept exactly:
each entry is a reduced RationalFunction whose denominator divides the pole
polynomial det(λI - H_{S̄S̄}).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import InputError, PoleError, PreconditionError
from .exact import (
    ExactMatrix,
    Poly,
    RationalFunction,
    as_exact,
    charpoly_and_adjugate,
    charpoly_by_interpolation,
    exact_multiplicity_structure,
    poly_det,
    poly_gcd,
    roots_with_multiplicity,
)
from .exact.poly import _frac


def check_sites(sites: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a 1-based site list against an n-site system; return 0-based."""
    try:
        s = [int(x) for x in sites]
    except (TypeError, ValueError) as exc:
        raise InputError(f"site indices must be integers: {sites!r}") from exc
    if not 1 <= len(s) <= n:
        raise InputError(f"need 1 <= |S| <= {n}, got {len(s)} sites")
    if len(set(s)) != len(s):
        raise InputError(f"repeated site in {s}")
    bad = [x for x in s if not 1 <= x <= n]
    if bad:
        raise InputError(f"site index out of range 1..{n}: {bad}")
    return tuple(x - 1 for x in s)


def complement(s0: Sequence[int], n: int) -> tuple[int, ...]:
    taken = set(s0)
    return tuple(i for i in range(n) if i not in taken)


def blocks(h: ExactMatrix, s0: Sequence[int]):
    """(H_SS, H_SS̄, H_S̄S, H_S̄S̄) for 0-based S."""
    sb = complement(s0, h.rows)
    return h.submatrix(s0, s0), h.submatrix(s0, sb), h.submatrix(sb, s0), h.submatrix(sb, sb)


def _square(h) -> ExactMatrix:
    h = as_exact(h)
    if not h.is_square:
        raise InputError(f"Hamiltonian must be square, got {h.rows}x{h.cols}")
    return h


@dataclass(frozen=True, eq=False)
class ReducedMatrix:
    entries: tuple[tuple[RationalFunction, ...], ...]
    poles: Poly  # monic det(λI - H_S̄S̄)
    sites: tuple[int, ...]  # 1-based, fixes row/column order
    n_total: int

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> RationalFunction:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedMatrix):
            return NotImplemented
        return self.sites == other.sites and self.entries == other.entries and self.poles == other.poles

    def __hash__(self):
        return hash((self.sites, self.entries))

    def all_entries(self):
        for row in self.entries:
            yield from row

    def in_w_pi(self) -> bool:
        return all(f.in_w_pi() for f in self.all_entries())

    def cleared(self) -> list[list[Poly]]:
        """Polynomial matrix poles(λ) * R(λ)."""
        return [[f.num * self.poles.exact_div(f.den) for f in row] for row in self.entries]

    def is_constant(self) -> bool:
        return all(f.is_const() for f in self.all_entries())

    def certify(self) -> None:
        """Assert 𝕎_π membership and that every denominator divides the poles."""
        for f in self.all_entries():
            if not f.in_w_pi():
                raise AssertionError(f"entry {f} is outside W_pi")
            if not f.den.divides(self.poles):
                raise AssertionError(f"denominator {f.den} does not divide poles {self.poles}")


def isospectral_reduce(h, sites: Iterable[int]) -> ReducedMatrix:
    """R_S(H) = H_SS - H_SS̄ (H_S̄S̄ - λI)^{-1} H_S̄S, computed exactly.

    The resolvent comes from the Faddeev-LeVerrier adjugate, so every entry
    is H_SS[i,j] + (B adj(λI - H_S̄S̄) C)[i,j] / det(λI - H_S̄S̄).
    """
    h = _square(h)
    s0 = check_sites(sites, h.rows)
    hss, b, c, hbb = blocks(h, s0)
    fl = charpoly_and_adjugate(hbb)
    p = fl.monic
    terms = [b @ a @ c for a in fl.adj_coeffs]
    k = len(s0)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            num = p * hss[i, j] + Poly(t[i, j] for t in terms)
            row.append(RationalFunction(num, p))
        rows.append(tuple(row))
    r = ReducedMatrix(tuple(rows), p, tuple(x + 1 for x in s0), h.rows)
    r.certify()
    return r


def reduce_via_charpoly(h, sites: Iterable[int]) -> ReducedMatrix:
    """Second, independent route to R_S(H) through Cayley-Hamilton.

    With c_k(λ) the coefficients (in x) of det(xI - (H_S̄S̄ - λI)),
    R_S = H_SS + sum_k c_k/c_0 sum_n binom(k-1, n) (-λ)^{k-1-n} H_SS̄ H_S̄S̄^n H_S̄S.
    The characteristic polynomial is obtained by interpolating exact
    determinants, so nothing is shared with the Faddeev-LeVerrier path.
    """
    h = _square(h)
    s0 = check_sites(sites, h.rows)
    hss, b, c, hbb = blocks(h, s0)
    m = hbb.rows
    q = charpoly_by_interpolation(hbb)  # det(yI - H_S̄S̄)
    # c_k(λ) = sum_{j>=k} q_j binom(j, k) λ^{j-k}
    ck = [Poly(q.coeff(j) * comb(j, kk) for j in range(kk, m + 1)) for kk in range(m + 1)]
    walks = [b @ w @ c for w in hbb.powers(max(m - 1, 0))] if m else []
    neg_lam = Poly((0, -1))
    # inner[k] = sum_n binom(k-1, n) (-λ)^{k-1-n} W_n, stored entrywise as polynomials
    size = len(s0)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            num = ck[0] * hss[i, j]
            for kk in range(1, m + 1):
                inner = Poly()
                for nn in range(kk):
                    w = walks[nn][i, j]
                    if w:
                        inner = inner + (neg_lam ** (kk - 1 - nn)) * (comb(kk - 1, nn) * w)
                num = num + ck[kk] * inner
            row.append(RationalFunction(num, ck[0]))
        rows.append(tuple(row))
    r = ReducedMatrix(tuple(rows), q.monic(), tuple(x + 1 for x in s0), h.rows)
    r.certify()
    return r


def evaluate(r: ReducedMatrix, lam) -> ExactMatrix:
    lam = _frac(lam)
    if r.poles(lam) == 0:
        factor = Poly((-lam, 1))
        raise PoleError(f"λ = {lam} is a pole of the reduction (factor {factor})", factor=factor)
    n = r.size
    return ExactMatrix(n, n, (f(lam) for row in r.entries for f in row))


def neumann_truncation(h, sites: Iterable[int], k_max: int, lam) -> ExactMatrix:
    """Partial sum H_SS + sum_{j=1}^{k_max} λ^{-j} H_SS̄ H_S̄S̄^{j-1} H_S̄S at λ,
    the expansion of -(H_S̄S̄ - λI)^{-1} in powers of 1/λ.

    Refuses unless |λ| exceeds the max-row-sum norm of H_S̄S̄, a certified
    sufficient condition for the series to converge.
    """
    h = _square(h)
    s0 = check_sites(sites, h.rows)
    lam = _frac(lam)
    if k_max < 0:
        raise InputError("k_max must be non-negative")
    hss, b, c, hbb = blocks(h, s0)
    bound = hbb.max_row_sum()
    if abs(lam) <= bound:
        raise PreconditionError(f"|λ| = {abs(lam)} does not exceed the norm bound {bound}; series may diverge")
    out = hss
    if hbb.rows == 0:
        return out
    x = b
    for j in range(1, k_max + 1):
        out = out + (x @ c).scale(Fraction(1) / lam ** j)
        x = x @ hbb
    return out


@dataclass(frozen=True)
class NonlinearSpectrum:
    cleared: Poly  # numerator of det(R_S - λI) in lowest terms
    det_reduced: RationalFunction  # det(R_S - λI)
    structure: tuple[tuple[Poly, int], ...]
    roots: tuple[tuple[complex, int], ...]
    char_h: Poly  # det(H - λI)
    shared_factor: Poly  # gcd(char H, det(λI - H_S̄S̄))
    schur_identity: bool
    coincides: bool  # σ(R_S) = σ(H) guaranteed (spectra of H and H_S̄S̄ disjoint)
    divides_char: bool = field(default=True)

    @property
    def degree(self) -> int:
        return self.cleared.degree


def det_minus_lambda(r: ReducedMatrix) -> RationalFunction:
    """det(R_S(λ) - λI), via Bareiss on the common-denominator matrix."""
    p = r.poles
    cl = r.cleared()
    lam_p = Poly((0, 1)) * p
    mat = [[cl[i][j] - (lam_p if i == j else Poly()) for j in range(r.size)] for i in range(r.size)]
    return RationalFunction(poly_det(mat), p ** r.size)


def nonlinear_spectrum(r: ReducedMatrix, h) -> NonlinearSpectrum:
    h = _square(h)
    if r.n_total != h.rows:
        raise InputError(f"reduction was built from a {r.n_total}-site system, got {h.rows} sites")
    s0 = check_sites(r.sites, h.rows)
    hbb = blocks(h, s0)[3]
    fl_h = charpoly_and_adjugate(h)
    fl_b = charpoly_and_adjugate(hbb)
    if fl_b.monic != r.poles:
        raise InputError("reduction does not belong to this Hamiltonian (pole polynomial mismatch)")
    detr = det_minus_lambda(r)
    schur = RationalFunction(fl_h.char) == RationalFunction(fl_b.char) * detr
    if not schur:
        raise AssertionError("Schur determinant identity failed; reduction inconsistent with H")
    cleared = detr.num
    divides = cleared.divides(fl_h.char) if cleared.degree >= 0 else True
    structure = tuple(exact_multiplicity_structure(cleared)) if cleared.degree > 0 else ()
    shared = poly_gcd(fl_h.char, r.poles)
    return NonlinearSpectrum(
        cleared=cleared,
        det_reduced=detr,
        structure=structure,
        roots=tuple(roots_with_multiplicity(structure)),
        char_h=fl_h.char,
        shared_factor=shared,
        schur_identity=schur,
        coincides=shared.degree == 0,
        divides_char=divides,
    )
