"""Generalized exchange symmetries (GES) of real symmetric Hamiltonians.

For a cospectral pair (u, v) the eigenbasis is chosen so that each
eigenvalue carries at most one vector even on (u, v), at most one odd
vector, and otherwise vectors vanishing on both sites. Then
Q = P+ + P0 - P- is a symmetric orthogonal involution commuting with H and
mapping |u> to |v>.

Cospectrality is decided exactly; the construction itself is floating
point and every result carries its residuals.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from ._kernels import ges_residuals, jacobi_eigh
from .errors import InputError, NumericalQualityError, PreconditionError
from .groups import Permutation
from .reduction import _square, check_sites, isospectral_reduce
from .symmetry import circulant_canonicalize, cospectral, cyclic_shift, full_powers, local_power_commute, walk_singlet_check


@dataclass(frozen=True)
class Tolerances:
    cluster: float = 1e-8  # relative to max(1, |H|_max)
    basis: float = 1e-8
    ges: float = 1e-8
    commute: float = 1e-4
    solver: float = 1e-12  # eigensolver off-diagonal residual, relative

    def to_data(self) -> dict:
        return asdict(self)


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class CospectralPartition:
    classes: tuple[tuple[int, ...], ...]  # 1-based, sorted
    sequences: dict  # site -> (H^k)_ss for k <= N-1

    def class_of(self, site: int) -> tuple[int, ...]:
        return next(c for c in self.classes if site in c)

    def same_class(self, u: int, v: int) -> bool:
        return v in self.class_of(u)


def cospectral_partition(h) -> CospectralPartition:
    """Sites grouped by their exact diagonal walk sequences (H^k)_uu."""
    h = _square(h)
    pw = full_powers(h)
    seqs = {i + 1: tuple(p[i, i] for p in pw) for i in range(h.rows)}
    groups: dict[tuple, list[int]] = {}
    for s, seq in seqs.items():
        groups.setdefault(seq, []).append(s)
    classes = tuple(sorted(tuple(g) for g in groups.values()))
    return CospectralPartition(classes, seqs)


@dataclass
class ParityCluster:
    eigenvalue: float
    plus: np.ndarray | None
    minus: np.ndarray | None
    zero: np.ndarray  # N x k, columns vanish on u and v

    @property
    def dim(self) -> int:
        return int(self.plus is not None) + int(self.minus is not None) + self.zero.shape[1]


@dataclass
class ParityBasis:
    pair: tuple[int, int]  # 1-based
    clusters: list[ParityCluster]
    tolerances: Tolerances
    solver_residual: float
    max_parity_error: float = 0.0
    max_eigen_residual: float = 0.0

    def projectors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = self.clusters[0].zero.shape[0] if self.clusters else 0
        pp, pm, p0 = np.zeros((n, n)), np.zeros((n, n)), np.zeros((n, n))
        for c in self.clusters:
            if c.plus is not None:
                pp += np.outer(c.plus, c.plus)
            if c.minus is not None:
                pm += np.outer(c.minus, c.minus)
            p0 += c.zero @ c.zero.T
        return pp, pm, p0

    def vectors(self) -> np.ndarray:
        cols = []
        for c in self.clusters:
            if c.plus is not None:
                cols.append(c.plus)
            if c.minus is not None:
                cols.append(c.minus)
            cols.extend(c.zero.T)
        return np.array(cols).T


def _require_real_symmetric(h) -> None:
    if not h.is_symmetric():
        raise PreconditionError("GES construction needs a real symmetric Hamiltonian")


def _pair(h, u: int, v: int) -> tuple[int, int]:
    a, b = check_sites([u], h.rows)[0], check_sites([v], h.rows)[0]
    if a == b:
        raise InputError("GES needs two distinct sites")
    if not cospectral(h, u, v):
        raise PreconditionError(f"sites {u} and {v} are not cospectral")
    return a, b


def _complete(span: np.ndarray, fixed: list[np.ndarray], k: int) -> np.ndarray:
    """k orthonormal vectors of span(columns) orthogonal to ``fixed``;
    Gram-Schmidt with largest-remaining-norm pivoting."""
    basis = list(fixed)
    cand = [span[:, i].copy() for i in range(span.shape[1])]
    out = []
    while len(out) < k:
        best, best_norm = None, -1.0
        for c in cand:
            r = c.copy()
            for _ in range(2):  # twice is enough for orthogonality
                for b in basis:
                    r -= (b @ r) * b
            nr = float(np.linalg.norm(r))
            if nr > best_norm:
                best, best_norm = r, nr
        if best is None or best_norm <= 1e-12:
            raise NumericalQualityError("eigenspace completion lost rank", {"remaining_norm": best_norm})
        vec = best / best_norm
        basis.append(vec)
        out.append(vec)
    n = span.shape[0]
    return np.array(out).T if out else np.zeros((n, 0))


def eisenberg_basis(h, u: int, v: int, tol: Tolerances = DEFAULT_TOL, *, jit: bool | None = None) -> ParityBasis:
    """Eigenbasis of H with definite local parity on the cospectral pair (u, v)."""
    h = _square(h)
    _require_real_symmetric(h)
    a, b = _pair(h, u, v)
    hf = h.to_numpy()
    n = hf.shape[0]
    hmax = max(1.0, float(np.abs(hf).max()) if n else 0.0)
    w, vecs, off = jacobi_eigh(hf, jit=jit)
    if off > tol.solver * hmax:
        raise NumericalQualityError("eigensolver did not converge", {"off_diagonal": off})
    tau = tol.cluster * hmax
    groups: list[list[int]] = [[0]]
    for i in range(1, n):
        if w[i] - w[groups[-1][-1]] <= tau:
            groups[-1].append(i)
        else:
            groups.append([i])
    eu, ev = np.zeros(n), np.zeros(n)
    eu[a], ev[b] = 1.0, 1.0
    clusters = []
    parity_err = 0.0
    eig_res = 0.0
    for g in groups:
        e = vecs[:, g]
        proj = e @ e.T
        out = {}
        for name, sv in (("plus", eu + ev), ("minus", eu - ev)):
            p = proj @ sv
            nrm = float(np.linalg.norm(p))
            if nrm > tol.basis:
                p = p / nrm
                if p[a] < 0:
                    p = -p
                out[name] = p
            else:
                out[name] = None
        fixed = [x for x in (out["plus"], out["minus"]) if x is not None]
        zero = _complete(e, fixed, len(g) - len(fixed))
        cl = ParityCluster(float(np.mean(w[g])), out["plus"], out["minus"], zero)
        if cl.plus is not None:
            parity_err = max(parity_err, abs(cl.plus[a] - cl.plus[b]))
        if cl.minus is not None:
            parity_err = max(parity_err, abs(cl.minus[a] + cl.minus[b]))
        if zero.shape[1]:
            parity_err = max(parity_err, float(np.abs(zero[[a, b], :]).max()))
        for col in ([cl.plus] if cl.plus is not None else []) + ([cl.minus] if cl.minus is not None else []) + list(zero.T):
            lam = float(col @ hf @ col)
            eig_res = max(eig_res, float(np.abs(hf @ col - lam * col).max()))
        clusters.append(cl)
    res = {"parity": parity_err, "eigen": eig_res}
    if parity_err > tol.basis or eig_res > tol.basis * hmax:
        raise NumericalQualityError("parity basis misses its tolerances", res)
    return ParityBasis((u, v), clusters, tol, off, parity_err, eig_res)


@dataclass
class GESMatrix:
    q: np.ndarray
    pair: tuple[int, int]  # 1-based
    residuals: dict
    tolerances: Tolerances = field(default=DEFAULT_TOL)

    def permutation(self) -> Permutation | None:
        """The ordinary exchange symmetry Q equals, if it is a 0/1 matrix."""
        t = self.tolerances.ges
        r = np.rint(self.q)
        if np.abs(self.q - r).max() > t or not np.isin(r, (0.0, 1.0)).all():
            return None
        if not (r.sum(axis=0) == 1).all():
            return None
        # Q e_j = e_{p(j)}
        return Permutation(int(np.argmax(r[:, j])) for j in range(r.shape[1]))

    def is_signed_permutation(self) -> bool:
        r = np.rint(self.q)
        return bool(np.abs(self.q - r).max() <= self.tolerances.ges and (np.abs(r).sum(axis=0) == 1).all())

    def to_data(self, digits: int = 12) -> dict:
        p = self.permutation()
        return {
            "pair": list(self.pair),
            "matrix": [[f"{round(x, digits) + 0.0:.{digits}f}" for x in row] for row in self.q],
            "residuals": self.residuals,
            "ordinary_permutation": p.cycle_str() if p is not None else None,
            "signed_permutation": self.is_signed_permutation(),
            "tolerances": self.tolerances.to_data(),
        }


def build_ges(h, u: int, v: int, tol: Tolerances = DEFAULT_TOL, *, jit: bool | None = None) -> GESMatrix:
    """Q^(u,v) = P+ + P0 - P- from the parity basis, with residual checks."""
    h = _square(h)
    basis = eisenberg_basis(h, u, v, tol, jit=jit)
    pp, pm, p0 = basis.projectors()
    q = pp + p0 - pm
    hf = h.to_numpy()
    res = ges_residuals(q, hf, u - 1, v - 1, jit=jit)
    hmax = max(1.0, float(np.abs(hf).max()))
    bad = [k for k, x in res.items() if x > tol.ges * (hmax if k == "commutator" else 1.0)]
    if bad:
        raise NumericalQualityError(f"GES residuals exceed tolerance: {', '.join(bad)}", res)
    return GESMatrix(q, (u, v), res, tol)


@dataclass
class GESPair:
    first: GESMatrix  # Q^(s1, s3)
    second: GESMatrix  # Q^(s1, s2)
    commutator_norm: float
    singlet_diagonal: float  # (Q^(s1,s3))_{s2,s2}
    cyclic_order: tuple[int, ...]

    def to_data(self) -> dict:
        return {
            "cyclic_order": list(self.cyclic_order),
            "pairs": [list(self.first.pair), list(self.second.pair)],
            "commutator_max_norm": self.commutator_norm,
            "singlet_diagonal": self.singlet_diagonal,
            "first": self.first.to_data(),
            "second": self.second.to_data(),
        }


def noncommuting_ges_pair(h, sites, tol: Tolerances = DEFAULT_TOL, *, jit: bool | None = None) -> GESPair:
    """Two GESs Q^(s1,s3) and Q^(s1,s2) over a latent C_n (n > 2) site set
    whose commutator does not vanish.

    ``sites`` should be listed in cyclic order; if they are not, an order is
    recovered from the circulant structure of the reduction.
    """
    h = _square(h)
    s0 = check_sites(sites, h.rows)
    n = len(s0)
    if n <= 2:
        raise PreconditionError("non-commuting GES pair needs a latent C_n with n > 2")
    _require_real_symmetric(h)
    order = tuple(x + 1 for x in s0)
    if not local_power_commute(h, order, cyclic_shift(n)):
        form = circulant_canonicalize(isospectral_reduce(h, order))
        if not form.ok:
            raise PreconditionError(f"sites {list(order)} carry no latent C_{n} symmetry")
        order = tuple(order[form.order(i)] for i in range(n))
    s1, s2, s3 = order[0], order[1], order[2]
    if not walk_singlet_check(h, (s1, s3), s2):
        raise PreconditionError(f"site {s2} is not a walk-singlet for the pair ({s1}, {s3})")
    q13 = build_ges(h, s1, s3, tol, jit=jit)
    q12 = build_ges(h, s1, s2, tol, jit=jit)
    comm = float(np.abs(q13.q @ q12.q - q12.q @ q13.q).max())
    diag = float(q13.q[s2 - 1, s2 - 1])
    if abs(diag - 1.0) > tol.ges:
        raise NumericalQualityError(f"(Q^({s1},{s3}))_{{{s2},{s2}}} = {diag} differs from 1", {"singlet_diagonal": diag})
    if comm <= tol.commute:
        raise NumericalQualityError("GES pair commutes within tolerance", {"commutator": comm})
    return GESPair(q13, q12, comm, diag, order)


__all__ = [
    "CospectralPartition",
    "DEFAULT_TOL",
    "GESMatrix",
    "GESPair",
    "ParityBasis",
    "ParityCluster",
    "Tolerances",
    "build_ges",
    "cospectral_partition",
    "eisenberg_basis",
    "noncommuting_ges_pair",
]
