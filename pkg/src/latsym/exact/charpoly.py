"""Characteristic polynomials and polynomial adjugates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrix import ExactMatrix, det_exact
from .poly import Poly


@dataclass(frozen=True)
class CharpolyAdjugate:
    """Result of the Faddeev-LeVerrier recurrence for an n x n matrix M.

    ``char`` is det(M - λI). ``monic`` is det(λI - M) = (-1)^n char.
    ``adj_coeffs[k]`` is the constant matrix multiplying λ^k in
    adj(λI - M), so that (λI - M) adj(λI - M) = monic(λ) I and
    (M - λI)^{-1} = -adj(λI - M) / monic(λ) away from the spectrum.
    """

    char: Poly
    monic: Poly
    adj_coeffs: tuple[ExactMatrix, ...]

    @property
    def n(self) -> int:
        return self.monic.degree

    def adjugate_entry(self, i: int, j: int) -> Poly:
        return Poly(c[i, j] for c in self.adj_coeffs)

    def adjugate(self) -> list[list[Poly]]:
        n = self.n
        return [[self.adjugate_entry(i, j) for j in range(n)] for i in range(n)]


def charpoly_and_adjugate(m: ExactMatrix) -> CharpolyAdjugate:
    """Faddeev-LeVerrier over Q.

    With p(λ) = det(λI - M) = sum_k c_k λ^k (c_n = 1) the recurrence is
    N_1 = I, c_{n-1} = -tr(M);  N_k = M N_{k-1} + c_{n-k+1} I,
    c_{n-k} = -tr(M N_k)/k, and adj(λI - M) = sum_{k=1}^n N_k λ^{n-k}.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    if n == 0:
        one = Poly.const(1)
        return CharpolyAdjugate(one, one, ())
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    eye = ExactMatrix.identity(n)
    nk = eye
    adj = [None] * n  # adj[power of λ]
    for k in range(1, n + 1):
        if k > 1:
            nk = (m @ nk) + eye.scale(c[n - k + 1])
        adj[n - k] = nk
        c[n - k] = -(m @ nk).trace() / k
    monic = Poly(c)
    char = monic if n % 2 == 0 else -monic
    return CharpolyAdjugate(char, monic, tuple(adj))


def charpoly_by_interpolation(m: ExactMatrix) -> Poly:
    """det(λI - M) from exact determinants at n+1 integer nodes and
    Lagrange interpolation. Shares no code with Faddeev-LeVerrier."""
    n = m.rows
    nodes = list(range(n + 1))
    values = []
    for t in nodes:
        shifted = ExactMatrix(n, n, ((t if i == j else 0) - m[i, j] for i in range(n) for j in range(n)))
        values.append(det_exact(shifted))
    out = Poly()
    for i, xi in enumerate(nodes):
        basis = Poly.const(1)
        denom = Fraction(1)
        for j, xj in enumerate(nodes):
            if j != i:
                basis = basis * Poly((-xj, 1))
                denom *= xi - xj
        out = out + basis * (values[i] / denom)
    return out
