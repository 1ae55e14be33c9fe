"""Generators for the standard test systems.

All generators return exact Hamiltonians with 1-based site labels.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import InputError, PreconditionError
from .exact import ExactMatrix, Hamiltonian
from .exact.poly import _frac

# Inner triangle sites 1,2,3 (on-site v1, mutual coupling h3) and outer
# sites 4,5,6 (on-site v2). Each inner site couples to two outer sites,
# once with h1 and once with h2; the rotation 1->2->3 acts as 4->6->5.
FIG1_OUTER = ((1, 4, "h1"), (1, 5, "h2"), (2, 4, "h2"), (2, 6, "h1"), (3, 5, "h1"), (3, 6, "h2"))


def _build(n: int, onsite: dict, bonds: dict, meta=None) -> Hamiltonian:
    e = [[Fraction(0)] * n for _ in range(n)]
    for i, v in onsite.items():
        e[i - 1][i - 1] = _frac(v)
    for (i, j), w in bonds.items():
        e[i - 1][j - 1] = _frac(w)
        e[j - 1][i - 1] = _frac(w)
    return Hamiltonian(n, n, (x for r in e for x in r), meta=meta)


def fig1(h1, h2, h3, v1, v2) -> Hamiltonian:
    """Six-site C3-symmetric system whose reduction over {1,2,3} is the
    symmetric circulant with diagonal v1 + (h1²+h2²)/(λ-v2) and off-diagonal
    h1·h2/(λ-v2) + h3."""
    h1, h2, h3, v1, v2 = (_frac(x) for x in (h1, h2, h3, v1, v2))
    if 0 in (h1, h2, h3):
        raise InputError("couplings h1, h2, h3 must be nonzero")
    par = {"h1": h1, "h2": h2}
    bonds = {(1, 2): h3, (2, 3): h3, (1, 3): h3}
    for i, j, name in FIG1_OUTER:
        bonds[(i, j)] = par[name]
    onsite = {1: v1, 2: v1, 3: v1, 4: v2, 5: v2, 6: v2}
    meta = {"source": "fig1", "h1": str(h1), "h2": str(h2), "h3": str(h3), "v1": str(v1), "v2": str(v2)}
    return _build(6, onsite, bonds, meta)


def ring(n: int) -> Hamiltonian:
    if n < 2:
        raise InputError("ring needs n >= 2")
    bonds = {}
    for i in range(1, n + 1):
        j = i % n + 1
        bonds[tuple(sorted((i, j)))] = 1
    return _build(n, {}, bonds, {"source": f"ring({n})"})


def path(n: int) -> Hamiltonian:
    if n < 2:
        raise InputError("path needs n >= 2")
    return _build(n, {}, {(i, i + 1): 1 for i in range(1, n)}, {"source": f"path({n})"})


def decorated_ring(n: int, g1=1, g2=2, onsite=0, pendant_onsite=3) -> Hamiltonian:
    """Ring 1..n plus a pendant p_i (site n+i) for every ring site i.

    p_i couples to ring site i with g1 and to ring site i+1 with g2. With
    g1 != g2 the system keeps the rotation but loses every reflection.
    """
    if n < 3:
        raise InputError("decorated ring needs n >= 3")
    bonds = {}
    for i in range(1, n + 1):
        bonds[tuple(sorted((i, i % n + 1)))] = 1
        bonds[(i, n + i)] = g1
        bonds[(i % n + 1, n + i)] = g2
    ons = {i: onsite for i in range(1, n + 1)}
    ons.update({n + i: pendant_onsite for i in range(1, n + 1)})
    return _build(2 * n, ons, bonds, {"source": f"decorated_ring({n})"})


def pendant_polygon(n: int, coupling=1, pendant=1, onsite=0, pendant_onsite=1) -> Hamiltonian:
    """Ring over S = {1..n} where every ring site carries two pendants.

    Pendants of site i are n+2i-1 and n+2i. This is the dihedral base of
    ``latent_dihedral``: any transversal (one pendant per ring site) is a
    complement multiplet.
    """
    bonds = {}
    if n == 2:
        bonds[(1, 2)] = coupling
    elif n >= 3:
        for i in range(1, n + 1):
            bonds[tuple(sorted((i, i % n + 1)))] = coupling
    ons = {i: onsite for i in range(1, n + 1)}
    for i in range(1, n + 1):
        for a in (n + 2 * i - 1, n + 2 * i):
            bonds[(i, a)] = pendant
            ons[a] = pendant_onsite
    return _build(3 * n, ons, bonds, {"source": f"pendant_polygon({n})"})


def _nonzero(rng: random.Random, lo: int = -4, hi: int = 4, den: Sequence[int] = (1, 1, 1, 2, 3)) -> Fraction:
    while True:
        x = Fraction(rng.randint(lo, hi), rng.choice(den))
        if x:
            return x


def latent_dihedral(n: int, seed: int = 0, steps: int = 2, variant: int = 0) -> Hamiltonian:
    """A system with a latent D_n symmetry over S = {1..n} built by
    complement-multiplet extensions of ``pendant_polygon``.

    The first step attaches one new site to three different pendant
    transversals with unequal couplings, which removes every global
    permutation symmetry; later steps attach further sites to randomly
    chosen multiplets of the current system. ``steps=0`` returns the base.
    ``variant`` selects an independent random stream for the same seed.
    """
    from .multiplets import ExtensionPlan, extend_with_site, find_multiplets

    rng = random.Random(seed * 1_000_003 + variant)
    par = {
        "coupling": _nonzero(rng),
        "pendant": _nonzero(rng),
        "onsite": Fraction(rng.randint(-2, 2)),
        "pendant_onsite": Fraction(rng.randint(-2, 2)),
    }
    h = pendant_polygon(n, **par)
    sites = list(range(1, n + 1))
    if steps <= 0:
        return h

    def pend(i, which):
        return n + 2 * i - 1 + which

    # three transversals: all-first, then two shifted patterns
    picks = [tuple(0 for _ in range(n))]
    while len(picks) < 3:
        pat = tuple(rng.randint(0, 1) for _ in range(n))
        if pat not in picks and any(pat):
            picks.append(pat)
    couplings = []
    while len(couplings) < 3:
        g = _nonzero(rng)
        if g not in couplings:
            couplings.append(g)
    plan = ExtensionPlan(
        [(tuple(pend(i, w) for i, w in zip(range(1, n + 1), pat)), g) for pat, g in zip(picks, couplings)],
        onsite=Fraction(rng.randint(-3, 3)),
    )
    h = extend_with_site(h, sites, plan)
    for _ in range(steps - 1):
        found = [m for m in find_multiplets(h, sites, max_size=min(3, h.rows - n)) if m.minimal]
        if not found:
            break
        m = rng.choice(found)
        plan = ExtensionPlan([(m.sites, _nonzero(rng))], onsite=Fraction(rng.randint(-3, 3)))
        h = extend_with_site(h, sites, plan)
    h.meta.update({"source": f"latent_dihedral({n})", "seed": str(seed), "steps": str(steps), "variant": str(variant)})
    return h


def asymmetric_latent_d3(seed: int = 0, steps: int = 2, max_variants: int = 64) -> Hamiltonian:
    """Latent-D3 system without any permutation symmetry (steps >= 2).

    Random couplings occasionally leave an accidental automorphism (two
    pendants of one ring site end up with equal total coupling); such draws
    are rejected and the next variant of the same seed is tried, so the
    output stays deterministic per seed.
    """
    from .symmetry import global_automorphisms, latent_permutation_group

    if steps < 0:
        raise InputError("steps must be non-negative")
    if steps == 0:
        return latent_dihedral(3, seed=seed, steps=0)
    if steps < 2:
        raise PreconditionError("asymmetric construction needs steps >= 2")
    last = None
    for variant in range(max_variants):
        h = latent_dihedral(3, seed=seed, steps=steps, variant=variant)
        aut = global_automorphisms(h)
        lat = latent_permutation_group(h, [1, 2, 3])
        last = (aut.order, lat.order)
        if aut.order == 1 and lat.order == 6:
            h.meta["source"] = "asymmetric_latent_d3"
            return h
    raise AssertionError(f"construction failed: |Aut| = {last[0]}, latent order {last[1]}")


def random_hamiltonian(rng: random.Random, n: int, density: float = 0.6, symmetric: bool = True,
                       lo: int = -3, hi: int = 3, fractions: bool = True) -> Hamiltonian:
    """Random exact matrix with small integer (occasionally halved) entries."""
    e = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i if symmetric else 0, n):
            if i == j or rng.random() < density:
                v = Fraction(rng.randint(lo, hi))
                if fractions and rng.random() < 0.2:
                    v /= 2
                e[i][j] = v
                if symmetric:
                    e[j][i] = v
    return Hamiltonian(n, n, (x for r in e for x in r), meta={"source": "random"})


def block_diag(a: ExactMatrix, b: ExactMatrix) -> Hamiltonian:
    n, m = a.rows, b.rows
    e = [[Fraction(0)] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            e[i][j] = a[i, j]
    for i in range(m):
        for j in range(m):
            e[n + i][n + j] = b[i, j]
    return Hamiltonian(n + m, n + m, (x for r in e for x in r))
