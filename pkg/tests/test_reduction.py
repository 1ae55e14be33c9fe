import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_frac
from latsym.errors import InputError, PoleError, PreconditionError
from latsym.exact import ExactMatrix, Poly, RationalFunction, solve_exact
from latsym.exact.charpoly import charpoly_and_adjugate
from latsym.fixtures import fig1, path, random_hamiltonian, ring
from latsym.reduction import (
    blocks,
    evaluate,
    isospectral_reduce,
    neumann_truncation,
    nonlinear_spectrum,
    reduce_via_charpoly,
)


def _schur_at(h: ExactMatrix, s0, lam: Fraction) -> ExactMatrix:
    """H_SS - H_SS̄ (H_S̄S̄ - λI)^{-1} H_S̄S at a rational λ, by exact solve."""
    hss, b, c, hbb = blocks(h, s0)
    if hbb.rows == 0:
        return hss
    shifted = hbb - ExactMatrix.identity(hbb.rows).scale(lam)
    return hss - b @ solve_exact(shifted, c)


def _random_case(rng, nmax=7):
    n = rng.randint(2, nmax)
    h = random_hamiltonian(rng, n, symmetric=rng.random() < 0.6)
    sites = sorted(rng.sample(range(1, n + 1), rng.randint(1, n - 1)))
    return h, sites


def test_fig1_entries_by_hand():
    r = isospectral_reduce(fig1(1, 2, 3, 0, 5), [1, 2, 3])
    lam = Poly.x()
    a = RationalFunction(Poly([5]), lam - 5)
    b = RationalFunction(Poly([2]), lam - 5) + RationalFunction(Poly([3]))
    assert all(r[i, i] == a for i in range(3))
    assert all(r[i, j] == b for i in range(3) for j in range(3) if i != j)
    assert r.poles == (lam - 5) ** 3


def test_two_routes_agree(rng):
    for _ in range(60):
        h, sites = _random_case(rng)
        assert isospectral_reduce(h, sites) == reduce_via_charpoly(h, sites)


def test_reduction_matches_direct_solve(rng):
    checked = 0
    for _ in range(40):
        h, sites = _random_case(rng)
        r = isospectral_reduce(h, sites)
        for _ in range(3):
            lam = rand_frac(rng, -9, 9)
            if r.poles(lam) == 0:
                with pytest.raises(PoleError):
                    evaluate(r, lam)
                continue
            assert evaluate(r, lam) == _schur_at(h, [s - 1 for s in sites], lam)
            checked += 1
    assert checked > 50


def test_entries_in_w_pi_and_share_poles(rng):
    for _ in range(40):
        h, sites = _random_case(rng)
        r = isospectral_reduce(h, sites)
        assert r.in_w_pi()
        for f in r.all_entries():
            assert f.den.divides(r.poles)


def test_full_site_set_returns_h():
    h = fig1(1, 2, 3, 0, 5)
    r = isospectral_reduce(h, range(1, 7))
    assert r.is_constant()
    assert evaluate(r, 0) == h


def test_site_order_fixes_row_order():
    h = fig1(1, 2, 3, 0, 5)
    r = isospectral_reduce(h, [3, 1])
    r2 = isospectral_reduce(h, [1, 3])
    assert r[0, 1] == r2[1, 0] and r[0, 0] == r2[1, 1]


def test_reduction_in_stages(rng):
    """Reducing H to S and then to T ⊂ S gives R_T(H)."""
    for _ in range(20):
        n = rng.randint(3, 7)
        h = random_hamiltonian(rng, n)
        s = sorted(rng.sample(range(1, n + 1), rng.randint(2, n - 1)))
        t = sorted(rng.sample(s, rng.randint(1, len(s) - 1)))
        rs, rt = isospectral_reduce(h, s), isospectral_reduce(h, t)
        pos = [s.index(x) for x in t]
        for _ in range(2):
            lam = rand_frac(rng, -20, 20, dens=(7, 11))
            try:
                inner = evaluate(rs, lam)
                outer = _schur_at(inner, pos, lam)
            except (PoleError, ZeroDivisionError):
                continue
            assert evaluate(rt, lam) == outer


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.permutations(range(4)))
def test_relabelling_complement_does_not_change_reduction(seed, perm):
    rng = random.Random(seed)
    h = random_hamiltonian(rng, 6)
    # sites 1,2 stay; complement 3..6 is relabelled
    images = [0, 1] + [2 + p for p in perm]
    e = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(6):
            e[images[i]][images[j]] = h[i, j]
    g = ExactMatrix(6, 6, (x for r in e for x in r))
    assert isospectral_reduce(h, [1, 2]) == isospectral_reduce(g, [1, 2])


def test_nonlinear_spectrum_recovers_eigenvalues():
    h = fig1(1, 2, 3, 0, 5)
    r = isospectral_reduce(h, [1, 2, 3])
    ns = nonlinear_spectrum(r, h)
    assert ns.schur_identity and ns.divides_char
    assert ns.coincides  # 5 is not an eigenvalue of H
    assert ns.cleared.degree == 6
    assert ns.char_h == charpoly_and_adjugate(h).char


def test_nonlinear_spectrum_with_shared_pole():
    # path(3) over the ends: the middle site has energy 0, also an eigenvalue of H
    h = path(3)
    ns = nonlinear_spectrum(isospectral_reduce(h, [1, 3]), h)
    assert not ns.coincides
    assert ns.shared_factor == Poly.x()


def test_nonlinear_spectrum_rejects_foreign_reduction():
    r = isospectral_reduce(ring(4), [1, 2])
    with pytest.raises(InputError):
        nonlinear_spectrum(r, ring(5))


def test_neumann_series_converges():
    h = fig1(1, 2, 3, 0, 5)
    lam = Fraction(40)
    exact = evaluate(isospectral_reduce(h, [1, 2, 3]), lam)
    errs = []
    for k in (1, 3, 6, 10):
        d = neumann_truncation(h, [1, 2, 3], k, lam) - exact
        errs.append(max(abs(x) for x in d.entries()))
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] < Fraction(1, 10 ** 8)


def test_neumann_refuses_inside_norm_bound():
    with pytest.raises(PreconditionError):
        neumann_truncation(fig1(1, 2, 3, 0, 5), [1, 2, 3], 4, 5)
    with pytest.raises(InputError):
        neumann_truncation(fig1(1, 2, 3, 0, 5), [1, 2, 3], -1, 50)


@pytest.mark.parametrize("sites", [[], [0], [7], [1, 1], ["a"]])
def test_bad_site_sets(sites):
    with pytest.raises(InputError):
        isospectral_reduce(fig1(1, 2, 3, 0, 5), sites)


def test_non_square_rejected():
    with pytest.raises(InputError):
        isospectral_reduce(ExactMatrix(2, 3, range(6)), [1])


def test_pole_error_names_factor():
    r = isospectral_reduce(fig1(1, 2, 3, 0, 5), [1, 2, 3])
    with pytest.raises(PoleError) as exc:
        evaluate(r, 5)
    assert exc.value.factor == Poly([-5, 1])
