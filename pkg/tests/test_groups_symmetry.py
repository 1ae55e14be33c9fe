import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_frac
from latsym.errors import InputError, PreconditionError
from latsym.exact import ExactMatrix
from latsym.fixtures import decorated_ring, fig1, path, random_hamiltonian, ring
from latsym.groups import (
    GroupTag,
    Permutation,
    SymmetryGroup,
    all_permutations,
    classify_group,
    closure,
    dihedral_generators,
    search_permutations,
)
from latsym.reduction import blocks, isospectral_reduce
from latsym.symmetry import (
    circulant_canonicalize,
    cospectral,
    cyclic_orbit_sets,
    global_automorphisms,
    latent_permutation_group,
    local_power_commute,
    symbolic_commute,
    walk_profile,
    walk_singlet_check,
)


def _relabel(h: ExactMatrix, images) -> ExactMatrix:
    n = h.rows
    e = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            e[images[i]][images[j]] = h[i, j]
    return ExactMatrix(n, n, (x for r in e for x in r))


# permutations ----------------------------------------------------------------

def test_composition_convention():
    p = Permutation([1, 2, 0])
    q = Permutation([1, 0, 2])
    assert (p * q)(0) == p(q(0))
    assert (p * q).matrix() == p.matrix() @ q.matrix()
    assert p.inverse() * p == Permutation.identity(3)
    assert p ** 3 == Permutation.identity(3) and p ** -1 == p.inverse()


def test_cycles_and_order():
    p = Permutation.from_cycles(6, [(0, 1, 2), (3, 4)])
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert p.order() == 6 and p.fixed_points() == 1
    assert p.cycle_str([1, 2, 3, 4, 5, 6]) == "(1 2 3)(4 5)"


def test_invalid_permutation_rejected():
    with pytest.raises((InputError, ValueError)):
        Permutation([0, 0, 1])


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_matrix_representation_is_homomorphism(a, b):
    p, q = Permutation(a), Permutation(b)
    assert (p * q).matrix() == p.matrix() @ q.matrix()
    assert p.inverse().matrix() == p.matrix().T()


# closure and classification ---------------------------------------------------

def _dihedral(n):
    return closure([Permutation([(i + 1) % n for i in range(n)]), Permutation([(-i) % n for i in range(n)])], n)


@pytest.mark.parametrize("n", range(3, 9))
def test_dihedral_closure_and_classes(n):
    g = SymmetryGroup.from_elements(_dihedral(n), range(1, n + 1))
    assert g.order == 2 * n and g.is_closed()
    assert g.tag == GroupTag("dihedral", n)
    expected = (n + 3) // 2 if n % 2 else n // 2 + 3
    assert len(g.conjugacy_classes()) == expected
    r, s = dihedral_generators(g.elements, n)
    assert r.order() == n and s.order() == 2 and s * r * s == r.inverse()


def test_classification_tags():
    assert classify_group(closure([Permutation([1, 2, 3, 0])], 4)) == GroupTag("cyclic", 4)
    klein = closure([Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])], 4)
    assert classify_group(klein) == GroupTag("dihedral", 2)  # r = s r s = r^-1 holds trivially
    c2c4 = closure([Permutation([1, 0, 2, 3, 4, 5]), Permutation([0, 1, 3, 4, 5, 2])], 6)
    assert classify_group(c2c4) == GroupTag("other_abelian")
    s4 = list(all_permutations(4))
    assert classify_group(s4) == GroupTag("other_nonabelian")
    # S3 is D3
    assert classify_group(list(all_permutations(3))) == GroupTag("dihedral", 3)


# exact search against brute force ----------------------------------------------

def _brute(keys):
    m = len(keys)
    return sorted(p for p in all_permutations(m)
                  if all(keys[p(i)][p(j)] == keys[i][j] for i in range(m) for j in range(m)))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10 ** 6), st.integers(1, 3))
def test_search_matches_brute_force(m, seed, alphabet):
    rng = random.Random(seed)
    keys = [[rng.randrange(alphabet) for _ in range(m)] for _ in range(m)]
    if rng.random() < 0.5:  # make it symmetric, which leaves more automorphisms
        keys = [[keys[min(i, j)][max(i, j)] for j in range(m)] for i in range(m)]
    assert search_permutations(keys) == _brute(keys)


def test_search_limit_refuses():
    with pytest.raises(PreconditionError):
        search_permutations([[0] * 7 for _ in range(7)], limit=100)


def test_global_automorphisms_brute_force(rng):
    for _ in range(20):
        n = rng.randint(2, 6)
        h = random_hamiltonian(rng, n, density=0.5, lo=0, hi=1, fractions=False)
        ref = sorted(p for p in all_permutations(n) if p.matrix() @ h == h @ p.matrix())
        assert list(global_automorphisms(h).elements) == ref


def test_latent_group_two_routes(rng):
    """Walk-sequence search against brute force over commutation with R_S."""
    for _ in range(30):
        n = rng.randint(3, 7)
        if rng.random() < 0.5:
            base = random_hamiltonian(rng, n, density=0.5, lo=-1, hi=1, fractions=False)
        else:
            base = ring(n)
        sites = sorted(rng.sample(range(1, n + 1), rng.randint(2, min(4, n - 1))))
        r = isospectral_reduce(base, sites)
        ref = sorted(p for p in all_permutations(len(sites)) if symbolic_commute(r, p))
        assert list(latent_permutation_group(base, sites).elements) == ref


# worked examples ------------------------------------------------------------

def test_fig1_latent_dihedral_hidden_reflections():
    h = fig1(1, 2, 3, 0, 5)
    lat = latent_permutation_group(h, [1, 2, 3])
    assert lat.order == 6 and lat.tag == GroupTag("dihedral", 3)
    aut = global_automorphisms(h)
    assert aut.order == 3 and aut.tag == GroupTag("cyclic", 3)
    assert cyclic_orbit_sets(h) == [(1, 2, 3), (4, 6, 5)]


def test_fig1_equal_couplings_is_plain_dihedral():
    aut = global_automorphisms(fig1(1, 1, 3, 0, 5))
    assert aut.order == 6
    assert Permutation.from_cycles(6, [(0, 1), (4, 5)]) in aut.elements


def test_ring_and_path_examples():
    assert cyclic_orbit_sets(ring(4)) == [(1, 2, 3, 4)]
    orbits = cyclic_orbit_sets(ring(6))
    assert (1, 3, 5) in orbits and (2, 4, 6) in orbits and (1, 2, 3, 4, 5, 6) in orbits
    lat = latent_permutation_group(path(3), [1, 3])
    assert lat.order == 2


def test_latent_search_refuses_large_site_sets():
    with pytest.raises(PreconditionError):
        latent_permutation_group(ring(12), range(1, 12))


def test_global_search_refuses_large_systems():
    with pytest.raises(PreconditionError):
        global_automorphisms(ring(13))


# commutation equivalence ------------------------------------------------------

def test_power_decomposition_identity(rng):
    """(H^k)_SS = (H^{k-1})_SS H_SS + sum_m (H^m)_SS H_SS̄ H_S̄S̄^{k-2-m} H_S̄S."""
    for _ in range(25):
        n = rng.randint(2, 7)
        h = random_hamiltonian(rng, n, symmetric=rng.random() < 0.5)
        s0 = sorted(rng.sample(range(n), rng.randint(1, n - 1)))
        hss, b, c, hbb = blocks(h, s0)
        pw = h.powers(n + 1)
        hbb_pw = hbb.powers(n + 1)
        for k in range(1, n + 2):
            rhs = pw[k - 1].submatrix(s0, s0) @ hss
            for m in range(k - 1):
                rhs = rhs + pw[m].submatrix(s0, s0) @ b @ hbb_pw[k - 2 - m] @ c
            assert pw[k].submatrix(s0, s0) == rhs


def test_commutation_with_non_permutation_matrices():
    h = fig1(1, 2, 3, 0, 5)
    r = isospectral_reduce(h, [1, 2, 3])
    ones = ExactMatrix(3, 3, [1] * 9)
    rot = Permutation([1, 2, 0]).matrix()
    for a in (ones, rot + rot.T(), ExactMatrix.identity(3).scale(7)):
        assert symbolic_commute(r, a) and local_power_commute(h, [1, 2, 3], a)
    skew = ExactMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert not symbolic_commute(r, skew) and not local_power_commute(h, [1, 2, 3], skew)


def test_powers_beyond_n_minus_one_add_nothing(rng):
    """Cayley-Hamilton: commuting up to k = N-1 implies commuting for larger k."""
    for _ in range(20):
        h = fig1(*(rand_frac(rng, nonzero=True) for _ in range(3)), rand_frac(rng), rand_frac(rng))
        p = Permutation([0, 2, 1]).matrix()
        assert local_power_commute(h, [1, 2, 3], p)
        for hk in h.powers(12):
            assert hk.submatrix([0, 1, 2], [0, 1, 2]).commutes_with(p)


def test_symmetry_matrix_size_checked():
    with pytest.raises(InputError):
        local_power_commute(fig1(1, 2, 3, 0, 5), [1, 2, 3], ExactMatrix.identity(2))


def test_walk_profile_levels():
    prof = walk_profile(fig1(1, 2, 3, 0, 5), [1, 2])
    assert len(prof) == 6
    assert prof.entry_sequence(0, 0)[:2] == (1, 0)


# C_n implies latent D_n --------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(3, 6), st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool),
       st.integers(-2, 2), st.integers(-2, 2))
def test_cyclic_symmetry_forces_latent_dihedral(n, g1, g2, onsite, pend):
    h = decorated_ring(n, g1, g2, onsite, pend)
    aut = global_automorphisms(h)
    orbit = next(o for o in cyclic_orbit_sets(h, group=aut) if len(o) == n)
    r = isospectral_reduce(h, orbit)
    assert circulant_canonicalize(r).ok
    lat = latent_permutation_group(h, orbit)
    assert lat.order >= 2 * n
    if n > 2 and lat.order == 2 * n:
        assert lat.tag == GroupTag("dihedral", n)


def test_circulant_canonicalize_recovers_shuffled_order():
    h = decorated_ring(5)
    images = [2, 4, 1, 3, 0] + list(range(5, 10))
    g = _relabel(h, images)
    r = isospectral_reduce(g, [1, 2, 3, 4, 5])
    form = circulant_canonicalize(r)
    assert form.ok
    order = [form.order(i) for i in range(5)]
    n = 5
    first = [r[order[0], order[j]] for j in range(n)]
    assert all(r[order[i], order[j]] == first[(j - i) % n] for i in range(n) for j in range(n))


def test_circulant_canonicalize_negative():
    r = isospectral_reduce(path(4), [1, 2, 3])
    assert not circulant_canonicalize(r).ok


# cospectral sites and walk singlets --------------------------------------------

def test_cospectral_and_singlet():
    h = fig1(1, 2, 3, 0, 5)
    assert cospectral(h, 1, 2) and not cospectral(h, 1, 4)
    assert walk_singlet_check(h, (1, 3), 2)
    assert not walk_singlet_check(path(4), (1, 4), 2)
    with pytest.raises(PreconditionError):
        walk_singlet_check(h, (1, 4), 2)
    with pytest.raises(InputError):
        walk_singlet_check(h, (1, 1), 2)


def test_brute_force_oracle_is_complete():
    assert len(list(all_permutations(4))) == 24
    assert sorted(tuple(p.images) for p in all_permutations(3)) == sorted(permutations(range(3)))
