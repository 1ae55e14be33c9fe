import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latsym.errors import InputError, NumericalQualityError, PreconditionError
from latsym.exact import ExactMatrix
from latsym.exact.charpoly import charpoly_and_adjugate
from latsym.fixtures import decorated_ring, fig1, path, random_hamiltonian, ring
from latsym.ges import Tolerances, build_ges, cospectral_partition, eisenberg_basis, noncommuting_ges_pair
from latsym.groups import Permutation


def closed_form_q12(h1, h2):
    h1, h2 = float(h1), float(h2)
    d = h1 * h1 - h1 * h2 + h2 * h2
    x, y, z = h1 * h2 / d, 1 - h1 * h1 / d, h1 * (h1 - h2) / d
    q = np.zeros((6, 6))
    q[0, 1] = q[1, 0] = q[2, 2] = 1.0
    q[3:, 3:] = [[x, y, z], [y, z, x], [z, x, y]]
    return q


def assert_defining_properties(q, h, u, v, tol=1e-9):
    n = h.shape[0]
    assert np.abs(q @ q - np.eye(n)).max() < tol
    assert np.abs(q - q.T).max() < tol
    assert np.abs(q @ h - h @ q).max() < tol * max(1.0, np.abs(h).max())
    assert abs(q[v, u] - 1) < tol and abs(q[u, v] - 1) < tol


nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(bool)


@settings(max_examples=40, deadline=None)
@given(nonzero, nonzero, nonzero, st.integers(-3, 3), st.integers(-3, 3))
def test_fig1_q12_closed_form(h1, h2, h3, v1, v2):
    h = fig1(h1, h2, h3, v1, v2)
    q = build_ges(h, 1, 2)
    assert np.abs(q.q - closed_form_q12(h1, h2)).max() < 1e-8
    assert_defining_properties(q.q, h.to_numpy(), 0, 1)


def test_equal_couplings_give_plain_exchange():
    q = build_ges(fig1(2, 2, 1, 0, 3), 1, 2)
    assert q.permutation() == Permutation.from_cycles(6, [(0, 1), (4, 5)])
    assert q.to_data()["ordinary_permutation"] == "(1 2)(5 6)"


def test_generic_couplings_break_permutation():
    q = build_ges(fig1(1, 2, 3, 0, 5), 1, 2)
    assert q.permutation() is None and not q.is_signed_permutation()


def test_small_examples():
    q = build_ges(path(3), 1, 3)
    assert q.permutation() == Permutation([2, 1, 0])
    two = ExactMatrix.from_rows([[Fraction(1, 3), 2], [2, Fraction(1, 3)]])
    q2 = build_ges(two, 1, 2)
    assert np.abs(q2.q - np.array([[0, 1], [1, 0]])).max() < 1e-12


def test_degenerate_eigenspaces_handled():
    # ring(6) has two doubly degenerate levels
    h = ring(6)
    for v in range(2, 7):
        q = build_ges(h, 1, v)
        assert_defining_properties(q.q, h.to_numpy(), 0, v - 1)


def test_relabelling_covariance(rng):
    h = fig1(1, 2, 3, 0, 5)
    images = list(range(6))
    rng.shuffle(images)
    p = Permutation(images).matrix().to_numpy()
    e = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(6):
            e[images[i]][images[j]] = h[i, j]
    g = ExactMatrix(6, 6, (x for r in e for x in r))
    q = build_ges(h, 1, 2).q
    q2 = build_ges(g, images[0] + 1, images[1] + 1).q
    assert np.abs(p @ q @ p.T - q2).max() < 1e-9


def test_jit_and_numpy_paths_agree():
    h = decorated_ring(5)
    a = build_ges(h, 1, 3, jit=False).q
    b = build_ges(h, 1, 3, jit=None).q
    assert np.abs(a - b).max() < 1e-10


def test_parity_basis_structure():
    basis = eisenberg_basis(fig1(1, 2, 3, 0, 5), 1, 2)
    assert sum(c.dim for c in basis.clusters) == 6
    for c in basis.clusters:
        if c.plus is not None:
            assert abs(c.plus[0] - c.plus[1]) < 1e-9 and c.plus[0] > 0
        if c.minus is not None:
            assert abs(c.minus[0] + c.minus[1]) < 1e-9 and c.minus[0] > 0
        assert np.abs(c.zero[[0, 1], :]).max(initial=0) < 1e-9
    v = basis.vectors()
    assert np.abs(v.T @ v - np.eye(6)).max() < 1e-9


# preconditions ---------------------------------------------------------------

def test_preconditions():
    h = fig1(1, 2, 3, 0, 5)
    with pytest.raises(PreconditionError):
        build_ges(h, 1, 4)
    with pytest.raises(InputError):
        build_ges(h, 2, 2)
    with pytest.raises(InputError):
        build_ges(h, 1, 9)
    nonsym = ExactMatrix.from_rows([[0, 1], [2, 0]])
    with pytest.raises(PreconditionError):
        build_ges(nonsym, 1, 2)


def test_tolerance_violation_is_reported():
    with pytest.raises(NumericalQualityError) as exc:
        build_ges(fig1(1, 2, 3, 0, 5), 1, 2, Tolerances(ges=1e-30))
    assert exc.value.residuals


# cospectral partition -------------------------------------------------------

def _deleted_charpoly(h, u):
    keep = [i for i in range(h.rows) if i != u]
    return charpoly_and_adjugate(h.submatrix(keep, keep)).monic


def test_cospectral_partition_against_vertex_deletion():
    """For symmetric H, u and v are cospectral iff H - u and H - v share
    their characteristic polynomial."""
    rng = random.Random(7)
    nontrivial = 0
    for i in range(100):
        n = rng.randint(3, 8)
        if i % 3 == 0:
            h = [ring(n), path(n), decorated_ring(min(n, 5))][i % 9 // 3]
        else:
            h = random_hamiltonian(rng, n, density=0.5, lo=0, hi=1, fractions=False)
        part = cospectral_partition(h)
        polys = [_deleted_charpoly(h, u) for u in range(h.rows)]
        for u in range(h.rows):
            for v in range(h.rows):
                assert part.same_class(u + 1, v + 1) == (polys[u] == polys[v])
        nontrivial += any(len(c) > 1 for c in part.classes)
    assert nontrivial > 20


# non-commuting pairs -----------------------------------------------------------

@pytest.mark.parametrize("h,sites", [
    (fig1(1, 2, 3, 0, 5), [1, 2, 3]),
    (decorated_ring(4), [1, 2, 3, 4]),
    (ring(5), [1, 2, 3, 4, 5]),
])
def test_noncommuting_pair(h, sites):
    pair = noncommuting_ges_pair(h, sites)
    assert pair.commutator_norm > 0.1
    assert abs(pair.singlet_diagonal - 1) < 1e-9
    assert pair.to_data()["cyclic_order"] == list(pair.cyclic_order)


def test_noncommuting_pair_recovers_cyclic_order():
    # in a 4-ring, 1 -> 3 -> 2 -> 4 is not a rotation; the order must be repaired
    pair = noncommuting_ges_pair(decorated_ring(4), [1, 3, 2, 4])
    order = pair.cyclic_order
    assert sorted(order) == [1, 2, 3, 4]
    assert all(abs(order[i] - order[(i + 1) % 4]) in (1, 3) for i in range(4))


def test_noncommuting_pair_refusals():
    with pytest.raises(PreconditionError):
        noncommuting_ges_pair(path(3), [1, 3])
    with pytest.raises(PreconditionError):
        noncommuting_ges_pair(path(4), [1, 2, 3])
