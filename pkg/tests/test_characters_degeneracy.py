import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latsym.characters import Cyclo, abstract_classes, compose, cyclotomic, irrep_table
from latsym.degeneracy import (
    analyze_degeneracy,
    count_at_least,
    degeneracy_bounds,
    irrep_multiplicities,
    is_diagonalizable,
    natural_dihedral,
    permutation_character,
)
from latsym.errors import PreconditionError
from latsym.exact import ExactMatrix, Poly
from latsym.exact.poly import exact_multiplicity_structure
from latsym.fixtures import decorated_ring, fig1, latent_dihedral, path, ring
from latsym.groups import Permutation, SymmetryGroup, closure
from latsym.symmetry import latent_permutation_group


def complete_graph(n):
    return ExactMatrix(n, n, (0 if i == j else 1 for i in range(n) for j in range(n)))


# cyclotomic arithmetic ------------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic(1) == Poly([-1, 1])
    assert cyclotomic(4) == Poly([1, 0, 1])
    assert cyclotomic(6) == Poly([1, -1, 1])
    assert cyclotomic(12) == Poly([1, 0, -1, 0, 1])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.dictionaries(st.integers(-15, 15), st.integers(-4, 4), max_size=4),
       st.dictionaries(st.integers(-15, 15), st.integers(-4, 4), max_size=4))
def test_cyclo_matches_complex_arithmetic(n, ta, tb):
    a, b = Cyclo(n, ta), Cyclo(n, tb)
    ca, cb = complex(a), complex(b)
    assert cmath.isclose(complex(a * b), ca * cb, abs_tol=1e-9)
    assert cmath.isclose(complex(a + b), ca + cb, abs_tol=1e-9)
    assert cmath.isclose(complex(a.conj()), ca.conjugate(), abs_tol=1e-9)
    # exact equality agrees with numeric equality
    assert (a == b) == cmath.isclose(ca, cb, abs_tol=1e-9)


def test_roots_of_unity_sum_to_zero():
    for n in range(2, 10):
        tot = Cyclo(n)
        for k in range(n):
            tot = tot + Cyclo.root(n, k)
        assert tot == Cyclo(n)


# abstract groups and tables --------------------------------------------------

@pytest.mark.parametrize("n", range(2, 9))
def test_abstract_dihedral_relations(n):
    r, s = (0, 1), (1, 0)
    srs = compose(n, compose(n, s, r), s)
    assert srs == (0, n - 1)
    classes = abstract_classes("dihedral", n)
    assert sum(len(c) for c in classes) == 2 * n


@pytest.mark.parametrize("kind,n", [("cyclic", n) for n in range(1, 13)] + [("dihedral", n) for n in range(2, 13)])
def test_character_tables_orthonormal(kind, n):
    irrep_table(kind, n).check()


def _rotation_rep(n, h, e, j):
    """Explicit real 2x2 matrices of E_h, as an oracle independent of Cyclo."""
    t = 2 * math.pi * h * j / n
    rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    refl = np.array([[1.0, 0.0], [0.0, -1.0]])
    return refl @ rot if e else rot


@pytest.mark.parametrize("n", range(3, 9))
def test_two_dimensional_characters_match_matrices(n):
    table = irrep_table("dihedral", n)
    for irr in table.irreps:
        if irr.dim != 2:
            continue
        for e in (0, 1):
            for j in range(n):
                assert math.isclose(complex(irr.character((e, j))).real,
                                    float(np.trace(_rotation_rep(n, irr.h, e, j))), abs_tol=1e-9)


# multiplicities ------------------------------------------------------------

def _natural(n):
    r = Permutation([(i + 1) % n for i in range(n)])
    s = Permutation([(-i) % n for i in range(n)])
    return SymmetryGroup.from_elements(closure([r, s], n), range(1, n + 1))


@pytest.mark.parametrize("n", range(3, 10))
def test_natural_dihedral_decomposition(n):
    g = _natural(n)
    assert natural_dihedral(g)
    mults = {m.label: m.mult for m in irrep_multiplicities(g)}
    assert mults["A1"] == 1 and mults["A2"] == 0
    if n % 2 == 0:
        assert mults["B1"] + mults["B2"] == 1
    assert all(mults[f"E{h}"] == 1 for h in range(1, (n - 1) // 2 + 1))
    pairs = [b for b in degeneracy_bounds(g) if b.source.endswith("pairs")]
    assert pairs and pairs[0].count == (n - 1) // 2


def test_multiplicities_numeric_oracle():
    """Σ_g χ(g) tr ρ(g) / |G| computed with explicit rotation matrices."""
    for n in (4, 5, 6):
        g = _natural(n)
        chi = permutation_character(g)
        r = next(p for p in g.elements if p.order() == n and len(p.cycles()) == 1)
        s = next(p for p in g.elements if p.order() == 2 and p * r * p == r.inverse())
        label = {}
        for j in range(n):
            label[r ** j] = (0, j)
            label[s * r ** j] = (1, j)
        ours = {m.label: m.mult for m in irrep_multiplicities(g)}
        for h in range(1, (n - 1) // 2 + 1):
            num = sum(chi[p] * np.trace(_rotation_rep(n, h, e, j)) for p, (e, j) in label.items()) / (2 * n)
            assert round(num) == ours[f"E{h}"]


def test_other_groups_refused():
    g = SymmetryGroup.from_elements(closure([Permutation([1, 0, 2, 3]), Permutation([0, 2, 3, 1])], 4), range(1, 5))
    assert g.tag.kind == "other_nonabelian"
    with pytest.raises(PreconditionError):
        irrep_multiplicities(g)
    assert [(b.dim, b.count) for b in degeneracy_bounds(g)] == [(2, 1)]


# counting -------------------------------------------------------------------

def test_count_at_least_uses_floor():
    x = Poly.x()
    structure = [(x - 1, 4), (x * x - 2, 2), (x + 3, 1)]
    assert count_at_least(structure, 2) == 2 + 2
    assert count_at_least(structure, 3) == 1
    assert count_at_least(structure, 1) == 4 + 4 + 1


def test_diagonalizability():
    jordan = ExactMatrix.from_rows([[1, 1], [0, 1]])
    s = exact_multiplicity_structure(Poly([1, -2, 1]))
    assert not is_diagonalizable(jordan, s)
    assert is_diagonalizable(ExactMatrix.identity(2), s)


# end to end -----------------------------------------------------------------

def test_fig1_report():
    rep = analyze_degeneracy(fig1(1, 2, 3, 0, 5), [1, 2, 3])
    assert rep.tag == "dihedral(3)" and rep.passed and rep.diagonalizable
    assert {(m.label, m.mult) for m in rep.irreps} == {("A1", 1), ("A2", 0), ("E1", 1)}
    assert [(str(f), m) for f, m in rep.degenerate_factors()] == [("λ^2 - 2λ - 18", 2)]
    data = rep.to_data()
    assert data["verdict"] == "PASS" and not data["vacuous"]


def test_ring_full_site_set():
    rep = analyze_degeneracy(ring(6), range(1, 7))
    assert rep.group_order == 12 and rep.passed
    assert any(v.bound.count == 2 and v.observed >= 2 for v in rep.verdicts if v.bound.dim == 2)


def test_cyclic_group_is_vacuous():
    rep = analyze_degeneracy(path(3), [1, 3])
    assert rep.vacuous and rep.passed


def test_symmetric_group_action():
    rep = analyze_degeneracy(complete_graph(4), range(1, 5))
    assert rep.tag == "other_nonabelian" and rep.group_order == 24
    assert rep.passed and rep.verdicts[0].observed == 1


@pytest.mark.parametrize("seed", range(3))
def test_latent_pentagon(seed):
    h = latent_dihedral(5, seed=seed)
    rep = analyze_degeneracy(h, range(1, 6))
    assert rep.group_order == 10 and rep.passed
    pairs = next(v for v in rep.verdicts if v.bound.source.endswith("pairs"))
    assert pairs.bound.count == 2 and pairs.observed >= 2


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 6), st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool), st.integers(-2, 2))
def test_dihedral_latent_symmetry_always_degenerate(n, g1, g2, pend):
    h = decorated_ring(n, g1, g2, 0, pend)
    rep = analyze_degeneracy(h, range(1, n + 1))
    assert rep.passed
    assert count_at_least(rep.structure, 2) >= (n - 1) // 2


def test_latent_group_from_fig1_is_dihedral_by_table():
    g = latent_permutation_group(fig1(2, 5, 1, 1, -1), [1, 2, 3])
    assert sum(m.dim * m.mult for m in irrep_multiplicities(g)) == 3
    assert Fraction(sum(v * v for v in permutation_character(g).values()), g.order) == 2
