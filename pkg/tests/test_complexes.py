from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from hopfgs.complexes import (
    BarCochains,
    BudgetExceededError,
    ResolutionMaps,
    algebra_integral,
    averaging,
    averaging_check,
    colinear_space,
    column_budget,
    contracting_homotopy_check,
    coinvariant_functionals,
    d_squared_check,
    gs_complex,
    gs_equals_hochschild_check,
    hochschild_complex,
    homology_agreement,
    is_colinear,
    make_algebra,
    normalized_functional,
    random_bimodule,
    reconstruction_check,
    resolution_complex_psl2,
    resolution_complex_sl2,
)
from hopfgs.exact_linalg import CochainComplex, ComplexError, SparseMatrix
from hopfgs.hopf_core import PBWAlgebra, function_algebra, group_algebra, load_group
from hopfgs.yetter_drinfeld import (
    Bimodule,
    end_comodule,
    fundamental_comodule,
    trivial_comodule,
    trivial_yd,
    twist_bimodule,
)

Z2 = load_group("Z2")
S3 = load_group("S3")


def assert_passed(rep):
    assert rep.passed, "\n".join(rep.lines())


# -- Gerstenhaber-Schack complexes of group algebras ------------------------------------


def test_gs_cz2_dims_and_homology():
    A = group_algebra(Z2)
    c = gs_complex(A, trivial_yd(A), 3)
    assert c.dims == [1, 2, 4, 8, 16]
    assert c.homology() == [1, 0, 0, 0]


@pytest.mark.parametrize("name", ["Z3", "Z4", "S3"])
def test_gs_group_vanishing(name):
    A = group_algebra(load_group(name))
    assert gs_complex(A, trivial_yd(A), 2).homology() == [1, 0, 0]


def test_gs_is_a_complex():
    A = group_algebra(S3)
    assert_passed(d_squared_check(gs_complex(A, trivial_yd(A), 2).complex))


def test_gs_requires_haar():
    B = PBWAlgebra.quantum_sl2(F(2), 4)
    with pytest.raises(ValueError, match="cosemisimple"):
        gs_complex(B, trivial_yd(B), 2)


def test_gs_rejects_small_n():
    A = group_algebra(Z2)
    with pytest.raises(ValueError):
        gs_complex(A, trivial_yd(A), 0)


def test_budget_exceeded():
    A = group_algebra(S3)
    with pytest.raises(BudgetExceededError):
        gs_complex(A, trivial_yd(A), 3, budget=10)
    with pytest.raises(BudgetExceededError):
        hochschild_complex(A, Bimodule.regular(A), 2, budget=100)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("HOPFGS_BUDGET", "123")
    assert column_budget() == 123
    monkeypatch.delenv("HOPFGS_BUDGET")
    assert column_budget() == 5000


# -- Hochschild ----------------------------------------------------------------------------


def test_hochschild_center_of_cz2():
    A = group_algebra(Z2)
    assert hochschild_complex(A, Bimodule.regular(A), 3).homology() == [2, 0, 0, 0]
    assert hochschild_complex(A, Bimodule.trivial(A), 3).homology() == [1, 0, 0, 0]


def test_hochschild_center_of_cs3():
    # the center of CS3 has dimension 3 (three conjugacy classes)
    A = group_algebra(S3)
    assert hochschild_complex(A, Bimodule.regular(A), 1).homology()[0] == 3


def test_integral_is_normalized():
    for A in (group_algebra(S3), function_algebra(S3)):
        L = algebra_integral(A)
        assert A.counit(L) == 1
        for x in A.basis():
            assert A.mul({x: F(1)}, L) == ({k: v for k, v in L.items()} if A.counit_basis(x) else {})


@pytest.mark.parametrize("A", [group_algebra(Z2), group_algebra(S3), function_algebra(S3)], ids=lambda A: A.name)
def test_contracting_homotopy(A):
    G = S3 if len(A.basis()) == 6 else Z2
    for M in (Bimodule.trivial(A), Bimodule.regular(A), random_bimodule(A, G, 2)):
        assert_passed(contracting_homotopy_check(A, M, 2))


@pytest.mark.parametrize("kind", ["trivial", "regular", "random"])
def test_gs_equals_hochschild_cz2(kind):
    A = group_algebra(Z2)
    M = {"trivial": Bimodule.trivial(A), "regular": Bimodule.regular(A), "random": random_bimodule(A, Z2, 0)}[kind]
    rep = gs_equals_hochschild_check(A, M, 3)
    assert_passed(rep)
    assert rep.gs.homology() == rep.hochschild.homology()


def test_gs_equals_hochschild_os3_random():
    A = function_algebra(S3)
    assert_passed(gs_equals_hochschild_check(A, random_bimodule(A, S3, 1), 2))


def test_random_bimodule_seeded():
    A = group_algebra(S3)
    assert random_bimodule(A, S3, 7).matrices() == random_bimodule(A, S3, 7).matrices()
    assert random_bimodule(A, S3, 7).name == "random[7]"


# -- averaging -------------------------------------------------------------------------------


@pytest.mark.parametrize("A", [group_algebra(Z2), group_algebra(S3), function_algebra(S3)], ids=lambda A: A.name)
@pytest.mark.parametrize("n", [1, 2])
def test_averaging(A, n):
    G = S3 if len(A.basis()) == 6 else Z2
    V = twist_bimodule(random_bimodule(A, G, 0))
    rep = averaging_check(A, V, n, samples=50, seed=0)
    assert_passed(rep)


def test_averaging_projects_onto_colinear():
    A = function_algebra(S3)
    V = twist_bimodule(Bimodule.regular(A))
    space = colinear_space(A, V, 1)
    rng = random.Random(3)
    bar = BarCochains(A, V.basis(), V.action_basis)
    f = {rng.randrange(bar.ambient_dim(1)): F(rng.randint(1, 5)) for _ in range(6)}
    g = averaging(A, V, 1, f)
    assert is_colinear(space, g)
    assert averaging(A, V, 1, g) == g


# -- quantum SL(2) resolution ------------------------------------------------------------------


@pytest.fixture(scope="module")
def R2():
    return ResolutionMaps(make_algebra(F(2), 6))


def test_composition_vanishes(R2):
    rep = R2.composition_check(2)
    assert_passed(rep)
    assert all(r.checked > 0 for r in rep.results)


def test_resolution_maps_are_yd_maps(R2):
    assert_passed(R2.linearity_check(1))
    assert_passed(R2.colinearity_check(1))


def test_coinvariant_functionals():
    A = make_algebra(F(2), 6)
    (f,) = coinvariant_functionals(trivial_comodule(A))
    assert f
    lam = normalized_functional(end_comodule(A))
    assert lam == {(0, 0): 1, (1, 1): 1}
    with pytest.raises(ValueError):
        normalized_functional(fundamental_comodule(A))


@pytest.mark.parametrize("q", [F(1), F(2), F(3)])
def test_psl2_homology(q):
    c = resolution_complex_psl2(q)
    assert c.homology() == [1, 0, 0, 1]
    assert_passed(d_squared_check(c.complex))


def test_psl2_matrices_q2():
    c = resolution_complex_psl2(F(2))
    dense = [d.to_dense() for d in c.complex.differentials]
    assert dense == [
        [[-1, F(2, 5)], [F(5, 2), -1]],
        [[1, F(2, 5)], [F(5, 2), 1]],
        [[F(-5, 2), 1], [F(25, 4), F(-5, 2)]],
    ]
    assert c.ranks() == [1, 1, 1]


def test_psl2_dims():
    for q in (F(2), None):
        assert resolution_complex_psl2(q).dims == [2, 2, 2, 2]


def test_sl2_homology():
    for q in (F(2), F(3)):
        c = resolution_complex_sl2(q)
        assert c.dims == [1, 1, 1, 1]
        assert c.ranks() == [0, 1, 0]
        assert c.homology() == [1, 0, 0, 1]


def test_homology_agreement_symbolic():
    assert_passed(homology_agreement("psl2", qs=(F(2),), symbolic=True))
    assert_passed(homology_agreement("sl2", qs=(F(2), F(3)), symbolic=True))


def test_reconstruction():
    assert_passed(reconstruction_check(F(2)))


def test_sign_flip_detected():
    c = resolution_complex_psl2(F(2))
    diffs = list(c.complex.differentials)
    d1 = diffs[1]
    (key, val), *_ = sorted(d1.entries.items())
    diffs[1] = SparseMatrix(d1.rows, d1.cols, {**d1.entries, key: -val})
    rep = d_squared_check(diffs)
    assert not rep.passed
    assert any("position" in w for w in rep.results[0].witnesses)
    with pytest.raises(ComplexError):
        CochainComplex(c.dims, diffs)
