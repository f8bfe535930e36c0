from __future__ import annotations

import random
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgs.exact_linalg import RationalFunction
from hopfgs.measured_algebra import (
    BUILTINS,
    DegenerateMeasureError,
    MeasuredAlgebra,
    MeasuredAlgebraError,
    cn,
    diagonal_algebra,
    frobenius_dual,
    m2_trace,
    m2_trq,
    normalizability,
    phi_tilde,
    scalar_field,
    weighted_c2,
)

DATA = Path(__file__).resolve().parent.parent / "data"


def test_dual_of_c2():
    d = frobenius_dual(cn(2))
    assert d.terms() == {(0, 0): 1, (1, 1): 1}
    assert d.snake_failures == []


def test_dual_of_weighted():
    d = frobenius_dual(weighted_c2())
    assert d.terms() == {(0, 0): 1, (1, 1): F(1, 2)}


def test_m2_trace_snakes():
    assert frobenius_dual(m2_trace()).snake_failures == []


def test_snakes_for_every_builtin():
    for name, make in BUILTINS.items():
        assert frobenius_dual(make()).snake_failures == [], name


def test_nonsymmetric_gram_snakes():
    # tr_q has a non-symmetric Gram matrix, so the index order of the dual tensor matters
    R = m2_trq(F(3))
    G = R.gram()
    assert any(G[i][j] != G[j][i] for i in range(4) for j in range(4))
    assert frobenius_dual(R).snake_failures == []


def test_phi_tilde_examples():
    assert phi_tilde(cn(4)) == [1, 1, 1, 1]
    assert phi_tilde(weighted_c2()) == [1, 1]
    assert phi_tilde(scalar_field(F(1))) == [1]


def test_one_dimensional_phi_tilde():
    # delta(1) = c^-1 1 (x) 1, so phi~(1) = c^-1 phi(1) = 1 for every c
    assert phi_tilde(scalar_field(F(5))) == [1]
    res = normalizability(scalar_field(F(5)))
    assert res.lam == F(1, 5) and res.mu_squared == 1


@pytest.mark.parametrize("n", range(2, 10))
def test_cn_normalizable(n):
    res = normalizability(cn(n))
    assert res.normalizable and res.lam == 1 and res.mu_squared == n


def test_cn4_root_one():
    res = normalizability(cn(4))
    assert res.mu == 2 and res.q_roots == [1]


def test_cn9_irrational_q():
    res = normalizability(cn(9))
    assert res.mu == 3 and res.q_roots == []
    assert res.q_quadratic == "z^2 - (3)*z + 1"


def test_cn2_warns_small_dimension():
    assert any("< 4" in w for w in normalizability(cn(2)).warnings)


def test_weighted_rejected_with_witness():
    res = normalizability(weighted_c2())
    assert not res.normalizable and res.witness == "e2"


def test_phi_one_zero_rejected():
    R = MeasuredAlgebra("traceless", m2_trace().mult, m2_trace().unit, [F(1), 0, 0, F(-1)])
    res = normalizability(R)
    assert not res.normalizable and "phi(1) = 0" in res.reason


def test_degenerate_measure():
    R = diagonal_algebra([F(1), F(0)])
    with pytest.raises(DegenerateMeasureError):
        frobenius_dual(R)
    assert not normalizability(R).normalizable


def test_trq_parameter():
    q = F(2)
    res = normalizability(m2_trq(q))
    assert res.normalizable
    assert res.lam == q + 1 / q and res.mu_squared == (q + 1 / q) ** 2
    assert res.q_roots == [F(1, 2), F(2)]


def test_trq_symbolic():
    q = RationalFunction.q()
    res = normalizability(m2_trq(q))
    assert res.normalizable and res.mu_squared == (q + 1 / q) ** 2


def test_m2_trace_parameter():
    res = normalizability(m2_trace())
    assert res.lam == 2 and res.mu_squared == 4


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_phi_tilde_basis_independent(seed):
    rng = random.Random(seed)
    R = rng.choice([m2_trace(), m2_trq(F(2)), weighted_c2(), cn(3)])
    m = R.dim
    while True:
        P = [[F(rng.randint(-2, 2)) for _ in range(m)] for _ in range(m)]
        try:
            R2 = R.change_basis(P)
            break
        except (ZeroDivisionError, MeasuredAlgebraError, ValueError):
            continue
    pt, pt2 = phi_tilde(R), phi_tilde(R2)
    # phi~ is a covector: its value on b'_j = sum_i P_ij b_i
    for j in range(m):
        assert pt2[j] == sum(P[i][j] * pt[i] for i in range(m))


def test_json_load(tmp_path):
    R = MeasuredAlgebra.load(DATA / "weighted_c2.json")
    assert R.dim == 2 and R.phi == [1, 2]
    assert MeasuredAlgebra.from_json(R.to_json()).phi == R.phi
    with pytest.raises(MeasuredAlgebraError):
        MeasuredAlgebra.load(DATA / "malformed.json")
    with pytest.raises(MeasuredAlgebraError):
        MeasuredAlgebra.from_json({"dim": 2, "unit": ["1"]})


def test_invalid_structure_rejected():
    with pytest.raises(MeasuredAlgebraError):
        MeasuredAlgebra("bad", [[[F(1)]]], [F(2)], [F(1)])
