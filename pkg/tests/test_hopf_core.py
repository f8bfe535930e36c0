from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgs.exact_linalg import RationalFunction, SparseMatrix, rank
from hopfgs.hopf_core import (
    DegreeOverflowError,
    EvenSubalgebra,
    FiniteGroup,
    GroupTableError,
    PBWAlgebra,
    RewriteError,
    check_hopf_axioms,
    check_kac,
    derive_be_relations,
    e_q,
    function_algebra,
    group_algebra,
    load_group,
    presentation_check_As_Ah,
    symmetric_group,
)
from hopfgs.hopf_core.linear import ONE


@pytest.fixture(scope="module")
def B2():
    return PBWAlgebra.quantum_sl2(F(2), 6)


# -- finite algebras ---------------------------------------------------------------


def test_group_validation():
    with pytest.raises(GroupTableError):
        FiniteGroup.from_table([[0, 1], [0, 1]])  # no inverses / not latin
    with pytest.raises(GroupTableError):
        FiniteGroup.from_table([[0, 1], [1]])
    with pytest.raises(GroupTableError):
        FiniteGroup.from_json({"group": {"order": 3, "table": [[0, 1], [1, 0]]}})


def test_group_json_roundtrip(tmp_path):
    G = symmetric_group(3)
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(G.to_json()))
    H = load_group(str(path))
    assert H.order == 6 and [list(r) for r in H.table] == [list(r) for r in G.table]


def test_cz2_basics():
    A = group_algebra(load_group("Z2"))
    assert check_kac(A)
    e, g = A.basis()
    assert A.haar_basis(e) == 1 and A.haar_basis(g) == 0


def test_os3_structure():
    G = load_group("S3")
    O = function_algebra(G)
    assert len(O.basis()) == 6
    for x, y in itertools.product(O.basis(), repeat=2):
        assert O.mul_basis(x, y) == O.mul_basis(y, x)
    for g in O.basis():
        expect = {(x, y): ONE for x in range(6) for y in range(6) if G.mul(x, y) == g}
        assert O.comul_basis(g) == expect
    assert check_kac(O)


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "S3"])
def test_finite_axioms(name):
    G = load_group(name)
    for A in (group_algebra(G), function_algebra(G)):
        rep = check_hopf_axioms(A)
        assert rep.passed, rep.lines()


def test_haar_invariance_group_algebra():
    A = group_algebra(load_group("S3"))
    for x in A.basis():
        left: dict = {}
        right: dict = {}
        for (x1, x2), c in A.comul_basis(x).items():
            h1, h2 = A.haar_basis(x1), A.haar_basis(x2)
            if h1:
                left[x2] = left.get(x2, 0) + c * h1
            if h2:
                right[x1] = right.get(x1, 0) + c * h2
        expect = {k: v * A.haar_basis(x) for k, v in A.one().items() if A.haar_basis(x)}
        assert {k: v for k, v in left.items() if v} == expect
        assert {k: v for k, v in right.items() if v} == expect


def test_fault_injection_antipode():
    A = group_algebra(load_group("S3"))
    table = [dict(A.antipode_basis(k)) for k in A.basis()]
    table[1], table[2] = table[2], table[1]
    broken = A.with_antipode(table, name="broken")
    rep = check_hopf_axioms(broken)
    assert not rep.passed
    assert any("antipode" in r.name and r.witnesses for r in rep.failures())


# -- rewriting ------------------------------------------------------------------------


def test_singular_or_small_forms_rejected():
    with pytest.raises(RewriteError):
        derive_be_relations([[F(1)]])
    with pytest.raises((RewriteError, ValueError, ZeroDivisionError)):
        derive_be_relations([[F(1), F(1)], [F(1), F(1)]])


def test_rules_preserve_parity(B2):
    assert B2.rewriting.parity_preserving()


def test_confluence_and_diamond(B2):
    assert B2.rewriting.check_confluence(5) == []
    assert B2.rewriting.check_diamond(4) == []


def _commutative_graded_dims(dmax):
    """dim of degree-d part of C[a,b,c,d]/(ad - bc) by linear algebra."""
    out = []
    for d in range(dmax + 1):
        mons = [m for m in itertools.product(range(d + 1), repeat=4) if sum(m) == d]
        idx = {m: i for i, m in enumerate(mons)}
        cols = []
        if d >= 2:
            for m in itertools.product(range(d - 1), repeat=4):
                if sum(m) != d - 2:
                    continue
                ad = (m[0] + 1, m[1], m[2], m[3] + 1)
                bc = (m[0], m[1] + 1, m[2] + 1, m[3])
                cols.append({idx[ad]: F(1), idx[bc]: F(-1)})
        image = rank(SparseMatrix.from_columns(len(mons), cols)) if cols else 0
        out.append(len(mons) - image)
    return out


def test_standard_counts_match_commutative_oracle():
    at2 = derive_be_relations(e_q(F(2)), 6).standard_counts(5)
    at1 = derive_be_relations(e_q(F(1)), 6).standard_counts(5)
    assert at2 == at1 == _commutative_graded_dims(5) == [1, 4, 9, 16, 25, 36]


def test_derived_rules_q2(B2):
    rules = dict(B2.rewriting.rules_table())
    assert rules["b*a"] == "2*a*b"
    assert rules["d*a"] == "4*a*d + -3"


def test_overflow_is_loud(B2):
    a = B2.gen(0, 0)
    x = B2.normal_form({a * 4: ONE})
    with pytest.raises(DegreeOverflowError):
        for k in x:
            B2.mul_basis(k, a * 3)


def test_normal_form_of_one(B2):
    assert B2.normal_form({(): ONE}) == {(): ONE}


def _random_poly(rng, A, deg):
    out = {}
    for _ in range(rng.randint(1, 4)):
        w = tuple(rng.randrange(4) for _ in range(rng.randint(0, deg)))
        out[w] = out.get(w, 0) + F(rng.randint(-3, 3))
    return {k: v for k, v in out.items() if v}


def test_normal_form_idempotent(B2):
    rng = random.Random(1)
    for _ in range(100):
        x = _random_poly(rng, B2, 3)
        n = B2.normal_form(x)
        assert B2.normal_form(n) == n


def _eps_word(w):
    # counit as the algebra map u_ij -> delta_ij on unreduced words
    return 1 if all(g in (0, 3) for g in w) else 0


def test_counit_multiplicative_against_word_oracle(B2):
    rng = random.Random(2)
    for _ in range(50):
        x, y = _random_poly(rng, B2, 2), _random_poly(rng, B2, 2)
        xy = B2.mul(B2.normal_form(x), B2.normal_form(y))
        ex = sum(c * _eps_word(w) for w, c in x.items())
        ey = sum(c * _eps_word(w) for w, c in y.items())
        assert B2.counit(xy) == ex * ey


def test_comultiplication_of_a(B2):
    a, b, c = B2.gen(0, 0), B2.gen(0, 1), B2.gen(1, 0)
    assert B2.comul_basis(a) == {(a, a): ONE, (b, c): ONE}


def test_antipode_matrix_formula(B2):
    # S(u) = E^-1 u^t E entrywise
    E, Ei = B2.E, B2.Einv
    for i, j in itertools.product(range(2), repeat=2):
        expect: dict = {}
        for k, l in itertools.product(range(2), repeat=2):
            c = Ei[i][k] * E[l][j]
            if c:
                key = B2.gen(l, k)
                expect[key] = expect.get(key, 0) + c
        assert B2.antipode_basis(B2.gen(i, j)) == {k: v for k, v in expect.items() if v}


def test_antipode_on_generators(B2):
    for i, j in itertools.product(range(2), repeat=2):
        total: dict = {}
        for k in range(2):
            for w, c in B2.mul({B2.gen(i, k): ONE}, B2.antipode_basis(B2.gen(k, j))).items():
                total[w] = total.get(w, 0) + c
        assert {w: c for w, c in total.items() if c} == ({(): ONE} if i == j else {})


def test_pbw_axioms_degree_3(B2):
    rep = check_hopf_axioms(B2, 3)
    assert rep.passed, rep.lines()
    rep = check_hopf_axioms(EvenSubalgebra(B2), 3)
    assert rep.passed, rep.lines()


def test_not_kac(B2):
    assert not check_kac(B2)
    b = B2.gen(0, 1)
    s2 = B2.antipode(B2.antipode_basis(b))
    assert s2 == {b: F(4)}


def test_symbolic_q_algebra():
    A = PBWAlgebra.quantum_sl2(RationalFunction.q(), 6)
    b = A.gen(0, 1)
    s2 = A.antipode(A.antipode_basis(b))
    assert s2 == {b: RationalFunction.q() ** 2}


def test_from_json_form():
    A = PBWAlgebra.from_json({"bilinear_form_E": [["0", "1"], ["-1/q", "0"]], "q": "3", "degree_bound": 5})
    assert A.q == 3 and A.degree_bound == 5 and A.name == "O(SL_q(2))"
    with pytest.raises(ValueError):
        PBWAlgebra.from_json({"q": "2"})


def test_from_json_data_file():
    path = Path(__file__).resolve().parent.parent / "data" / "e_q.json"
    A = PBWAlgebra.from_json(json.loads(path.read_text()))
    assert A.q == 2 and A.degree_bound == 6
    assert dict(A.rewriting.rules_table())["b*a"] == "2*a*b"


def test_q_validation():
    with pytest.raises(ValueError, match="q must be nonzero"):
        PBWAlgebra.quantum_sl2(F(0))


# -- parity and cocentral projection --------------------------------------------------


def test_parity_split_examples(B2):
    a = B2.gen(0, 0)
    assert B2.parity_split({a: ONE}) == ({}, {a: ONE})
    ab = B2.mul_basis(a, B2.gen(0, 1))
    x = {(): ONE, **ab}
    assert B2.parity_split(x) == (x, {})


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(-3, 3)), min_size=1, max_size=4))
def test_even_part_is_coinvariant(terms):
    A = PBWAlgebra.quantum_sl2(F(2), 6)
    p = A.cocentral_projection()
    x: dict = {}
    for g, length, c in terms:
        w = A.normal_form({tuple([g] * length): F(c)})
        for k, v in w.items():
            x[k] = x.get(k, 0) + v
    even, odd = A.parity_split({k: v for k, v in x.items() if v})
    assert not p.coinvariance_failures(even)
    for part in (even, odd):
        assert all(len(k) % 2 == (part is odd) for k in part)


def test_cocentral_projection(B2):
    p = B2.cocentral_projection()
    a, b = B2.gen(0, 0), B2.gen(0, 1)
    assert p({a: ONE}) == {1: ONE}
    assert p({b: ONE}) == {}
    assert p(B2.mul_basis(a, b)) == {}
    assert all(not r for r in p.relation_images())
    assert p.cocentrality_failures(3) == []


# -- presentations --------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_presentations(n):
    rep = presentation_check_As_Ah(n)
    assert rep.passed, rep.lines()


def test_presentation_rejects_n1():
    with pytest.raises(ValueError):
        presentation_check_As_Ah(1)
