from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgs.exact_linalg import (
    CochainComplex,
    ComplexError,
    RationalFunction,
    ScalarParseError,
    SparseMatrix,
    bareiss_rank,
    first_nonzero_composition,
    format_scalar,
    homology_dims,
    kernel,
    kernel_basis,
    parse_scalar,
    rank,
    simplify,
    solve_kernel,
    specialize,
)

q = RationalFunction.q()


# -- scalars --------------------------------------------------------------------


def test_parse_and_format_roundtrip():
    for text in ["0", "1", "-3/4", "q", "1/q", "(q^2 + 1)/q", "-q - 1/q"]:
        x = parse_scalar(text)
        assert parse_scalar(format_scalar(x)) == x


def test_parse_with_q_value_specializes():
    assert parse_scalar("q + 1/q", q=F(2)) == F(5, 2)


def test_parse_rejects_garbage():
    with pytest.raises(ScalarParseError):
        parse_scalar("1 +* q")


def test_canonical_form_monic_denominator():
    x = (2 * q + 2) / (4 * q * q - 4)
    assert x.den[-1] == 1
    assert x == F(1, 2) / (q - 1)


def test_simplify_collapses_constants():
    assert simplify(q / q) == F(1)
    assert isinstance(simplify(q / q), F)
    assert specialize((q * q + 1) / q, F(2)) == F(5, 2)


polys = st.lists(st.integers(-4, 4), min_size=1, max_size=3)


def rf(num, den):
    den = list(den)
    if not any(den):
        den = [1]
    return RationalFunction(num, den)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys, polys, polys, polys)
def test_field_axioms(n1, d1, n2, d2, n3, d3):
    x, y, z = rf(n1, d1), rf(n2, d2), rf(n3, d3)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == 0
    if x != 0:
        assert x * (1 / x) == 1


# -- matrices ----------------------------------------------------------------------


def test_rank_examples():
    assert rank(SparseMatrix.identity(3)) == 3
    assert rank(SparseMatrix(2, 3)) == 0
    m = SparseMatrix.from_dense([[F(1), q], [1 / q, F(1)]])
    assert rank(m) == 1


def test_kernel_examples():
    assert kernel_basis(SparseMatrix.identity(2)) == []
    (v,) = kernel_basis(SparseMatrix.from_dense([[1, 1]]))
    assert v[0] == -v[1] != 0
    vs = kernel_basis(SparseMatrix(2, 2))
    assert len(vs) == 2 and bareiss_rank([list(v) for v in vs]) == 2


def test_no_stored_zeros_and_bounds():
    m = SparseMatrix(2, 2, {(0, 0): F(0), (1, 1): F(3)})
    assert m.nnz() == 1
    with pytest.raises((IndexError, ValueError)):
        SparseMatrix(2, 2, {(2, 0): F(1)})


def test_matrix_json_roundtrip():
    m = SparseMatrix(2, 3, {(0, 1): (q * q + 1) / q, (1, 2): F(-2, 3)})
    assert SparseMatrix.from_json(m.to_json()) == m


small = st.integers(-3, 3)


@st.composite
def int_matrices(draw):
    r = draw(st.integers(1, 5))
    c = draw(st.integers(1, 5))
    return [[F(draw(small)) for _ in range(c)] for _ in range(r)]


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_rank_properties(data):
    m = SparseMatrix.from_dense(data)
    r = rank(m)
    assert r == bareiss_rank(data)
    assert r == rank(m.transpose())
    kb = kernel(m)
    assert r + len(kb) == m.cols
    for v in kb.vectors:
        assert m.apply(v) == {}


@settings(max_examples=40, deadline=None)
@given(int_matrices(), st.integers(1, 4))
def test_symbolic_specialization_rank_bound(data, k):
    # entries a + b q: rank at q = 2 never exceeds the rank over Q(q)
    sym = SparseMatrix.from_dense([[x + k * x * x * q for x in row] for row in data])
    assert rank(sym.specialize(F(2))) <= rank(sym)


def test_solve_kernel_coordinates():
    kb = solve_kernel([{0: F(1), 1: F(-1)}], 3)
    assert len(kb) == 2
    v = {0: F(2), 1: F(2), 2: F(5)}
    coords = kb.coordinates(v)
    assert sorted(coords) == [F(2), F(5)]
    with pytest.raises(ValueError):
        kb.coordinates({0: F(1)})


# -- complexes ------------------------------------------------------------------------


def test_homology_examples():
    zero = CochainComplex([1, 1], [SparseMatrix(1, 1)])
    assert homology_dims(zero) == [1, 1]
    one = CochainComplex([1, 1], [SparseMatrix.identity(1)])
    assert homology_dims(one) == [0, 0]


def test_complex_validation_reports_position():
    d0 = SparseMatrix.identity(1)
    with pytest.raises(ComplexError) as exc:
        CochainComplex([1, 1, 1], [d0, d0])
    assert exc.value.position == 0
    assert first_nonzero_composition([d0, d0]) == 0


def test_complex_shape_checked():
    with pytest.raises(ComplexError):
        CochainComplex([1, 2], [SparseMatrix(1, 1)])
