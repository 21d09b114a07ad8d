import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ldpc_gauge.chain import homology
from ldpc_gauge.families import ising, toric_complex
from ldpc_gauge.gf2 import (
    GF2Matrix,
    GF2Vector,
    image_membership,
    kernel_basis,
    min_weight_in_coset,
    min_weight_nontrivial,
    rank,
    solve,
)


@st.composite
def matrices(draw, max_rows=10, max_cols=10):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return GF2Matrix(r, c, rows)


@st.composite
def matrix_and_rhs(draw):
    m = draw(matrices(max_rows=8, max_cols=8))
    b = draw(st.integers(0, (1 << m.nrows) - 1))
    return m, GF2Vector(m.nrows, b)


# vectors and matrices


def test_vector_basics():
    v = GF2Vector.from_list([1, 0, 1, 1])
    assert v.weight == 3
    assert v.support() == (0, 2, 3)
    assert (v ^ GF2Vector.unit(4, 0)).support() == (2, 3)
    assert v.dot(GF2Vector.from_support(4, [2, 3])) == 0
    with pytest.raises(ValueError):
        GF2Vector(3, 0b1000)


def test_words_pack_low_bits_first():
    v = GF2Vector.from_support(130, [0, 64, 129])
    assert v.words.tolist() == [1, 1, 2]


def test_matrix_dense_round_trip():
    a = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
    m = GF2Matrix.from_dense(a)
    assert np.array_equal(m.to_dense(), a)
    assert m.T.shape == (3, 2)
    assert m.column_support(2) == (0, 1)


def test_matmul_matches_numpy():
    rng = np.random.default_rng(3)
    a = rng.integers(0, 2, (5, 7))
    b = rng.integers(0, 2, (7, 4))
    prod = GF2Matrix.from_dense(a) @ GF2Matrix.from_dense(b)
    assert np.array_equal(prod.to_dense(), (a @ b) % 2)


# rank / kernel / solve examples


def test_rank_examples():
    assert rank(GF2Matrix.zeros(0, 0)) == 0
    assert rank(GF2Matrix.identity(7)) == 7
    assert rank(ising(1, 4).code.delta.T) == 3


def test_kernel_examples():
    assert kernel_basis(GF2Matrix.identity(4)) == []
    assert kernel_basis(GF2Matrix(1, 2, [0b11])) == [GF2Vector(2, 0b11)]
    assert kernel_basis(ising(1, 4).code.delta.T) == [GF2Vector(4, 0b1111)]


def test_solve_examples():
    b = GF2Vector.from_list([1, 0, 1, 1])
    assert solve(GF2Matrix.identity(4), b) == b
    x = solve(GF2Matrix(1, 2, [0b11]), GF2Vector(1, 1))
    assert x in (GF2Vector.from_list([1, 0]), GF2Vector.from_list([0, 1]))


def test_solve_open_chain_disorder():
    # bond a joins sites a and a+1; flipping sites 0..a (0-based) violates only bond a
    delta_t = ising(1, 4, "open").code.delta.T
    x = solve(delta_t, GF2Vector.unit(3, 1))
    assert delta_t.matvec(x) == GF2Vector.unit(3, 1)
    brute = [v for v in range(16) if delta_t.matvec(v) == GF2Vector.unit(3, 1)]
    assert x.bits in brute
    assert sorted(GF2Vector(4, v).support() for v in brute) == [(0, 1), (2, 3)]


def test_solve_rejects_mismatch():
    with pytest.raises(ValueError):
        solve(GF2Matrix.identity(3), GF2Vector(2, 1))


def test_image_membership_examples():
    m = GF2Matrix(3, 1, [1, 1, 0])
    assert image_membership(m, GF2Vector.zeros(3))
    assert not image_membership(m, GF2Vector.from_list([1, 0, 0]))
    d2 = toric_complex(2, 3).complex.boundary(2)
    assert image_membership(d2, d2.column(4))


# properties


@given(matrices())
def test_rank_transpose(m):
    assert rank(m) == rank(m.T)


@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert m.ncols == rank(m) + len(ker)
    for v in ker:
        assert not m.matvec(v)


@given(matrices(max_rows=8, max_cols=8))
def test_rank_matches_span_oracle(m):
    assert rank(m) == oracles.rank(oracles.dense(m))


@given(matrix_and_rhs())
def test_solve_or_not_in_image(pair):
    m, b = pair
    x = solve(m, b)
    if x is None:
        assert not image_membership(m, b)
    else:
        assert m.matvec(x) == b
        assert image_membership(m, b)


# coset minimum


def test_coset_trivial_cases():
    assert min_weight_in_coset(GF2Vector.zeros(4), GF2Matrix.zeros(4, 0)) == (0, GF2Vector.zeros(4))
    ones = GF2Vector(4, 0b1111)
    assert min_weight_in_coset(ones, GF2Matrix(4, 1, [1, 1, 1, 1]))[0] == 0


def test_coset_toric_logical():
    cc = toric_complex(2, 3).complex
    d1, d2 = cc.boundary(1), cc.boundary(2)
    # horizontal loop of edges along direction 0 in row 0: edges 0,1,2
    loop = GF2Vector.from_support(18, [0, 1, 2])
    assert not d1.matvec(loop)
    assert min_weight_in_coset(loop, d2)[0] == 3


def test_coset_budget():
    span = GF2Matrix.identity(20)
    assert min_weight_in_coset(GF2Vector(20, 5), span, cap=1 << 10) is None


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(
    st.just(n),
    st.integers(0, (1 << n) - 1),
    st.lists(st.integers(0, (1 << n) - 1), max_size=14),
)))
def test_coset_matches_ambient_oracle(args):
    n, offset, cols = args
    span = GF2Matrix.from_columns(n, cols)
    w, v = min_weight_in_coset(GF2Vector(n, offset), span)
    assert w == oracles.coset_min(np.array([(offset >> i) & 1 for i in range(n)], dtype=np.uint8), oracles.dense(span))
    assert image_membership(span, v ^ GF2Vector(n, offset))


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(
    st.just(n),
    st.integers(0, (1 << n) - 1),
    st.lists(st.integers(0, (1 << n) - 1), max_size=8),
)))
def test_coset_span_and_ambient_routes_agree(args):
    n, offset, cols = args
    span = GF2Matrix.from_columns(n, cols)
    off = GF2Vector(n, offset)
    assert min_weight_in_coset(off, span, method="span") == min_weight_in_coset(off, span, method="ambient")


def test_coset_routes_on_both_backends(each_backend):
    cols = [0b10110101, 0b01101100, 0b11100011, 0b00011110, 0b10101010]
    span = GF2Matrix.from_columns(8, cols)
    off = GF2Vector(8, 0b10000001)
    expected = oracles.coset_min(np.array([1, 0, 0, 0, 0, 0, 0, 1], dtype=np.uint8), oracles.dense(span))
    for method in ("span", "ambient"):
        assert min_weight_in_coset(off, span, method=method)[0] == expected


def test_coset_rejects_unknown_method():
    with pytest.raises(ValueError):
        min_weight_in_coset(GF2Vector(2, 1), GF2Matrix.zeros(2, 0), method="fast")


def test_nontrivial_matches_oracle():
    cc = toric_complex(2, 3).complex
    reps = list(homology(cc, 1, minimize=False).representatives)
    triv = [GF2Vector(18, c) for c in cc.boundary(2).columns]
    w1 = min_weight_nontrivial(triv, reps, 18)[0]
    assert w1 == min_weight_nontrivial(triv, reps, 18, method="ambient")[0]
    assert w1 == oracles.nontrivial_min(oracles.dense(cc.boundary(1)), oracles.dense(cc.boundary(2)))
