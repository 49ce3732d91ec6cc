from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pinbrauer.core.linalg import (
    SparseLinearMap,
    inner,
    joint_kernel,
    nullspace,
    rank_of,
    rref,
    span_basis,
    vec_add_into,
    vec_scale,
)
from pinbrauer.core.scalars import ONE, SQRT2, QSqrt2


def q(a, b=0):
    return QSqrt2(a, b)


@st.composite
def sparse_rows(draw, columns=("a", "b", "c", "d"), max_rows=5):
    rows = []
    for _ in range(draw(st.integers(min_value=0, max_value=max_rows))):
        row = {}
        for c in columns:
            a = draw(st.integers(min_value=-3, max_value=3))
            b = draw(st.integers(min_value=-1, max_value=1))
            if a or b:
                row[c] = QSqrt2(a, b)
        rows.append(row)
    return rows


def test_vector_helpers_drop_zeros():
    v = {"x": ONE}
    vec_add_into(v, {"x": q(-1), "y": SQRT2})
    assert v == {"y": SQRT2}
    assert vec_scale({"x": q(2)}, 0) == {}
    assert inner({"x": q(2), "y": ONE}, {"y": SQRT2}) == SQRT2


def test_rank_and_span():
    rows = [{"a": ONE, "b": ONE}, {"b": ONE}, {"a": q(2), "b": q(3)}]
    assert rank_of(rows) == 2
    assert len(span_basis(rows)) == 2
    assert rref(rows).contains({"a": q(5)})


def test_nullspace_with_irrational_entries():
    rows = [{"a": ONE, "b": SQRT2}]
    basis = nullspace(rows, ["a", "b"])
    assert len(basis) == 1
    v = basis[0]
    assert v["b"] == ONE
    assert v["a"] == -SQRT2


@settings(max_examples=50)
@given(sparse_rows())
def test_nullspace_vectors_are_annihilated(rows):
    columns = ["a", "b", "c", "d"]
    basis = nullspace(rows, columns)
    assert len(basis) + rank_of(rows) == len(columns)
    for v in basis:
        for row in rows:
            assert inner(row, v).is_zero()


def test_map_composition_and_identity():
    basis = ["e1", "e2"]
    swap = SparseLinearMap(basis, basis, {"e1": {"e2": ONE}, "e2": {"e1": ONE}})
    ident = SparseLinearMap.identity(basis)
    assert swap @ swap == ident
    assert (swap - swap).is_zero()
    assert swap.apply({"e1": q(Fraction(1, 2))}) == {"e2": q(Fraction(1, 2))}
    assert (ident + ident) == ident.scale(2)
    with pytest.raises(TypeError):
        hash(ident)


def test_transpose_rank_and_coo():
    m = SparseLinearMap(["x", "y"], ["u", "v", "w"], {"x": {"u": ONE, "w": SQRT2}, "y": {"v": q(3)}})
    assert m.transpose().transpose() == m
    assert m.rank() == 2
    assert m.nnz() == 3
    assert m.to_coo() == [(0, 0, "1"), (2, 0, "1*sqrt2"), (1, 1, "3")]


def test_joint_kernel():
    domain = ["a", "b", "c"]
    sum_ab = SparseLinearMap(domain, ["s"], {"a": {"s": ONE}, "b": {"s": ONE}})
    kill_c = SparseLinearMap(domain, ["t"], {"c": {"t": ONE}})
    kernel = joint_kernel([sum_ab, kill_c], domain)
    assert kernel == [{"b": ONE, "a": q(-1)}]
