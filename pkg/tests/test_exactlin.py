from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthovec.exactlin import (
    CScalar,
    DimensionError,
    KMatrix,
    KVector,
    LiteralError,
    format_scalar,
    format_vector,
    gram,
    identity,
    inner,
    pad,
    parse_scalar,
    parse_vector,
    parse_vectors,
    primitive,
    sign_pattern,
    tensor,
    truncate,
)

from conftest import nonzero_vectors, scalars, vectors


def test_inner_of_deutsch_basis_vectors():
    assert inner(KVector([1, -1, -1, 1]), KVector([1, -1, 1, -1])) == 0
    assert inner(KVector([1, -1, -1, 1]), KVector([1, -1, -1, 1])) == 4


def test_inner_of_parity_pair(eq5):
    # independent route: plain integer dot product
    ref = int(np.dot([1, -1, -1, 1, -1, 1, 1, -1], [1, -1, -1, 1, -1, 1, -1, 1]))
    assert ref == 4
    assert inner(*eq5) == ref


def test_inner_conjugates_first_argument():
    u = KVector([CScalar(0, 1)])
    v = KVector([1])
    assert inner(u, v) == CScalar(0, -1)
    assert inner(v, u) == CScalar(0, 1)


def test_inner_dimension_mismatch():
    with pytest.raises(DimensionError):
        inner(KVector([1, 2]), KVector([1]))


def test_gram_of_lifted_set_is_diagonal(eq4):
    g = gram(eq4)
    assert g.is_diagonal()
    assert [g.at(i, i) for i in range(4)] == [3, 4, 6, 5]


def test_gram_of_standard_basis_is_identity():
    basis = [KVector([1 if i == j else 0 for j in range(3)]) for i in range(3)]
    assert gram(basis) == identity(3)


def test_gram_of_deutsch_outputs_couples_only_same_parity(eq2):
    ints = [[1, -1, -1, 1], [1, -1, 1, -1], [-1, 1, -1, 1], [-1, 1, 1, -1]]
    brute = [[sum(a * b for a, b in zip(u, v)) for v in ints] for u in ints]
    g = gram(eq2)
    nonzero_off = {(i, j) for i in range(4) for j in range(4) if i != j and g.at(i, j)}
    assert nonzero_off == {(0, 3), (3, 0), (1, 2), (2, 1)}
    assert [[g.at(i, j) for j in range(4)] for i in range(4)] == brute


def test_gram_rejects_empty_and_mixed():
    with pytest.raises(ValueError):
        gram([])
    with pytest.raises(DimensionError):
        gram([KVector([1]), KVector([1, 0])])


def test_tensor_examples():
    assert tensor(KVector([1, -1]), KVector([1, -1])) == KVector([1, -1, -1, 1])
    assert tensor(KVector([1, 0]), KVector([1, 0])) == KVector([1, 0, 0, 0])
    a, b, c, d = (CScalar(x) for x in (2, 3, 5, 7))
    assert tensor(KVector([a, b]), KVector([c, d])) == KVector([a * c, a * d, b * c, b * d])


def test_truncate_examples(eq3, eq4):
    assert truncate(KVector([1, 0, 1, 0, 1, 0, 0, 0]), 4) == KVector([1, 0, 1, 0])
    assert [truncate(v, 4) for v in eq4] == eq3
    v = KVector([1, 2, 3])
    assert truncate(v, 3) == v
    with pytest.raises(DimensionError):
        truncate(v, 4)


def test_primitive_and_patterns():
    assert primitive(KVector([2, 0, 2, 0])) == KVector([1, 0, 1, 0])
    assert primitive(KVector([Fraction(1, 2), Fraction(-1, 3)])) == KVector([3, -2])
    assert primitive(KVector([-4, 2])) == KVector([-2, 1])
    assert sign_pattern(KVector([1, -1, 0])) == "+-0"
    assert sign_pattern(KVector([2, 0])) is None


@pytest.mark.parametrize(
    "text, value",
    [
        ("1", CScalar(1)),
        ("-3/4", CScalar(Fraction(-3, 4))),
        ("1/2+3/4i", CScalar(Fraction(1, 2), Fraction(3, 4))),
        ("1/2+3/4 i", CScalar(Fraction(1, 2), Fraction(3, 4))),
        ("0-1i", CScalar(0, -1)),
        ("-i", CScalar(0, -1)),
        ("2i", CScalar(0, 2)),
        ("4/2", CScalar(2)),
    ],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "x", "1/0", "1.5", "1//2", "1+2", "ii"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(LiteralError):
        parse_scalar(bad)


def test_vector_literals():
    assert parse_vector("[1,-1,-1,1]") == KVector([1, -1, -1, 1])
    assert format_vector(KVector([1, -1, -1, 1])) == "[1,-1,-1,1]"
    assert parse_vectors("[1,0];[1,1]") == [KVector([1, 0]), KVector([1, 1])]
    for bad in ["1,2", "[]", "[1,,2]"]:
        with pytest.raises(LiteralError):
            parse_vector(bad)


def test_literal_error_names_token():
    with pytest.raises(LiteralError) as info:
        parse_vector("[1,zz]")
    assert info.value.token == "zz"


def test_floats_are_refused():
    with pytest.raises(TypeError):
        CScalar(0.5)


def test_matrix_shape_checks():
    with pytest.raises(DimensionError):
        KMatrix(2, 2, (1, 2, 3))
    m = KMatrix.from_rows([[1, 2], [3, 4]])
    assert m.row(1) == KVector([3, 4])
    assert m.col(0) == KVector([1, 3])
    assert (m @ KVector([1, 1])) == KVector([3, 7])
    assert (m @ identity(2)) == m


@given(scalars, scalars)
def test_scalar_field_ops(a, b):
    assert a.conjugate().conjugate() == a
    assert (a + b) - b == a
    assert (a * b).abs2() == a.abs2() * b.abs2()
    if b:
        assert (a / b) * b == a


@given(scalars)
def test_scalar_literal_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z
    assert format_scalar(parse_scalar(format_scalar(z))) == format_scalar(z)


@given(st.integers(1, 6).flatmap(lambda n: vectors(n)))
def test_vector_literal_round_trip(v):
    assert parse_vector(format_vector(v)) == v


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(vectors(n), vectors(n))))
def test_inner_hermitian_symmetry(uv):
    u, v = uv
    assert inner(u, v) == inner(v, u).conjugate()


@given(st.integers(1, 5).flatmap(vectors))
def test_norm_is_real_nonnegative(u):
    n = inner(u, u)
    assert n.im == 0 and n.re >= 0
    assert (n.re == 0) == u.is_zero()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(vectors(n), min_size=1, max_size=4)))
def test_gram_is_hermitian(vs):
    assert gram(vs).is_hermitian()


@given(vectors(2), vectors(3), vectors(2))
def test_tensor_associative(u, v, w):
    assert tensor(tensor(u, v), w) == tensor(u, tensor(v, w))


@given(st.integers(1, 5).flatmap(vectors), st.integers(0, 4))
def test_truncate_undoes_padding(v, m):
    assert truncate(pad(v, v.dim + m), v.dim) == v


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(vectors(n), vectors(n))))
def test_float_mirror_agrees(uv):
    u, v = uv
    assert np.isclose(complex(inner(u, v)), np.vdot(u.to_numpy(), v.to_numpy()))
