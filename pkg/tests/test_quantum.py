import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthovec.boolfn import enumerate_all
from orthovec.exactlin import CScalar, KMatrix, KVector, identity, inner, matvec, tensor
from orthovec.oracle import build_overwrite_oracle, build_xor_oracle
from orthovec.quantum import (
    PRODUCT_EQUATIONS,
    Context,
    NormMismatch,
    Observable,
    born_probabilities,
    equation_label,
    is_product_3qubit,
    is_unitary,
    measure_observable,
    unitary_from_bases,
)
from orthovec.query import orthogonal_span

from conftest import nonzero_vectors, scalars

HADAMARD = Context([KVector([1, 1]), KVector([1, -1])])


def test_state_in_context_is_deterministic():
    ctx = Context([KVector([1, 1, 0]), KVector([1, -1, 0]), KVector([0, 0, 3])])
    assert born_probabilities(KVector([2, -2, 0]), ctx) == [0, 1, 0]


def test_born_examples():
    assert born_probabilities(KVector([1, 1]), Context.computational(2)) == [Fraction(1, 2)] * 2
    assert born_probabilities(KVector([1, 0]), HADAMARD) == [Fraction(1, 2)] * 2


def test_born_errors():
    with pytest.raises(ValueError):
        born_probabilities(KVector([0, 0]), HADAMARD)
    with pytest.raises(ValueError):
        born_probabilities(KVector([1, 0, 0]), HADAMARD)
    with pytest.raises(ValueError):
        Context([KVector([1, 0]), KVector([1, 1])])


PARITY = Observable([(1, Context([KVector([1, -1, -1, 1])])), (-1, Context([KVector([1, -1, 1, -1])]))])


def test_parity_observable_on_deutsch_outputs(eq2):
    assert measure_observable(eq2[0], PARITY) == {1: 1, -1: 0}
    assert measure_observable(eq2[1], PARITY) == {1: 0, -1: 1}
    assert measure_observable(KVector([1, 0, 0, 0]), PARITY) == {1: Fraction(1, 4), -1: Fraction(1, 4)}


def test_observable_matrix_is_spectral_sum():
    m = PARITY.matrix()
    assert matvec(m, KVector([1, -1, -1, 1])) == KVector([1, -1, -1, 1])
    assert matvec(m, KVector([1, -1, 1, -1])) == KVector([-1, 1, -1, 1])


def test_observable_validation():
    with pytest.raises(ValueError):
        Observable([(1, HADAMARD), (1, Context([KVector([1, 0])]))])
    with pytest.raises(ValueError):
        Observable([(1, Context([KVector([1, 0])])), (2, Context([KVector([1, 1])]))])


def test_unitary_from_identical_computational_bases():
    assert unitary_from_bases(Context.computational(3), Context.computational(3)) == identity(3)


def test_unitary_from_bases_norm_mismatch():
    with pytest.raises(NormMismatch, match="squared norm 1 and target squared norm 2"):
        unitary_from_bases(Context.computational(2), HADAMARD)


def test_unitary_from_swapped_hadamard_bases():
    dst = Context([KVector([1, -1]), KVector([1, 1])])
    m = unitary_from_bases(HADAMARD, dst)
    # independent route: numpy sum of outer products over the common squared norm
    ref = (np.outer([1, -1], [1, 1]) + np.outer([1, 1], [1, -1])) / 2
    assert np.array_equal(m.to_numpy(), ref)
    assert m == KMatrix.from_rows([[1, 0], [0, -1]])
    assert is_unitary(m).ok
    assert matvec(m, KVector([1, 1])) == KVector([1, -1])


def test_unitary_from_bases_with_square_norm_ratio():
    src = Context.computational(2)
    dst = Context([KVector([2, 2]), KVector([2, -2])])  # squared norm 8; 1 * 8 is not square
    with pytest.raises(NormMismatch):
        unitary_from_bases(src, dst)
    dst = Context([KVector([0, 2]), KVector([2, 0])])  # squared norm 4
    m = unitary_from_bases(src, dst)
    assert is_unitary(m).ok


def test_is_unitary_examples(deutsch_family):
    assert is_unitary(build_xor_oracle(deutsch_family[1]).matrix).ok
    v = is_unitary(build_overwrite_oracle(deutsch_family[0]).matrix)
    assert not v.ok and v.witness is not None
    assert is_unitary(identity(4)).ok
    with pytest.raises(ValueError):
        is_unitary(KMatrix.from_rows([[1, 0]]))


def test_product_examples():
    basis000 = [1] + [0] * 7
    assert is_product_3qubit(basis000).ok
    ghz = [1, 0, 0, 0, 0, 0, 0, 1]
    v = is_product_3qubit(ghz)
    assert not v.ok
    assert equation_label(PRODUCT_EQUATIONS[v.witness]) == "a000*a111 = a011*a100"
    with pytest.raises(ValueError):
        is_product_3qubit([0] * 8)


def minors_oracle(amps, tol=None):
    """Product iff the 1|23 and 12|3 flattenings both have rank one."""
    a = list(amps)

    def close(x, y):
        return x == y if tol is None else abs(x - y) <= tol

    def rank_one(rows):
        r, c = len(rows), len(rows[0])
        return all(
            close(rows[i][j] * rows[k][l], rows[i][l] * rows[k][j])
            for i in range(r)
            for k in range(i + 1, r)
            for j in range(c)
            for l in range(j + 1, c)
        )

    return rank_one([a[0:4], a[4:8]]) and rank_one([a[0:2], a[2:4], a[4:6], a[6:8]])


def test_product_equations_match_minors_on_small_integers():
    rng = random.Random(3)
    for _ in range(2000):
        a = [rng.choice([-1, 0, 0, 1, 2]) for _ in range(8)]
        if not any(a):
            continue
        assert is_product_3qubit(a).ok == minors_oracle(a)


@settings(max_examples=60, deadline=None)
@given(nonzero_vectors(2), nonzero_vectors(2), nonzero_vectors(2))
def test_tensor_products_pass(u, v, w):
    amps = list(tensor(tensor(u, v), w))
    assert is_product_3qubit(amps).ok
    assert minors_oracle(amps)


@settings(max_examples=60, deadline=None)
@given(st.lists(scalars, min_size=8, max_size=8).filter(any))
def test_product_test_agrees_with_minors(amps):
    assert is_product_3qubit(amps).ok == minors_oracle(amps)


def random_full_context(rng, n):
    while True:
        raw = [KVector(CScalar(rng.randint(-3, 3), rng.randint(-2, 2)) for _ in range(n)) for _ in range(n)]
        span = orthogonal_span(raw)
        if len(span) == n:
            return Context(span)


def test_born_sums_to_one_on_full_contexts():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 4)
        ctx = random_full_context(rng, n)
        psi = KVector(CScalar(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n))
        if psi.is_zero():
            continue
        assert sum(born_probabilities(psi, ctx)) == 1


@settings(max_examples=40, deadline=None)
@given(nonzero_vectors(2), scalars.filter(bool), scalars.filter(bool))
def test_born_scale_invariance(psi, c, d):
    ctx = Context([HADAMARD.vectors[0].scale(d), HADAMARD.vectors[1]])
    assert born_probabilities(psi.scale(c), ctx) == born_probabilities(psi, HADAMARD)


def test_accepted_unitaries_preserve_source_inner_products():
    rng = random.Random(5)
    done = 0
    while done < 10:
        src = random_full_context(rng, 2)
        norms = {v.norm_sq() for v in src}
        if len(norms) != 1:
            continue
        m = unitary_from_bases(src, src)
        for e in src:
            for f in src:
                assert inner(matvec(m, e), matvec(m, f)) == inner(e, f)
        done += 1


@pytest.mark.parametrize("n", [1, 2])
def test_all_xor_oracles_unitary(n):
    assert all(is_unitary(build_xor_oracle(f).matrix).ok for f in enumerate_all(n))
