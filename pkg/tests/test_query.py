import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthovec.boolfn import from_index, parity
from orthovec.exactlin import CScalar, DimensionError, KVector, inner
from orthovec.oracle import MINUS, PLUS, ProductState, parse_product_state
from orthovec.quantum import measure_observable
from orthovec.query import (
    QuerySetup,
    finest_partition,
    is_decidable,
    normalized_inner,
    normalized_overlap,
    orthogonal_span,
    output_vectors,
    property_projector,
)

from conftest import nonzero_vectors, scalars


@pytest.fixture
def deutsch_setup(deutsch_family):
    return QuerySetup.with_ancilla(deutsch_family, ProductState.uniform(MINUS, 1))


def test_deutsch_outputs(deutsch_setup, eq2):
    assert output_vectors(deutsch_setup) == eq2


def test_overwrite_outputs_are_twice_the_reference_rows(deutsch_family, eq3):
    setup = QuerySetup("overwrite", deutsch_family, ProductState.uniform(PLUS, 2))
    assert output_vectors(setup) == [v.scale(2) for v in eq3]


def test_single_constant_zero_function():
    setup = QuerySetup.with_ancilla([from_index(0, 2)], parse_product_state("(1,2),(3,-1)"))
    (out,) = output_vectors(setup)
    assert out == KVector([3, -3, -1, 1, 6, -6, -2, 2])


def test_setup_validation(deutsch_family):
    with pytest.raises(DimensionError):
        QuerySetup("xor", deutsch_family, ProductState.uniform(MINUS, 3))
    with pytest.raises(ValueError):
        QuerySetup("xor", (), ProductState.uniform(MINUS, 2))
    with pytest.raises(ValueError):
        QuerySetup("swap", deutsch_family, ProductState.uniform(MINUS, 2))


def test_partition_examples(eq2, eq4):
    assert finest_partition(eq2).classes == ((0, 3), (1, 2))
    assert finest_partition(eq4).classes == ((0,), (1,), (2,), (3,))
    same = [KVector([1, 2])] * 3
    assert finest_partition(same).classes == ((0, 1, 2),)


def test_partition_is_transitive_closure():
    # 0~1 and 1~2 but 0 is orthogonal to 2: still one class
    vs = [KVector([1, 0]), KVector([1, 1]), KVector([0, 1]), KVector([0, 0])]
    assert finest_partition(vs).classes == ((0, 1, 2), (3,))


def test_parity_decidable_for_one_bit(eq2, deutsch_family):
    assert is_decidable([parity(f) for f in deutsch_family], eq2).ok


def test_parity_not_decidable_for_f0_f8(f0_f8_f15, eq5):
    f0, f8, _ = f0_f8_f15
    setup = QuerySetup.with_ancilla([f0, f8], ProductState.uniform(MINUS, 2))
    vs = output_vectors(setup)
    assert vs == eq5
    v = is_decidable([parity(f0), parity(f8)], vs)
    assert not v.ok
    assert v.witness == (0, 1, CScalar(4))
    assert normalized_inner(*vs) == Fraction(1, 2)
    assert normalized_overlap(*vs) == Fraction(1, 4)


def test_single_label_is_decidable(eq5):
    assert is_decidable({0: "x", 1: "x"}, eq5).ok


def test_missing_label(eq5):
    with pytest.raises(KeyError):
        is_decidable({0: "x"}, eq5)


def test_normalized_inner_irrational():
    assert normalized_inner(KVector([1, 0]), KVector([1, 1])) is None


def test_projector_for_parity(eq2):
    obs = property_projector(finest_partition(eq2), [1, -1])
    assert measure_observable(eq2[3], obs) == {1: 1, -1: 0}
    for v, lam in zip(eq2, [1, -1, -1, 1]):
        assert measure_observable(v, obs)[lam] == 1


def test_projector_identifies_lifted_vectors(eq4):
    part = finest_partition(eq4)
    obs = property_projector(part, [0, 1, 2, 3])
    for k, v in enumerate(eq4):
        dist = measure_observable(v, obs)
        assert dist[k] == 1 and sum(dist.values()) == 1


def test_projector_single_class():
    vs = [KVector([1, 2]), KVector([2, 1])]
    obs = property_projector(finest_partition(vs), [7])
    assert all(measure_observable(v, obs) == {7: 1} for v in vs)


def test_projector_eigenvalue_errors(eq2):
    with pytest.raises(ValueError):
        property_projector(finest_partition(eq2), [1, 1])
    with pytest.raises(ValueError):
        property_projector(finest_partition(eq2), [1])


def _all_labelings(k):
    for labels in itertools.product(range(k), repeat=k):
        yield list(labels)


def _refines(partition, labels):
    """Every class lies inside one label group."""
    return all(len({labels[i] for i in c}) == 1 for c in partition.classes)


small_sets = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([CScalar(-1), CScalar(0), CScalar(1)]), min_size=n, max_size=n).map(KVector), min_size=1, max_size=4)
)


@settings(max_examples=80, deadline=None)
@given(small_sets)
def test_partition_refines_every_decidable_labeling(vs):
    part = finest_partition(vs)
    for labels in _all_labelings(len(vs)):
        if is_decidable(labels, vs).ok:
            assert _refines(part, labels)
    # and the partition itself is a decidable labelling
    assert is_decidable([part.class_of(i) for i in range(len(vs))], vs).ok


@settings(max_examples=50, deadline=None)
@given(small_sets, st.lists(scalars.filter(bool), min_size=4, max_size=4))
def test_partition_scale_invariant(vs, cs):
    scaled = [v.scale(c) for v, c in zip(vs, cs)]
    assert finest_partition(scaled).classes == finest_partition(vs).classes


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(nonzero_vectors(n), min_size=1, max_size=4)))
def test_projector_is_deterministic_on_members(vs):
    part = finest_partition(vs)
    obs = property_projector(part, list(range(len(part.classes))))
    for i, v in enumerate(vs):
        assert measure_observable(v, obs)[part.class_of(i)] == 1


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(nonzero_vectors(n), min_size=1, max_size=4)))
def test_orthogonal_span_is_orthogonal_and_spans(vs):
    span = orthogonal_span(vs)
    for i in range(len(span)):
        for j in range(i + 1, len(span)):
            assert inner(span[i], span[j]) == 0
    # every input is reproduced by its projections onto the span
    for v in vs:
        proj = None
        for b in span:
            term = b.scale(inner(b, v) / CScalar(b.norm_sq()))
            proj = term if proj is None else proj + term
        assert proj == v


@pytest.mark.parametrize("n", [1, 2])
def test_every_partition_labeling_decidable_for_xor_families(n):
    from orthovec.boolfn import enumerate_all

    fam = enumerate_all(n)
    setup = QuerySetup.with_ancilla(fam, ProductState.uniform(MINUS, n))
    vs = output_vectors(setup)
    part = finest_partition(vs)
    assert is_decidable([part.class_of(i) for i in range(len(vs))], vs).ok
