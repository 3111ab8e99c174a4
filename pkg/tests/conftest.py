from fractions import Fraction

import pytest
from hypothesis import strategies as st

from orthovec.boolfn import DEUTSCH, from_index
from orthovec.exactlin import CScalar, KVector, parse_vectors

# reference rows of the worked examples, normalization omitted
DEUTSCH_OUTPUTS = "[1,-1,-1,1];[1,-1,1,-1];[-1,1,-1,1];[-1,1,1,-1]"
OVERWRITE_OUTPUTS = "[1,0,1,0];[1,0,0,1];[0,1,1,0];[0,1,0,1]"
LIFTED_OUTPUTS = "[1,0,1,0,1,0,0,0];[1,0,0,1,-1,1,0,0];[0,1,1,0,-1,-1,1,1];[0,1,0,1,0,-1,-1,-1]"
PARITY_PAIR_OUTPUTS = "[1,-1,-1,1,-1,1,1,-1];[1,-1,-1,1,-1,1,-1,1]"


@pytest.fixture
def deutsch_family():
    return [DEUTSCH[f"deutsch.f{i}"] for i in range(4)]


@pytest.fixture
def eq2():
    return parse_vectors(DEUTSCH_OUTPUTS)


@pytest.fixture
def eq3():
    return parse_vectors(OVERWRITE_OUTPUTS)


@pytest.fixture
def eq4():
    return parse_vectors(LIFTED_OUTPUTS)


@pytest.fixture
def eq5():
    return parse_vectors(PARITY_PAIR_OUTPUTS)


@pytest.fixture
def f0_f8_f15():
    return from_index(0, 2), from_index(8, 2), from_index(15, 2)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
scalars = st.builds(CScalar, rationals, rationals)
real_scalars = st.builds(CScalar, rationals)


def vectors(dim, elements=scalars):
    return st.lists(elements, min_size=dim, max_size=dim).map(KVector)


def nonzero_vectors(dim, elements=scalars):
    return vectors(dim, elements).filter(lambda v: not v.is_zero())
