import pytest
from hypothesis import strategies as st

from hallpi import (
    Permutation,
    PermutationGroup,
    alternating_group,
    extend_by_inverse_transpose,
    general_linear_group,
    symmetric_group,
)


@pytest.fixture(scope="session")
def gl3():
    return general_linear_group(3)


@pytest.fixture(scope="session")
def ghat3():
    return extend_by_inverse_transpose(3)


@pytest.fixture(scope="session")
def ghat5():
    return extend_by_inverse_transpose(5)


@pytest.fixture(scope="session")
def gl5(ghat5):
    return general_linear_group(5)


@pytest.fixture
def s3():
    return symmetric_group(3)


@pytest.fixture
def s4():
    return symmetric_group(4)


@pytest.fixture
def a5():
    return alternating_group(5)


def cyc(n, text):
    return Permutation.from_cycles(n, text)


def perm_strategy(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


@st.composite
def small_groups(draw, max_degree=6, max_gens=3):
    """Random subgroups of Sym(n), n <= max_degree."""
    n = draw(st.integers(min_value=1, max_value=max_degree))
    gens = draw(st.lists(perm_strategy(n), min_size=0, max_size=max_gens))
    return PermutationGroup(n, gens)
