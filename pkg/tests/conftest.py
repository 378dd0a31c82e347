from math import comb

import pytest
from hypothesis import strategies as st

from ramseykit.core import Coloring, colex_rank, iter_colex
from ramseykit.generators import SplitMix64


def coloring_from_map(r, n, mapping, default=0, color_count=None):
    """Coloring with explicit values for the mapped tuples and a default
    elsewhere."""
    values = [default] * comb(n, r)
    for t, v in mapping.items():
        values[colex_rank(tuple(sorted(t)))] = v
    return Coloring(r, n, tuple(values), color_count)


def bounded_by_max(r, n, offset, seed):
    """Random coloring with f(t) <= max(t) + offset."""
    rng = SplitMix64(seed)
    values = tuple(rng.below(t[-1] + offset + 1) for t in iter_colex(n, r))
    return Coloring(r, n, values)


@st.composite
def colorings(draw, max_r=3, max_n=8, max_color=8):
    r = draw(st.integers(1, max_r))
    n = draw(st.integers(r, max_n))
    size = comb(n, r)
    values = draw(st.lists(st.integers(0, max_color - 1),
                           min_size=size, max_size=size))
    return Coloring(r, n, tuple(values))


@st.composite
def subsets_of(draw, n):
    return tuple(sorted(draw(st.sets(st.integers(0, n - 1)))))


@pytest.fixture
def succ_coloring():
    """r=1 on [6] with f(x) = x + 1."""
    return Coloring(1, 6, tuple(x + 1 for x in range(6)))
