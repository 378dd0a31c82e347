import pytest
from hypothesis import given, settings

from ramseykit.core import (Achromatic, Coloring, Free, Rainbow, Thin,
                            TrapIntervals, check_property, is_b_bounded,
                            is_k_trapped, iter_colex, palette, trap_index)
from ramseykit.generators import (derive_seed, random_b_bounded_coloring,
                                  random_uniform_coloring)
from ramseykit.reductions import (BlockPartition, NotTwoBounded,
                                  WindowCondition, block_pigeonhole,
                                  greedy_achromatic_extension,
                                  greedy_free_extension, limit_coloring,
                                  rainbow_to_free, trap_decompose, truncate)

from conftest import bounded_by_max as _bounded_by_max
from conftest import coloring_from_map, colorings


# --- truncation -----------------------------------------------------------------

def test_truncate_values():
    f = Coloring(1, 3, (9, 1, 3))
    g = truncate(f, 3)
    assert g.values == (3, 1, 3)
    assert g.color_count == 4


def test_truncate_soundness_small():
    # achromatic(3) for the truncation implies thin for the original,
    # for every universe containing {0..3}
    for trial in range(20):
        f = random_uniform_coloring(2, 10, 10, derive_seed(99, trial))
        g = truncate(f, 3)
        for mask in range(1 << 10):
            hs = [i for i in range(10) if (mask >> i) & 1]
            if check_property(g, hs, Achromatic(3)):
                pal = set(palette(f, hs))
                assert not {0, 1, 2, 3} <= pal
                assert check_property(f, hs, Thin(tuple(range(4))))
                assert check_property(f, hs, Thin(tuple(range(10))))


# --- rainbow-to-free -------------------------------------------------------------

@pytest.fixture
def paired_coloring():
    """r=2 on [4]: {0,1} and {1,2} share color 0, {0,2} and {1,3} share
    color 1, the remaining tuples get fresh colors."""
    return coloring_from_map(2, 4, {
        (0, 1): 0, (0, 2): 1, (1, 2): 0, (1, 3): 1, (0, 3): 2, (2, 3): 3,
    })


def test_rainbow_to_free_worked_example(paired_coloring):
    g = rainbow_to_free(paired_coloring)
    assert g.value((1, 2)) == 0  # earlier partner {0,1}, least of {0,1}-{1,2}
    assert check_property(g, {1, 2, 3}, Free())
    assert check_property(paired_coloring, {1, 2, 3}, Rainbow())
    assert not check_property(g, {0, 1, 2}, Free())
    assert not check_property(paired_coloring, {0, 1, 2}, Rainbow())


def test_rainbow_to_free_rejects_unbounded():
    f = Coloring(1, 3, (5, 5, 5))
    with pytest.raises(NotTwoBounded) as exc:
        rainbow_to_free(f)
    assert exc.value.color == 5
    assert exc.value.multiplicity == 3


def test_rainbow_to_free_soundness_randomized():
    for trial in range(30):
        f = random_b_bounded_coloring(2, 8, 2, derive_seed(7, trial))
        assert is_b_bounded(f, 2)
        g = rainbow_to_free(f)
        for mask in range(1 << 8):
            hs = [i for i in range(8) if (mask >> i) & 1]
            if check_property(g, hs, Free()):
                assert check_property(f, hs, Rainbow())


# --- trap decomposition -----------------------------------------------------------

def test_trap_decompose_worked_example():
    f = coloring_from_map(2, 6, {(3, 5): 4})
    f0, f1, f2 = trap_decompose(f)
    assert f0.value((3, 5)) == 3  # min{3, 4}
    assert f1.value((3, 5)) == 4  # min{5, max{3, 4}}
    assert f2.value((3, 5)) == 6  # max{5+1, 4}
    assert trap_index(f, (3, 5)) == 1
    assert f1.value((3, 5)) == f.value((3, 5))


@settings(max_examples=40, deadline=None)
@given(colorings(max_r=2, max_n=6, max_color=9))
def test_trap_decompose_selector_identity_arbitrary(f):
    parts = trap_decompose(f)
    for t in f.tuples():
        assert parts[trap_index(f, t)].value(t) == f.value(t)
        for k, part in enumerate(parts):
            assert TrapIntervals(t).contains(k, part.value(t))


@settings(max_examples=25, deadline=None)
@given(colorings(max_r=2, max_n=6, max_color=8))
def test_truncation_blocks_low_color_coverage(f):
    # any witness of the truncation misses one of the clamped colors under
    # the original, which is what keeps it thin for larger universes
    g = truncate(f, 2)
    for mask in range(1 << f.n):
        hs = [i for i in range(f.n) if (mask >> i) & 1]
        if check_property(g, hs, Achromatic(2)):
            assert not {0, 1, 2} <= set(palette(f, hs))


def test_trap_decompose_components_trapped_and_selector():
    for trial in range(10):
        f = _bounded_by_max(2, 9, 3, derive_seed(11, trial))
        parts = trap_decompose(f)
        for k, part in enumerate(parts):
            assert is_k_trapped(part, k)
        for t in f.tuples():
            k = trap_index(f, t)
            assert parts[k].value(t) == f.value(t)


def test_trap_decompose_soundness_small():
    for trial in range(10):
        f = _bounded_by_max(2, 8, 3, derive_seed(23, trial))
        parts = trap_decompose(f)
        for mask in range(1 << 8):
            hs = [i for i in range(8) if (mask >> i) & 1]
            if all(check_property(p, hs, Free()) for p in parts):
                assert check_property(f, hs, Free())


# --- limit coloring ----------------------------------------------------------------

def test_limit_coloring_stable_tail():
    g = coloring_from_map(2, 6, {
        (0, 1): 7, (0, 2): 3, (0, 3): 3, (0, 4): 3, (0, 5): 3,
    })
    lim = limit_coloring(g, (1, 2, 3, 4, 5), threshold=3)
    assert lim.value((0,)) == 3  # last three witnesses agree


def test_limit_coloring_alternating_undefined():
    g = coloring_from_map(2, 6, {
        (0, 1): 1, (0, 2): 2, (0, 3): 1, (0, 4): 2, (0, 5): 1,
    })
    lim = limit_coloring(g, (1, 2, 3, 4, 5), threshold=3)
    assert lim.value((0,)) is None
    assert (0,) in lim.undefined


def test_limit_coloring_constant_total_where_witnessed():
    g = Coloring(2, 8, (4,) * 28)
    lim = limit_coloring(g, (2, 3, 4, 5, 6, 7), threshold=3)
    for s in range(8):
        usable = [x for x in (2, 3, 4, 5, 6, 7) if x > s]
        if len(usable) >= 3:
            assert lim.value((s,)) == 4
        else:
            assert (s,) in lim.undefined


def test_limit_coloring_validation():
    g = Coloring(2, 4, (0,) * 6)
    with pytest.raises(ValueError):
        limit_coloring(g, (1, 5))  # window outside domain
    with pytest.raises(ValueError):
        limit_coloring(g, (1, 2), threshold=1)


# --- greedy builders ----------------------------------------------------------------

def test_greedy_achromatic_even_example():
    g = Coloring(2, 12, tuple(t[1] % 2 for t in iter_colex(12, 2)))
    v = greedy_achromatic_extension(g, {0}, tuple(range(12)))
    assert v == (0, 2, 4, 6, 8, 10)


def test_greedy_achromatic_full_theta_takes_all():
    g = random_uniform_coloring(2, 10, 4, 5)
    v = greedy_achromatic_extension(g, set(range(4)), tuple(range(10)))
    assert v == tuple(range(10))


def test_greedy_achromatic_empty_theta_stalls_below_arity():
    g = random_uniform_coloring(2, 10, 4, 6)
    v = greedy_achromatic_extension(g, set(), tuple(range(10)))
    assert len(v) == g.r - 1  # no r-subset ever formed


def test_greedy_achromatic_palette_invariant():
    for trial in range(20):
        g = random_uniform_coloring(2, 10, 3, derive_seed(31, trial))
        theta = {0, 2}
        v = greedy_achromatic_extension(g, theta, tuple(range(10)))
        assert set(palette(g, v)) <= theta


def test_greedy_free_worked_example(succ_coloring):
    assert greedy_free_extension(succ_coloring, (), tuple(range(6))) == (0, 2, 4)


def test_greedy_free_min_coloring_takes_all():
    g = Coloring(2, 8, tuple(t[0] for t in iter_colex(8, 2)))
    assert greedy_free_extension(g, (), tuple(range(8))) == tuple(range(8))


def test_greedy_free_maximal_seed_unchanged(succ_coloring):
    assert greedy_free_extension(succ_coloring, (0, 2, 4), (0, 1, 2, 3, 4, 5)) \
        == (0, 2, 4)


def test_greedy_free_rejects_bad_seed(succ_coloring):
    with pytest.raises(ValueError):
        greedy_free_extension(succ_coloring, (0, 1), (2, 3))


def test_greedy_free_output_always_free():
    for trial in range(20):
        g = random_uniform_coloring(2, 9, 6, derive_seed(41, trial))
        v = greedy_free_extension(g, (), tuple(range(9)))
        assert check_property(g, v, Free())


# --- block pigeonhole ----------------------------------------------------------------

def test_block_pigeonhole_example():
    p = BlockPartition(((0, 1), (3,), (4, 6)), ((2,), (5,), (2,)))
    assert block_pigeonhole(p) == ((2,), (0, 1, 4, 6))


def test_block_pigeonhole_single_block():
    p = BlockPartition(((1, 2),), ((4, 7),))
    assert block_pigeonhole(p) == ((4, 7), (1, 2))


def test_block_pigeonhole_tiebreak_least_palette():
    p = BlockPartition(((0,), (2,), (4,)), ((9,), (1,), (5,)))
    assert block_pigeonhole(p) == ((1,), (2,))


def test_block_partition_validation_and_from_coloring():
    with pytest.raises(ValueError):
        BlockPartition(((0, 3), (2, 5)), ((0,), (0,)))  # overlapping positions
    f = Coloring(2, 7, tuple(t[0] for t in iter_colex(7, 2)))
    p = BlockPartition.from_coloring(f, ((0, 1, 2), (4, 6)))
    assert p.palettes == ((0, 1), (4,))


def test_window_condition_validation():
    WindowCondition((0, 1), (3, 5))
    with pytest.raises(ValueError):
        WindowCondition((0, 4), (3, 5))
