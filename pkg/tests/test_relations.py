import math

import pytest
from interval_sweep import interval_escape_sweep

from fibautomata import constants
from fibautomata.automata import equivalent, isomorphic, minimize, swap_tracks, trim
from fibautomata.numeration import encode, pair_encode
from fibautomata.relations import (
    add_const,
    adder,
    adder_annotated,
    affine,
    backward_levels,
    difference_automaton,
    eq_const,
    safe_interval,
    sub_const,
)
from fibautomata.verify import OracleSpec, oracle_check


def test_add_const_zero_is_validity_checking_equality():
    d = add_const(0)
    assert d.num_states == 2
    assert d.accepts(pair_encode((5, 5)))
    assert not d.accepts([(1, 1), (1, 1)])


def test_add_const_examples():
    d = add_const(1)
    assert d.accepts(pair_encode((4, 5)))
    assert not d.accepts(pair_encode((4, 6)))


@pytest.mark.parametrize("c", [0, 1, 2, 3, 7, 13, 21, 50])
def test_add_const_oracle(c):
    assert oracle_check(add_const(c), OracleSpec("add-const", (c,), 500)).passed


def test_add_const_log_size():
    for c in list(range(0, 300)) + [fib_c for fib_c in (610, 987, 1597)]:
        bound = constants.ADD_CONST_K1 * math.log2(c + 2) + constants.ADD_CONST_K2
        assert add_const(c).num_states <= bound, c


def test_add_const_power_of_two_ratio():
    ratios = [add_const(2**j).num_states / j for j in range(1, 13)]
    assert max(ratios) <= constants.ADD_CONST_LOG_CEILING


def test_add_const_levels_have_at_most_nine_differences():
    for c in range(0, 120):
        levels = backward_levels(trim(add_const(c, minimized=False)))
        assert all(len(ds) <= 9 for ds in levels), c


def test_sub_const_examples():
    assert sub_const(3).accepts(pair_encode((7, 4)))
    assert not sub_const(3).accepts(pair_encode((2, 0)))
    assert equivalent(sub_const(0), add_const(0))


def test_sub_const_is_swapped_add_const():
    for c in range(101):
        assert equivalent(sub_const(c), swap_tracks(add_const(c), (1, 0)))


def test_sub_const_oracle():
    assert oracle_check(sub_const(5), OracleSpec("sub-const", (5,), 500)).passed


def test_affine_examples():
    d = affine(3, 2)
    assert d.accepts(pair_encode((4, 14)))
    assert not d.accepts(pair_encode((4, 13)))
    assert affine(2, 0).num_states == 10
    assert affine(1, 0).num_states == 2
    assert equivalent(affine(1, 0), add_const(0))


def test_affine_rejects_bad_parameters():
    with pytest.raises(ValueError):
        affine(2, 2)
    with pytest.raises(ValueError):
        affine(0, 0)
    with pytest.raises(ValueError):
        add_const(-1)


@pytest.mark.parametrize("n, c", [(3, 2), (4, 1), (5, 0)])
def test_affine_oracle(n, c):
    assert oracle_check(affine(n, c), OracleSpec("affine", (n, c), 300)).passed


def test_affine_premin_quadratic_bound():
    for n in range(1, 13):
        lo, hi = safe_interval(n)
        assert (lo, hi) == (-n, 2 * n - 1)
        raw = affine(n, 0, minimized=False)
        assert raw.num_states <= 4 * (3 * n) ** 2
        assert all(lo <= key[2] <= hi and lo <= key[3] <= hi for key in raw.labels)


def test_eq_const_examples():
    assert eq_const(0).num_states == 1
    assert eq_const(0).accepts("000")
    d = eq_const(6)
    assert d.num_states == 5
    assert d.accepts("001001") and not d.accepts("1000")


def test_eq_const_exhaustive():
    for c in range(201):
        d = eq_const(c)
        assert d.num_states == len(encode(c)) + 1
        for other in range(201):
            assert d.accepts(encode(other)) == (other == c)


def test_adder_examples():
    d = adder()
    assert d.accepts(pair_encode((0, 0, 0)).padded(4))
    assert d.accepts(pair_encode((4, 7, 11)))
    assert not d.accepts(pair_encode((4, 7, 12)))
    assert d.num_states == 16


def test_adder_oracle():
    assert oracle_check(adder(), OracleSpec("adder", (), 200)).passed


def test_adder_symmetric():
    d = adder()
    assert isomorphic(minimize(swap_tracks(d, (1, 0, 2))), d)


def test_adder_interval_is_stable():
    # Any wider clamp gives the same minimal automaton.
    assert isomorphic(adder(interval=(-12, 12)), adder())


def test_adder_annotated():
    base = adder()
    ann = adder_annotated(base)
    assert equivalent(ann, base)
    assert ann.num_states <= 8 * base.num_states
    for col in [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 0)]:
        q = ann.delta[ann.initial].get(col)
        if q is not None:
            s, s_prev, a, e = ann.labels[q]
            assert (a, e) == (col[0], col[2])
            assert s_prev == base.initial


def test_difference_automaton_target_outside_interval_is_empty():
    d = difference_automaton(2, -2, 3, 7)
    assert not d.accepting


@pytest.mark.parametrize("n", range(1, 7))
def test_interval_escape_bounds_exhaustive(n):
    """Once the difference leaves I_n it never returns to [0, n), over all equal-length valid pairs of length <= 14."""
    violations, premises = interval_escape_sweep(n)
    assert violations == 0
    assert min(premises) > 10_000
