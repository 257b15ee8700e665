import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fibautomata.numeration import (
    TrackWord,
    difference_update,
    drop_last,
    encode,
    fib,
    floor_div_alpha,
    is_canonical,
    is_valid,
    double_shift_identity,
    golden_ratio_bounds,
    pad,
    pair_encode,
    valid_words,
    value,
)


def greedy(i):
    """Independent greedy encoder working from the largest Fibonacci weight down."""
    weights = [1, 2]
    while weights[-1] <= i:
        weights.append(weights[-1] + weights[-2])
    digits = []
    for w in reversed(weights):
        if w <= i:
            digits.append("1")
            i -= w
        else:
            digits.append("0")
    return "".join(digits).lstrip("0")


def test_fib_weights():
    assert [fib(i) for i in range(2, 10)] == [1, 2, 3, 5, 8, 13, 21, 34]


@pytest.mark.parametrize(
    "word, expected",
    [("01001", 6), ("", 0), ("1000010100", 100), ("1", 1), ("10", 2), ("100", 3)],
)
def test_value_examples(word, expected):
    assert value(word) == expected


def test_value_tolerates_invalid_words():
    assert value("11") == 3
    assert not is_valid("11")


@pytest.mark.parametrize("i, word", [(6, "1001"), (0, ""), (100, "1000010100"), (4, "101")])
def test_encode_examples(i, word):
    assert encode(i) == word


def test_round_trip_below_one_million():
    for i in range(10**6):
        w = encode(i)
        if value(w) != i or not is_canonical(w):
            pytest.fail(f"round trip broken at {i}: {w!r}")


@given(st.integers(min_value=0, max_value=10**40))
def test_encode_matches_greedy_oracle(i):
    assert encode(i) == greedy(i)
    assert value(encode(i)) == i


def test_canonical_and_valid_predicates():
    assert is_canonical("") and is_canonical("1001")
    assert not is_canonical("01001") and is_valid("01001")
    assert not is_valid("0110")


def test_pair_encode_examples():
    tw = pair_encode((4, 11))
    assert tw.rows == ("00101", "10100")
    assert tw.columns() == [(0, 1), (0, 0), (1, 1), (0, 0), (1, 0)]
    assert pair_encode((0, 0)).rows == ("", "")
    assert pair_encode((3, 6)).rows == ("0100", "1001")
    assert tw.values() == (4, 11)


def test_trackword_rejects_ragged_rows():
    with pytest.raises(ValueError):
        TrackWord(("01", "1"))


def test_trackword_padding():
    tw = pair_encode((4, 11)).padded(2)
    assert tw.rows == ("0000101", "0010100")
    assert TrackWord.from_columns(tw.columns(), 2) == tw


@pytest.mark.parametrize("word", ["", "1001", "101"])
def test_double_shift_identity_examples(word):
    assert double_shift_identity(word)
    assert value("100100") == 16 and value("10010") == 10


def test_double_shift_identity_all_words_up_to_length_12():
    for length in range(13):
        for digits in itertools.product("01", repeat=length):
            assert double_shift_identity("".join(digits))


def test_golden_ratio_bounds_exhaustive_length_20():
    count = 0
    for length in range(1, 21):
        for w in valid_words(length):
            if w.startswith("1"):
                assert golden_ratio_bounds(w), w
                count += 1
    assert count == fib(22) - 1


def test_golden_ratio_bounds_detect_off_by_one():
    # [x0] - alpha [x] must sit in (-beta^2, -beta); shifting [x0] by one breaks it.
    v = value("1001")
    v0 = value("10010")
    alpha = Fraction(161803398874989, 10**14)
    assert -0.382 < v0 - alpha * v < 0.618
    assert not (-0.382 < v0 + 1 - alpha * v < 0.618)


def test_lex_order_matches_value_order_length_14():
    for length in range(1, 15):
        words = valid_words(length)
        vals = [value(w) for w in words]
        # valid_words is lexicographically sorted; values must be strictly increasing.
        assert words == sorted(words)
        assert all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("t, expected", [(0, 0), (1, 0), (2, 1), (3, 1), (8, 4), (100, 61)])
def test_floor_div_alpha(t, expected):
    assert floor_div_alpha(t) == expected


def test_floor_div_alpha_exact_bracket():
    # m = floor(t/alpha) iff m*alpha < t < (m+1)*alpha, and m*alpha < t iff m*sqrt5 < 2t - m.
    def below(m, t):
        r = 2 * t - m
        return m == 0 or (r > 0 and 5 * m * m < r * r)

    for t in list(range(2000)) + [fib(k) + j for k in range(20, 60) for j in (-1, 0, 1)]:
        m = floor_div_alpha(t)
        assert below(m, t) and not below(m + 1, t), t


def test_drop_last_examples():
    assert drop_last(6, "1001") == 3
    assert drop_last(1, "1") == 0
    # Truncating 1000010100 leaves 100001010 = 55 + 5 + 2.
    assert drop_last(100, "1000010100") == 62


def test_drop_last_rejects_bad_context():
    with pytest.raises(ValueError):
        drop_last(3, "11")
    with pytest.raises(ValueError):
        drop_last(5, "1001")


def test_drop_last_exhaustive_length_20():
    for length in range(1, 21):
        for w in valid_words(length):
            assert drop_last(value(w), w) == value(w[:-1]), w


@pytest.mark.parametrize(
    "args, expected",
    [
        ((0, 0, 1, 0, 0, 0, 0), 0),
        ((1, 0, 2, 0, 1, 1, 0), 0),
        ((-1, -1, 1, 0, 0, 0, 1), -1),
    ],
)
def test_difference_update_examples(args, expected):
    assert difference_update(*args) == expected


def test_difference_update_rejects_consecutive_ones():
    with pytest.raises(ValueError):
        difference_update(0, 0, 1, 1, 0, 1, 0)
    with pytest.raises(ValueError):
        difference_update(0, 0, 1, 0, 1, 0, 1)


def test_difference_update_exhaustive_length_8():
    checked = 0
    for length in range(0, 9):
        words = valid_words(length)
        for x, y in itertools.product(words, repeat=2):
            for a_prev, a, b_prev, b in itertools.product((0, 1), repeat=4):
                xa = f"{x}{a_prev}{a}"
                yb = f"{y}{b_prev}{b}"
                if not (is_valid(xa) and is_valid(yb)):
                    continue
                for n in range(1, 6):
                    d0 = value(y) - n * value(x)
                    d1 = value(y + str(b_prev)) - n * value(x + str(a_prev))
                    assert difference_update(d1, d0, n, a_prev, b_prev, a, b) == value(yb) - n * value(xa)
                    checked += 1
    assert checked > 100_000


def test_pad():
    assert pad("101", 5) == "00101"
    with pytest.raises(ValueError):
        pad("101", 2)
