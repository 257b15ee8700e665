"""Zeckendorf (Fibonacci) representations of natural numbers.

Words are strings of ``'0'``/``'1'`` written most significant digit first.
The least significant digit has weight F_2 = 1, the next F_3 = 2, and so on.
Zero is represented canonically by the empty word.

Nothing in this module uses floating point: quantities involving the golden
ratio are compared exactly through integer square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Sequence

__all__ = [
    "fib",
    "value",
    "encode",
    "is_valid",
    "is_canonical",
    "pad",
    "TrackWord",
    "pair_encode",
    "double_shift_identity",
    "golden_ratio_bounds",
    "floor_div_alpha",
    "drop_last",
    "difference_update",
    "valid_words",
    "shifted_value",
]


@lru_cache(maxsize=None)
def fib(i: int) -> int:
    """Return F_i with F_0 = 0, F_1 = 1."""
    if i < 0:
        raise ValueError("negative Fibonacci index")
    a, b = 0, 1
    for _ in range(i):
        a, b = b, a + b
    return a


def value(word: str) -> int:
    """Weighted digit sum of ``word``; invalid words are evaluated all the same."""
    # Horner-like evaluation: [w d] = [w 0] + d and [w0] is obtained by
    # shifting every weight one Fibonacci index up.
    total = 0
    for pos, ch in enumerate(reversed(word)):
        if ch == "1":
            total += fib(pos + 2)
        elif ch != "0":
            raise ValueError(f"not a binary digit: {ch!r}")
    return total


def shifted_value(word: str) -> int:
    """Return ``value(word + '0')`` without building the string."""
    return value(word + "0")


def encode(i: int) -> str:
    """Canonical (greedy) Zeckendorf representation of ``i``."""
    if i < 0:
        raise ValueError("only natural numbers have a Fibonacci representation")
    if i == 0:
        return ""
    k = 2
    while fib(k + 1) <= i:
        k += 1
    digits = []
    for j in range(k, 1, -1):
        if fib(j) <= i:
            digits.append("1")
            i -= fib(j)
        else:
            digits.append("0")
    return "".join(digits)


def is_valid(word: str) -> bool:
    return "11" not in word and set(word) <= {"0", "1"}


def is_canonical(word: str) -> bool:
    return is_valid(word) and not word.startswith("0")


def pad(word: str, length: int) -> str:
    if len(word) > length:
        raise ValueError(f"word {word!r} longer than {length}")
    return "0" * (length - len(word)) + word


@dataclass(frozen=True)
class TrackWord:
    """Several equal-length digit words read in parallel, one per track."""

    rows: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("a track word needs at least one row")
        if len({len(r) for r in self.rows}) != 1:
            raise ValueError("rows of a track word must have equal length")

    @property
    def arity(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows[0])

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(int(r[j]) for r in self.rows) for j in range(len(self))]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.columns())

    def padded(self, extra: int) -> "TrackWord":
        """The same tuple of numbers with ``extra`` more leading zero columns."""
        return TrackWord(tuple("0" * extra + r for r in self.rows))

    def values(self) -> tuple[int, ...]:
        return tuple(value(r) for r in self.rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], arity: int) -> "TrackWord":
        return cls(tuple("".join(str(col[t]) for col in columns) for t in range(arity)))


def pair_encode(values: Sequence[int]) -> TrackWord:
    """Encode a tuple of naturals, left-padding each row to the common length."""
    words = [encode(v) for v in values]
    length = max((len(w) for w in words), default=0)
    return TrackWord(tuple(pad(w, length) for w in words))


def double_shift_identity(word: str) -> bool:
    """Whether appending two zeros adds the values of the word and of the word shifted once."""
    return value(word + "00") == value(word) + value(word + "0")


def _cmp_sqrt5(p: int, q: int) -> int:
    """Sign of ``p - q*sqrt(5)`` for integers p and q."""
    # Sign analysis first, then compare squares.
    if q == 0:
        return (p > 0) - (p < 0)
    if q > 0:
        if p <= 0:
            return -1
        lhs, rhs = p * p, 5 * q * q
        return (lhs > rhs) - (lhs < rhs)
    # q < 0: p - q*sqrt5 = p + |q| sqrt5
    if p >= 0:
        return 1
    lhs, rhs = 5 * q * q, p * p
    return (lhs > rhs) - (lhs < rhs)


def golden_ratio_bounds(word: str) -> bool:
    """Exact check of -beta^2 < [x0] - alpha*[x] < -beta."""
    v, v0 = value(word), value(word + "0")
    # Doubling turns the bounds into sqrt5 - 3 < 2*v0 - v - v*sqrt5 < sqrt5 - 1.
    lower_ok = _cmp_sqrt5(2 * v0 - v + 3, v + 1) > 0
    upper_ok = _cmp_sqrt5(2 * v0 - v + 1, v + 1) < 0
    return lower_ok and upper_ok


def floor_div_alpha(t: int) -> int:
    """Exact floor(t / alpha) for a natural ``t``, alpha the golden ratio."""
    if t < 0:
        raise ValueError("t must be natural")
    # t/alpha = (t*sqrt5 - t)/2 and floor((r - t)/2) == floor((floor(r) - t)/2).
    return (isqrt(5 * t * t) - t) // 2


def drop_last(t: int, word: str | None = None) -> int:
    """Value of the representation of ``t`` with its last digit removed.

    When ``word`` is supplied it must be a valid representation of ``t``
    (leading zeros allowed); it is only used to reject bad input.
    """
    if word is not None:
        if not is_valid(word):
            raise ValueError(f"{word!r} is not a valid Fibonacci representation")
        if value(word) != t:
            raise ValueError(f"{word!r} does not represent {t}")
    return floor_div_alpha(t + 2) - 1


def difference_update(
    d_prev: int,
    d_prevprev: int,
    n: int,
    a_prev: int,
    b_prev: int,
    a: int,
    b: int,
) -> int:
    """Next value of [y] - n[x] after appending digits ``a`` to x and ``b`` to y.

    ``d_prev`` is the difference before this step and ``d_prevprev`` the one
    before that; ``a_prev``/``b_prev`` are the digits read in the previous step.
    """
    if a_prev == 1 and a == 1 or b_prev == 1 and b == 1:
        raise ValueError("consecutive ones make the representation invalid")
    return d_prevprev + d_prev + (b - n * a) + (b_prev - n * a_prev)


def valid_words(length: int) -> list[str]:
    """All valid words of exactly ``length`` digits (leading zeros allowed), by value."""
    words = [""]
    for _ in range(length):
        words = [w + "0" for w in words] + [w + "1" for w in words if not w.endswith("1")]
    return sorted(words)
