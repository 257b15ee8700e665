"""Brute-force oracles and reproduction tables.

Relations are checked by enumerating every tuple of the determined tracks
below the bound and, for each, collecting *all* values of the last track
that the automaton accepts (a depth-first walk over the last track's
digits). The collected set must equal the set the arithmetic predicts.
This is exhaustive for the enumerated tuples while avoiding a separate run
per candidate value.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .automata import Dfa, Dfao, InvalidInputError
from .numeration import TrackWord, encode, fib, pad

__all__ = [
    "OracleSpec",
    "OracleReport",
    "relation_oracle",
    "sequence_oracle",
    "oracle_check",
    "padding_check",
    "OeisTable",
    "A372846",
    "A385021",
    "oeis_a372846",
    "oeis_a385021",
    "GrowthReport",
    "growth_probe",
    "derive_adder_interval",
    "fib_word_value",
    "fib_thue_morse_value",
]

RELATION_KINDS = ("add-const", "sub-const", "affine", "adder", "eq-const")
SEQUENCE_KINDS = ("fib-word", "fib-thue-morse", "shift", "linear")


def fib_word_value(i: int) -> int:
    w = encode(i)
    return int(w[-1]) if w else 0


def fib_thue_morse_value(i: int) -> int:
    return encode(i).count("1") % 2


_BASE_SEQUENCES: dict[str, Callable[[int], int]] = {
    "fib-word": fib_word_value,
    "fib-thue-morse": fib_thue_morse_value,
}


@dataclass(frozen=True)
class OracleSpec:
    """What an automaton is supposed to compute, and how far to enumerate.

    ``params`` per kind: add-const/sub-const/eq-const ``(c,)``; affine
    ``(n, c)``; adder ``()``; shift ``(c,)`` and linear ``(n, c)`` with
    ``base`` naming the underlying sequence.
    """

    kind: str
    params: tuple[int, ...] = ()
    bound: int = 2000
    base: str | None = None

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.kind not in RELATION_KINDS + SEQUENCE_KINDS:
            raise ValueError(f"unknown oracle kind {self.kind!r}")
        if self.kind in ("shift", "linear") and self.base not in _BASE_SEQUENCES:
            raise ValueError(f"{self.kind} needs a base sequence")

    @property
    def is_relation(self) -> bool:
        return self.kind in RELATION_KINDS


@dataclass
class OracleReport:
    spec: OracleSpec
    passed: bool
    checked: int
    counterexample: tuple | None = None
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        s = f"{status} kind={self.spec.kind} params={list(self.spec.params)} bound={self.spec.bound} checked={self.checked}"
        if self.counterexample is not None:
            s += f" counterexample={list(self.counterexample)} {self.detail}"
        return s


def relation_oracle(spec: OracleSpec) -> tuple[int, Callable[[tuple[int, ...]], set[int]]]:
    """Arity and a map from the determined tracks to the allowed last-track values."""
    p = spec.params
    if spec.kind == "add-const":
        return 2, lambda v: {v[0] + p[0]}
    if spec.kind == "sub-const":
        return 2, lambda v: {v[0] - p[0]} if v[0] >= p[0] else set()
    if spec.kind == "affine":
        return 2, lambda v: {p[0] * v[0] + p[1]}
    if spec.kind == "adder":
        return 3, lambda v: {v[0] + v[1]}
    if spec.kind == "eq-const":
        return 1, lambda v: {p[0]}
    raise ValueError(f"{spec.kind} is not a relation")


def sequence_oracle(spec: OracleSpec) -> Callable[[int], int]:
    if spec.kind in _BASE_SEQUENCES:
        return _BASE_SEQUENCES[spec.kind]
    base = _BASE_SEQUENCES[spec.base]
    if spec.kind == "shift":
        (c,) = spec.params
        return lambda i: base(i + c)
    n, c = spec.params
    return lambda i: base(n * i + c)


def _accepted_last_track(d: Dfa, fixed: Sequence[int], max_len: int) -> set[int]:
    """All values v with len(encode(v)) <= max_len such that d accepts pair_encode(fixed + (v,))."""
    words = [encode(v) for v in fixed]
    m = max((len(w) for w in words), default=0)
    found: set[int] = set()

    def walk(rows: list[str], length: int, first_digit_one: bool) -> None:
        cols = [tuple(int(r[j]) for r in rows) for j in range(length)]
        # (state, position, last digit, [w], [w0]) for the free prefix w.
        stack = [(d.initial, 0, 0, 0, 0)]
        while stack:
            q, j, last, val, shifted = stack.pop()
            if j == length:
                if q in d.accepting:
                    found.add(val)
                continue
            for b in (0, 1):
                if j == 0 and first_digit_one and b == 0:
                    continue
                if b and last:
                    continue
                nq = d.delta[q].get(cols[j] + (b,))
                if nq is None:
                    continue
                # [wb] = [w0] + b and [wb0] = [w00] + 2b = [w] + [w0] + 2b
                new_val = shifted + b
                new_shift = val + shifted + 2 * b
                stack.append((nq, j + 1, b, new_val, new_shift))

    walk([pad(w, m) for w in words], m, False)
    for length in range(m + 1, max_len + 1):
        walk([pad(w, length) for w in words], length, True)
    return found


def _relation_check(d: Dfa, spec: OracleSpec) -> OracleReport:
    arity, allowed = relation_oracle(spec)
    if d.arity != arity:
        raise ValueError(f"{spec.kind} needs arity {arity}, automaton has {d.arity}")
    fixed_tracks = arity - 1
    tuples = list(itertools.product(range(spec.bound), repeat=fixed_tracks))
    expected = {t: allowed(t) for t in tuples}
    top = max([spec.bound - 1] + [max(e) for e in expected.values() if e])
    max_len = len(encode(top))
    failures: list[tuple[tuple[int, ...], str]] = []
    for t in tuples:
        got = _accepted_last_track(d, t, max_len)
        want = expected[t]
        for v in got - want:
            failures.append((t + (v,), "accepted but relation false"))
        for v in want - got:
            failures.append((t + (v,), "rejected but relation true"))
    checked = len(tuples)
    if failures:
        cex, why = min(failures, key=lambda f: (max(f[0]), f[0]))
        return OracleReport(spec, False, checked, cex, why)
    bad = _accepted_invalid_word(d)
    if bad is not None:
        return OracleReport(spec, False, checked, bad, "accepted a word with 11 on some track")
    bad = _padding_witness(d)
    if bad is not None:
        return OracleReport(spec, False, checked, bad, "verdict changes under one leading zero column")
    return OracleReport(spec, True, checked)


def _columns(d: Dfa) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=d.arity))


def _accepted_invalid_word(d: Dfa) -> tuple | None:
    """Shortest accepted input with two adjacent ones on some track, as a tuple of columns."""
    # BFS over (state, last column, seen 11); the last column is enough to spot a new 11.
    zero = (0,) * d.arity
    start = (d.initial, zero, False)
    parent: dict[tuple, tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q, prev, broken = node
        if broken and q in d.accepting:
            word = []
            while parent[node] is not None:
                word.append(node[1])
                node = parent[node]
            return tuple(reversed(word))
        for col in _columns(d):
            nq = d.delta[q].get(col)
            if nq is None:
                continue
            nxt = (nq, col, broken or any(a and b for a, b in zip(prev, col)))
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    return None


def _padding_witness(d: Dfa) -> tuple | None:
    """Shortest input accepted from exactly one of the start state and the state after a zero column."""
    zero = (0,) * d.arity
    padded = d.delta[d.initial].get(zero)
    start = (d.initial, padded)
    parent: dict[tuple, tuple | None] = {start: None}
    last: dict[tuple, tuple[int, ...]] = {}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        a, b = node
        if (a in d.accepting) != (b in d.accepting):
            word = []
            while parent[node] is not None:
                word.append(last[node])
                node = parent[node]
            return tuple(reversed(word))
        for col in _columns(d):
            na = d.delta[a].get(col) if a is not None else None
            nb = d.delta[b].get(col) if b is not None else None
            nxt = (na, nb)
            if (na is None and nb is None) or nxt in parent:
                continue
            parent[nxt] = node
            last[nxt] = col
            queue.append(nxt)
    return None


def _sequence_check(d: Dfao, spec: OracleSpec) -> OracleReport:
    oracle = sequence_oracle(spec)
    for i in range(spec.bound):
        want = oracle(i)
        try:
            got = d.output(encode(i))
        except InvalidInputError:
            got = None
        if got != want:
            return OracleReport(spec, False, i + 1, (i,), f"got {got} want {want}")
    return OracleReport(spec, True, spec.bound)


def oracle_check(automaton: Dfa, spec: OracleSpec) -> OracleReport:
    """Compare ``automaton`` against direct arithmetic on every argument below ``spec.bound``."""
    if spec.is_relation:
        return _relation_check(automaton, spec)
    if not isinstance(automaton, Dfao):
        raise ValueError("sequence oracles need a DFAO")
    return _sequence_check(automaton, spec)


def padding_check(automaton: Dfa, words: Iterable[TrackWord | str], max_pad: int = 5) -> list[tuple]:
    """Inputs whose verdict changes when 1..max_pad leading zero columns are added."""
    bad = []
    for w in words:
        tw = TrackWord((w,)) if isinstance(w, str) else w
        base = _verdict(automaton, tw)
        for k in range(1, max_pad + 1):
            if _verdict(automaton, tw.padded(k)) != base:
                bad.append((tw, k))
                break
    return bad


def _verdict(d: Dfa, w: TrackWord) -> Any:
    if isinstance(d, Dfao):
        try:
            return d.output(w)
        except InvalidInputError:
            return None
    return d.accepts(w)


@dataclass
class OeisTable:
    id: str
    expected: list[int]
    measured: list[int] = field(default_factory=list)

    def matches(self, indices: Iterable[int] | None = None) -> bool:
        idx = range(len(self.expected)) if indices is None else [i - 1 for i in indices]
        return all(self.measured[i] == self.expected[i] for i in idx)

    def lines(self) -> list[str]:
        out = []
        for n, (e, m) in enumerate(zip(self.expected, self.measured), start=1):
            out.append(f"{self.id} n={n} expected={e} measured={m} {'ok' if e == m else 'MISMATCH'}")
        return out


# Published values of the two OEIS entries for 1 <= n <= 10.
A372846 = [2, 10, 23, 40, 59, 85, 114, 146, 181, 224]
A385021 = [2, 5, 10, 17, 27, 36, 52, 65, 78, 103]


def oeis_a372846(count: int = 10) -> OeisTable:
    """Live states of the minimal recognizer of [y] = n[x], n = 1..count."""
    from .relations import affine

    return OeisTable("A372846", A372846[:count], [affine(n, 0).num_states for n in range(1, count + 1)])


def oeis_a385021(count: int = 10) -> OeisTable:
    """States of the minimal DFAO for f[n i], n = 1..count."""
    from .subsequences import fib_word, linear_subseq

    f = fib_word()
    return OeisTable("A385021", A385021[:count], [linear_subseq(f, n, 0).num_states for n in range(1, count + 1)])


_MODELS: dict[str, Callable[[int], float]] = {
    "log": lambda p: math.log2(p + 2),
    "linear": lambda p: float(max(p, 1)),
    "quadratic": lambda p: float(max(p, 1) ** 2),
    "quartic": lambda p: float(max(p, 1) ** 4),
}


@dataclass
class GrowthReport:
    model: str
    params: list[int]
    sizes: list[int]
    ratios: list[float]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios)

    def lines(self) -> list[str]:
        return [
            f"param={p} size={s} ratio={r:.4f} model={self.model}"
            for p, s, r in zip(self.params, self.sizes, self.ratios)
        ]


def growth_probe(builder: Callable[[int], int], params: Sequence[int], size_model: str) -> GrowthReport:
    """Evaluate ``builder(p)`` (a size) for each ``p`` and divide by the model."""
    if len(params) < 4:
        raise ValueError("a growth probe needs at least 4 sample points")
    model = _MODELS[size_model]
    sizes = [builder(p) for p in params]
    return GrowthReport(size_model, list(params), sizes, [s / model(p) for s, p in zip(sizes, params)])


def derive_adder_interval(
    start: tuple[int, int] = (-2, 3), max_len: int = 12, log: list[str] | None = None
) -> tuple[int, int]:
    """Widen the adder's clamp interval until the exhaustive oracle passes.

    Every pair x, y of valid words of length <= max_len is checked.
    """
    from .relations import adder

    lo, hi = start
    bound = fib(max_len + 2)  # values with at most max_len digits
    while True:
        report = oracle_check(adder(interval=(lo, hi)), OracleSpec("adder", (), bound))
        if log is not None:
            log.append(f"interval=[{lo},{hi}] {report.line()}")
        if report.passed:
            return lo, hi
        lo, hi = lo - 1, hi + 1

