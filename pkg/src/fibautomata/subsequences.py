"""Fibonacci-automatic sequences, their shifts and linear subsequences.

A sequence DFAO reads the canonical representation of ``i`` (one track,
msd first) and outputs ``h(i)``. Such automata never take a 1-transition
out of a state entered on 1, and their initial state loops on 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Sequence

from .automata import (
    Dfao,
    Ufao,
    alphabet,
    canonical,
    determinize_ufao,
    explore,
    minimize_dfao,
)
from .numeration import encode
from .relations import safe_interval

__all__ = [
    "fib_word",
    "fib_thue_morse",
    "BUILTINS",
    "interior",
    "interior_sequence",
    "shift",
    "linear_subseq_ufao",
    "linear_subseq",
    "check_consecutive_subset",
    "Morphism",
    "to_morphism",
    "iterate_morphism",
    "sequence_prefix",
    "subword_count",
]

ZERO, ONE = (0,), (1,)


def fib_word() -> Dfao:
    """Two-state DFAO whose output is the last digit of the representation."""
    return Dfao(1, ({ZERO: 0, ONE: 1}, {ZERO: 0}), 0, frozenset({0, 1}), None, (0, 1))


def fib_thue_morse() -> Dfao:
    """Parity of the number of 1s in the representation.

    States are (parity, last digit) pairs.
    """

    def successor(key, sym):
        parity, last = key
        if sym == ONE:
            return None if last else (1 - parity, 1)
        return (parity, 0)

    d = explore(1, (0, 0), successor, lambda k: True, lambda k: k[0])
    return canonical(d)


BUILTINS: dict[str, Callable[[], Dfao]] = {
    "fib-word": fib_word,
    "fib-thue-morse": fib_thue_morse,
}


def interior(m: Dfao) -> Dfao:
    """Replace the output map of (the minimal form of) ``m`` by the identity on states."""
    mm = minimize_dfao(m)
    return Dfao(mm.arity, mm.delta, mm.initial, mm.accepting, None, tuple(range(mm.num_states)))


def interior_sequence(m: Dfao, i: int) -> int:
    """State of ``m`` reached on the canonical representation of ``i``."""
    state = m.walk([(int(ch),) for ch in encode(i)])
    if state is None:
        raise ValueError(f"DFAO has no run on the representation of {i}")
    return state


def _last_bit(i: int) -> int:
    w = encode(i)
    return int(w[-1]) if w else 0


def shift(m: Dfao, c: int, minimized: bool = True) -> Dfao:
    """DFAO computing ``i -> h(i + c)``.

    After reading x the automaton is in the window
    ``((h'([x]), last bit of ([x])), ..., (h'([x]+c), last bit of ([x]+c)))``
    where h' is the interior sequence of the minimal DFAO for h.
    """
    if c < 0:
        raise ValueError("c must be a natural number")
    mm = minimize_dfao(m)
    start = tuple((interior_sequence(mm, i), _last_bit(i)) for i in range(c + 1))

    def successor(window, sym):
        a = sym[0]
        if a == 1 and window[0][1] == 1:
            return None
        # Children of [x], [x]+1, ... in increasing order; [xa] is child number a of [x].
        need = c + 1 + a
        children: list[tuple[int, int]] = []
        for p, last in window:
            zero = mm.delta[p].get(ZERO)
            if zero is None:
                raise ValueError(f"state {p} has no 0-transition")
            children.append((zero, 0))
            if not last:
                one = mm.delta[p].get(ONE)
                if one is None:
                    raise ValueError(f"state {p} entered on 0 has no 1-transition")
                children.append((one, 1))
            if len(children) >= need:
                break
        return tuple(children[a : a + c + 1])

    d = explore(1, start, successor, lambda w: True, lambda w: mm.outputs[w[c][0]])
    return minimize_dfao(d) if minimized else d


def linear_subseq_ufao(m: Dfao, n: int, c: int) -> Ufao:
    """UFAO that reads x, guesses y with [y] = n[x] + c, and runs ``m`` on y.

    Keys are ``(a_prev, b_prev, d, d_prev, q)`` with ``d = [y] - n[x]``
    kept inside [-n, 2n-1]. The initial set consists of every key reachable
    from ``(0, 0, 0, 0, q0)`` while x reads only zeros, so y may be longer
    than x.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= c < n:
        raise ValueError(f"c must satisfy 0 <= c < n (got n={n}, c={c})")
    lo, hi = safe_interval(n)

    def successors(key, a):
        a_prev, b_prev, d, d_prev, q = key
        if a and a_prev:
            return
        for b in (0, 1):
            if b and b_prev:
                continue
            g = d + d_prev + (b - n * a) + (b_prev - n * a_prev)
            if not lo <= g <= hi:
                continue
            nq = m.delta[q].get((b,))
            if nq is None:
                continue
            yield (a, b, g, d, nq)

    start = (0, 0, 0, 0, m.initial)
    init = {start}
    queue = deque([start])
    while queue:
        key = queue.popleft()
        for nxt in successors(key, 0):
            if nxt not in init:
                init.add(nxt)
                queue.append(nxt)

    index: dict[Hashable, int] = {}
    keys: list[Hashable] = []
    for key in sorted(init):
        index[key] = len(keys)
        keys.append(key)
    queue = deque(keys)
    delta: list[dict] = []
    while queue:
        key = queue.popleft()
        row = {}
        for a in (0, 1):
            targets = set()
            for nxt in successors(key, a):
                if nxt not in index:
                    index[nxt] = len(keys)
                    keys.append(nxt)
                    queue.append(nxt)
                targets.add(index[nxt])
            if targets:
                row[(a,)] = frozenset(targets)
        delta.append(row)
    accepting = frozenset(i for i, k in enumerate(keys) if k[2] == c)
    outputs = {i: m.outputs[keys[i][4]] for i in accepting}
    return Ufao(1, tuple(delta), frozenset(index[k] for k in init), accepting, tuple(keys), outputs)


def check_consecutive_subset(u: Ufao, subset: frozenset[int], n: int) -> None:
    """Assert the subset shape of a reachable determinized state.

    All members share their last x digit, and their current differences are
    distinct and form an integer interval inside [-n, 2n-1].
    """
    if not subset:
        return
    labels = [u.labels[q] for q in subset]
    if len({lab[0] for lab in labels}) != 1:
        raise AssertionError(f"mixed last x digits in subset {sorted(subset)}")
    ds = sorted(lab[2] for lab in labels)
    lo, hi = safe_interval(n)
    if ds != list(range(ds[0], ds[0] + len(ds))) or ds[0] < lo or ds[-1] > hi:
        raise AssertionError(f"differences {ds} are not consecutive and distinct")


def linear_subseq(
    m: Dfao, n: int, c: int = 0, minimized: bool = True, check_subsets: bool = False
) -> Dfao:
    """DFAO computing ``i -> h(n i + c)`` for ``0 <= c < n``."""
    mm = minimize_dfao(m)
    u = linear_subseq_ufao(mm, n, c)
    hook = (lambda s: check_consecutive_subset(u, s, n)) if check_subsets else None
    d = determinize_ufao(u, hook)
    return minimize_dfao(d) if minimized else d


@dataclass(frozen=True)
class Morphism:
    """A prolongable morphism on state letters together with a coding."""

    rules: dict[int, tuple[int, ...]]
    coding: dict[int, Any]
    start: int = 0

    @property
    def size(self) -> int:
        return sum(len(w) for w in self.rules.values())

    def to_text(self) -> str:
        lines = []
        for q in sorted(self.rules):
            word = " ".join(str(x) for x in self.rules[q])
            lines.append(f"{q} -> {word} ; coding {q} -> {self.coding[q]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, start: int = 0) -> "Morphism":
        rules, coding = {}, {}
        for line in text.splitlines():
            if not line.strip():
                continue
            rule, code = line.split(";")
            lhs, rhs = rule.split("->")
            q = int(lhs)
            rules[q] = tuple(int(x) for x in rhs.split())
            _, out = code.replace("coding", "").split("->")
            coding[q] = int(out)
        return cls(rules, coding, start)


def to_morphism(m: Dfao) -> Morphism:
    """Read a morphism off a DFAO: each state maps to its 0-successor then its 1-successor."""
    d = canonical(m)
    rules = {}
    for q, row in enumerate(d.delta):
        img = [row[s] for s in alphabet(1) if s in row]
        if not img:
            raise ValueError(f"state {q} has no outgoing transition")
        rules[q] = tuple(img)
    return Morphism(rules, {q: d.outputs[q] for q in range(d.num_states)}, d.initial)


def iterate_morphism(mo: Morphism, length: int, coded: bool = True) -> list:
    """First ``length`` letters of the fixed point starting at ``mo.start``, optionally coded."""
    first = mo.rules[mo.start]
    if first[0] != mo.start or len(first) < 2:
        raise ValueError("morphism is not prolongable on its start letter")
    out = list(first)
    i = 1
    while len(out) < length:
        out.extend(mo.rules[out[i]])
        i += 1
    out = out[:length]
    return [mo.coding[x] for x in out] if coded else out


def sequence_prefix(m: Dfao, length: int) -> list:
    """``h(0), ..., h(length-1)`` generated through the DFAO's morphism."""
    return iterate_morphism(to_morphism(m), length)


def _count_factors(seq: Sequence, k: int) -> int:
    t = tuple(seq)
    return len({t[i : i + k] for i in range(len(t) - k + 1)})


def subword_count(m: Dfao, length: int) -> int:
    """Number of distinct length-``length`` factors of the sequence generated by ``m``.

    Counted by a sliding window over a prefix of length
    ``max(10 * length * states^2, 10^4)``, doubled until the count is
    unchanged twice in a row. This is a stopping heuristic, not a proof.
    """
    if length < 1:
        raise ValueError("factor length must be positive")
    states = minimize_dfao(m).num_states
    size = max(10 * length * states * states, 10_000)
    counts = [_count_factors(sequence_prefix(m, size), length)]
    while len(counts) < 3 or not counts[-1] == counts[-2] == counts[-3]:
        size *= 2
        counts.append(_count_factors(sequence_prefix(m, size), length))
    return counts[-1]
