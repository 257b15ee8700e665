"""Direct constructions of recognizers for simple arithmetic relations.

Two-track recognizers read ``x × y`` and track the running difference
``d = [y] - n[x]`` together with the previous difference and the last digit
on each track. A state whose difference leaves the safe interval can never
reach acceptance again, so it is sent to the dead state.
"""

from __future__ import annotations

from collections import deque

from . import constants
from .automata import Dfa, explore, minimize, swap_tracks
from .numeration import encode

__all__ = [
    "safe_interval",
    "difference_automaton",
    "add_const",
    "sub_const",
    "affine",
    "eq_const",
    "adder",
    "adder_annotated",
    "backward_levels",
]


def safe_interval(n: int) -> tuple[int, int]:
    """The interval [-n, 2n-1] outside of which [y] - n[x] cannot return to c < n."""
    return -n, 2 * n - 1


def difference_automaton(n: int, lo: int, hi: int, target: int) -> Dfa:
    """Forward-reachable automaton for ``[y] = n[x] + target`` clamped to ``[lo, hi]``.

    State keys are ``(a_prev, b_prev, d, d_prev)``.
    """

    def successor(key, sym):
        a_prev, b_prev, d, d_prev = key
        a, b = sym
        if a and a_prev or b and b_prev:
            return None
        g = d + d_prev + (b - n * a) + (b_prev - n * a_prev)
        if not lo <= g <= hi:
            return None
        return (a, b, g, d)

    return explore(2, (0, 0, 0, 0), successor, lambda key: key[2] == target)


def add_const(c: int, minimized: bool = True) -> Dfa:
    """Recognizer of ``x × y`` with ``[x] + c = [y]``."""
    if c < 0:
        raise ValueError("c must be a natural number")
    raw = difference_automaton(1, 0, c, c)
    return minimize(raw) if minimized else raw


def sub_const(c: int, minimized: bool = True) -> Dfa:
    """Recognizer of ``x × y`` with ``[x] - c = [y]`` (the adder with its tracks swapped)."""
    swapped = swap_tracks(add_const(c, minimized), (1, 0))
    return minimize(swapped) if minimized else swapped


def affine(n: int, c: int = 0, minimized: bool = True) -> Dfa:
    """Recognizer of ``x × y`` with ``[y] = n[x] + c`` for ``0 <= c < n``."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= c < n:
        raise ValueError(f"c must satisfy 0 <= c < n (got n={n}, c={c})")
    lo, hi = safe_interval(n)
    raw = difference_automaton(n, lo, hi, c)
    return minimize(raw) if minimized else raw


def eq_const(c: int) -> Dfa:
    """Chain automaton accepting exactly ``0* (c)``."""
    if c < 0:
        raise ValueError("c must be a natural number")
    word = encode(c)
    delta: list[dict] = [{(0,): 0}]
    if word:
        delta[0][(int(word[0]),)] = 1
        for i, ch in enumerate(word[1:], start=1):
            delta.append({(int(ch),): i + 1})
        delta.append({})
    return Dfa(1, tuple(delta), 0, frozenset({len(word)}))


def _adder_raw(lo: int, hi: int) -> Dfa:
    # Keys: (a_prev, b_prev, e_prev, d, d_prev) with d = [z] - [x] - [y].
    def successor(key, sym):
        a_prev, b_prev, e_prev, d, d_prev = key
        a, b, e = sym
        if a and a_prev or b and b_prev or e and e_prev:
            return None
        g = d + d_prev + (e - a - b) + (e_prev - a_prev - b_prev)
        if not lo <= g <= hi:
            return None
        return (a, b, e, g, d)

    return explore(3, (0, 0, 0, 0, 0), successor, lambda key: key[3] == 0)


def adder(minimized: bool = True, interval: tuple[int, int] | None = None) -> Dfa:
    """Recognizer of ``x × y × z`` with ``[x] + [y] = [z]``."""
    lo, hi = interval if interval is not None else constants.ADDER_INTERVAL
    raw = _adder_raw(lo, hi)
    return minimize(raw) if minimized else raw


def adder_annotated(base: Dfa | None = None) -> Dfa:
    """The adder with one step of memory.

    State labels are ``(s, s_prev, a, e)``: the current adder state, the
    adder state before the last column, and the last digits read on the
    first and last tracks. The language equals the adder's.
    """
    m = adder() if base is None else base

    def successor(key, sym):
        s = key[0]
        nxt = m.delta[s].get(sym)
        if nxt is None:
            return None
        return (nxt, s, sym[0], sym[2])

    return explore(3, (m.initial, m.initial, 0, 0), successor, lambda key: key[0] in m.accepting)


def backward_levels(d: Dfa) -> list[set[int]]:
    """Group states of a trimmed difference automaton by distance from acceptance.

    Returns, for each level, the set of ``d`` components among its states
    (labels must be ``(a, b, d, d_prev)`` keys).
    """
    if d.labels is None:
        raise ValueError("levels need a labelled (unminimized) automaton")
    preds: list[set[int]] = [set() for _ in range(d.num_states)]
    for q, row in enumerate(d.delta):
        for dst in row.values():
            preds[dst].add(q)
    level = {q: 0 for q in d.accepting}
    queue = deque(sorted(d.accepting))
    while queue:
        q = queue.popleft()
        for p in preds[q]:
            if p not in level:
                level[p] = level[q] + 1
                queue.append(p)
    out: list[set[int]] = [set() for _ in range(max(level.values(), default=-1) + 1)]
    for q, lv in level.items():
        out[lv].add(d.labels[q][2])
    return out

