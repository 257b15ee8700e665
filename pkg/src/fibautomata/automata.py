"""Finite automata over k-track binary digit alphabets.

States are dense integers ``0..N-1``. Transition tables are partial: a
missing entry stands for the unique dead state, which is never stored and
never counted. Every construction in the package numbers its states in
breadth-first order from the initial state, visiting symbols in
lexicographic order, so two isomorphic minimal automata serialize to the
same text.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .numeration import TrackWord

Symbol = tuple[int, ...]

__all__ = [
    "Symbol",
    "alphabet",
    "Dfa",
    "Dfao",
    "Nfa",
    "Ufao",
    "AmbiguityError",
    "InvalidInputError",
    "explore",
    "accessible",
    "canonical",
    "product",
    "product_output",
    "project",
    "determinize",
    "determinize_ufao",
    "minimize",
    "minimize_dfao",
    "equivalent",
    "counterexample",
    "isomorphic",
    "run",
    "swap_tracks",
    "as_nfa",
    "accept_all",
    "trim",
]


class AmbiguityError(ValueError):
    """Accepting members of one subset disagree on their output."""

    def __init__(self, subset: Sequence[int], outputs: Iterable[Any]):
        self.subset = tuple(subset)
        self.outputs = sorted(set(outputs), key=repr)
        super().__init__(f"ambiguous outputs {self.outputs} in subset {self.subset}")


class InvalidInputError(ValueError):
    """A DFAO was run on an input that falls into the dead state."""


@lru_cache(maxsize=None)
def alphabet(arity: int) -> tuple[Symbol, ...]:
    """All k-tuples of bits in lexicographic order."""
    return tuple(itertools.product((0, 1), repeat=arity))


@dataclass(frozen=True, eq=False)
class Dfa:
    arity: int
    delta: tuple[dict[Symbol, int], ...]
    initial: int = 0
    accepting: frozenset[int] = frozenset()
    # Optional per-state annotations (construction keys). Dropped by minimization.
    labels: tuple[Any, ...] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        for q, row in enumerate(self.delta):
            for sym, dst in row.items():
                if len(sym) != self.arity:
                    raise ValueError(f"symbol {sym} on state {q} has wrong arity")
                if not 0 <= dst < n:
                    raise ValueError(f"transition {q} --{sym}--> {dst} leaves the state set")
        if any(not 0 <= q < n for q in self.accepting):
            raise ValueError("accepting state out of range")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def num_transitions(self) -> int:
        return sum(len(row) for row in self.delta)

    def step(self, state: int | None, symbol: Symbol) -> int | None:
        if state is None:
            return None
        return self.delta[state].get(symbol)

    def walk(self, word: Iterable[Symbol]) -> int | None:
        state: int | None = self.initial
        for sym in word:
            state = self.step(state, sym)
            if state is None:
                return None
        return state

    def accepts(self, word: Any) -> bool:
        state = self.walk(_columns(word, self.arity))
        return state is not None and state in self.accepting

    def stats(self) -> dict[str, int]:
        return {"states": self.num_states, "transitions": self.num_transitions}


@dataclass(frozen=True, eq=False)
class Dfao(Dfa):
    """A DFA whose states carry output letters (``None`` means no output)."""

    outputs: tuple[Any, ...] = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.outputs) != len(self.delta):
            raise ValueError("every state needs an output entry")

    def output(self, word: Any) -> Any:
        state = self.walk(_columns(word, self.arity))
        if state is None:
            raise InvalidInputError(f"input {word!r} reaches the dead state")
        return self.outputs[state]

    def __call__(self, i: int) -> Any:
        from .numeration import encode

        return self.output(encode(i))


@dataclass(frozen=True, eq=False)
class Nfa:
    arity: int
    delta: tuple[dict[Symbol, frozenset[int]], ...]
    initial: frozenset[int]
    accepting: frozenset[int] = frozenset()
    labels: tuple[Any, ...] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        n = len(self.delta)
        for q, row in enumerate(self.delta):
            for sym, targets in row.items():
                if len(sym) != self.arity:
                    raise ValueError(f"symbol {sym} on state {q} has wrong arity")
                if any(not 0 <= t < n for t in targets):
                    raise ValueError(f"transition target out of range on state {q}")
        if any(not 0 <= q < n for q in self.initial | self.accepting):
            raise ValueError("initial or accepting state out of range")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def num_transitions(self) -> int:
        return sum(len(t) for row in self.delta for t in row.values())

    def step(self, states: Iterable[int], symbol: Symbol) -> frozenset[int]:
        out: set[int] = set()
        for q in states:
            out |= self.delta[q].get(symbol, frozenset())
        return frozenset(out)

    def accepts(self, word: Any) -> bool:
        current = self.initial
        for sym in _columns(word, self.arity):
            current = self.step(current, sym)
            if not current:
                return False
        return bool(current & self.accepting)


@dataclass(frozen=True, eq=False)
class Ufao(Nfa):
    """Nondeterministic automaton with outputs on its accepting states."""

    outputs: Mapping[int, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        super().__post_init__()
        if set(self.outputs) != set(self.accepting):
            raise ValueError("outputs must be given exactly on accepting states")


def _columns(word: Any, arity: int) -> list[Symbol]:
    if isinstance(word, TrackWord):
        if word.arity != arity:
            raise ValueError(f"track word of arity {word.arity} on a {arity}-track automaton")
        return word.columns()
    if isinstance(word, str):
        if arity != 1:
            raise ValueError("plain digit strings are only accepted by 1-track automata")
        return [(int(ch),) for ch in word]
    cols = [tuple(c) for c in word]
    if any(len(c) != arity for c in cols):
        raise ValueError("column arity mismatch")
    return cols


def run(automaton: Dfa, word: Any) -> Any:
    """Acceptance for a ``Dfa``, output letter for a ``Dfao``."""
    if isinstance(automaton, Dfao):
        return automaton.output(word)
    return automaton.accepts(word)


def explore(
    arity: int,
    start: Hashable,
    successor: Callable[[Hashable, Symbol], Hashable | None],
    accepting: Callable[[Hashable], bool] = lambda key: False,
    output: Callable[[Hashable], Any] | None = None,
) -> Dfa:
    """Breadth-first construction of the reachable part of an implicit automaton.

    ``successor`` returns ``None`` for transitions into the dead state.
    State keys end up in ``labels`` in numbering order.
    """
    index = {start: 0}
    keys = [start]
    delta: list[dict[Symbol, int]] = []
    queue = deque([start])
    symbols = alphabet(arity)
    while queue:
        key = queue.popleft()
        row: dict[Symbol, int] = {}
        for sym in symbols:
            nxt = successor(key, sym)
            if nxt is None:
                continue
            if nxt not in index:
                index[nxt] = len(keys)
                keys.append(nxt)
                queue.append(nxt)
            row[sym] = index[nxt]
        delta.append(row)
    acc = frozenset(i for i, k in enumerate(keys) if accepting(k))
    if output is None:
        return Dfa(arity, tuple(delta), 0, acc, tuple(keys))
    return Dfao(arity, tuple(delta), 0, acc, tuple(keys), tuple(output(k) for k in keys))


def _rebuild(d: Dfa, order: Sequence[int], keep_labels: bool = True) -> Dfa:
    """Renumber ``d`` so that ``order[i]`` becomes state ``i``; unlisted states vanish."""
    new = {old: i for i, old in enumerate(order)}
    delta = tuple(
        {sym: new[dst] for sym, dst in d.delta[old].items() if dst in new} for old in order
    )
    acc = frozenset(new[q] for q in d.accepting if q in new)
    labels = tuple(d.labels[q] for q in order) if keep_labels and d.labels is not None else None
    if isinstance(d, Dfao):
        return Dfao(d.arity, delta, new[d.initial], acc, labels, tuple(d.outputs[q] for q in order))
    return Dfa(d.arity, delta, new[d.initial], acc, labels)


def _bfs_order(d: Dfa, allowed: Callable[[int], bool] = lambda q: True) -> list[int]:
    order = [d.initial]
    seen = {d.initial}
    queue = deque(order)
    symbols = alphabet(d.arity)
    while queue:
        q = queue.popleft()
        row = d.delta[q]
        for sym in symbols:
            dst = row.get(sym)
            if dst is not None and dst not in seen and allowed(dst):
                seen.add(dst)
                order.append(dst)
                queue.append(dst)
    return order


def accessible(d: Dfa) -> Dfa:
    """Drop unreachable states (renumbering canonically)."""
    return _rebuild(d, _bfs_order(d))


def canonical(d: Dfa) -> Dfa:
    """Canonical BFS renumbering of the reachable part."""
    return accessible(d)


def coaccessible_states(d: Dfa, by_acceptance: bool = False) -> set[int]:
    """States from which an accepting state (a state with output, for a DFAO) is reachable.

    With ``by_acceptance`` a DFAO is treated like a DFA and only its
    accepting set counts.
    """
    preds: list[list[int]] = [[] for _ in range(d.num_states)]
    for q, row in enumerate(d.delta):
        for dst in row.values():
            preds[dst].append(q)
    if isinstance(d, Dfao) and not by_acceptance:
        seeds = [q for q in range(d.num_states) if d.outputs[q] is not None]
    else:
        seeds = list(d.accepting)
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        q = queue.popleft()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def trim(d: Dfa, by_acceptance: bool = False) -> Dfa:
    """Keep only states that are both accessible and co-accessible."""
    live = coaccessible_states(d, by_acceptance)
    if d.initial not in live:
        return _empty_like(d)
    return _rebuild(d, _bfs_order(d, lambda q: q in live))


def _empty_like(d: Dfa) -> Dfa:
    if isinstance(d, Dfao):
        return Dfao(d.arity, ({},), 0, frozenset(), None, (None,))
    return Dfa(d.arity, ({},), 0, frozenset())


def accept_all(arity: int) -> Dfa:
    """One accepting state looping on every symbol (no validity check)."""
    return Dfa(arity, ({s: 0 for s in alphabet(arity)},), 0, frozenset({0}))


def _hopcroft(d: Dfa, keys: Sequence[Hashable]) -> list[int]:
    """Coarsest partition of the completed automaton compatible with ``keys``.

    ``d`` has ``N`` states; index ``N`` is a temporary sink that completes
    the partial transition function. Returns the block index of each of the
    ``N + 1`` states.
    """
    n = d.num_states
    sink = n
    symbols = alphabet(d.arity)
    inverse: list[list[list[int]]] = [[[] for _ in range(n + 1)] for _ in symbols]
    for si, sym in enumerate(symbols):
        inv = inverse[si]
        for q, row in enumerate(d.delta):
            inv[row.get(sym, sink)].append(q)
        inv[sink].append(sink)

    groups: dict[Hashable, list[int]] = {}
    for q, k in enumerate(keys):
        groups.setdefault(k, []).append(q)
    blocks: list[set[int]] = [set(g) for g in groups.values()]
    block_of = [0] * (n + 1)
    for b, members in enumerate(blocks):
        for q in members:
            block_of[q] = b

    largest = max(range(len(blocks)), key=lambda b: len(blocks[b]))
    pending = {b for b in range(len(blocks)) if b != largest}
    work = deque(sorted(pending))
    while work:
        splitter = work.popleft()
        pending.discard(splitter)
        members = list(blocks[splitter])
        for si in range(len(symbols)):
            inv = inverse[si]
            touched: dict[int, set[int]] = {}
            for q in members:
                for p in inv[q]:
                    touched.setdefault(block_of[p], set()).add(p)
            for b, hit in touched.items():
                if len(hit) == len(blocks[b]):
                    continue
                rest = blocks[b] - hit
                new_b = len(blocks)
                # The bigger half keeps the old index.
                if len(hit) <= len(rest):
                    blocks[b], moved = rest, hit
                else:
                    blocks[b], moved = hit, rest
                blocks.append(moved)
                for q in moved:
                    block_of[q] = new_b
                # The smaller half always becomes a splitter; if ``b`` was
                # pending it stays pending with its reduced contents.
                pending.add(new_b)
                work.append(new_b)
    return block_of


def _quotient(d: Dfa, block_of: Sequence[int]) -> Dfa:
    n = d.num_states
    dead = block_of[n]
    if block_of[d.initial] == dead:
        return _empty_like(d)
    rep: dict[int, int] = {}
    for q in range(n):
        rep.setdefault(block_of[q], q)
    order = [block_of[d.initial]]
    index = {order[0]: 0}
    queue = deque(order)
    symbols = alphabet(d.arity)
    delta: list[dict[Symbol, int]] = []
    while queue:
        b = queue.popleft()
        row = d.delta[rep[b]]
        new_row: dict[Symbol, int] = {}
        for sym in symbols:
            dst = row.get(sym)
            if dst is None or block_of[dst] == dead:
                continue
            tb = block_of[dst]
            if tb not in index:
                index[tb] = len(order)
                order.append(tb)
                queue.append(tb)
            new_row[sym] = index[tb]
        delta.append(new_row)
    acc = frozenset(i for i, b in enumerate(order) if rep[b] in d.accepting)
    if isinstance(d, Dfao):
        return Dfao(d.arity, tuple(delta), 0, acc, None, tuple(d.outputs[rep[b]] for b in order))
    return Dfa(d.arity, tuple(delta), 0, acc)


def minimize(d: Dfa) -> Dfa:
    """Minimal trimmed DFA for the language of ``d`` (dead state pruned)."""
    if isinstance(d, Dfao):
        return minimize_dfao(d)
    d = accessible(d)
    keys = [q in d.accepting for q in range(d.num_states)] + [False]
    return _quotient(d, _hopcroft(d, keys))


def minimize_dfao(d: Dfao) -> Dfao:
    """Minimal DFAO computing the same partial function; the initial partition is by output."""
    d = accessible(d)
    # The sink carries no output, so states that can never produce one merge with it.
    keys = [(d.outputs[q] is not None, d.outputs[q]) for q in range(d.num_states)]
    keys.append((False, None))
    return _quotient(d, _hopcroft(d, keys))


def product(
    a: Dfa,
    b: Dfa,
    tracks_a: Sequence[int] | None = None,
    tracks_b: Sequence[int] | None = None,
    arity: int | None = None,
) -> Dfa:
    """Intersection of ``a`` and ``b`` reading the global tracks listed for each.

    ``tracks_a[i]`` names the global track that ``a`` reads as its ``i``-th
    input; a global track may be listed several times (``M(y, y, x)``).
    Only reachable pairs are built.
    """
    tracks_a, tracks_b, arity = _track_maps(a, b, tracks_a, tracks_b, arity)

    def successor(key, sym):
        qa, qb = key
        na = a.delta[qa].get(tuple(sym[t] for t in tracks_a))
        if na is None:
            return None
        nb = b.delta[qb].get(tuple(sym[t] for t in tracks_b))
        if nb is None:
            return None
        return (na, nb)

    return explore(
        arity,
        (a.initial, b.initial),
        successor,
        lambda key: key[0] in a.accepting and key[1] in b.accepting,
    )


def product_output(
    a: Dfa,
    h: Dfao,
    tracks_a: Sequence[int] | None = None,
    tracks_h: Sequence[int] | None = None,
    arity: int | None = None,
) -> Dfao:
    """Run a DFA and a DFAO side by side.

    The result is a DFAO whose accepting set comes from ``a`` and whose
    outputs come from ``h``; projecting it yields a ``Ufao``.
    """
    tracks_a, tracks_h, arity = _track_maps(a, h, tracks_a, tracks_h, arity)

    def successor(key, sym):
        qa, qh = key
        na = a.delta[qa].get(tuple(sym[t] for t in tracks_a))
        if na is None:
            return None
        nh = h.delta[qh].get(tuple(sym[t] for t in tracks_h))
        if nh is None:
            return None
        return (na, nh)

    return explore(
        arity,
        (a.initial, h.initial),
        successor,
        lambda key: key[0] in a.accepting,
        lambda key: h.outputs[key[1]],
    )


def _track_maps(a, b, tracks_a, tracks_b, arity):
    if tracks_a is None:
        tracks_a = tuple(range(a.arity))
    if tracks_b is None:
        tracks_b = tuple(range(b.arity))
    tracks_a, tracks_b = tuple(tracks_a), tuple(tracks_b)
    if len(tracks_a) != a.arity or len(tracks_b) != b.arity:
        raise ValueError("track map length must equal automaton arity")
    if arity is None:
        arity = max(tracks_a + tracks_b) + 1
    used = set(tracks_a) | set(tracks_b)
    if any(not 0 <= t < arity for t in used):
        raise ValueError("track index out of range")
    return tracks_a, tracks_b, arity


def project(d: Dfa, track: int) -> Nfa:
    """Existentially quantify away one track.

    The initial set is closed under every column that is zero on the
    surviving tracks, so the removed track may carry a longer word than the
    others (its extra leading digits are read while the rest is padding).
    A ``Dfao`` projects to a ``Ufao`` with outputs on accepting states.
    """
    if not 0 <= track < d.arity:
        raise ValueError(f"track {track} out of range for arity {d.arity}")
    if d.arity == 1:
        raise ValueError("cannot project the only track")
    delta: list[dict[Symbol, frozenset[int]]] = []
    padding: list[list[int]] = []
    for row in d.delta:
        grouped: dict[Symbol, set[int]] = {}
        pad_targets: list[int] = []
        for sym, dst in row.items():
            rest = sym[:track] + sym[track + 1 :]
            grouped.setdefault(rest, set()).add(dst)
            if not any(rest):
                pad_targets.append(dst)
        delta.append({s: frozenset(t) for s, t in sorted(grouped.items())})
        padding.append(pad_targets)

    initial = {d.initial}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for dst in padding[q]:
            if dst not in initial:
                initial.add(dst)
                queue.append(dst)

    if isinstance(d, Dfao):
        outputs = {q: d.outputs[q] for q in d.accepting}
        return Ufao(d.arity - 1, tuple(delta), frozenset(initial), d.accepting, d.labels, outputs)
    return Nfa(d.arity - 1, tuple(delta), frozenset(initial), d.accepting, d.labels)


def as_nfa(d: Dfa) -> Nfa:
    delta = tuple({s: frozenset({t}) for s, t in row.items()} for row in d.delta)
    return Nfa(d.arity, delta, frozenset({d.initial}), d.accepting, d.labels)


def _subsets(n: Nfa, on_subset: Callable[[frozenset[int]], None] | None):
    start = n.initial
    index = {start: 0}
    order = [start]
    delta: list[dict[Symbol, int]] = []
    queue = deque([start])
    symbols = alphabet(n.arity)
    while queue:
        cur = queue.popleft()
        if on_subset is not None:
            on_subset(cur)
        row: dict[Symbol, int] = {}
        for sym in symbols:
            nxt = n.step(cur, sym)
            if not nxt:
                continue
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row[sym] = index[nxt]
        delta.append(row)
    return order, tuple(delta)


def determinize(
    n: Nfa, on_subset: Callable[[frozenset[int]], None] | None = None
) -> Dfa:
    """Subset construction over reachable subsets; the empty subset is the dead state.

    ``labels`` of the result hold the sorted member lists.
    """
    if isinstance(n, Ufao):
        return determinize_ufao(n, on_subset)
    order, delta = _subsets(n, on_subset)
    acc = frozenset(i for i, s in enumerate(order) if s & n.accepting)
    return Dfa(n.arity, delta, 0, acc, tuple(tuple(sorted(s)) for s in order))


def determinize_ufao(
    u: Ufao, on_subset: Callable[[frozenset[int]], None] | None = None
) -> Dfao:
    """Subset construction for a UFAO.

    A subset outputs the common output of its accepting members; subsets
    with no accepting member have no output. Disagreement raises
    ``AmbiguityError``.
    """
    order, delta = _subsets(u, on_subset)
    outputs = []
    for s in order:
        outs = {u.outputs[q] for q in s & u.accepting}
        if len(outs) > 1:
            raise AmbiguityError(sorted(s), outs)
        outputs.append(next(iter(outs)) if outs else None)
    acc = frozenset(i for i, o in enumerate(outputs) if o is not None)
    return Dfao(u.arity, delta, 0, acc, tuple(tuple(sorted(s)) for s in order), tuple(outputs))


def _verdict(d: Dfa, q: int | None) -> Any:
    if q is None:
        return None
    if isinstance(d, Dfao):
        return d.outputs[q]
    return q in d.accepting


def counterexample(a: Dfa, b: Dfa) -> list[Symbol] | None:
    """Shortest (then lexicographically least) word on which ``a`` and ``b`` differ."""
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    dfao = isinstance(a, Dfao) or isinstance(b, Dfao)

    def verdict(d, q):
        v = _verdict(d, q)
        if not dfao and v is None:
            return False
        return v

    start = (a.initial, b.initial)
    parent: dict[tuple, tuple | None] = {start: None}
    queue = deque([start])
    symbols = alphabet(a.arity)
    while queue:
        pair = queue.popleft()
        if verdict(a, pair[0]) != verdict(b, pair[1]):
            word = []
            while parent[pair] is not None:
                prev, sym = parent[pair]
                word.append(sym)
                pair = prev
            return word[::-1]
        for sym in symbols:
            nxt = (a.step(pair[0], sym), b.step(pair[1], sym))
            if nxt == (None, None) or nxt in parent:
                continue
            parent[nxt] = (pair, sym)
            queue.append(nxt)
    return None


def _signature(d: Dfa, rename_outputs: bool) -> tuple:
    outputs: tuple = ()
    if isinstance(d, Dfao):
        if rename_outputs:
            first: dict[Any, int] = {}
            outputs = tuple(first.setdefault(o, len(first)) for o in d.outputs)
        else:
            outputs = d.outputs
    delta = tuple(tuple(sorted(row.items())) for row in d.delta)
    return (d.arity, d.initial, tuple(sorted(d.accepting)), delta, outputs)


def isomorphic(a: Dfa, b: Dfa, rename_outputs: bool = False) -> bool:
    """Isomorphism of the canonical forms of two (already minimal) automata."""
    return _signature(canonical(a), rename_outputs) == _signature(canonical(b), rename_outputs)


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language (or output-function) equality via canonical minimal forms."""
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    return isomorphic(minimize(a), minimize(b))


def swap_tracks(d: Dfa, perm: Sequence[int]) -> Dfa:
    """Reorder tracks: new track ``i`` is old track ``perm[i]``."""
    if sorted(perm) != list(range(d.arity)):
        raise ValueError("not a permutation of the tracks")

    def remap(sym: Symbol) -> Symbol:
        return tuple(sym[perm[i]] for i in range(d.arity))

    delta = tuple({remap(s): t for s, t in row.items()} for row in d.delta)
    if isinstance(d, Dfao):
        return Dfao(d.arity, delta, d.initial, d.accepting, d.labels, d.outputs)
    return Dfa(d.arity, delta, d.initial, d.accepting, d.labels)
