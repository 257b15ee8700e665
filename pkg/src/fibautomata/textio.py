"""Line-oriented text format and DOT export for DFAs and DFAOs.

Text layout::

    arity 2
    states 3
    initial 0
    outputs            (DFAOs only, followed by one line per state with an output)
    state 0 1
    accepting 0 2
    0 0 0 0            (src, one digit per track, dst)

States are 0-based, lines end with LF, and transitions are sorted by source
state and then symbol, so equal automata serialize to equal bytes.
"""

from __future__ import annotations

from typing import Any

from .automata import Dfa, Dfao, alphabet

__all__ = ["to_text", "from_text", "to_dot", "FormatError"]


class FormatError(ValueError):
    """Malformed automaton text."""


def _letter_text(x: Any) -> str:
    s = str(x)
    if not s or any(ch.isspace() for ch in s):
        raise ValueError(f"output letter {x!r} cannot be written")
    return s


def _parse_letter(s: str) -> Any:
    try:
        return int(s)
    except ValueError:
        return s


def to_text(d: Dfa) -> str:
    lines = [f"arity {d.arity}", f"states {d.num_states}", f"initial {d.initial}"]
    if isinstance(d, Dfao):
        lines.append("outputs")
        lines.extend(
            f"state {q} {_letter_text(out)}" for q, out in enumerate(d.outputs) if out is not None
        )
    lines.append(" ".join(["accepting"] + [str(q) for q in sorted(d.accepting)]))
    for q, row in enumerate(d.delta):
        for sym in alphabet(d.arity):
            if sym in row:
                lines.append(" ".join([str(q), *map(str, sym), str(row[sym])]))
    return "\n".join(lines) + "\n"


def _header(lines: list[str], i: int, key: str) -> int:
    if i >= len(lines):
        raise FormatError(f"missing '{key}' line")
    parts = lines[i].split()
    if len(parts) != 2 or parts[0] != key:
        raise FormatError(f"line {i + 1}: expected '{key} <n>', got {lines[i]!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise FormatError(f"line {i + 1}: {parts[1]!r} is not an integer") from None


def _ints(parts: list[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers") from None


def from_text(text: str) -> Dfa:
    """Parse :func:`to_text` output. Returns a :class:`Dfao` when an outputs block is present."""
    lines = [ln for ln in text.split("\n") if ln.strip()]
    arity = _header(lines, 0, "arity")
    n = _header(lines, 1, "states")
    initial = _header(lines, 2, "initial")
    if arity < 1 or n < 1:
        raise FormatError("arity and state count must be positive")
    i = 3
    outputs: list[Any] | None = None
    if i < len(lines) and lines[i].strip() == "outputs":
        outputs = [None] * n
        i += 1
        while i < len(lines) and lines[i].startswith("state "):
            parts = lines[i].split()
            if len(parts) != 3:
                raise FormatError(f"line {i + 1}: expected 'state <id> <letter>'")
            (q,) = _ints(parts[1:2], i + 1)
            if not 0 <= q < n:
                raise FormatError(f"line {i + 1}: state {q} out of range")
            outputs[q] = _parse_letter(parts[2])
            i += 1
    if i >= len(lines) or lines[i].split()[0] != "accepting":
        raise FormatError("missing 'accepting' line")
    accepting = frozenset(_ints(lines[i].split()[1:], i + 1))
    i += 1
    delta: list[dict] = [{} for _ in range(n)]
    for j in range(i, len(lines)):
        nums = _ints(lines[j].split(), j + 1)
        if len(nums) != arity + 2:
            raise FormatError(f"line {j + 1}: expected {arity + 2} fields")
        src, sym, dst = nums[0], tuple(nums[1:-1]), nums[-1]
        if not 0 <= src < n or any(b not in (0, 1) for b in sym):
            raise FormatError(f"line {j + 1}: bad source state or digit")
        if sym in delta[src]:
            raise FormatError(f"line {j + 1}: duplicate transition")
        delta[src][sym] = dst
    try:
        if outputs is not None:
            return Dfao(arity, tuple(delta), initial, accepting, None, tuple(outputs))
        return Dfa(arity, tuple(delta), initial, accepting)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def to_dot(d: Dfa, name: str = "M") -> str:
    """Graphviz rendering; parallel edges are merged into one comma-separated label."""
    out = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
    for q in range(d.num_states):
        shape = "doublecircle" if q in d.accepting else "circle"
        label = str(q)
        if isinstance(d, Dfao) and d.outputs[q] is not None:
            label += f"/{d.outputs[q]}"
        out.append(f'  {q} [shape={shape}, label="{label}"];')
    out.append(f"  init -> {d.initial};")
    for q, row in enumerate(d.delta):
        by_dst: dict[int, list[str]] = {}
        for sym in alphabet(d.arity):
            if sym in row:
                by_dst.setdefault(row[sym], []).append("".join(map(str, sym)))
        for dst, syms in by_dst.items():
            out.append(f'  {q} -> {dst} [label="{",".join(syms)}"];')
    out.append("}")
    return "\n".join(out) + "\n"
