"""Relation and subsequence automata built only from the adder and generic operators.

Each construction evaluates a formula of the form ``exists y. A(..) and B(..)``
by a product, a projection of the quantified track, a subset construction
and a minimization. Constants and multipliers are obtained recursively by
doubling and incrementing, as a logic-based tool would do.

Products are trimmed (accessible and co-accessible part) rather than fully
minimized, so that the one-step memory of the annotated adder survives into
the projection. Every deterministic automaton coming out of a subset
construction is minimized.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .automata import (
    Dfa,
    Dfao,
    determinize,
    determinize_ufao,
    minimize,
    minimize_dfao,
    product,
    product_output,
    project,
    trim,
)
from .relations import adder, adder_annotated, eq_const

__all__ = [
    "StageRecord",
    "BuildReport",
    "Pipeline",
    "eq_const_pipeline",
    "add_const_pipeline",
    "mult_pipeline",
    "affine_pipeline",
    "subseq_pipeline",
]


@dataclass
class StageRecord:
    stage: str
    states_in: int
    trans_in: int
    states_out: int
    trans_out: int
    millis: float

    @property
    def blowup(self) -> float:
        return self.states_out / self.states_in if self.states_in else 0.0

    def line(self) -> str:
        return (
            f"stage={self.stage} states_in={self.states_in} trans_in={self.trans_in} "
            f"states_out={self.states_out} trans_out={self.trans_out} "
            f"blowup={self.blowup:.3f} millis={self.millis:.3f}"
        )


@dataclass
class BuildReport:
    stages: list[StageRecord] = field(default_factory=list)

    def record(self, stage: str, inputs: Sequence, output, started: float) -> None:
        self.stages.append(
            StageRecord(
                stage,
                sum(a.num_states for a in inputs),
                sum(a.num_transitions for a in inputs),
                output.num_states,
                output.num_transitions,
                (time.perf_counter() - started) * 1000.0,
            )
        )

    def find(self, stage: str) -> list[StageRecord]:
        return [s for s in self.stages if s.stage == stage]

    def to_text(self) -> str:
        return "".join(s.line() + "\n" for s in self.stages)

    @classmethod
    def from_text(cls, text: str) -> "BuildReport":
        report = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            kv = dict(item.split("=", 1) for item in line.split())
            report.stages.append(
                StageRecord(
                    kv["stage"],
                    int(kv["states_in"]),
                    int(kv["trans_in"]),
                    int(kv["states_out"]),
                    int(kv["trans_out"]),
                    float(kv["millis"]),
                )
            )
        return report


def _equality() -> Dfa:
    """[y] = [x] on valid representations: identical tracks, no two consecutive 1s."""
    return Dfa(2, ({(0, 0): 0, (1, 1): 1}, {(0, 0): 0}), 0, frozenset({0, 1}))


class Pipeline:
    """One run of the logic-style constructions, with a per-run memo and report."""

    def __init__(self) -> None:
        self.report = BuildReport()
        self._memo: dict[tuple, Dfa] = {}
        self._adder: Dfa | None = None
        self._annotated: Dfa | None = None

    def _base(self, name: str, build) -> Dfa:
        started = time.perf_counter()
        d = build()
        self.report.record(name, [d], d, started)
        return d

    @property
    def adder(self) -> Dfa:
        if self._adder is None:
            self._adder = self._base("adder", adder)
        return self._adder

    @property
    def annotated_adder(self) -> Dfa:
        if self._annotated is None:
            base = self.adder
            self._annotated = self._base("adder_annotated", lambda: adder_annotated(base))
        return self._annotated

    def exists(
        self,
        name: str,
        a: Dfa,
        tracks_a: Sequence[int],
        b: Dfa,
        tracks_b: Sequence[int],
        track: int,
    ) -> Dfa:
        """``exists track. a(tracks_a) and b(tracks_b)``, minimized."""
        started = time.perf_counter()
        raw = product(a, b, tracks_a, tracks_b)
        self.report.record(f"{name}/product", [a, b], raw, started)

        started = time.perf_counter()
        p = trim(raw)
        self.report.record(f"{name}/trim", [raw], p, started)

        started = time.perf_counter()
        nfa = project(p, track)
        self.report.record(f"{name}/project", [p], nfa, started)

        started = time.perf_counter()
        det = determinize(nfa)
        self.report.record(f"{name}/determinize", [nfa], det, started)

        started = time.perf_counter()
        out = minimize(det)
        self.report.record(f"{name}/minimize", [det], out, started)
        return out

    def eq_const(self, c: int) -> Dfa:
        """Recognizer of [x] = c by doubling (``exists y. [y] = c/2 and y + y = x``) and incrementing."""
        if c < 0:
            raise ValueError("c must be a natural number")
        key = ("eq", c)
        if key in self._memo:
            return self._memo[key]
        if c == 0:
            d = self._base("eq_const(0)/base", lambda: eq_const(0))
        elif c % 2 == 0:
            half = self.eq_const(c // 2)
            # Global tracks: x = 0, y = 1.
            d = self.exists(f"eq_const({c})", half, [1], self.adder, [1, 1, 0], 1)
        else:
            prev = self.eq_const(c - 1)
            d = self.exists(f"eq_const({c})", prev, [1], self.increment(), [1, 0], 1)
        self._memo[key] = d
        return d

    def increment(self) -> Dfa:
        """Recognizer of [y] + 1 = [x] on tracks (y, x): ``exists u. [u] = 1 and y + u = x``."""
        key = ("inc",)
        if key not in self._memo:
            one = self._base("eq_const(1)/base", lambda: eq_const(1))
            # Global tracks: y = 0, u = 1, x = 2.
            self._memo[key] = self.exists("increment", self.adder, [0, 1, 2], one, [1], 1)
        return self._memo[key]

    def add_const(self, c: int) -> Dfa:
        """Recognizer of [x] + c = [z] on tracks (x, z)."""
        key = ("add", c)
        if key not in self._memo:
            const = self.eq_const(c)
            # Global tracks: x = 0, y = 1, z = 2.
            self._memo[key] = self.exists(
                f"add_const({c})", self.annotated_adder, [0, 1, 2], const, [1], 1
            )
        return self._memo[key]

    def mult(self, n: int) -> Dfa:
        """Recognizer of [z] = n[x] on tracks (x, z)."""
        if n < 1:
            raise ValueError("n must be positive")
        key = ("mult", n)
        if key in self._memo:
            return self._memo[key]
        if n == 1:
            d = self._base("mult(1)/base", _equality)
        elif n % 2 == 0:
            half = self.mult(n // 2)
            # exists y. [y] = (n/2)[x] and y + y = z; global tracks x = 0, y = 1, z = 2.
            d = self.exists(f"mult({n})", half, [0, 1], self.annotated_adder, [1, 1, 2], 1)
        else:
            prev = self.mult(n - 1)
            # exists y. [y] = (n-1)[x] and x + y = z.
            d = self.exists(f"mult({n})", prev, [0, 1], self.annotated_adder, [0, 1, 2], 1)
        self._memo[key] = d
        return d

    def affine(self, n: int, c: int) -> Dfa:
        """Recognizer of [z] = n[x] + c on tracks (x, z), 0 <= c < n."""
        if not 0 <= c < n:
            raise ValueError(f"c must satisfy 0 <= c < n (got n={n}, c={c})")
        key = ("affine", n, c)
        if key not in self._memo:
            mult = self.mult(n)
            if c == 0:
                d = mult
            else:
                shift = self.add_const(c)
                # exists y. [y] = n[x] and [y] + c = [z].
                d = self.exists(f"affine({n},{c})", mult, [0, 1], shift, [1, 2], 1)
            self._memo[key] = d
        return self._memo[key]

    def subseq(self, m: Dfao, n: int, c: int) -> Dfao:
        """DFAO for h(n i + c): ``exists y. [y] = n[x] + c``, output h([y])."""
        rel = self.affine(n, c)
        mh = minimize_dfao(m)
        name = f"subseq({n},{c})"

        started = time.perf_counter()
        raw = product_output(rel, mh, [0, 1], [1])
        self.report.record(f"{name}/product", [rel, mh], raw, started)

        started = time.perf_counter()
        p = trim(raw, by_acceptance=True)
        self.report.record(f"{name}/trim", [raw], p, started)

        started = time.perf_counter()
        u = project(p, 1)
        self.report.record(f"{name}/project", [p], u, started)

        started = time.perf_counter()
        det = determinize_ufao(u)
        self.report.record(f"{name}/determinize", [u], det, started)

        started = time.perf_counter()
        out = minimize_dfao(det)
        self.report.record(f"{name}/minimize", [det], out, started)
        return out


def eq_const_pipeline(c: int) -> tuple[Dfa, BuildReport]:
    p = Pipeline()
    return p.eq_const(c), p.report


def add_const_pipeline(c: int) -> tuple[Dfa, BuildReport]:
    p = Pipeline()
    return p.add_const(c), p.report


def mult_pipeline(n: int) -> tuple[Dfa, BuildReport]:
    p = Pipeline()
    return p.mult(n), p.report


def affine_pipeline(n: int, c: int) -> tuple[Dfa, BuildReport]:
    p = Pipeline()
    return p.affine(n, c), p.report


def subseq_pipeline(m: Dfao, n: int, c: int) -> tuple[Dfao, BuildReport]:
    p = Pipeline()
    return p.subseq(m, n, c), p.report
