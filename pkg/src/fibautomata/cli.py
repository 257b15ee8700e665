"""Command-line entry point.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import constants
from .automata import Dfa, Dfao, determinize, minimize, product, project, trim
from .buchi import Pipeline
from .numeration import encode, is_valid, value
from .relations import add_const, adder, affine, eq_const, sub_const
from .subsequences import BUILTINS, linear_subseq, shift, to_morphism
from .textio import FormatError, from_text, to_dot, to_text
from .verify import (
    GrowthReport,
    OracleSpec,
    growth_probe,
    oeis_a372846,
    oeis_a385021,
    oracle_check,
)


class UsageError(Exception):
    pass


@dataclass
class Config:
    format: str = "text"
    minimize: bool = True
    stats: bool = False
    report: str | None = None
    out: str | None = None
    verbosity: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "Config":
        return cls(
            format=args.format,
            minimize=not args.no_minimize,
            stats=args.stats,
            report=getattr(args, "report", None),
            out=args.out,
            verbosity=args.verbose,
        )


def _emit(cfg: Config, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _emit_automaton(cfg: Config, d: Dfa) -> None:
    _emit(cfg, to_dot(d) if cfg.format == "dot" else to_text(d))
    if cfg.stats:
        print(f"states={d.num_states} transitions={d.num_transitions}", file=sys.stderr)


def _read(name: str) -> str:
    """Contents of a file, or of stdin for ``-``."""
    if name == "-":
        return sys.stdin.read()
    path = Path(name)
    if not path.exists():
        raise UsageError(f"{name!r} is neither a built-in sequence ({', '.join(BUILTINS)}) nor a file")
    return path.read_text(encoding="utf-8")


def _load_sequence(name: str) -> Dfao:
    if name in BUILTINS:
        return BUILTINS[name]()
    d = from_text(_read(name))
    if not isinstance(d, Dfao) or d.arity != 1:
        raise UsageError(f"{name} does not hold a one-track DFAO")
    return d


def _relation(kind: str, params: Sequence[int], minimized: bool) -> Dfa:
    builders: dict[str, tuple[int, Callable[..., Dfa]]] = {
        "add-const": (1, lambda c: add_const(c, minimized)),
        "sub-const": (1, lambda c: sub_const(c, minimized)),
        "affine": (2, lambda n, c=0: _affine_any(n, c, minimized)),
        "eq-const": (1, lambda c: eq_const(c)),
        "adder": (0, lambda: adder(minimized)),
    }
    nargs, build = builders[kind]
    if kind == "affine" and len(params) == 1:
        nargs = 1
    if len(params) != nargs:
        raise UsageError(f"{kind} takes {nargs} integer argument(s), got {len(params)}")
    return build(*params)


def _affine_any(n: int, c: int, minimized: bool) -> Dfa:
    """[y] = n[x] + c for any c >= 0; c >= n goes through [z] = n[x] and [y] = [z] + c."""
    if c < n or c < 0 or n < 1:
        return affine(n, c, minimized)
    tracks = product(affine(n, 0), add_const(c), [0, 1], [1, 2])
    d = determinize(project(trim(tracks), 1))
    return minimize(d) if minimized else d


def cmd_encode(args, cfg: Config) -> int:
    if args.n < 0:
        raise UsageError("only natural numbers have a representation")
    _emit(cfg, (encode(args.n) or "0") + "\n")
    return 0


def cmd_decode(args, cfg: Config) -> int:
    word = args.word
    if not word or set(word) - {"0", "1"} or not is_valid(word):
        raise UsageError(f"{word!r} is not a valid Fibonacci representation")
    _emit(cfg, f"{value(word)}\n")
    return 0


def cmd_build(args, cfg: Config) -> int:
    _emit_automaton(cfg, _relation(args.kind, args.params, cfg.minimize))
    return 0


def cmd_subseq(args, cfg: Config) -> int:
    m = _load_sequence(args.sequence)
    if args.kind == "morphism":
        if args.params:
            raise UsageError("morphism takes no integer arguments")
        _emit(cfg, to_morphism(m).to_text())
        return 0
    if args.kind == "shift":
        if len(args.params) != 1:
            raise UsageError("shift takes one argument c")
        d = shift(m, args.params[0], cfg.minimize)
    else:
        if len(args.params) != 2:
            raise UsageError("linear takes two arguments n c")
        d = linear_subseq(m, *args.params, minimized=cfg.minimize)
    _emit_automaton(cfg, d)
    return 0


def cmd_seq(args, cfg: Config) -> int:
    m = _load_sequence(args.sequence)
    indices = list(args.indices)
    if args.count is not None:
        indices.extend(range(args.count))
    if not indices or min(indices) < 0:
        raise UsageError("give natural indices or --count")
    values = [m(i) for i in indices]
    _emit(cfg, "".join(f"{v}\n" for v in values))
    return 0


def cmd_pipeline(args, cfg: Config) -> int:
    p = Pipeline()
    if args.kind == "affine":
        if len(args.params) != 2:
            raise UsageError("pipeline affine takes n c")
        d = p.affine(*args.params)
    else:
        if args.sequence is None or len(args.params) != 2:
            raise UsageError("pipeline subseq takes a sequence and n c")
        d = p.subseq(_load_sequence(args.sequence), *args.params)
    _emit_automaton(cfg, d)
    if cfg.report:
        Path(cfg.report).write_text(p.report.to_text(), encoding="utf-8", newline="\n")
    if cfg.verbosity:
        sys.stderr.write(p.report.to_text())
    return 0


def cmd_verify_oracle(args, cfg: Config) -> int:
    kind = args.kind
    params = tuple(args.params)
    if kind in ("fib-word", "fib-thue-morse", "shift", "linear"):
        base = args.base if kind in ("shift", "linear") else None
        if kind in ("shift", "linear") and base is None:
            raise UsageError(f"{kind} needs --base")
        spec = OracleSpec(kind, params, args.bound, base)
        if args.file:
            d = _load_sequence(args.file)
        elif kind in BUILTINS:
            d = BUILTINS[kind]()
        elif kind == "shift":
            d = shift(BUILTINS[base](), *params, minimized=cfg.minimize)
        else:
            d = linear_subseq(BUILTINS[base](), *params, minimized=cfg.minimize)
    else:
        spec = OracleSpec(kind, params if kind != "affine" or len(params) == 2 else params + (0,), args.bound)
        if args.file:
            d = from_text(_read(args.file))
        else:
            d = _relation(kind, params, cfg.minimize)
    report = oracle_check(d, spec)
    _emit(cfg, report.line() + "\n")
    return 0 if report.passed else 1


def cmd_verify_oeis(args, cfg: Config) -> int:
    table = {"A372846": oeis_a372846, "A385021": oeis_a385021}[args.id]()
    _emit(cfg, "".join(line + "\n" for line in table.lines()))
    return 0 if table.matches() else 1


# family -> (size builder, model, parameters up to max, frozen ceiling)
GROWTH_FAMILIES: dict[str, tuple[Callable[[int], int], str, Callable[[int], list[int]], float]] = {
    "add-const": (
        lambda j: add_const(2**j).num_states,
        "linear",
        lambda top: list(range(1, top + 1)),
        constants.ADD_CONST_LOG_CEILING,
    ),
    "affine": (
        lambda n: affine(n, 0, minimized=False).num_states,
        "quadratic",
        lambda top: list(range(1, top + 1)),
        constants.AFFINE_PREMIN_QUADRATIC,
    ),
    "linear-subseq": (
        lambda n: linear_subseq(BUILTINS["fib-word"](), n, 0).num_states,
        "quartic",
        lambda top: list(range(1, top + 1)),
        constants.LINEAR_SUBSEQ_QUARTIC_CEILING,
    ),
    "shift": (
        lambda c: shift(BUILTINS["fib-thue-morse"](), c).num_states,
        "linear",
        lambda top: list(range(0, top + 1)),
        constants.SHIFT_LINEAR_CEILING,
    ),
}


def cmd_verify_growth(args, cfg: Config) -> int:
    builder, model, params, ceiling = GROWTH_FAMILIES[args.family]
    report: GrowthReport = growth_probe(builder, params(args.max), model)
    ok = report.max_ratio <= ceiling
    lines = report.lines() + [
        f"{'PASS' if ok else 'FAIL'} family={args.family} max_ratio={report.max_ratio:.4f} ceiling={ceiling}"
    ]
    _emit(cfg, "".join(line + "\n" for line in lines))
    return 0 if ok else 1


def cmd_export(args, cfg: Config) -> int:
    d = from_text(_read(args.file))
    _emit_automaton(cfg, d)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result to this path instead of stdout")
    common.add_argument("--format", choices=("text", "dot"), default="text")
    common.add_argument("--no-minimize", action="store_true", help="skip the final minimization")
    common.add_argument("--stats", action="store_true", help="print state/transition counts to stderr")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="fibautomata", description="Automata for Fibonacci-representation arithmetic."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="canonical representation of n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="value of a representation")
    p.add_argument("word")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("build", parents=[common], help="direct relation constructions")
    p.add_argument("kind", choices=("add-const", "sub-const", "affine", "eq-const", "adder"))
    p.add_argument("params", type=int, nargs="*")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("subseq", parents=[common], help="shifts, linear subsequences, morphisms")
    p.add_argument("kind", choices=("shift", "linear", "morphism"))
    p.add_argument("sequence", help=f"built-in ({', '.join(BUILTINS)}) or DFAO text file")
    p.add_argument("params", type=int, nargs="*")
    p.set_defaults(func=cmd_subseq)

    p = sub.add_parser("seq", help="evaluate a sequence")
    seq_sub = p.add_subparsers(dest="action", required=True)
    q = seq_sub.add_parser("eval", parents=[common])
    q.add_argument("sequence")
    q.add_argument("indices", type=int, nargs="*")
    q.add_argument("--count", type=int, help="also print h(0), ..., h(count-1)")
    q.set_defaults(func=cmd_seq)

    p = sub.add_parser("pipeline", parents=[common], help="logic-style constructions from the adder")
    p.add_argument("kind", choices=("affine", "subseq"))
    p.add_argument("args", nargs="+", metavar="ARG")
    p.add_argument("--report", help="write the stage report here")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("verify", help="oracles, OEIS tables, growth probes")
    vsub = p.add_subparsers(dest="action", required=True)
    q = vsub.add_parser("oracle", parents=[common])
    q.add_argument(
        "kind",
        choices=("add-const", "sub-const", "affine", "adder", "eq-const", "fib-word", "fib-thue-morse", "shift", "linear"),
    )
    q.add_argument("params", type=int, nargs="*")
    q.add_argument("--bound", type=int, default=2000)
    q.add_argument("--base", choices=tuple(BUILTINS))
    q.add_argument("--file", help="check this automaton instead of the direct construction")
    q.set_defaults(func=cmd_verify_oracle)
    q = vsub.add_parser("oeis", parents=[common])
    q.add_argument("id", choices=("A372846", "A385021"))
    q.set_defaults(func=cmd_verify_oeis)
    q = vsub.add_parser("growth", parents=[common])
    q.add_argument("family", choices=tuple(GROWTH_FAMILIES))
    q.add_argument("--max", type=int, default=10)
    q.set_defaults(func=cmd_verify_growth)

    p = sub.add_parser("export", parents=[common], help="re-serialize an automaton text file")
    p.add_argument("file")
    p.set_defaults(func=cmd_export)
    return parser


def _split_pipeline_args(args: argparse.Namespace) -> None:
    raw = list(args.args)
    args.sequence = None
    if args.kind == "subseq" and raw:
        args.sequence = raw.pop(0)
    try:
        args.params = [int(x) for x in raw]
    except ValueError:
        raise UsageError(f"expected integers, got {raw}") from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "pipeline":
        try:
            _split_pipeline_args(args)
        except UsageError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    cfg = Config.from_args(args)
    try:
        return args.func(args, cfg)
    except (UsageError, FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
