"""Automata for arithmetic and automatic sequences in the Fibonacci numeration system."""

from .automata import Dfa, Dfao, Nfa, Ufao, equivalent, minimize, minimize_dfao
from .numeration import encode, value
from .relations import add_const, adder, affine, eq_const, sub_const
from .subsequences import fib_thue_morse, fib_word, linear_subseq, shift, to_morphism

__all__ = [
    "Dfa",
    "Dfao",
    "Nfa",
    "Ufao",
    "equivalent",
    "minimize",
    "minimize_dfao",
    "encode",
    "value",
    "add_const",
    "adder",
    "affine",
    "eq_const",
    "sub_const",
    "fib_word",
    "fib_thue_morse",
    "linear_subseq",
    "shift",
    "to_morphism",
]
