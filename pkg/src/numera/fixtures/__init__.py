"""Shipped example automata."""

from importlib import resources

from ..automata import Dfa, parse_automaton

NAMES = ("ex5", "binary", "evena", "fib")


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.an").read_text()


def load(name: str) -> Dfa:
    return parse_automaton(text(name))
