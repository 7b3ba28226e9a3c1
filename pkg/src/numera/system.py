"""Bundles an automaton with its counting tables, field and partitions."""

from __future__ import annotations

from functools import cached_property

from .automata import Dfa, UpWord, genealogical_rep, genealogical_val, parse_automaton, trim
from .counting import DEFAULT_HORIZON, count_u_v, growth_profile, perron_theta
from . import realline


class NumerationSystem:
    """The abstract numeration system of a trimmed DFA.

    Everything expensive (counting tables, the field, the a-vector and the
    per-state partitions) is computed once, on first use.
    """

    def __init__(self, dfa: Dfa, horizon: int = DEFAULT_HORIZON):
        self.dfa = trim(dfa)
        self.horizon = horizon

    @classmethod
    def from_text(cls, text: str, **kw) -> "NumerationSystem":
        return cls(parse_automaton(text), **kw)

    @classmethod
    def from_file(cls, path, **kw) -> "NumerationSystem":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read(), **kw)

    @cached_property
    def tables(self):
        return count_u_v(self.dfa, self.horizon)

    @cached_property
    def field(self):
        return perron_theta(self.dfa)

    @cached_property
    def profile(self):
        return growth_profile(self.dfa, self.tables, self.field)

    @property
    def theta(self):
        return self.profile.theta

    @cached_property
    def partitions(self) -> dict:
        return realline.partition_table(self.profile, self.dfa)

    def parse_word(self, text):
        return self.dfa.alphabet.parse_word(text)

    def format_word(self, w) -> str:
        return self.dfa.alphabet.format_word(w)

    def parse_up(self, text: str) -> UpWord:
        return UpWord.parse(text, self.dfa.alphabet)

    def val(self, w) -> int:
        return genealogical_val(self.dfa, w)

    def rep(self, n: int):
        return genealogical_rep(self.dfa, n)

    def interval(self, w) -> realline.IwInterval:
        return realline.interval_of_prefix(self.profile, self.dfa, w)

    def represent(self, x, max_steps: int = 10000, convention: str = realline.RIGHT):
        return realline.represent(self.profile, self.dfa, x, max_steps, self.partitions, convention)

    def value_of_up(self, w: UpWord):
        return realline.value_of_up(self.profile, self.dfa, w)

    def element(self, value):
        return self.field(value)
