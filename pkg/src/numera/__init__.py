"""Abstract numeration systems on regular languages, with exact arithmetic."""

from .algnum import AlgField, AlgNum, field_make, rational_field
from .automata import (Alphabet, Dfa, Nfa, UpWord, genealogical_rep, genealogical_val,
                       minimize, parse_automaton, scc_decompose, trim)
from .counting import (beta_coefficients, check_hypothesis, count_u_v, growth_profile,
                       perron_theta, simplify_language)
from .realline import interval_of_prefix, partition_table, represent, value_of_up
from .system import NumerationSystem

__version__ = "0.1.0"
