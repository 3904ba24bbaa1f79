"""Stallings core graphs, quotient overgroups and L²-invariants of subgroups of free groups."""

from .l2 import L2Report, analyze, betti_pair, inertness_witness, is_compressed, is_strictly_compressed
from .overgroups import (
    CritSet,
    EnumerationLimitError,
    QuotientSet,
    crit,
    enumerate_quotients,
    l2_closure,
    pi_bar,
)
from .pullback import (
    check_strong_inert,
    coset_component_ranks,
    hanna_neumann_check,
    intersect,
    product,
    strong_inert_sum,
)
from .stallings import (
    CoreGraph,
    accepts,
    basis,
    canonical,
    contains,
    finite_index,
    fold,
    from_generators,
    from_json,
    join,
    rank,
    reduced_rank,
    to_dot,
    to_json,
    trim,
)
from .words import Alphabet, Word, concat, invert, parse, random_reduced_word, reduce

__version__ = "0.1.0"
