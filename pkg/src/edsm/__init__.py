"""Elastic-degenerate string matching: library and CLI.

Find all positions in an elastic-degenerate text where an occurrence of
a pattern ends, using an active-prefixes engine with periodicity-based
segment classification; includes brute-force oracles and hardness-
construction instance generators for testing.
"""

from .ap_engine import APInstance, APSolver, solve_ap
from .boolean_linalg import BoolMatrix, PolyMatrix, bool_multiply, poly_multiply
from .eds_core import (
    BitVector,
    EDSParseError,
    EDString,
    Pattern,
    Segment,
    iter_parse_eds,
    parse_eds,
    parse_pattern_text,
    serialize_eds,
    serialize_string,
)
from .edsm_engine import EDSMEngine, MatchReport, search
from .reductions import APReductionBlock, TDInstance, bmm_to_ap, reconstruct_bmm, td_to_edsm

__version__ = "1.0.0"

__all__ = [
    "APInstance",
    "APReductionBlock",
    "APSolver",
    "BitVector",
    "BoolMatrix",
    "EDSMEngine",
    "EDSParseError",
    "EDString",
    "MatchReport",
    "Pattern",
    "PolyMatrix",
    "Segment",
    "TDInstance",
    "__version__",
    "bmm_to_ap",
    "bool_multiply",
    "iter_parse_eds",
    "parse_eds",
    "parse_pattern_text",
    "poly_multiply",
    "reconstruct_bmm",
    "search",
    "serialize_eds",
    "serialize_string",
    "solve_ap",
    "td_to_edsm",
]
