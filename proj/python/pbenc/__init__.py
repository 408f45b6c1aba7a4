"""Pseudo-Boolean constraint encodings to CNF.

Literals are signed integers in DIMACS style: ``3`` is x3, ``-3`` its negation.
"""

from ._core import (
    Constraint,
    Formula,
    Instance,
    NormalizationOutcome,
    ParseError,
    encode,
    encode_instance,
    eq4_count,
    gac_check,
    gen_bench,
    node_sums,
    normalize,
    oracle_check,
    parse_dimacs,
    parse_opb,
    propagate,
    solve,
    stats,
)

__all__ = [
    "Constraint",
    "Formula",
    "Instance",
    "NormalizationOutcome",
    "ParseError",
    "encode",
    "encode_instance",
    "eq4_count",
    "gac_check",
    "gen_bench",
    "node_sums",
    "normalize",
    "oracle_check",
    "parse_dimacs",
    "parse_opb",
    "propagate",
    "solve",
    "stats",
]
