"""Exact birth and death chains attached to multiplicity-free actions.

The package computes generalized binomial coefficients, the transition rates
and closed-form semigroups of the associated pure birth and pure death
chains, simulates those chains, and checks the defining identities against
independent first-principles oracles.  All exact values are
:class:`fractions.Fraction`.
"""
from .actions import (
    PRESETS,
    ActionSpec,
    dim_irrep,
    jack,
    matc,
    parse_action,
    skewc,
    sphere,
    symc,
    symtorus,
    torus,
    un,
)
from .coefficients import CoeffTable, ResourceLimitError, genbin, genbin_one_step_jack, genbin_table
from .markov import (
    Direction,
    Generator,
    TruncationError,
    UniPoly,
    exact_row,
    generator,
    projected_prob_1d,
    transition_poly,
    transition_prob,
    transition_prob_t,
    transitions,
    uniformized_row,
)
from .partitions import enumerate_partitions, format_rational, parse_rational
from .simulate import Trajectory, empirical_marginal, sample_path, sample_paths, tv_distance

__version__ = "0.1.0"

__all__ = [
    "PRESETS", "ActionSpec", "dim_irrep", "jack", "matc", "parse_action", "skewc", "sphere",
    "symc", "symtorus", "torus", "un",
    "CoeffTable", "ResourceLimitError", "genbin", "genbin_one_step_jack", "genbin_table",
    "Direction", "Generator", "TruncationError", "UniPoly", "exact_row", "generator",
    "projected_prob_1d", "transition_poly", "transition_prob", "transition_prob_t",
    "transitions", "uniformized_row",
    "enumerate_partitions", "format_rational", "parse_rational",
    "Trajectory", "empirical_marginal", "sample_path", "sample_paths", "tv_distance",
]
