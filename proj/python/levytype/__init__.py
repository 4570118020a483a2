"""Lévy processes, Lévy-type symbols and Feller semigroups."""

from ._levytype import (
    InvalidArgument,
    LevyTriplet,
    LevyTypeError,
    PreconditionFailed,
    brownian,
    compound_poisson_gaussian,
    empirical_cf,
    gamma_process,
    generator,
    indices_at_infinity,
    maximal_constant,
    poisson,
    sample_endpoints,
    sample_path,
    stable_like_symbol,
    symmetric_stable,
    symmetric_stable_density,
)

__all__ = [
    "InvalidArgument",
    "LevyTriplet",
    "LevyTypeError",
    "PreconditionFailed",
    "brownian",
    "compound_poisson_gaussian",
    "empirical_cf",
    "gamma_process",
    "generator",
    "indices_at_infinity",
    "maximal_constant",
    "poisson",
    "sample_endpoints",
    "sample_path",
    "stable_like_symbol",
    "symmetric_stable",
    "symmetric_stable_density",
]
