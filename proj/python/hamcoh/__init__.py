"""Cohomology of truncated Hamiltonian and Poisson Lie p-algebras."""

from ._hamcoh import (
    Algebra,
    ConfigError,
    Error,
    ResourceError,
    algebra_from_json,
    cocycles,
    compute_box,
    rank_mod_p,
    render_table,
    table,
)

__all__ = [
    "Algebra",
    "ConfigError",
    "Error",
    "ResourceError",
    "algebra_from_json",
    "cocycles",
    "compute_box",
    "rank_mod_p",
    "render_table",
    "table",
]
