"""Compact rational Krylov eigensolver for rational eigenvalue problems."""

from ._rcork import (
    BreakdownError,
    ConfigError,
    Error,
    ParseError,
    PoleError,
    Problem,
    export_problem,
    gen_exp1,
    gen_exp2,
    load_problem,
    memory_counts,
    solve,
)

__all__ = [
    "BreakdownError",
    "ConfigError",
    "Error",
    "ParseError",
    "PoleError",
    "Problem",
    "export_problem",
    "gen_exp1",
    "gen_exp2",
    "load_problem",
    "memory_counts",
    "solve",
]
