"""Corrigibility games: equilibria, adversary checks, off-switch and phase sweeps."""

from ._core import (
    Game,
    ParseError,
    PhaseGrid,
    SizeLimitError,
    adversary_check,
    classify,
    corrigibility_verdict,
    expected_nfg,
    is_equilibrium,
    ordinal_games,
    solve,
    solve_offswitch,
    sweep_adversary,
    sweep_corrigibility,
    sweep_ensemble,
)

__all__ = [
    "Game",
    "ParseError",
    "PhaseGrid",
    "SizeLimitError",
    "adversary_check",
    "classify",
    "corrigibility_verdict",
    "expected_nfg",
    "is_equilibrium",
    "ordinal_games",
    "solve",
    "solve_offswitch",
    "sweep_adversary",
    "sweep_corrigibility",
    "sweep_ensemble",
]
