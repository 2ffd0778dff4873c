"""Multi-agent influence models: inference, relevance, subgames, equilibria."""

from ._maidkit import (
    Error,
    Model,
    ParseError,
    builtin_names,
    d_separated,
    expected_utilities,
    is_nash,
    is_subgame_perfect,
    maid_dot,
    pure_nash,
    relevance_components,
    relevance_edges,
    subgame_bases,
    subgame_perfect,
    to_efg,
    trembling_hand,
)

__all__ = [
    "Error",
    "Model",
    "ParseError",
    "builtin_names",
    "d_separated",
    "expected_utilities",
    "is_nash",
    "is_subgame_perfect",
    "maid_dot",
    "pure_nash",
    "relevance_components",
    "relevance_edges",
    "subgame_bases",
    "subgame_perfect",
    "to_efg",
    "trembling_hand",
]
