"""Finitely presented commutative *-algebras: exact arithmetic, characters,
Bernstein approximation and GNS models."""

from ._core import (
    Character,
    GelfandError,
    ParseError,
    Poly,
    Presentation,
    Rejection,
    bernstein,
    check_character,
    evaluate,
    expect,
    gns,
    is_nilpotent,
    pushforward,
    run_cli,
    seminorm,
    wirtinger_dzbar,
)

__all__ = [
    "Character",
    "GelfandError",
    "ParseError",
    "Poly",
    "Presentation",
    "Rejection",
    "bernstein",
    "check_character",
    "evaluate",
    "expect",
    "gns",
    "is_nilpotent",
    "pushforward",
    "run_cli",
    "seminorm",
    "wirtinger_dzbar",
]
