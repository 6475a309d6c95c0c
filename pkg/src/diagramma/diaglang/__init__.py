"""Interpreted diagrammatic languages and the diagrams written in them."""

from .diagram import Diagram, Token, parse_dgf, write_dgf
from .grammar import (
    RULES,
    Violation,
    abstract_diagram,
    derived_connections,
    is_well_formed,
    require_well_formed,
    well_formed,
)
from .language import (
    BALLSTICK3D,
    LANGUAGE_IDS,
    SPACEFILL3D,
    WIRE2D,
    WIRE2D_HDEP,
    InterpretedLanguage,
    Kind,
    LanguageParams,
    Part,
    SymbolDef,
    bearers,
    builtin_language,
    instance_of,
    parts_of,
)

__all__ = [
    "BALLSTICK3D",
    "Diagram",
    "InterpretedLanguage",
    "Kind",
    "LANGUAGE_IDS",
    "LanguageParams",
    "Part",
    "RULES",
    "SPACEFILL3D",
    "SymbolDef",
    "Token",
    "Violation",
    "WIRE2D",
    "WIRE2D_HDEP",
    "abstract_diagram",
    "bearers",
    "builtin_language",
    "derived_connections",
    "instance_of",
    "is_well_formed",
    "parse_dgf",
    "parts_of",
    "require_well_formed",
    "well_formed",
    "write_dgf",
]
