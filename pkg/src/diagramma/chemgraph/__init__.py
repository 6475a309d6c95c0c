"""Instance-level chemical graphs: atoms joined by bonds of order 1-3."""

from .canon import CanonicalCode, canonical_form, isomorphic
from .cgf import parse_cgf, write_cgf
from .elements import DEFAULT_TABLE, Element, ValenceTable
from .feasibility import (
    Feasibility,
    FeasibilityClass,
    Registry,
    RegistryEntry,
    classify_feasibility,
    registry_lookup,
)
from .generate import random_molecule
from .graph import Bond, MolecularGraph, bond_key, restrict, valence
from .smiles import SmilesError, parse_smiles_subset

__all__ = [
    "Bond",
    "CanonicalCode",
    "DEFAULT_TABLE",
    "Element",
    "Feasibility",
    "FeasibilityClass",
    "MolecularGraph",
    "Registry",
    "RegistryEntry",
    "SmilesError",
    "ValenceTable",
    "bond_key",
    "canonical_form",
    "classify_feasibility",
    "isomorphic",
    "parse_cgf",
    "parse_smiles_subset",
    "random_molecule",
    "registry_lookup",
    "restrict",
    "valence",
    "write_cgf",
]
