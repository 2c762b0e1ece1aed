"""Exact Hochschild cohomology HH*(C[x] x| G, f) for Fermat polynomials f."""

__version__ = "0.1.0"

from .cuptable import CupEngine
from .fixedlocus import AlgebraElement, Fermat
from .gaction import GAction
from .group import Group, GroupElement, parse_element
from .invariants import hh_algebra

__all__ = ["AlgebraElement", "CupEngine", "Fermat", "GAction", "Group", "GroupElement", "hh_algebra", "parse_element", "__version__"]
