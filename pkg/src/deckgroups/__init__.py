"""Deck groups of iterates of bicritical rational maps."""

from .bicritical import BicriticalMap, from_normal_form, power_map
from .classify import ClassificationReport, classify_map
from .deck import DeckChain, DeckGroup, deck_chain, deck_group
from .groups import GroupType, identify_group
from .sphere import MoebiusMap, SpherePoint, Tolerance

__all__ = [
    "BicriticalMap", "ClassificationReport", "DeckChain", "DeckGroup", "GroupType",
    "MoebiusMap", "SpherePoint", "Tolerance", "classify_map", "deck_chain", "deck_group",
    "from_normal_form", "identify_group", "power_map",
]
