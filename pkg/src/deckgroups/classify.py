"""Classification reports for the deck groups of a map's iterates.

Each report carries the isomorphism type at every level and the outcome of
the classification theorems checked against it:

* odd degree, not a power map: every level is ``Z_d``;
* power map (any degree): level ``k`` is ``Z_(d^k)``;
* even degree: every level is ``Z_(d^n)``, ``D_2d`` or ``D_4d``, and at most
  ``4d`` elements unless ``f`` is a power map;
* a dihedral level forces ``f`` to be critically coalescing.

A violation means either a numerical failure or a counterexample; it is
logged at error level and carried in the report.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import bicritical as bc
from .deck import DeckChain, deck_chain
from .groups import GroupType
from .sphere import DEFAULT_TOL, Tolerance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelResult:
    k: int
    order: int
    group_type: GroupType


@dataclass
class ClassificationReport:
    degree: int
    levels: list[LevelResult]
    power_map: bool
    critically_coalescing: bool
    violations: list[str] = field(default_factory=list)
    degenerate: bool = False
    stabilized_at: int | None = None

    @property
    def consistent(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "consistent" if self.consistent else "; ".join(self.violations)

    @property
    def types(self) -> list[GroupType]:
        return [lv.group_type for lv in self.levels]


def _is_power_of(n: int, d: int) -> bool:
    if n < d:
        return False
    while n % d == 0:
        n //= d
    return n == 1


def theorem_violations(degree: int, levels: list[LevelResult], power_map: bool,
                       critically_coalescing: bool) -> list[str]:
    d = degree
    out = []
    for lv in levels:
        t = lv.group_type
        if power_map:
            if t != GroupType.cyclic(d ** lv.k):
                out.append(f"k={lv.k}: power map must give Z_{d ** lv.k}, got {t}")
            continue
        if d % 2:
            if t != GroupType.cyclic(d):
                out.append(f"k={lv.k}: odd degree {d}, not a power map, must give Z_{d}, got {t}")
        else:
            allowed = (t.is_cyclic and _is_power_of(t.order, d)) or t in (
                GroupType.dihedral(2 * d), GroupType.dihedral(4 * d))
            if not allowed:
                out.append(f"k={lv.k}: even degree {d} allows Z_(d^n), D_{2 * d}, D_{4 * d}; got {t}")
            if lv.order > 4 * d:
                out.append(f"k={lv.k}: order {lv.order} exceeds 4d = {4 * d} for a non-power map")
        if t.is_dihedral and not critically_coalescing:
            out.append(f"k={lv.k}: dihedral {t} but the map is not critically coalescing")
    return out


def report_from_chain(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> ClassificationReport:
    f = chain.f
    levels = [LevelResult(g.k, g.order, g.group_type) for g in chain.groups]
    coalescing = bc.is_critically_coalescing(f, tol)
    violations = theorem_violations(f.degree, levels, chain.power_map_flag, coalescing)
    for v in violations:
        log.error("theorem violation for %r: %s", f, v)
    return ClassificationReport(f.degree, levels, chain.power_map_flag, coalescing,
                                violations, chain.degenerate, chain.stabilized_at)


def classify_map(f: bc.BicriticalMap, k_max: int, tol: Tolerance = DEFAULT_TOL,
                 use_deck3_bound: bool = True) -> ClassificationReport:
    """Compute and identify ``Deck(f^k)`` for ``k = 1 .. k_max`` and check the theorems."""
    return report_from_chain(deck_chain(f, k_max, tol, use_deck3_bound), tol)


def check_dihedral_coalescing(f: bc.BicriticalMap, report: ClassificationReport,
                              tol: Tolerance = DEFAULT_TOL) -> bool:
    """True unless a dihedral level appears for a map that is not critically coalescing.

    The converse fails from degree 4 on: ``(z^4 - 1) / (z^4 + i)`` is
    critically coalescing yet all its deck groups are ``Z_4``.
    """
    if not any(t.is_dihedral for t in report.types):
        return True
    return bc.is_critically_coalescing(f, tol)
