"""Randomized property suite over seeded bicritical maps."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import bicritical as bc
from . import invariants, oracle, sampling
from .classify import check_dihedral_coalescing, report_from_chain
from .deck import deck_chain
from .errors import DeckError
from .sphere import DEFAULT_TOL, Tolerance


@dataclass
class MapOutcome:
    index: int
    degree: int
    family: str
    types: list[str]
    power_map: bool
    critically_coalescing: bool
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class SuiteResult:
    outcomes: list[MapOutcome]

    @property
    def passed(self) -> int:
        return sum(o.passed for o in self.outcomes)

    @property
    def failed(self) -> int:
        return len(self.outcomes) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def type_counts(self) -> dict[int, dict[str, int]]:
        """Per degree, how often each sequence of level types occurred."""
        counts: dict[int, Counter] = {}
        for o in self.outcomes:
            counts.setdefault(o.degree, Counter())[" ".join(o.types)] += 1
        return {d: dict(sorted(c.items())) for d, c in sorted(counts.items())}

    def to_json(self) -> dict:
        return {
            "count": len(self.outcomes),
            "passed": self.passed,
            "failed": self.failed,
            "types_by_degree": {str(d): c for d, c in self.type_counts().items()},
            "failures": [
                {"index": o.index, "degree": o.degree, "family": o.family, "failures": o.failures}
                for o in self.outcomes if not o.passed
            ],
        }


def check_map(index: int, family: str, f: bc.BicriticalMap, k_max: int,
              tol: Tolerance = DEFAULT_TOL, use_oracle: bool = False) -> MapOutcome:
    """Classify one map and run every structural check on its deck chain.

    Levels are computed through the lifting recursion up to ``k_max`` rather
    than copied from level 3, so the stabilization statement is tested too.
    """
    try:
        chain = deck_chain(f, k_max, tol, use_deck3_bound=False)
    except DeckError as exc:
        return MapOutcome(index, f.degree, family, [], bc.is_power_map(f, tol),
                          bc.is_critically_coalescing(f, tol), [f"engine: {exc}"])
    report = report_from_chain(chain, tol)
    failures = list(report.violations)
    if not check_dihedral_coalescing(f, report, tol):
        failures.append("dihedral level without critical coalescing")
    if not chain.power_map_flag and k_max > 3:
        if any(g.order != chain[3].order for g in chain.groups[3:]):
            failures.append(f"levels beyond 3 differ from level 3: {chain.orders}")
    for name, msgs in invariants.check_all(chain, tol).items():
        failures.extend(f"{name}: {m}" for m in msgs)
    if use_oracle:
        for k in range(1, k_max + 1):
            if f.degree ** k > oracle.MAX_FIBER:
                break
            res = oracle.verify_level(f, k, tol, chain[k])
            if not res.match:
                failures.append(f"oracle: k={k} found {len(res.oracle_elements)} maps, "
                                f"engine {len(res.engine_elements)}")
    return MapOutcome(index, f.degree, family, [str(t) for t in report.types],
                      report.power_map, report.critically_coalescing, failures)


def run_suite(seed: int, count: int, degrees, k_max: int = 4, coalescing: bool = False,
              tol: Tolerance = DEFAULT_TOL, use_oracle: bool = False,
              workers: int = 1) -> SuiteResult:
    """Sample ``count`` maps and check each; results come back in sample order."""
    maps = sampling.sample_maps(seed, count, degrees, coalescing, tol)
    jobs = [(i, fam, f) for i, (fam, f) in enumerate(maps)]
    run = lambda job: check_map(*job, k_max, tol, use_oracle)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, jobs))
    else:
        outcomes = [run(job) for job in jobs]
    return SuiteResult(outcomes)
