"""Acceptance criteria 1-9.

Each criterion prints one ``PASS`` / ``FAIL`` line (visible in ``pytest -v``
output) before asserting. Work for criteria 1-8 is cached so criterion 9 can
rerun the structural checks on every map those criteria touched without
recomputing, and without depending on test order.
"""

import cmath
import math
import time
from functools import lru_cache

import pytest

from deckgroups import bicritical as bc, deck, groups, invariants, oracle
from deckgroups.classify import check_dihedral_coalescing, report_from_chain
from deckgroups.groups import GroupType
from deckgroups.sphere import MoebiusMap, Tolerance
from deckgroups.suite import run_suite

TOL = Tolerance()
SEED = 20240601


def announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


# -- cached work ----------------------------------------------------------------

@lru_cache(maxsize=None)
def converse_case():
    f = bc.from_normal_form(1, -1, 1, 1j, 4)
    start = time.perf_counter()
    chain = deck.deck_chain(f, 4)
    report = report_from_chain(chain, TOL)
    return f, chain, report, time.perf_counter() - start


@lru_cache(maxsize=None)
def level_two_case(d, a):
    f = bc.from_normal_form(1, -a, 1, a, d)
    chain, elapsed = timed(deck.deck_chain, f, 2)
    return f, chain, elapsed


@lru_cache(maxsize=None)
def level_three_case(d):
    f = bc.from_normal_form(1, -1, 1, 1, d)
    chain, elapsed = timed(deck.deck_chain, f, 4, use_deck3_bound=False)
    return f, chain, elapsed


@lru_cache(maxsize=None)
def quadratic_case():
    f = bc.from_normal_form(1, -1, 1, 1, 2)
    return f, deck.deck_chain(f, 6, use_deck3_bound=False)


@lru_cache(maxsize=None)
def power_case(d):
    f = bc.power_map(d)
    return f, deck.deck_chain(f, 3)


@lru_cache(maxsize=None)
def odd_suite():
    return timed(run_suite, SEED, 200, [3, 5, 7], 4, True, TOL)


@lru_cache(maxsize=None)
def even_suite():
    return timed(run_suite, SEED + 1, 200, [2, 4, 6], 4, True, TOL)


@lru_cache(maxsize=None)
def oracle_suite():
    return timed(run_suite, SEED + 2, 50, [2, 3, 4], 3, True, TOL, True)


# -- criteria -------------------------------------------------------------------

def test_criterion_1_converse_example(capsys):
    f, chain, report, elapsed = converse_case()
    types = [str(t) for t in report.types]
    ok = (types == ["Z_4"] * 4 and report.critically_coalescing and report.consistent
          and groups.same_set(chain[2].elements, deck.base_deck(f).elements)
          and elapsed < 1.0)
    announce(capsys, 1, ok, f"(z^4-1)/(z^4+i): {types}, coalescing={report.critically_coalescing}, "
                            f"{elapsed:.3f}s")


@pytest.mark.parametrize("d", [2, 4, 6])
@pytest.mark.parametrize("a", [1, 2, 1j])
def test_criterion_2_level_two_dihedral(capsys, d, a):
    f, chain, elapsed = level_two_case(d, a)
    g = chain[2]
    ok = g.group_type == GroupType.dihedral(2 * d) and g.order == 2 * d and elapsed < 1.0
    announce(capsys, 2, ok, f"d={d}, a={a}: Deck(f^2) = {g.group_type} of order {g.order}, "
                            f"{elapsed:.3f}s")


@pytest.mark.parametrize("d", [2, 4, 6])
def test_criterion_3_level_three_dihedral(capsys, d):
    f, chain, elapsed = level_three_case(d)
    g3, g4 = chain[3], chain[4]
    ok = (g3.group_type == GroupType.dihedral(4 * d) and g3.order == 4 * d
          and groups.same_set(g3.elements, g4.elements) and elapsed < 2.0)
    announce(capsys, 3, ok, f"d={d}: Deck(g^3) = {g3.group_type}, Deck(g^4) equal: "
                            f"{groups.same_set(g3.elements, g4.elements)}, {elapsed:.3f}s")


def test_criterion_4_quadratic_bound(capsys):
    f, chain = quadratic_case()
    ok = chain[3].group_type == GroupType.dihedral(8) and max(chain.orders) <= 8
    announce(capsys, 4, ok, f"d=2: orders for k=1..6 {chain.orders}, Deck(g^3) = {chain[3].group_type}")


@pytest.mark.parametrize("d", [2, 3, 5])
def test_criterion_5_power_maps(capsys, d):
    f, chain = power_case(d)
    ok = True
    for k in (1, 2, 3):
        n = d ** k
        rotations = [MoebiusMap(cmath.exp(2j * math.pi * j / n), 0, 0, 1) for j in range(n)]
        g = chain[k]
        ok &= g.group_type == GroupType.cyclic(n) and g.order == n
        ok &= groups.same_set(g.elements, rotations)
        if n <= oracle.MAX_FIBER:
            ok &= oracle.verify_level(f, k, TOL, g).match
    announce(capsys, 5, ok, f"z^{d}: {[str(g.group_type) for g in chain.groups]}")


def _suite_summary(result):
    return ", ".join(f"d={d}: {c}" for d, c in result.type_counts().items())


def test_criterion_6_odd_degree_suite(capsys):
    result, elapsed = odd_suite()
    cyclic_d = all(o.types == [f"Z_{o.degree}"] * 4 for o in result.outcomes if not o.power_map)
    ok = result.ok and cyclic_d and len(result.outcomes) == 200 and elapsed < 60
    announce(capsys, 6, ok, f"{result.passed}/200 maps consistent in {elapsed:.1f}s; "
                            f"{_suite_summary(result)}")


def test_criterion_7_even_degree_suite(capsys):
    result, elapsed = even_suite()
    bounded = all(o.power_map or all(int(t.split("_")[1]) <= 4 * o.degree for t in o.types)
                  for o in result.outcomes)
    ok = result.ok and bounded and len(result.outcomes) == 200 and elapsed < 90
    announce(capsys, 7, ok, f"{result.passed}/200 maps consistent in {elapsed:.1f}s; "
                            f"{_suite_summary(result)}")


def test_criterion_8_oracle_equivalence(capsys):
    result, elapsed = oracle_suite()
    oracle_failures = [m for o in result.outcomes for m in o.failures if m.startswith("oracle")]
    ok = not oracle_failures and result.ok and len(result.outcomes) == 50 and elapsed < 300
    announce(capsys, 8, ok, f"{result.passed}/50 maps match the fiber oracle at k=1..3 "
                            f"in {elapsed:.1f}s")


def test_criterion_9_structural_invariants(capsys):
    chains = [converse_case()[1], quadratic_case()[1]]
    chains += [level_two_case(d, a)[1] for d in (2, 4, 6) for a in (1, 2, 1j)]
    chains += [level_three_case(d)[1] for d in (2, 4, 6)]
    chains += [power_case(d)[1] for d in (2, 3, 5)]
    failures = []
    for chain in chains:
        for name, msgs in invariants.check_all(chain, TOL).items():
            failures += [f"{name}: {m}" for m in msgs]
        report = report_from_chain(chain, TOL)
        if not check_dihedral_coalescing(chain.f, report, TOL):
            failures.append("dihedral without coalescing")
    # the suites run the same checks on every sampled map
    suite_maps = 0
    for result, _ in (odd_suite(), even_suite(), oracle_suite()):
        suite_maps += len(result.outcomes)
        failures += [m for o in result.outcomes for m in o.failures]
    ok = not failures
    announce(capsys, 9, ok, f"{len(chains)} fixture chains and {suite_maps} sampled maps, "
                            f"{len(failures)} invariant failures")
