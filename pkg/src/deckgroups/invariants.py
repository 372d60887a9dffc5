"""Structural checks on a computed deck chain.

These are independent of how the chain was built and are run by the
property suites on every sampled map. Each check returns a list of failure
messages; an empty list means the property holds.
"""

from __future__ import annotations

from . import bicritical as bc
from . import sphere
from .deck import DeckChain, deck_identity_defect, value_preserving_subset
from .groups import is_subset
from .sphere import DEFAULT_TOL, Tolerance

_SALT_FRESH = 909


def _prime_factors(n: int) -> set[int]:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def defining_identity(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    """``f^k o phi = f^k`` on fresh sample points, within ``10 eps``."""
    out = []
    for g in chain.groups:
        defect = deck_identity_defect(chain.f, g.k, g.elements, tol, salt=_SALT_FRESH + g.k)
        if not defect.max() < 10 * tol.eps:
            out.append(f"k={g.k}: defining identity off by {defect.max():.3e}")
    return out


def nesting(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    return [f"Deck(f^{a.k}) is not contained in Deck(f^{b.k})"
            for a, b in zip(chain.groups, chain.groups[1:])
            if not is_subset(a.elements, b.elements, tol.eps)]


def critical_pair_preserved(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    crit = bc.critical_points(chain.f)
    out = []
    for g in chain.groups:
        bad = sum(not crit.image(phi).isclose(crit, 10 * tol.eps) for phi in g.elements)
        if bad:
            out.append(f"k={g.k}: {bad} element(s) move the critical points")
    return out


def prime_orders(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    """No element order has a prime factor that does not divide ``d``."""
    allowed = _prime_factors(chain.f.degree)
    out = []
    for g in chain.groups:
        for phi in g.elements:
            m = sphere.order_of(phi, tol)
            if m is None:
                out.append(f"k={g.k}: element of infinite order {phi!r}")
            elif not _prime_factors(m) <= allowed:
                out.append(f"k={g.k}: element of order {m} in degree {chain.f.degree}")
    return out


def growth(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    """Successive orders grow by an integer factor at most ``d`` (at most 2
    unless ``f`` is a power map); each order divides ``d^k`` and is at least ``d``."""
    d = chain.f.degree
    cap = d if chain.power_map_flag else 2
    out = []
    prev = 1
    for g in chain.groups:
        if g.order % prev or g.order // prev > (d if g.k == 1 else cap):
            out.append(f"k={g.k}: order {g.order} after {prev}")
        if (d ** g.k) % g.order or g.order < d:
            out.append(f"k={g.k}: order {g.order} does not divide d^k = {d ** g.k} or is below d")
        prev = g.order
    return out


def size_law(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    """``|Deck(f^k)| = d * #{mu in Deck(f^(k-1)) : mu(V_f) = V_f}``."""
    values = bc.critical_values(chain.f)
    d = chain.f.degree
    out = []
    prev = [sphere.IDENTITY]
    for g in chain.groups:
        expected = d * len(value_preserving_subset(prev, values, tol))
        if g.order != expected:
            out.append(f"k={g.k}: order {g.order}, lifting count predicts {expected}")
        prev = list(g.elements)
    return out


def local_degree_bound(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    """An element of order ``m`` in ``Deck(f^k)`` fixes a point where ``f^k``
    has local degree at least ``m``."""
    f = chain.f
    out = []
    for g in chain.groups:
        for phi in g.elements:
            m = sphere.order_of(phi, tol)
            if m is None or m == 1:
                continue
            fixed = sphere.fixed_points(phi, tol.eps) or []
            best = max((bc.local_degree(f, g.k, p, tol) for p in fixed), default=0)
            if best < m:
                out.append(f"k={g.k}: element of order {m} but local degree {best} at its fixed points")
    return out


CHECKS = {
    "defining_identity": defining_identity,
    "nesting": nesting,
    "critical_pair_preserved": critical_pair_preserved,
    "prime_orders": prime_orders,
    "growth": growth,
    "size_law": size_law,
    "local_degree_bound": local_degree_bound,
}


def check_all(chain: DeckChain, tol: Tolerance = DEFAULT_TOL) -> dict[str, list[str]]:
    """Run every structural check; maps check name to its failures."""
    return {name: check(chain, tol) for name, check in CHECKS.items()}
