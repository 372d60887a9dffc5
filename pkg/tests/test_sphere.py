import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deckgroups import sphere
from deckgroups.errors import DegenerateTriple, SingularMatrix, ZeroVector
from deckgroups.sphere import (
    IDENTITY, INFINITY, MoebiusMap, SpherePoint, Tolerance, apply, chordal_distance,
    commute, compose, fixed_points, mobius_from_three_points, normalize_point,
    order_of, point,
)

from conftest import affine_points, finite_order_maps, moebius_maps, scalars

EPS = 1e-9


def close(p, q, eps=1e-9):
    return chordal_distance(point(p), point(q)) < eps


# -- points -------------------------------------------------------------------

@pytest.mark.parametrize("raw, expected", [
    ((3, 3), (1, 1)),
    ((5, 0), (1, 0)),
    ((1 + 1j, 2), ((1 + 1j) / 2, 1)),
    ((0, 2j), (0, 1)),
    ((4j, 1), (1, -0.25j)),
])
def test_normalize_point(raw, expected):
    p = normalize_point(*raw)
    assert p.z == pytest.approx(expected[0]) and p.w == pytest.approx(expected[1])
    assert chordal_distance(p, normalize_point(*raw)) == 0


def test_normalize_ties_go_to_w():
    p = normalize_point(1j, 1)
    assert p.w == 1 and p.z == 1j


@pytest.mark.parametrize("raw", [(0, 0), (0j, 0.0)])
def test_zero_vector(raw):
    with pytest.raises(ZeroVector):
        normalize_point(*raw)


def test_point_coercion():
    assert point(math.inf) is INFINITY
    assert point(2).to_complex() == 2
    assert cmath.isinf(INFINITY.to_complex())


@pytest.mark.parametrize("p, q, expected", [
    (0, math.inf, 1.0),
    (2 + 1j, 2 + 1j, 0.0),
    (1, -1, 1.0),
    (1, 1j, math.sqrt(2) / 2),  # |1*1 - i*1| / (sqrt2 sqrt2)
])
def test_chordal_distance(p, q, expected):
    assert chordal_distance(point(p), point(q)) == pytest.approx(expected, abs=1e-15)


@given(affine_points, affine_points)
def test_chordal_symmetric_and_bounded(a, b):
    p, q = point(a), point(b)
    d = chordal_distance(p, q)
    assert d == pytest.approx(chordal_distance(q, p), abs=1e-15)
    assert 0 <= d <= 1


def test_random_points_are_normalized():
    z, w = sphere.random_points(np.random.default_rng(0), 100)
    assert np.all(np.maximum(np.abs(z), np.abs(w)) == pytest.approx(1.0))


# -- maps ---------------------------------------------------------------------

def test_apply_examples():
    assert apply(MoebiusMap(0, 1, 1, 0), point(0)).is_infinity
    assert close(apply(MoebiusMap(-1, 0, 0, 1), point(3)), -3)
    # (z - 1) / (z + 1) at infinity: evaluate on [1 : 0]
    assert close(apply(MoebiusMap(1, -1, 1, 1), INFINITY), 1)
    assert close(apply(IDENTITY, point(7 - 2j)), 7 - 2j)


def test_canonical_form():
    m = MoebiusMap(0, 1, 1, 0)
    assert m.a * m.d - m.b * m.c == pytest.approx(1)
    lead = next(e for e in m.entries if abs(e) > 0.5)
    assert 0 <= cmath.phase(lead) < math.pi
    assert MoebiusMap(-2, 0, 0, -2).isclose(IDENTITY)


def test_singular_matrix():
    with pytest.raises(SingularMatrix):
        MoebiusMap(1, 2, 2, 4)
    with pytest.raises(SingularMatrix):
        MoebiusMap(0, 0, 0, 0)


@given(moebius_maps, scalars)
def test_projective_scaling_invariance(t, lam):
    scaled = MoebiusMap(*(lam * e for e in t.entries))
    assert scaled.isclose(t)


def test_compose_examples():
    neg = MoebiusMap(-1, 0, 0, 1)
    assert compose(neg, neg).is_identity()
    a = 2 - 1j
    got = compose(MoebiusMap(0, 1, 1, 0), sphere.scalar(a))
    assert got.isclose(MoebiusMap(0, 1, a, 0))


@settings(max_examples=50)
@given(moebius_maps, moebius_maps)
def test_compose_matches_pointwise(t1, t2):
    z, w = sphere.random_points(np.random.default_rng(1), 24)
    lz, lw = sphere.apply_arrays(compose(t1, t2), z, w)
    rz, rw = sphere.apply_arrays(t1, *sphere.apply_arrays(t2, z, w))
    assert sphere.chordal_arrays(lz, lw, rz, rw).max() < 1e-9


@settings(max_examples=50)
@given(moebius_maps, moebius_maps, moebius_maps)
def test_compose_associative(t1, t2, t3):
    z, w = sphere.random_points(np.random.default_rng(2), 24)
    lz, lw = sphere.apply_arrays(compose(compose(t1, t2), t3), z, w)
    rz, rw = sphere.apply_arrays(compose(t1, compose(t2, t3)), z, w)
    assert sphere.chordal_arrays(lz, lw, rz, rw).max() < 10 * EPS


@given(moebius_maps)
def test_inverse(t):
    assert compose(t, t.inverse()).is_identity(1e-9)


@given(moebius_maps, st.integers(-6, 6))
def test_power_matches_repeated_composition(t, n):
    acc = IDENTITY
    step = t if n >= 0 else t.inverse()
    for _ in range(abs(n)):
        acc = compose(acc, step)
    assert sphere.power(t, n).isclose(acc, 1e-6)


# -- fixed points -------------------------------------------------------------

def pointset(ps):
    return sorted((round(p.to_complex().real, 9), round(p.to_complex().imag, 9))
                  if not p.is_infinity else (math.inf, 0) for p in ps)


@pytest.mark.parametrize("t, expected", [
    (MoebiusMap(-1, 0, 0, 1), [0, math.inf]),
    (MoebiusMap(0, 1, 1, 0), [1, -1]),  # z^2 = 1
    (MoebiusMap(1, 1, 0, 1), [math.inf]),  # translation: parabolic
])
def test_fixed_points_examples(t, expected):
    got = fixed_points(t)
    assert sphere.setwise_equal(got, [point(x) for x in expected])


def test_identity_fixes_everything():
    assert fixed_points(IDENTITY) is None


@given(moebius_maps)
def test_fixed_points_are_fixed(t):
    fixed = fixed_points(t)
    if fixed is None:
        return
    for p in fixed:
        assert chordal_distance(apply(t, p), p) < 1e-7


# -- orders ------------------------------------------------------------------

def brute_order(t, cap=200):
    """Iterate until the identity comes back; independent of order_of's eigenvalue route."""
    acc = t
    for n in range(1, cap + 1):
        if acc.is_identity(1e-8):
            return n
        acc = compose(acc, t)
    return None


def test_order_examples():
    tol = Tolerance()
    assert order_of(IDENTITY, tol) == 1
    assert order_of(sphere.rotation(5), tol) == 5
    assert order_of(sphere.scalar(2), tol) is None
    assert order_of(MoebiusMap(1, 1, 0, 1), tol) is None
    assert order_of(MoebiusMap(0, 1, 1, 0), tol) == 2


@settings(max_examples=60)
@given(finite_order_maps())
def test_order_matches_brute_force(case):
    t, n = case
    got = order_of(t, Tolerance())
    assert got == n == brute_order(t)
    assert len(fixed_points(t)) == 2
    for m in range(1, n):
        assert not sphere.power(t, m).is_identity()


def test_order_of_large_rotation():
    assert order_of(sphere.rotation(4096, 3)) == 4096


# -- three points -------------------------------------------------------------

@pytest.mark.parametrize("src, dst, expected", [
    ((0, 1, math.inf), (0, 1, math.inf), IDENTITY),
    ((0, math.inf, 1), (math.inf, 0, 1), MoebiusMap(0, 1, 1, 0)),
    ((0, 1, math.inf), (1, math.inf, 0), MoebiusMap(0, 1, -1, 1)),  # 1 / (1 - z)
])
def test_three_points_examples(src, dst, expected):
    t = mobius_from_three_points(src, dst)
    assert t.isclose(expected)
    for p, q in zip(src, dst):
        assert close(apply(t, point(p)), q)


@settings(max_examples=50)
@given(st.lists(affine_points, min_size=6, max_size=6))
def test_three_points_random(pts):
    src, dst = [point(x) for x in pts[:3]], [point(x) for x in pts[3:]]
    for tri in (src, dst):
        if min(chordal_distance(tri[i], tri[j]) for i in range(3) for j in range(i + 1, 3)) < 0.05:
            return
    t = mobius_from_three_points(src, dst)
    for p, q in zip(src, dst):
        assert chordal_distance(apply(t, p), q) < 1e-8


def test_degenerate_triple():
    with pytest.raises(DegenerateTriple):
        mobius_from_three_points((0, 0, 1), (0, 1, 2))
    with pytest.raises(DegenerateTriple):
        mobius_from_three_points((0, 1, 2), (5, 5 + 1e-12, 1))


# -- commuting ---------------------------------------------------------------

def test_commute_examples():
    neg, inv = MoebiusMap(-1, 0, 0, 1), MoebiusMap(0, 1, 1, 0)
    assert commute(neg, inv)
    assert not commute(MoebiusMap(1j, 0, 0, 1), MoebiusMap(1, 1, 0, 1))
    t = MoebiusMap(2, 1, 1, 1)
    assert commute(t, t.inverse())


def exchanges_fixed_sets(t1, t2, eps=1e-7):
    f1, f2 = fixed_points(t1), fixed_points(t2)
    image = lambda t, ps: [apply(t, p) for p in ps]
    return (sphere.setwise_equal(image(t1, f2), f2, eps)
            and sphere.setwise_equal(image(t2, f1), f1, eps))


@settings(max_examples=80)
@given(finite_order_maps(6), st.integers(1, 5), st.booleans(), moebius_maps)
def test_commuting_iff_fixed_sets_exchanged(case, j, swap, h):
    """Commuting finite-order maps exchange fixed sets and conversely.

    The second map is built to commute or not: a power of the first, an
    involution swapping its fixed points, or a random conjugate.
    """
    t1, n = case
    fa, fb = fixed_points(t1)
    if swap:
        # involution exchanging fa and fb, fixing a third point: commutes iff n == 2
        t2 = mobius_from_three_points((fa, fb, apply(h, point(0.3))), (fb, fa, apply(h, point(0.3))))
        if not compose(t2, t2).is_identity(1e-7):
            return
    elif j % 2:
        t2 = sphere.power(t1, j)
    else:
        t2 = h.inverse() @ t1 @ h
    if t2.is_identity(1e-7) or t1.is_identity(1e-7):
        return
    assert commute(t1, t2, 1e-7) == exchanges_fixed_sets(t1, t2)
