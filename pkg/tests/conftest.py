import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from deckgroups import bicritical as bc
from deckgroups.sphere import MoebiusMap, Tolerance

TOL = Tolerance()


def well_conditioned(entries, floor=0.05):
    a, b, c, d = entries
    scale = max(abs(x) for x in entries)
    return scale > 1e-3 and abs(a * d - b * c) / scale ** 2 > floor


coeff = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
moebius_maps = (st.tuples(coeff, coeff, coeff, coeff)
                .filter(well_conditioned)
                .map(lambda e: MoebiusMap(*e)))
scalars = st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False)
affine_points = st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False)


@st.composite
def finite_order_maps(draw, max_n=12):
    """A conjugated rotation ``h^-1 o (z -> exp(2 pi i j / n) z) o h`` and its order."""
    n = draw(st.integers(2, max_n))
    j = draw(st.sampled_from([j for j in range(1, n) if math.gcd(j, n) == 1]))
    h = draw(moebius_maps)
    rot = MoebiusMap(cmath.exp(2j * math.pi * j / n), 0, 0, 1)
    return h.inverse() @ rot @ h, n


@pytest.fixture
def tol():
    return TOL


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def converse_example():
    """(z^4 - 1) / (z^4 + i): critically coalescing, yet every deck group is Z_4."""
    return bc.from_normal_form(1, -1, 1, 1j, 4)
