"""
Moebius maps on the Riemann sphere
==================================

Points are projective pairs [z : w], so infinity is just [1 : 0] and needs
no special casing. Moebius maps are 2x2 matrices up to scale, stored in a
canonical form so that equality is a tolerance test on four numbers.
"""

import math

from deckgroups import sphere
from deckgroups.sphere import INFINITY, MoebiusMap, point

# %%
# Points and distances
# --------------------
# The chordal distance is bounded by 1, reached by antipodal points.

print(sphere.chordal_distance(point(0), INFINITY))          # 1.0
print(sphere.chordal_distance(point(1), point(-1)))         # 1.0
print(sphere.normalize_point(3, 3))                         # [1 : 1]

# %%
# Maps, composition and fixed points
# ----------------------------------
# z -> (z - 1)/(z + 1) sends infinity to 1. Composition is matrix product.

t = MoebiusMap(1, -1, 1, 1)
print(sphere.apply(t, INFINITY))
print(sphere.fixed_points(t))
print((t @ t.inverse()).is_identity())

# %%
# Finite order
# ------------
# A rotation conjugated by any Moebius map keeps its order. order_of reads
# a candidate from the eigenvalue ratio and confirms it by exact powering.

h = MoebiusMap(2, 1j, 1, 1)
r = sphere.conjugate(sphere.rotation(7, 3), h)
print(sphere.order_of(r))                                   # 7
print(sphere.order_of(MoebiusMap(1, 1, 0, 1)))              # None, parabolic

# %%
# Three points determine a map
# ----------------------------

m = sphere.mobius_from_three_points((0, 1, math.inf), (1, math.inf, 0))
print(m)                                                    # z -> 1/(1 - z)
