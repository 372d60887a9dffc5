"""
Lifting one level up
====================

If mu preserves the critical values of f, the solutions phi of
f o phi = mu o f form one coset of Deck(f). In coordinates where f is
z -> z^d, mu is z -> a z (or a / z) and its lifts are z -> c z with
c^d = a. Here we check that against the coefficient a^d, which does not
solve the equation.
"""

import numpy as np

from deckgroups import bicritical as bc
from deckgroups import deck, sphere
from deckgroups.sphere import MoebiusMap

f = bc.BicriticalMap(MoebiusMap(1, 1, -1, 1), 3, MoebiusMap(2, 1j, 1, 1))
a = 2.0
mu = sphere.conjugate(sphere.scalar(a), f.post.inverse())

z, w = sphere.random_points(np.random.default_rng(0), 24)
root = sphere.conjugate(sphere.scalar(a ** (1 / 3)), f.pre)
power = sphere.conjugate(sphere.scalar(a ** 3), f.pre)
print("c^3 = a :", deck.semiconjugacy_defect(f, root, mu, z, w))
print("c = a^3 :", deck.semiconjugacy_defect(f, power, mu, z, w))

# %%
# The engine returns all three lifts, each checked on sample points, and
# projecting any of them back down recovers mu.

for phi in deck.lift(f, mu):
    print(phi, deck.project(f, phi, k=1).isclose(mu, 1e-8))
