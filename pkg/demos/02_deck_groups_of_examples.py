"""
Deck groups of a few explicit maps
==================================

Deck(f^k) is the group of Moebius maps phi with f^k o phi = f^k. We compute
the chain k = 1, 2, ... for the standard examples and print the group types.
"""

from deckgroups import bicritical as bc
from deckgroups import deck
from deckgroups.classify import classify_map

# %%
# A critically coalescing map with a cyclic chain
# -----------------------------------------------
# (z^4 - 1)/(z^4 + i) sends both critical values to the same point, yet every
# level is Z_4: coalescing does not force a dihedral group.

f = bc.from_normal_form(1, -1, 1, 1j, 4)
report = classify_map(f, 4)
print([str(t) for t in report.types], report.critically_coalescing)

# %%
# The dihedral family
# -------------------
# g = (z^d - 1)/(z^d + 1) for even d: Z_d, then D_2d, then D_4d for good.

for d in (2, 4, 6):
    g = bc.from_normal_form(1, -1, 1, 1, d)
    chain = deck.deck_chain(g, 5, use_deck3_bound=False)
    print(d, [str(x.group_type) for x in chain.groups], "stable from", chain.stabilized_at)

# %%
# With a = 2 the chain stops at D_2d.

h = bc.from_normal_form(1, -2, 1, 2, 6)
print([str(x.group_type) for x in deck.deck_chain(h, 4).groups])

# %%
# Power maps
# ----------
# Only power maps keep growing: Deck of the k-th iterate of z^3 is Z_(3^k).

print([str(x.group_type) for x in deck.deck_chain(bc.power_map(3), 4).groups])

# %%
# Odd degree
# ----------
# Away from power maps an odd degree map never gains symmetry.

print([str(t) for t in classify_map(bc.from_normal_form(1, 1, 1, -1, 3), 4).types])
