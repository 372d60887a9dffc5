"""
Random maps against the classification
======================================

Sample maps of each degree, compute four levels of the deck chain, and tally
which sequences of group types occur. The coalescing option mixes in maps of
the form (z^d - a)/(z^d + a) conjugated at random, since generic sampling
almost never lands on the dihedral locus.
"""

from deckgroups.suite import run_suite

result = run_suite(seed=7, count=120, degrees=[2, 3, 4, 5, 6], k_max=4, coalescing=True)
print(f"{result.passed} of {len(result.outcomes)} maps passed every check")
for d, counts in result.type_counts().items():
    for seq, n in counts.items():
        print(f"  d={d}  {seq:<28} {n}")

# %%
# The same sample can be pushed through the brute-force fiber oracle where
# the fiber of f^k has at most 64 points.

checked = run_suite(seed=7, count=12, degrees=[2, 3], k_max=3, coalescing=True, use_oracle=True)
print("oracle agreement:", checked.ok)
