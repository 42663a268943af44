"""
Cross-checking against the brute-force oracle
=============================================

The oracle recomputes every fusion product by listing elements: complements
by testing all pairs, images by adding lifts, and descended forms on every
choice of lifts.  Here it is compared with the structured pipeline on every
pair of simples for each braiding of ``Z/2 x Z/4``.
"""

import itertools
import time

from fusion2cat import AbelianGroup, BraidedPointedCategory, enumerate_bicharacters, enumerate_simples, fuse
from fusion2cat.oracle import oracle_fuse

A = AbelianGroup((2, 4))
start = time.perf_counter()
pairs = mismatches = 0
for beta in enumerate_bicharacters(A):
    C = BraidedPointedCategory(A, beta)
    simples = enumerate_simples(C)
    for X, Y in itertools.product(simples, repeat=2):
        pairs += 1
        mismatches += fuse(X, Y, C) != oracle_fuse(X, Y, C)
print(f"{A}: {pairs} products compared, {mismatches} mismatches, {time.perf_counter() - start:.1f} s")
