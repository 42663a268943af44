"""
Fusion table and ring checks for the Klein four-group
=====================================================

The catalog has six simples: the unit, three order-two subgroups, and the
whole group with each of its two alternating forms.  ``verify_ring`` checks
unit laws, associativity, positivity and the dual involution.
"""

from fusion2cat import (
    AbelianGroup,
    BraidedPointedCategory,
    enumerate_bicharacters,
    fusion_table,
    verify_ring,
)

C = BraidedPointedCategory.from_matrix([2, 2], [["0", "1/2"], ["0", "0"]])
T = fusion_table(C)
for i, X in enumerate(T.catalog):
    print(f"#{i}: {X}")
print("\nrow i, column j: m#k meaning #i [] #j = m #k")
for i in range(len(T)):
    print(f"#{i}:", "  ".join(f"{m}#{k}" for m, k in (T.product(i, j) for j in range(len(T)))))

report = verify_ring(C, T)
print("\n" + "\n".join(report.lines()))

# every one of the 16 braidings passes
A = AbelianGroup((2, 2))
passed = sum(verify_ring(BraidedPointedCategory(A, b)).passed for b in enumerate_bicharacters(A))
print(f"\nbraidings passing verify_ring: {passed}/16")
