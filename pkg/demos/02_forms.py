"""
Bicharacters and alternating forms
==================================

Values in Q/Z are kept as exact fractions.  A braiding on ``Z/n_1 x ... x Z/n_k``
is a matrix of such values; its alternating part and the orthogonal
complements it defines are computed exactly.
"""

from fusion2cat import (
    AbelianGroup,
    AlternatingForm,
    Subgroup,
    alt_part,
    enumerate_alternating_forms,
    enumerate_subgroups,
    evaluate,
    orthogonal_complement,
    validate_bicharacter,
)
from fusion2cat.errors import InvalidBraidingError

G = AbelianGroup((2, 2))
beta = validate_bicharacter(G, [["0", "1/2"], ["0", "0"]])
print("beta((1,0), (0,1)) =", evaluate(beta, (1, 0), (0, 1)))
print("beta((0,1), (1,0)) =", evaluate(beta, (0, 1), (1, 0)))
print("Alt(beta) matrix:", [[str(q) for q in row] for row in alt_part(beta).matrix])

# entries must be killed by gcd(n_i, n_j)
try:
    validate_bicharacter(AbelianGroup((2,)), [["1/3"]])
except InvalidBraidingError as exc:
    print("\nrejected:", exc)

# alternating forms, one per class in H^2
for factors in [(4,), (2, 2), (3, 3), (2, 4)]:
    forms = enumerate_alternating_forms(AbelianGroup(factors))
    print(f"{AbelianGroup(factors)}: {len(forms)} alternating forms")

# orthogonal complements for the nondegenerate form on the Klein four-group
psi = AlternatingForm.from_matrix(G, [["0", "1/2"], ["1/2", "0"]])
print()
for S in enumerate_subgroups(G):
    perp = orthogonal_complement(psi, S)
    print(f"  {S}  ->  perp = {perp}")
print("whole group perp is trivial:", orthogonal_complement(psi, Subgroup.whole(G)).is_trivial)
