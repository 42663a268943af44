"""
Finite abelian groups and their subgroups
=========================================

Groups are lists of cyclic orders; subgroups are stored in a canonical
row-reduced form, so two generating sets of the same subgroup compare equal.
"""

from fusion2cat import (
    AbelianGroup,
    canonicalize_subgroup,
    enumerate_subgroups,
    intersect,
    member,
    smith_normal_form,
    subgroup_sum,
)

# Smith normal form with the transforms: U M V = D
res = smith_normal_form([[2, 4], [6, 8]])
print("SNF diagonal of [[2, 4], [6, 8]]:", res.diagonal)
print("U =", res.U, " V =", res.V)

# the same subgroup from two different generating sets
A = AbelianGroup((2, 4))
S = canonicalize_subgroup(A, [(1, 2)])
T = canonicalize_subgroup(A, [(1, 2), (0, 0), (1, 2)])
print(f"\n<(1,2)> in {A}:", S, "| same as redundant set:", S == T)
print("abstract structure:", S.abstract, "basis:", S.basis_embed)

# membership is decided by congruence solving
print("(0,0) in S:", member(S, (0, 0)), " (1,0) in S:", member(S, (1, 0)))

# the lattice of subgroups, sorted by order
subs = enumerate_subgroups(A)
print(f"\n{len(subs)} subgroups of {A}:")
for H in subs:
    print("  order", H.order, "~", H.abstract, "generated by", list(H.basis_embed))

# |S| |T| = |S & T| |S + T|
Z12 = AbelianGroup((12,))
P, Q = canonicalize_subgroup(Z12, [(2,)]), canonicalize_subgroup(Z12, [(3,)])
I, J = intersect(P, Q), subgroup_sum(P, Q)
print(f"\nin Z/12: <2> & <3> = {I}, <2> + <3> = {J}")
print("product formula:", P.order * Q.order, "=", I.order * J.order)
