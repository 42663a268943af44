"""
Fusing the regular module over Z/p
==================================

Over ``Z/p`` with trivial braiding the whole-group simple ``V`` squares to
``p`` copies of itself.  With braiding ``[[1/p]]`` the antidiagonal is its own
complement and ``V [] V`` is a single copy of the unit.
"""

from fractions import Fraction

from fusion2cat import BraidedPointedCategory, fusion_steps, make_simple

for p in (2, 3, 5, 7):
    for k in (0, 1):
        C = BraidedPointedCategory.from_matrix([p], [[Fraction(k, p)]])
        V = make_simple(C.group, [(1,)])
        st = fusion_steps(V, V, C)
        print(
            f"p={p} beta=[[{C.braiding.matrix[0][0]}]]: K = {st.complement},",
            f"H = {st.image.abstract}, m = {st.multiplicity}",
        )

# intermediate data for one case
C = BraidedPointedCategory.from_matrix([5], [["1/5"]])
V = make_simple(C.group, [(1,)])
st = fusion_steps(V, V, C)
print("\npair form on Z/5 (+) Z/5:", [[str(q) for q in row] for row in st.pair_form.matrix])
print("antidiagonal:", st.antidiagonal, " complement equals it:", st.complement == st.antidiagonal)
