import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import strategies as st

from fusion2cat import AbelianGroup, Bicharacter, BraidedPointedCategory, alt_part, make_simple

# every factor list here has order <= 16; some are deliberately not in invariant-factor form
SMALL_GROUPS = [
    (),
    (2,), (3,), (4,), (5,), (6,), (7,), (8,), (9,), (12,), (16,),
    (2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (2, 6), (2, 8), (4, 4),
    (2, 2, 2), (2, 2, 4), (2, 2, 2, 2),
]

# the groups swept by the oracle-equivalence criterion
SWEEP_GROUPS = [(2,), (3,), (4,), (6,), (2, 2), (2, 4), (3, 3), (2, 2, 2)]


def det(M):
    """Exact determinant by fraction-free Bareiss elimination."""
    M = [list(r) for r in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def determinantal_divisors(M):
    """``g_k`` = gcd of all k x k minors, for k = 1 .. min(rows, cols)."""
    rows, cols = len(M), len(M[0]) if M else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for R in itertools.combinations(range(rows), k):
            for C in itertools.combinations(range(cols), k):
                g = gcd(g, det([[M[i][j] for j in C] for i in R]))
        out.append(g)
    return out


def brute_span(A, gens):
    """Every integer combination of ``gens``, by running through all coefficient vectors."""
    gens = [tuple(g) for g in gens]
    out = set()
    for coeffs in itertools.product(*(range(A.exponent) for _ in gens)):
        out.add(A.reduce(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(A.rank)))
    if not gens:
        out.add(A.zero)
    return out


def random_bicharacter(rng, G):
    """A uniformly random bicharacter, one entry per cell of the gcd grid."""
    den = G.exponent
    rows = []
    for a in G.factors:
        row = []
        for b in G.factors:
            g = gcd(a, b)
            row.append(rng.randrange(g) * (den // g))
        rows.append(row)
    return Bicharacter(G, rows)


def random_alternating(rng, G):
    return alt_part(random_bicharacter(rng, G))


def modp(p, k=0):
    """``Vect_{Z/p}`` with braiding ``[[k/p]]`` and its whole-group simple."""
    C = BraidedPointedCategory.from_matrix([p], [[Fraction(k, p)]])
    return C, make_simple(C.group, [(1,)])


@st.composite
def groups(draw, max_rank=3, max_factor=8):
    factors = draw(st.lists(st.integers(2, max_factor), min_size=0, max_size=max_rank))
    return AbelianGroup(tuple(factors))


@st.composite
def elements_of(draw, A):
    return tuple(draw(st.integers(0, n - 1)) for n in A.factors)


@pytest.fixture
def z22():
    return AbelianGroup((2, 2))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
