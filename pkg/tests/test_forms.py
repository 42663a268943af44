import itertools
import random
from fractions import Fraction
from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusion2cat import (
    AbelianGroup,
    AlternatingForm,
    AmbientMismatchError,
    Bicharacter,
    InternalInvariantError,
    InvalidBraidingError,
    InvalidFormError,
    InvalidInputError,
    QmodZ,
    ResourceLimitError,
    Subgroup,
    alt_part,
    build_pair_form,
    canonicalize_subgroup,
    descend_form,
    direct_sum,
    enumerate_alternating_forms,
    enumerate_bicharacters,
    enumerate_subgroups,
    evaluate,
    image_under_sum,
    make_simple,
    orthogonal_complement,
    parse_rational,
    restrict,
    validate_bicharacter,
)
from fusion2cat.oracle import oracle_alternating_forms, oracle_complement

from conftest import SMALL_GROUPS, elements_of, groups, random_alternating, random_bicharacter

NONDEG = [["0", "1/2"], ["1/2", "0"]]


# --- Q/Z -----------------------------------------------------------------------


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -1/3 ") == Fraction(-1, 3)
    assert parse_rational(2) == 2
    for bad in (0.5, True, "1/0", "x", None):
        with pytest.raises(InvalidInputError):
            parse_rational(bad)


def test_qmodz_arithmetic():
    a, b = QmodZ("3/4"), QmodZ("1/2")
    assert a + b == QmodZ("1/4")
    assert a - b == QmodZ("1/4")
    assert -a == QmodZ("1/4")
    assert a * 4 == 0 and a * 2 == QmodZ("1/2")
    assert QmodZ("5/4") == a - b and QmodZ(-1) == 0
    assert str(QmodZ("2/6")) == "1/3" and str(QmodZ(0)) == "0"
    assert repr(a) == "QmodZ('3/4')"
    assert a.order == 4 and QmodZ(0).order == 1
    assert hash(QmodZ("1/3")) == hash(QmodZ("4/3"))


@given(st.integers(-100, 100), st.integers(1, 60), st.integers(-100, 100))
def test_qmodz_killed_iff_denominator_divides(p, q, n):
    x = QmodZ(Fraction(p, q))
    assert (x * n == 0) == (n % x.value.denominator == 0)
    assert 0 <= x.value < 1


# --- bicharacters ----------------------------------------------------------------


def test_validate_examples():
    G = AbelianGroup((2, 3))
    assert validate_bicharacter(G, [[0, 0], [0, 0]]).is_zero
    b = validate_bicharacter(AbelianGroup((5,)), [["1/5"]])
    assert b.matrix == ((QmodZ("1/5"),),)
    assert validate_bicharacter(AbelianGroup((5,)), [["6/5"]]) == b
    with pytest.raises(InvalidBraidingError, match=r"\(0, 0\)"):
        validate_bicharacter(AbelianGroup((2,)), [["1/3"]])


def test_validate_names_offending_entry():
    with pytest.raises(InvalidBraidingError, match=r"\(0, 1\)"):
        validate_bicharacter(AbelianGroup((2, 4)), [["0", "1/4"], ["0", "0"]])
    with pytest.raises(InvalidBraidingError):
        validate_bicharacter(AbelianGroup((2, 4)), [["0"]])


def test_evaluate_examples():
    b = validate_bicharacter(AbelianGroup((5,)), [["1/5"]])
    assert evaluate(b, (2,), (3,)) == QmodZ("1/5")
    z = Bicharacter.zero(AbelianGroup((4, 6)))
    assert all(evaluate(z, x, y) == 0 for x in z.group.elements() for y in z.group.elements())
    B = validate_bicharacter(AbelianGroup((2, 2)), [["0", "1/2"], ["0", "0"]])
    assert evaluate(B, (1, 0), (0, 1)) == QmodZ("1/2")
    assert evaluate(B, (0, 1), (1, 0)) == 0
    with pytest.raises(AmbientMismatchError):
        evaluate(B, (1,), (0, 1))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_bilinearity(data):
    G = data.draw(groups())
    beta = random_bicharacter(random.Random(data.draw(st.integers(0, 10**6))), G)
    x, x2, y = (data.draw(elements_of(G)) for _ in range(3))
    assert beta(G.add(x, x2), y) == beta(x, y) + beta(x2, y)
    assert beta(y, G.add(x, x2)) == beta(y, x) + beta(y, x2)


def test_alt_part_examples():
    for p in (2, 3, 5, 7):
        assert alt_part(validate_bicharacter(AbelianGroup((p,)), [[Fraction(1, p)]])).is_zero
    assert alt_part(Bicharacter.zero(AbelianGroup((3, 3)))).is_zero
    B = validate_bicharacter(AbelianGroup((2, 2)), [["0", "1/2"], ["0", "0"]])
    assert alt_part(B).matrix == ((0, QmodZ("1/2")), (QmodZ("1/2"), 0))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_alt_part_of_symmetric_is_zero(data):
    G = data.draw(groups())
    beta = random_bicharacter(random.Random(data.draw(st.integers(0, 10**6))), G)
    assert alt_part(beta + beta.transpose()).is_zero


def test_alternating_form_validation():
    Z22 = AbelianGroup((2, 2))
    assert AlternatingForm.from_matrix(Z22, NONDEG).value((1, 0), (0, 1)) == 1
    with pytest.raises(InvalidFormError):
        AlternatingForm.from_matrix(Z22, [["1/2", "0"], ["0", "0"]])
    with pytest.raises(InvalidFormError):
        AlternatingForm.from_matrix(AbelianGroup((3, 3)), [["0", "1/3"], ["1/3", "0"]])


@pytest.mark.parametrize("factors", [f for f in SMALL_GROUPS if len(f) >= 2])
def test_alternating_forms_vanish_on_diagonal(factors):
    G = AbelianGroup(factors)
    for psi in enumerate_alternating_forms(G):
        for x in G.elements():
            assert psi(x, x) == 0
            for y in G.elements():
                assert psi(x, y) + psi(y, x) == 0


def test_restrict_matches_ambient_values():
    rng = random.Random(3)
    A = AbelianGroup((2, 4, 4))
    for _ in range(20):
        beta = random_bicharacter(rng, A)
        for S in rng.sample(enumerate_subgroups(A), 10):
            r = restrict(beta, S)
            for u in S.abstract.elements():
                for v in S.abstract.elements():
                    assert r(u, v) == beta(S.embed(u), S.embed(v))


# --- pair form -------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_pair_form_examples(p):
    A = AbelianGroup((p,))
    X = make_simple(A, [(1,)])
    zero = build_pair_form(X, X, Bicharacter.zero(A))
    assert zero.is_zero and zero.group.factors == (p, p)
    b = build_pair_form(X, X, validate_bicharacter(A, [[Fraction(1, p)]]))
    for x1, y1, x2, y2 in itertools.product(range(p), repeat=4):
        assert b((x1, y1), (x2, y2)) == QmodZ(Fraction(y1 * x2 - y2 * x1, p))


def _gram(b, elements):
    V = np.array(elements, dtype=np.int64).reshape(len(elements), b.group.rank)
    N = np.array(b.numerators, dtype=np.int64).reshape(b.group.rank, b.group.rank)
    return (V @ N @ V.T) % b.den


@pytest.mark.parametrize("factors", [(4,), (6,), (2, 2), (2, 4), (3, 3), (2, 2, 2)])
def test_pair_form_is_alternating(factors):
    from fusion2cat import BraidedPointedCategory, enumerate_simples

    rng = random.Random(11)
    A = AbelianGroup(factors)
    for _ in range(3):
        beta = random_bicharacter(rng, A)
        simples = enumerate_simples(BraidedPointedCategory(A, beta))
        for X, Y in itertools.product(simples, repeat=2):
            b = build_pair_form(X, Y, beta)
            els = list(b.group.elements())
            if len(els) > 256:
                els = rng.sample(els, 256)
            M = _gram(b, els)
            assert not M.diagonal().any()
            assert not ((M + M.T) % b.den).any()
    # spot check the Gram matrix against direct evaluation
    v, w = els[-1], els[len(els) // 2]
    assert b(v, w) == QmodZ(Fraction(int(M[-1, len(els) // 2]), b.den))


def test_pair_form_matches_definition():
    rng = random.Random(5)
    A = AbelianGroup((2, 4))
    beta = random_bicharacter(rng, A)
    X = make_simple(A, [(1, 2)])
    Y = make_simple(A, [(0, 1), (1, 0)], [["0", "1/2"], ["1/2", "0"]])
    b = build_pair_form(X, Y, beta)
    E, F = X.subgroup, Y.subgroup
    for e1, f1, e2, f2 in itertools.product(
        E.abstract.elements(), F.abstract.elements(), E.abstract.elements(), F.abstract.elements()
    ):
        expected = (
            X.form(e1, e2) + Y.form(f1, f2)
            + beta(F.embed(f1), E.embed(e2)) - beta(F.embed(f2), E.embed(e1))
        )
        assert b(e1 + f1, e2 + f2) == expected


def test_pair_form_ambient_mismatch():
    X = make_simple(AbelianGroup((2,)), [(1,)])
    with pytest.raises(AmbientMismatchError):
        build_pair_form(X, X, Bicharacter.zero(AbelianGroup((3,))))


# --- complements -----------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_complement_of_antidiagonal(p):
    A = AbelianGroup((p,))
    X = make_simple(A, [(1,)])
    b = build_pair_form(X, X, validate_bicharacter(A, [[Fraction(1, p)]]))
    delta = canonicalize_subgroup(b.group, [(1, p - 1)])
    assert orthogonal_complement(b, delta) == delta
    assert oracle_complement(b, delta) == delta


def test_complement_examples():
    G = AbelianGroup((2, 2))
    zero = AlternatingForm.zero(G)
    for S in enumerate_subgroups(G):
        assert orthogonal_complement(zero, S) == Subgroup.whole(G)
    psi = AlternatingForm.from_matrix(G, NONDEG)
    assert orthogonal_complement(psi, Subgroup.whole(G)).is_trivial
    assert orthogonal_complement(psi, Subgroup.trivial(G)) == Subgroup.whole(G)
    with pytest.raises(AmbientMismatchError):
        orthogonal_complement(psi, Subgroup.whole(AbelianGroup((4,))))


COMPLEMENT_GROUPS = SMALL_GROUPS + [(2, 2, 2, 2, 2), (4, 4, 4), (2, 4, 8), (16, 16), (2, 2, 2, 2, 2, 2, 2, 2)]


@pytest.mark.parametrize("factors", COMPLEMENT_GROUPS)
def test_complement_matches_oracle(factors):
    rng = random.Random(len(factors) * 1000 + sum(factors))
    G = AbelianGroup(factors)
    if G.order <= 64:
        subs = enumerate_subgroups(G)
        if len(subs) > 40:
            subs = rng.sample(subs, 40)
    else:
        els = list(G.elements())
        subs = [canonicalize_subgroup(G, rng.sample(els, rng.randint(0, 3))) for _ in range(10)]
    n = 3 if G.order <= 64 else 1
    forms = [random_alternating(rng, G) for _ in range(n)] + [random_bicharacter(rng, G) for _ in range(n)]
    for b in forms:
        for S in subs:
            perp = orthogonal_complement(b, S)
            assert perp == oracle_complement(b, S)
            if isinstance(b, AlternatingForm):
                assert perp.order * S.order >= G.order


# --- descent ---------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
def test_descend_examples(p):
    A = AbelianGroup((p,))
    X = make_simple(A, [(1,)])
    b = build_pair_form(X, X, validate_bicharacter(A, [[Fraction(1, p)]]))
    K = canonicalize_subgroup(b.group, [(1, p - 1)])
    H = image_under_sum(K, A)
    rho = descend_form(b, K, H)
    assert H.is_trivial and rho.group.rank == 0

    z = build_pair_form(X, X, Bicharacter.zero(A))
    W = Subgroup.whole(z.group)
    assert descend_form(z, W, image_under_sum(W, A)).is_zero


def test_descend_nondegenerate_square():
    A = AbelianGroup((2, 2))
    X = make_simple(A, [(1, 0), (0, 1)], NONDEG)
    b = build_pair_form(X, X, Bicharacter.zero(A))
    E = X.subgroup
    delta = canonicalize_subgroup(b.group, [E.coords(x) + E.coords(A.neg(x)) for x in E.basis_embed])
    K = orthogonal_complement(b, delta)
    assert K == delta
    assert all(b(u, v) == 0 for u in K.elements() for v in K.elements())
    H = image_under_sum(K, A)
    assert H.is_trivial and descend_form(b, K, H).group.rank == 0


def test_descend_rejects_ill_defined_call():
    A = AbelianGroup((3,))
    X = make_simple(A, [(1,)])
    b = build_pair_form(X, X, validate_bicharacter(A, [["1/3"]]))
    W = Subgroup.whole(b.group)
    with pytest.raises(InternalInvariantError):
        descend_form(b, W, image_under_sum(W, A))
    with pytest.raises((AmbientMismatchError, InternalInvariantError)):
        descend_form(b, W, Subgroup.trivial(A))


# --- enumeration -----------------------------------------------------------------


@pytest.mark.parametrize(
    "factors, count",
    [((2,), 1), ((7,), 1), ((12,), 1), ((2, 2), 2), ((3, 3), 3), ((2, 4), 2), ((4, 4), 4), ((2, 2, 2), 8), ((), 1)],
)
def test_alternating_form_counts(factors, count):
    G = AbelianGroup(factors)
    assert len(enumerate_alternating_forms(G)) == count
    assert len(oracle_alternating_forms(G)) == count


@pytest.mark.parametrize("factors", [(2, 2), (2, 4), (3, 3), (2, 6), (4, 4), (2, 2, 2), (2, 2, 4)])
def test_alternating_forms_match_oracle(factors):
    G = AbelianGroup(factors)
    forms = enumerate_alternating_forms(G)
    assert len(set(forms)) == len(forms)
    assert set(forms) == set(oracle_alternating_forms(G))


def test_form_enumeration_limit():
    with pytest.raises(ResourceLimitError):
        enumerate_alternating_forms(AbelianGroup((2,) * 6), limit=100)


@pytest.mark.parametrize("factors", [(2,), (4,), (2, 2), (2, 4), (3, 3), (2, 2, 2)])
def test_bicharacter_counts(factors):
    G = AbelianGroup(factors)
    bs = enumerate_bicharacters(G)
    assert len(bs) == len(set(bs)) == prod(gcd(a, b) for a in factors for b in factors)
