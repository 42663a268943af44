"""Brute-force reference implementations by exhaustive element enumeration.

Nothing here solves congruences or uses normal forms.  Subgroups are closed
up by breadth-first search, complements are found by testing every element,
and descended forms are read off every pair of lifts.  The only structured
call is :func:`canonicalize_subgroup` on a finished element set, so that
results can be compared with the main pipeline in canonical form.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd, prod

from .abelian import AbelianGroup, Subgroup, canonicalize_subgroup
from .errors import AmbientMismatchError, InternalInvariantError, ResourceLimitError
from .forms import AlternatingForm, Bicharacter
from .fusion import BraidedPointedCategory, FusionResult, SimpleObject

__all__ = [
    "ORACLE_LIMIT",
    "oracle_alternating_forms",
    "oracle_complement",
    "oracle_fuse",
    "oracle_span",
    "oracle_subgroups",
]

ORACLE_LIMIT = 4096


def _need(size: int, limit: int, what: str):
    if size > limit:
        raise ResourceLimitError(f"{what} has {size} elements, oracle limit is {limit}")


def _all_elements(A: AbelianGroup) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(n) for n in A.factors)))


def oracle_span(A: AbelianGroup, gens, limit: int = ORACLE_LIMIT) -> frozenset:
    """Closure of ``gens`` under addition, by breadth-first search from zero."""
    _need(A.order, limit, str(A))
    gens = [tuple(g) for g in gens]
    seen = {A.zero}
    frontier = [A.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = A.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _subgroup_elements(S: Subgroup, limit: int) -> frozenset:
    return oracle_span(S.ambient, S.gen_matrix, limit)


def oracle_subgroups(A: AbelianGroup, limit: int = ORACLE_LIMIT) -> list[frozenset]:
    """Every subgroup of ``A`` as an element set, by closing under one new element at a time."""
    _need(A.order, limit, str(A))
    elements = _all_elements(A)
    start = frozenset([A.zero])
    found = {start}
    queue = [start]
    while queue:
        S = queue.pop()
        for g in elements:
            if g in S:
                continue
            T = oracle_span(A, list(S) + [g], limit)
            if T not in found:
                found.add(T)
                queue.append(T)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _form_value(N, den, x, y) -> int:
    return sum(x[i] * y[j] * N[i][j] for i in range(len(x)) for j in range(len(y))) % den


def oracle_complement(b: Bicharacter, S: Subgroup, limit: int = ORACLE_LIMIT) -> Subgroup:
    """``{g in G : b(g, s) = 0 for all s in S}`` by testing every pair ``(g, s)``."""
    G = b.group
    if S.ambient != G:
        raise AmbientMismatchError(f"{S} is not a subgroup of the form's group {G}")
    _need(G.order, limit, str(G))
    S_el = _subgroup_elements(S, limit)
    N, den = b.numerators, b.den
    r = G.rank
    keep = []
    for g in _all_elements(G):
        gN = [sum(g[i] * N[i][j] for i in range(r)) for j in range(r)]
        if all(sum(a * c for a, c in zip(gN, s)) % den == 0 for s in S_el):
            keep.append(g)
    return canonicalize_subgroup(G, keep)


@lru_cache(maxsize=None)
def _group_tables(A: AbelianGroup):
    elements = _all_elements(A)
    index = {x: i for i, x in enumerate(elements)}
    add = [[index[A.add(x, y)] for y in elements] for x in elements]
    neg = [index[A.neg(x)] for x in elements]
    return elements, index, add, neg


@lru_cache(maxsize=256)
def _braiding_table(beta: Bicharacter):
    elements = _group_tables(beta.group)[0]
    N, den = beta.numerators, beta.den
    return [[_form_value(N, den, x, y) for y in elements] for x in elements]


@lru_cache(maxsize=4096)
def _simple_tables(X: SimpleObject, den: int):
    """Element indices of ``E`` and the table of ``psi`` on them, over denominator ``den``."""
    E, form = X.subgroup, X.form
    index = _group_tables(E.ambient)[1]
    members = sorted(index[x] for x in _subgroup_elements(E, ORACLE_LIMIT))
    # abstract coordinates of each member, found by running through all of them
    coords = {}
    for c in itertools.product(*(range(d) for d in E.inv_factors)):
        acc = [0] * E.ambient.rank
        for ci, row in zip(c, E.basis_embed):
            for t, a in enumerate(row):
                acc[t] += ci * a
        coords[index[E.ambient.reduce(acc)]] = c
    if len(coords) != len(members) or set(coords) != set(members):
        raise InternalInvariantError(f"basis of {E} does not enumerate its elements")
    scale = den // form.den
    N, fden = form.numerators, form.den
    table = [
        [_form_value(N, fden, coords[u], coords[v]) * scale for v in members]
        for u in members
    ]
    return members, {a: i for i, a in enumerate(members)}, table


def oracle_fuse(
    X: SimpleObject, Y: SimpleObject, C: BraidedPointedCategory, limit: int = ORACLE_LIMIT
) -> FusionResult:
    """Fusion of two simples with every step done by enumeration.

    Elements of ``E (+) F`` are pairs ``(e, f)`` of ambient elements.  ``rho``
    is checked to take the same value on every choice of lifts.
    """
    A = C.group
    if X.subgroup.ambient != A or Y.subgroup.ambient != A:
        raise AmbientMismatchError("both simple objects must live over the category's group")
    _need(X.subgroup.order * Y.subgroup.order, limit, "E (+) F")
    T = _braiding_table(C.braiding)
    Ei = _simple_tables(X, A.exponent)[0]
    Fi = _simple_tables(Y, A.exponent)[0]
    # the braiding enters only through its values on F x E
    cross = tuple(tuple(T[f][e] for e in Ei) for f in Fi)
    return _oracle_fuse_core(X, Y, cross)


@lru_cache(maxsize=1 << 16)
def _oracle_fuse_core(X: SimpleObject, Y: SimpleObject, cross) -> FusionResult:
    """``cross[j][i]`` is ``beta(f_j, e_i)`` over the element lists of ``F`` and ``E``."""
    A = X.subgroup.ambient
    den = A.exponent
    elements, index, add, neg = _group_tables(A)
    Ei, posE, psiE = _simple_tables(X, den)
    Fi, posF, psiF = _simple_tables(Y, den)

    def b(v, w):
        (i1, j1), (i2, j2) = v, w
        return (psiE[i1][i2] + psiF[j1][j2] + cross[j1][i2] - cross[j2][i1]) % den

    common = [a for a in Ei if a in posF]
    delta = [(posE[a], posF[neg[a]]) for a in common]
    # b((i, j), d) splits as (terms in i) + (terms in j); tabulate both over every d
    e_part = [
        tuple((psiE[i][di] - cross[dj][i]) % den for di, dj in delta)
        for i in range(len(Ei))
    ]
    f_part = [
        tuple((psiF[j][dj] + cross[j][di]) % den for di, dj in delta)
        for j in range(len(Fi))
    ]
    by_value: dict[tuple, list[int]] = {}
    for j, row in enumerate(f_part):
        by_value.setdefault(row, []).append(j)
    K = []
    for i, row in enumerate(e_part):
        for j in by_value.get(tuple(-a % den for a in row), ()):
            K.append((i, j))
    numer, denom = len(K) * len(common), len(Ei) * len(Fi)
    if numer % denom:
        raise InternalInvariantError(f"|K||E&F| = {numer} is not divisible by |E||F| = {denom}")

    fibres: dict[int, list] = {}
    for v in K:
        fibres.setdefault(add[Ei[v[0]]][Fi[v[1]]], []).append(v)
    H = canonicalize_subgroup(A, [elements[h] for h in fibres])
    if H.order != len(fibres):
        raise InternalInvariantError("image of K is not closed under addition")

    lifts = []
    for h in H.basis_embed:
        if index[h] not in fibres:
            raise InternalInvariantError(f"basis element {h} of H has no lift")
        lifts.append(fibres[index[h]])
    dH = H.abstract.exponent
    rows = []
    for la in lifts:
        row = []
        for lb in lifts:
            values = {b(u, w) for u in la for w in lb}
            if len(values) != 1:
                raise InternalInvariantError("descended form depends on the choice of lifts")
            (v,) = values
            if v * dH % den:
                raise InternalInvariantError("descended value does not fit on H")
            row.append(v * dH // den)
        rows.append(row)
    return FusionResult(numer // denom, SimpleObject(H, AlternatingForm(H.abstract, rows)))


def oracle_alternating_forms(E, limit: int = ORACLE_LIMIT) -> list[AlternatingForm]:
    """All alternating forms on ``E``'s abstract group, by exhaustive filtering.

    Every matrix on the grid ``N_ij in (1/gcd(d_i, d_j)) Z/Z`` is tested for
    ``b(x, x) = 0`` and ``b(x, y) + b(y, x) = 0`` on all elements; survivors
    are deduplicated by their value table.
    """
    G = E.abstract if isinstance(E, Subgroup) else E
    d, r, den = G.factors, G.rank, G.exponent
    cells = [(i, j) for i in range(r) for j in range(r)]
    grid = [gcd(d[i], d[j]) for i, j in cells]
    _need(prod(grid), limit, f"form grid on {G}")
    _need(G.order, limit, str(G))
    elements = _all_elements(G)
    seen = {}
    for combo in itertools.product(*(range(g) for g in grid)):
        N = [[0] * r for _ in range(r)]
        for (i, j), k, g in zip(cells, combo, grid):
            N[i][j] = k * (den // g)
        ok = all(
            _form_value(N, den, x, x) == 0
            and (_form_value(N, den, x, y) + _form_value(N, den, y, x)) % den == 0
            for x in elements
            for y in elements
        )
        if not ok:
            continue
        key = tuple(_form_value(N, den, x, y) for x in elements for y in elements)
        seen.setdefault(key, N)
    return [AlternatingForm(G, N) for N in seen.values()]
