"""Finite abelian groups, their subgroups, and integer normal forms.

A group is an explicit product ``Z/n_1 x ... x Z/n_k`` and its elements are
plain tuples of residues.  A subgroup ``S`` is stored through the lattice
``L = span(generators) + diag(n) Z^k``: the Hermite normal form of ``L`` is
unique, so it doubles as the canonical generator matrix and subgroup
equality is matrix equality.  The abstract structure ``S = (+) Z/d_i`` and a
basis realising it come from a Smith normal form of the relations ``diag(n)``
written in the rows of ``L``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import (
    AmbientMismatchError,
    InternalInvariantError,
    InvalidElementError,
    InvalidInputError,
    ResourceLimitError,
)

__all__ = [
    "DEFAULT_ENUMERATION_LIMIT",
    "AbelianGroup",
    "DirectSum",
    "SNFDecomposition",
    "Subgroup",
    "canonicalize_subgroup",
    "direct_sum",
    "enumerate_subgroups",
    "hermite_normal_form",
    "image_under_sum",
    "intersect",
    "left_kernel",
    "mat_mul",
    "member",
    "smith_normal_form",
    "solve_left",
    "subgroup_sum",
]

DEFAULT_ENUMERATION_LIMIT = 4096

Element = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AbelianGroup:
    """The group ``Z/n_1 x ... x Z/n_k``; ``AbelianGroup(())`` is trivial.

    >>> G = AbelianGroup((2, 4))
    >>> G.order, G.exponent
    (8, 4)
    >>> G.add((1, 3), (1, 2))
    (0, 1)
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        for i, n in enumerate(factors):
            if not isinstance(n, int) or isinstance(n, bool) or n < 2:
                raise InvalidInputError(
                    f"cyclic factor {i} must be an integer >= 2, got {n!r}"
                )
        object.__setattr__(self, "factors", factors)

    def __hash__(self):
        return _cached_hash(self, (self.factors,))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for n in self.factors:
            e = e * n // _gcd(e, n)
        return e

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def check_element(self, x: Sequence[int]) -> Element:
        """Return ``x`` as a tuple, raising if it is not a reduced residue vector."""
        x = tuple(x)
        if len(x) == len(self.factors) and all(
            type(c) is int and 0 <= c < n for c, n in zip(x, self.factors)
        ):
            return x
        if len(x) != self.rank:
            raise InvalidElementError(
                f"element {x} has {len(x)} coordinates, group {self} needs {self.rank}"
            )
        for i, (c, n) in enumerate(zip(x, self.factors)):
            if not isinstance(c, int) or not 0 <= c < n:
                raise InvalidElementError(
                    f"coordinate {i} of {x} is outside [0, {n})"
                )
        return x

    def reduce(self, x: Iterable[int]) -> Element:
        return tuple(c % n for c, n in zip(x, self.factors))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def neg(self, x: Element) -> Element:
        return tuple(-a % n for a, n in zip(x, self.factors))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % n for a, n in zip(x, self.factors))

    def element_order(self, x: Element) -> int:
        o = 1
        for a, n in zip(x, self.factors):
            c = n // _gcd(a, n)
            o = o * c // _gcd(o, c)
        return o

    def elements(self, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[Element]:
        if self.order > limit:
            raise ResourceLimitError(
                f"group of order {self.order} exceeds enumeration limit {limit}"
            )
        return itertools.product(*(range(n) for n in self.factors))

    def __str__(self):
        if not self.factors:
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.factors)


def _cached_hash(obj, key) -> int:
    # frozen value objects are nested deeply; rehashing them dominates cache lookups
    h = obj.__dict__.get("_hash")
    if h is None:
        h = obj.__dict__["_hash"] = hash((type(obj).__name__,) + key)
    return h


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# --- integer matrices -------------------------------------------------------


def _eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


@dataclass(frozen=True)
class SNFDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular; ``V_inv`` is ``V``'s inverse."""

    U: Matrix
    D: Matrix
    V: Matrix
    V_inv: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.V))))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _find_pivot(D, t):
    best = None
    for i in range(t, len(D)):
        row = D[i]
        for j in range(t, len(row)):
            a = row[j]
            if a and (best is None or abs(a) < best[0]):
                best = (abs(a), i, j)
    return None if best is None else best[1:]


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> SNFDecomposition:
    r"""Smith normal form with transforms, ``U @ M @ V = D``.

    The pivot is always the entry of smallest nonzero absolute value in the
    remaining block (ties: lowest row, then lowest column), which makes the
    transforms a deterministic function of ``M``.  ``ncols`` is only needed for
    matrices without rows.

    >>> smith_normal_form([[2, 4], [6, 8]]).diagonal
    (2, 4)
    """
    key = tuple(map(tuple, matrix))
    n = len(key[0]) if key else (ncols or 0)
    return _snf(key, n)


@lru_cache(maxsize=1 << 16)
def _snf(matrix: Matrix, n: int) -> SNFDecomposition:
    D = [list(row) for row in matrix]
    m = len(D)
    U, V, Vi = _eye(m), _eye(n), _eye(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        piv = _find_pivot(D, t)
        if piv is None:
            break
        while True:
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    Dt, Di, Ut, Ui = D[t], D[i], U[t], U[i]
                    for c in range(n):
                        Di[c] -= q * Dt[c]
                    for c in range(m):
                        Ui[c] -= q * Ut[c]
                if D[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    for M in (D, V):
                        for row in M:
                            row[j] -= q * row[t]
                    Vt, Vj = Vi[t], Vi[j]
                    for c in range(n):
                        Vt[c] += q * Vj[c]
                if D[t][j]:
                    dirty = True
            if dirty:
                piv = _find_pivot(D, t)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            for M in (D, U):
                M[t] = [a + b for a, b in zip(M[t], M[bad])]
            piv = (t, t)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    def freeze(M):
        return tuple(tuple(row) for row in M)

    return SNFDecomposition(freeze(U), freeze(D), freeze(V), freeze(Vi))


def left_kernel(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """A basis of ``{x in Z^m : x @ M = 0}``."""
    snf = smith_normal_form(matrix, ncols)
    return snf.U[snf.rank:]


def solve_left(matrix: Sequence[Sequence[int]], target: Sequence[int]) -> tuple[int, ...] | None:
    """An integer ``x`` with ``x @ M == target``, or ``None`` when none exists."""
    snf = smith_normal_form(matrix, len(target))
    hV = mat_mul([target], snf.V)[0]
    diag = snf.diagonal
    y = [0] * len(snf.U)
    for i, h in enumerate(hV):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if h:
                return None
        elif h % d:
            return None
        else:
            y[i] = h // d
    if not snf.U:
        return ()
    return mat_mul([y], snf.U)[0]


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and entries above a pivot are
    reduced into ``[0, pivot)``.
    """
    return _hnf(tuple(tuple(r) for r in rows if any(r)), ncols)


@lru_cache(maxsize=1 << 16)
def _hnf(rows: Matrix, ncols: int) -> Matrix:
    pending = [list(r) for r in rows]
    out: list[list[int]] = []
    pivcols: list[int] = []
    for c in range(ncols):
        active = [r for r in pending if r[c]]
        rest = [r for r in pending if not r[c]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[c] // p[c]
                r = [a - q * b for a, b in zip(r, p)]
                (nxt if r[c] else rest).append(r)
            active = nxt
        if active:
            p = active[0]
            if p[c] < 0:
                p = [-a for a in p]
            out.append(p)
            pivcols.append(c)
        pending = [r for r in rest if any(r)]
    for k, c in enumerate(pivcols):
        pv = out[k][c]
        for i in range(k):
            q = out[i][c] // pv
            if q:
                out[i] = [a - q * b for a, b in zip(out[i], out[k])]
    return tuple(tuple(r) for r in out)


def _lattice_coords(L: Matrix, v: Sequence[int]) -> list[int] | None:
    # L square upper triangular with positive diagonal
    v = list(v)
    x = []
    for k, row in enumerate(L):
        p = row[k]
        if v[k] % p:
            return None
        q = v[k] // p
        x.append(q)
        if q:
            for c in range(k, len(v)):
                v[c] -= q * row[c]
    return x if not any(v) else None


# --- subgroups --------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``ambient`` in canonical form.

    ``gen_matrix`` is the Hermite normal form of ``generators + diag(n)``;
    row ``i`` of ``basis_embed`` is an ambient element of order
    ``inv_factors[i]`` and these realise ``S = (+) Z/inv_factors[i]``.
    Build instances with :func:`canonicalize_subgroup`.
    """

    ambient: AbelianGroup
    gen_matrix: Matrix
    inv_factors: tuple[int, ...]
    basis_embed: Matrix
    order: int
    _to_basis: Matrix = field(repr=False, compare=False)

    def __hash__(self):
        return _cached_hash(self, (self.ambient, self.gen_matrix))

    @classmethod
    def whole(cls, A: AbelianGroup) -> Subgroup:
        return canonicalize_subgroup(A, [tuple(int(i == j) for j in range(A.rank)) for i in range(A.rank)])

    @classmethod
    def trivial(cls, A: AbelianGroup) -> Subgroup:
        return canonicalize_subgroup(A, [])

    @cached_property
    def abstract(self) -> AbelianGroup:
        """The group ``(+) Z/d_i`` whose standard basis maps onto ``basis_embed``."""
        return AbelianGroup(self.inv_factors)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def embed(self, coords: Sequence[int]) -> Element:
        """Ambient element with the given coordinates in the abstract basis."""
        acc = [0] * self.ambient.rank
        for c, row in zip(coords, self.basis_embed):
            if c:
                for j, a in enumerate(row):
                    acc[j] += c * a
        return self.ambient.reduce(acc)

    def coords(self, x: Sequence[int]) -> Element:
        """Abstract-basis coordinates of the member ``x``; inverse of :meth:`embed`."""
        x = self.ambient.check_element(x)
        c = _lattice_coords(self.gen_matrix, x)
        if c is None:
            raise InvalidElementError(f"{x} is not a member of {self}")
        out = mat_mul([c], self._to_basis)[0] if self.inv_factors else ()
        return tuple(a % d for a, d in zip(out, self.inv_factors))

    def elements(self, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[Element]:
        return (self.embed(c) for c in self.abstract.elements(limit))

    def __contains__(self, x) -> bool:
        return member(self, x)

    def __str__(self):
        gens = ", ".join(str(r) for r in self.basis_embed) or "0"
        return f"<{gens}> ~ {self.abstract} in {self.ambient}"


@lru_cache(maxsize=None)
def _subgroup_from_lattice(A: AbelianGroup, L: Matrix) -> Subgroup:
    k = A.rank
    if k == 0:
        return Subgroup(A, (), (), (), 1, ())
    relations = []
    for i, n in enumerate(A.factors):
        c = _lattice_coords(L, tuple(n * (i == j) for j in range(k)))
        if c is None:
            raise InternalInvariantError(f"lattice {L} does not contain the relations of {A}")
        relations.append(c)
    snf = smith_normal_form(relations)
    diag = snf.diagonal
    keep = [i for i, d in enumerate(diag) if d != 1]
    basis = mat_mul(snf.V_inv, L)
    basis_embed = tuple(A.reduce(basis[i]) for i in keep)
    to_basis = tuple(tuple(row[i] for i in keep) for row in snf.V)
    inv = tuple(diag[i] for i in keep)
    order = prod(inv)
    if order * prod(L[i][i] for i in range(k)) != A.order:
        raise InternalInvariantError(f"index mismatch for lattice {L} in {A}")
    return Subgroup(A, L, inv, basis_embed, order, to_basis)


def canonicalize_subgroup(A: AbelianGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    """The canonical subgroup of ``A`` generated by ``gens``.

    >>> S = canonicalize_subgroup(AbelianGroup((4,)), [(2,)])
    >>> S.order, S.inv_factors
    (2, (2,))
    """
    rows = [A.check_element(g) for g in gens]
    k = A.rank
    rows += [tuple(n * (i == j) for j in range(k)) for i, n in enumerate(A.factors)]
    return _subgroup_from_lattice(A, hermite_normal_form(rows, k))


def member(S: Subgroup, x: Sequence[int]) -> bool:
    """Decide ``x in S`` by back-substitution against the canonical generator matrix."""
    if len(x) != S.ambient.rank:
        raise AmbientMismatchError(f"{x} is not an element of {S.ambient}")
    x = S.ambient.check_element(x)
    return _lattice_coords(S.gen_matrix, x) is not None


def _same_ambient(S: Subgroup, T: Subgroup):
    if S.ambient != T.ambient:
        raise AmbientMismatchError(f"subgroups live in {S.ambient} and {T.ambient}")


def intersect(S: Subgroup, T: Subgroup) -> Subgroup:
    _same_ambient(S, T)
    A = S.ambient
    if S.is_trivial or T.is_trivial:
        return Subgroup.trivial(A)
    k = A.rank
    stacked = list(S.gen_matrix) + [tuple(-a for a in r) for r in T.gen_matrix]
    gens = []
    for row in left_kernel(stacked, k):
        gens.append(A.reduce(mat_mul([row[:k]], S.gen_matrix)[0]))
    return canonicalize_subgroup(A, gens)


def subgroup_sum(S: Subgroup, T: Subgroup) -> Subgroup:
    _same_ambient(S, T)
    return canonicalize_subgroup(S.ambient, S.basis_embed + T.basis_embed)


@dataclass(frozen=True)
class DirectSum(AbelianGroup):
    """External direct sum of subgroups of one target, on concatenated abstract bases.

    Carries the canonical map ``(s_1, ..., s_r) -> s_1 + ... + s_r`` into the
    target.  Build with :func:`direct_sum`.
    """

    parts: tuple[Subgroup, ...] = ()

    def __hash__(self):
        return _cached_hash(self, (self.factors, self.parts))

    @property
    def target(self) -> AbelianGroup:
        return self.parts[0].ambient

    def split(self, v: Sequence[int]) -> list[Element]:
        out, pos = [], 0
        for part in self.parts:
            r = len(part.inv_factors)
            out.append(tuple(v[pos:pos + r]))
            pos += r
        return out

    def inject(self, index: int, coords: Sequence[int]) -> Element:
        pieces = [p.abstract.zero for p in self.parts]
        pieces[index] = tuple(coords)
        return tuple(itertools.chain.from_iterable(pieces))

    @cached_property
    def sum_map(self) -> Matrix:
        """Rows are the images in ``target`` of the concatenated basis."""
        return tuple(itertools.chain.from_iterable(p.basis_embed for p in self.parts))

    def project(self, v: Sequence[int]) -> Element:
        acc = [0] * self.target.rank
        for c, row in zip(v, self.sum_map):
            if c:
                for j, a in enumerate(row):
                    acc[j] += c * a
        return self.target.reduce(acc)

    def __str__(self):
        return " (+) ".join(f"({p.abstract})" for p in self.parts) or "trivial"


@lru_cache(maxsize=1 << 14)
def direct_sum(*parts: Subgroup) -> DirectSum:
    if not parts:
        raise InvalidInputError("direct sum needs at least one summand")
    target = parts[0].ambient
    for p in parts[1:]:
        if p.ambient != target:
            raise AmbientMismatchError("direct summands must share an ambient group")
    factors = tuple(itertools.chain.from_iterable(p.inv_factors for p in parts))
    return DirectSum(factors, tuple(parts))


@lru_cache(maxsize=1 << 14)
def image_under_sum(K: Subgroup, target: AbelianGroup) -> Subgroup:
    """Image of ``K <= E (+) F`` under ``(e, f) -> e + f`` in ``target``."""
    G = K.ambient
    if not isinstance(G, DirectSum) or G.target != target:
        raise AmbientMismatchError(
            f"{G} is not declared as a direct sum mapping into {target}"
        )
    return canonicalize_subgroup(target, [G.project(v) for v in K.basis_embed])


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def enumerate_subgroups(A: AbelianGroup, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[Subgroup]:
    """Every subgroup of ``A``, sorted by order and then by ``gen_matrix``.

    Walks Hermite normal forms directly: rows are chosen from the last one up,
    and row ``i`` is kept only if ``n_i e_i`` lies in the span of the rows
    chosen so far, so every completed matrix is a distinct subgroup.
    """
    if A.order > limit:
        raise ResourceLimitError(
            f"group of order {A.order} exceeds enumeration limit {limit}"
        )
    k = A.rank
    found: list[Matrix] = []

    def extend(i: int, below: list[tuple[int, ...]]):
        if i < 0:
            found.append(tuple(below))
            return
        n = A.factors[i]
        tail = [range(below[j - i - 1][j]) for j in range(i + 1, k)]
        for h in _divisors(n):
            for rest in itertools.product(*tail):
                row = (0,) * i + (h,) + rest
                rows = [row] + below
                sub = tuple(r[i:] for r in rows)
                if _lattice_coords(sub, (n,) + (0,) * (k - i - 1)) is not None:
                    extend(i - 1, rows)

    extend(k - 1, [])
    subs = [_subgroup_from_lattice(A, L) for L in found]
    subs.sort(key=lambda s: (s.order, s.gen_matrix))
    return subs
