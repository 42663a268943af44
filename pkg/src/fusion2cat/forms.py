"""Q/Z-valued bicharacters and alternating forms on finite abelian groups.

Roots of unity are written additively as rationals mod 1.  A form on a group
``G`` with factors ``n_i`` is stored as an integer matrix of numerators over
the common denominator ``exponent(G)``, so ``b(x, y) = x^T N y / exponent``.
Every entry of a bicharacter is killed by ``gcd(n_i, n_j)``, which divides the
exponent, so no information is lost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Sequence

from .abelian import (
    DEFAULT_ENUMERATION_LIMIT,
    _cached_hash,
    AbelianGroup,
    DirectSum,
    Matrix,
    Subgroup,
    canonicalize_subgroup,
    direct_sum,
    image_under_sum,
    left_kernel,
    solve_left,
)
from .errors import (
    AmbientMismatchError,
    InternalInvariantError,
    InvalidBraidingError,
    InvalidFormError,
    InvalidInputError,
    ResourceLimitError,
)

__all__ = [
    "AlternatingForm",
    "Bicharacter",
    "QmodZ",
    "alt_part",
    "build_pair_form",
    "descend_form",
    "enumerate_alternating_forms",
    "enumerate_bicharacters",
    "evaluate",
    "orthogonal_complement",
    "parse_rational",
    "restrict",
    "validate_bicharacter",
]


def parse_rational(value) -> Fraction:
    """Exact rational from an int, Fraction or a ``"p/q"`` string; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInputError(f"{value!r} is not an exact rational; write it as 'p/q'")
    try:
        return Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InvalidInputError(f"cannot read {value!r} as an exact rational") from None


class QmodZ:
    """An element of Q/Z, kept as its representative in ``[0, 1)``.

    >>> QmodZ("3/4") + QmodZ("1/2")
    QmodZ('1/4')
    >>> 4 * QmodZ("1/4") == 0
    True
    """

    __slots__ = ("_value",)

    def __init__(self, value=0):
        object.__setattr__(self, "_value", parse_rational(value) % 1)

    def __setattr__(self, name, value):
        raise AttributeError("QmodZ is immutable")

    @property
    def value(self) -> Fraction:
        return self._value

    @property
    def order(self) -> int:
        return self._value.denominator

    def __add__(self, other):
        return QmodZ(self._value + _as_fraction(other))

    __radd__ = __add__

    def __sub__(self, other):
        return QmodZ(self._value - _as_fraction(other))

    def __rsub__(self, other):
        return QmodZ(_as_fraction(other) - self._value)

    def __neg__(self):
        return QmodZ(-self._value)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return QmodZ(k * self._value)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self._value == _as_fraction(other) % 1
        except (InvalidInputError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash(self._value)

    def __bool__(self):
        return bool(self._value)

    def __str__(self):
        return str(self._value)

    def __repr__(self):
        return f"QmodZ('{self._value}')"


def _as_fraction(x) -> Fraction:
    if isinstance(x, QmodZ):
        return x.value
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"cannot combine QmodZ with {type(x).__name__}")


@lru_cache(maxsize=None)
def _gcd_grid(factors: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(gcd(a, b) for b in factors) for a in factors)


def _rescale(num: int, den_from: int, den_to: int) -> int:
    scaled = num * den_to
    if scaled % den_from:
        raise InternalInvariantError(
            f"value {num}/{den_from} has no representative over denominator {den_to}"
        )
    return scaled // den_from % den_to


@dataclass(frozen=True)
class Bicharacter:
    """Bilinear pairing ``G x G -> Q/Z`` given on the standard basis of ``group``.

    ``numerators[i][j] / group.exponent`` is the value on ``(e_i, e_j)``.
    Use :meth:`from_matrix` to build one from rational entries.
    """

    group: AbelianGroup
    numerators: Matrix

    _error = InvalidBraidingError

    def __post_init__(self):
        G, den = self.group, self.group.exponent
        rows = tuple(tuple(int(a) % den for a in row) for row in self.numerators)
        if len(rows) != G.rank or any(len(r) != G.rank for r in rows):
            raise self._error(f"form matrix must be {G.rank}x{G.rank} for group {G}")
        for i, (row, grow) in enumerate(zip(rows, _gcd_grid(G.factors))):
            for j, (a, g) in enumerate(zip(row, grow)):
                if g * a % den:
                    raise self._error(
                        f"entry ({i}, {j}) = {Fraction(a, den)} is not killed by "
                        f"gcd({G.factors[i]}, {G.factors[j]}) = {g}"
                    )
        object.__setattr__(self, "numerators", rows)
        self._check()

    def __hash__(self):
        return _cached_hash(self, (self.group, self.numerators))

    def _check(self):
        pass

    @classmethod
    def from_matrix(cls, group: AbelianGroup, matrix: Sequence[Sequence]):
        den = group.exponent
        if len(matrix) != group.rank or any(len(r) != group.rank for r in matrix):
            raise cls._error(f"form matrix must be {group.rank}x{group.rank} for group {group}")
        rows = []
        for i, row in enumerate(matrix):
            out = []
            for j, entry in enumerate(row):
                q = _as_fraction(entry) if isinstance(entry, QmodZ) else parse_rational(entry)
                scaled = q * den
                if scaled.denominator != 1:
                    g = gcd(group.factors[i], group.factors[j])
                    raise cls._error(
                        f"entry ({i}, {j}) = {q} is not killed by "
                        f"gcd({group.factors[i]}, {group.factors[j]}) = {g}"
                    )
                out.append(int(scaled))
            rows.append(out)
        return cls(group, rows)

    @classmethod
    def zero(cls, group: AbelianGroup):
        return cls(group, [[0] * group.rank for _ in range(group.rank)])

    @property
    def den(self) -> int:
        return self.group.exponent

    @property
    def matrix(self) -> tuple[tuple[QmodZ, ...], ...]:
        den = self.den
        return tuple(tuple(QmodZ(Fraction(a, den)) for a in row) for row in self.numerators)

    @property
    def is_zero(self) -> bool:
        return not any(any(r) for r in self.numerators)

    def value(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Numerator of ``b(x, y)`` over ``den``; no validation of ``x`` and ``y``."""
        s = 0
        for xi, row in zip(x, self.numerators):
            if xi:
                s += xi * sum(a * yj for a, yj in zip(row, y))
        return s % self.den

    def __call__(self, x, y) -> QmodZ:
        return evaluate(self, x, y)

    def transpose(self) -> Bicharacter:
        return Bicharacter(self.group, tuple(zip(*self.numerators)))

    def _combine(self, other, sign):
        if other.group.factors != self.group.factors:
            raise AmbientMismatchError("forms live on different groups")
        return tuple(
            tuple(a + sign * b for a, b in zip(r, s))
            for r, s in zip(self.numerators, other.numerators)
        )

    def __add__(self, other):
        return type(self)(self.group, self._combine(other, 1))

    def __sub__(self, other):
        return type(self)(self.group, self._combine(other, -1))

    def __neg__(self):
        return type(self)(self.group, tuple(tuple(-a for a in r) for r in self.numerators))


class AlternatingForm(Bicharacter):
    """A bicharacter with ``b(x, x) = 0``: zero diagonal and ``N^T = -N`` mod 1."""

    _error = InvalidFormError

    def _check(self):
        den = self.den
        N = self.numerators
        for i, row in enumerate(N):
            if row[i]:
                raise InvalidFormError(f"diagonal entry ({i}, {i}) is {Fraction(row[i], den)}, not 0")
            for j in range(i + 1, len(row)):
                if (row[j] + N[j][i]) % den:
                    raise InvalidFormError(
                        f"entries ({i}, {j}) and ({j}, {i}) do not sum to 0 mod 1"
                    )

    def __add__(self, other):
        cls = AlternatingForm if isinstance(other, AlternatingForm) else Bicharacter
        return cls(self.group, self._combine(other, 1))

    def __sub__(self, other):
        cls = AlternatingForm if isinstance(other, AlternatingForm) else Bicharacter
        return cls(self.group, self._combine(other, -1))


def validate_bicharacter(G: AbelianGroup, matrix: Sequence[Sequence]) -> Bicharacter:
    """Check that ``matrix`` defines a bicharacter on ``G`` and reduce it mod 1.

    >>> validate_bicharacter(AbelianGroup((5,)), [["1/5"]]).matrix
    ((QmodZ('1/5'),),)
    """
    return Bicharacter.from_matrix(G, matrix)


def evaluate(b: Bicharacter, x: Sequence[int], y: Sequence[int]) -> QmodZ:
    try:
        x, y = b.group.check_element(x), b.group.check_element(y)
    except InvalidInputError as exc:
        raise AmbientMismatchError(f"argument is not an element of {b.group}: {exc}") from None
    return QmodZ(Fraction(b.value(x, y), b.den))


def alt_part(beta: Bicharacter) -> AlternatingForm:
    """``x, y -> beta(x, y) - beta(y, x)``."""
    N = beta.numerators
    return AlternatingForm(
        beta.group, tuple(tuple(N[i][j] - N[j][i] for j in range(len(N))) for i in range(len(N)))
    )


def restrict(b: Bicharacter, S: Subgroup) -> Bicharacter:
    """Pull ``b`` back along the basis embedding of ``S``; same class as ``b``."""
    if S.ambient.factors != b.group.factors:
        raise AmbientMismatchError(f"{S} is not a subgroup of {b.group}")
    den_to = S.abstract.exponent
    rows = tuple(
        tuple(_rescale(b.value(u, v), b.den, den_to) for v in S.basis_embed)
        for u in S.basis_embed
    )
    return type(b)(S.abstract, rows)


def build_pair_form(X, Y, beta: Bicharacter) -> AlternatingForm:
    """The alternating form on ``E (+) F`` attached to two simple objects.

    With ``X = (E, psi_E)`` and ``Y = (F, psi_F)``,
    ``b((e1, f1), (e2, f2)) = psi_E(e1, e2) + psi_F(f1, f2) + beta(f1, e2) - beta(f2, e1)``.
    The result's ``group`` is the :class:`DirectSum` of ``E`` and ``F``.
    """
    E, F = X.subgroup, Y.subgroup
    if E.ambient != beta.group or F.ambient != beta.group:
        raise AmbientMismatchError("both simple objects must live over the braiding's group")
    return _assemble_pair_form(X.form, Y.form, E, F, _cross_terms(beta, E, F))


@lru_cache(maxsize=1 << 16)
def _assemble_pair_form(psi_E, psi_F, E, F, cross) -> AlternatingForm:
    G = direct_sum(E, F)
    den = G.exponent
    N = [list(row) for row in cross]
    for block, offset in ((psi_E, 0), (psi_F, E.abstract.rank)):
        for i, row in enumerate(block.numerators):
            for j, a in enumerate(row):
                N[offset + i][offset + j] = _rescale(a, block.den, den)
    return AlternatingForm(G, N)


@lru_cache(maxsize=1 << 14)
def _cross_terms(beta: Bicharacter, E: Subgroup, F: Subgroup) -> Matrix:
    # the beta(f1, e2) - beta(f2, e1) part of the pair form, on E (+) F's basis
    den = direct_sum(E, F).exponent
    rE, r = E.abstract.rank, E.abstract.rank + F.abstract.rank
    N = [[0] * r for _ in range(r)]
    for i, e in enumerate(E.basis_embed):
        for j, f in enumerate(F.basis_embed):
            v = _rescale(beta.value(f, e), beta.den, den)
            N[rE + j][i] = v
            N[i][rE + j] = -v
    return tuple(map(tuple, N))


def orthogonal_complement(b: Bicharacter, S: Subgroup) -> Subgroup:
    """``{g : b(g, s) = 0 for all s in S}``, by solving congruences over ``S``'s basis."""
    G = b.group
    if S.ambient != G:
        raise AmbientMismatchError(f"{S} is not a subgroup of the form's group {G}")
    if S.is_trivial:
        return Subgroup.whole(G)
    den, r = b.den, G.rank
    C = [[sum(a * c for a, c in zip(row, s)) for s in S.basis_embed] for row in b.numerators]
    k = len(S.basis_embed)
    stacked = C + [[den * (i == j) for j in range(k)] for i in range(k)]
    gens = [G.reduce(row[:r]) for row in left_kernel(stacked, k)]
    return canonicalize_subgroup(G, gens)


def descend_form(b: AlternatingForm, K: Subgroup, H: Subgroup) -> AlternatingForm:
    """Push ``b`` restricted to ``K`` down to ``H``, the image of ``K`` under the sum map.

    Raises :class:`InternalInvariantError` unless the kernel of ``K -> H``
    pairs trivially with all of ``K``.
    """
    G = K.ambient
    if b.group != G or not isinstance(G, DirectSum):
        raise AmbientMismatchError("form and subgroup must share a declared direct sum")
    if image_under_sum(K, H.ambient) != H:
        raise InternalInvariantError(f"{H} is not the image of {K}")
    target = H.ambient
    P = [G.project(k) for k in K.basis_embed]
    stacked = P + [[n * (i == j) for j in range(target.rank)] for i, n in enumerate(target.factors)]

    def combine(coeffs):
        acc = [0] * G.rank
        for c, kb in zip(coeffs, K.basis_embed):
            for t, a in enumerate(kb):
                acc[t] += c * a
        return G.reduce(acc)

    # columns b(-, k) for each basis element k of K
    paired = [[sum(a * c for a, c in zip(row, kb)) for row in b.numerators] for kb in K.basis_embed]
    for row in left_kernel(stacked, target.rank):
        z = combine(row[: len(P)])
        for kb, col in zip(K.basis_embed, paired):
            if sum(a * c for a, c in zip(z, col)) % b.den:
                raise InternalInvariantError(
                    f"kernel element {z} pairs nontrivially with {kb}; form does not descend"
                )
    lifts = []
    for h in H.basis_embed:
        sol = solve_left(stacked, h)
        if sol is None:
            raise InternalInvariantError(f"basis element {h} of H has no lift to K")
        lifts.append(combine(sol[: len(P)]))
    den_to = H.abstract.exponent
    rows = tuple(tuple(_rescale(b.value(u, v), b.den, den_to) for v in lifts) for u in lifts)
    return AlternatingForm(H.abstract, rows)


def enumerate_alternating_forms(
    E: Subgroup | AbelianGroup, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> list[AlternatingForm]:
    """All alternating forms on the abstract basis of ``E``.

    Entry ``(i, j)`` with ``i < j`` runs over multiples of ``1/gcd(d_i, d_j)``,
    in lexicographic order of the upper triangle.
    """
    G = E.abstract if isinstance(E, Subgroup) else E
    d, den = G.factors, G.exponent
    pairs = [(i, j) for i in range(G.rank) for j in range(i + 1, G.rank)]
    grid = [gcd(d[i], d[j]) for i, j in pairs]
    if prod(grid) > limit:
        raise ResourceLimitError(
            f"{prod(grid)} alternating forms on {G} exceed enumeration limit {limit}"
        )
    out = []
    for combo in itertools.product(*(range(g) for g in grid)):
        N = [[0] * G.rank for _ in range(G.rank)]
        for (i, j), k, g in zip(pairs, combo, grid):
            a = k * (den // g)
            N[i][j], N[j][i] = a, -a
        out.append(AlternatingForm(G, N))
    return out


def enumerate_bicharacters(G: AbelianGroup, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[Bicharacter]:
    """Every bicharacter on ``G``; entry ``(i, j)`` runs over ``(1/gcd(n_i, n_j)) Z/Z``."""
    cells = [(i, j) for i in range(G.rank) for j in range(G.rank)]
    grid = [gcd(G.factors[i], G.factors[j]) for i, j in cells]
    if prod(grid) > limit:
        raise ResourceLimitError(
            f"{prod(grid)} bicharacters on {G} exceed enumeration limit {limit}"
        )
    den = G.exponent
    out = []
    for combo in itertools.product(*(range(g) for g in grid)):
        N = [[0] * G.rank for _ in range(G.rank)]
        for (i, j), k, g in zip(cells, combo, grid):
            N[i][j] = k * (den // g)
        out.append(Bicharacter(G, N))
    return out
