"""Fusion rules of module categories over a pointed braided fusion category.

The category ``Vect_A^beta`` (trivial associator) is a :class:`BraidedPointedCategory`.
Its indecomposable module categories are labelled by :class:`SimpleObject`
pairs ``(E, psi)`` with ``E <= A`` and ``psi`` an alternating form on ``E``
standing for a class in ``H^2(E, k^x)``.  The product of two of them is always
``m`` copies of a single simple object, computed by :func:`fuse`.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .abelian import (
    DEFAULT_ENUMERATION_LIMIT,
    _cached_hash,
    AbelianGroup,
    Subgroup,
    canonicalize_subgroup,
    enumerate_subgroups,
    image_under_sum,
    intersect,
)
from .errors import AmbientMismatchError, InternalInvariantError, InvalidFormError
from .forms import (
    AlternatingForm,
    Bicharacter,
    alt_part,
    build_pair_form,
    descend_form,
    enumerate_alternating_forms,
    orthogonal_complement,
    restrict,
    validate_bicharacter,
)

__all__ = [
    "BraidedPointedCategory",
    "FusionResult",
    "FusionSteps",
    "FusionTable",
    "SimpleObject",
    "VerificationReport",
    "dual",
    "enumerate_simples",
    "fuse",
    "fusion_steps",
    "fusion_table",
    "make_simple",
    "unit",
    "verify_ring",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BraidedPointedCategory:
    """``Vect_A^beta`` with trivial associator; ``braiding`` is a bicharacter on ``group``."""

    group: AbelianGroup
    braiding: Bicharacter

    def __post_init__(self):
        if self.braiding.group != self.group:
            raise AmbientMismatchError("braiding must be a bicharacter on the category's group")

    @classmethod
    def from_matrix(cls, factors: Sequence[int], matrix: Sequence[Sequence] | None = None):
        A = AbelianGroup(tuple(factors))
        beta = Bicharacter.zero(A) if matrix is None else validate_bicharacter(A, matrix)
        return cls(A, beta)

    @property
    def associator(self) -> str:
        return "trivial"


@dataclass(frozen=True)
class SimpleObject:
    """The label ``(E, psi)`` of an indecomposable module category."""

    subgroup: Subgroup
    form: AlternatingForm

    def __post_init__(self):
        if not isinstance(self.form, AlternatingForm):
            raise InvalidFormError("the form of a simple object must be alternating")
        if self.form.group.factors != self.subgroup.inv_factors:
            raise InvalidFormError(
                f"form lives on {self.form.group}, subgroup basis has factors {self.subgroup.inv_factors}"
            )

    def __hash__(self):
        return _cached_hash(self, (self.subgroup, self.form))

    @property
    def sort_key(self):
        return (self.subgroup.order, self.subgroup.gen_matrix, self.form.numerators)

    def __str__(self):
        rows = "; ".join(" ".join(str(q) for q in r) for r in self.form.matrix)
        return f"({self.subgroup.abstract} gen {list(self.subgroup.basis_embed)}, [{rows}])"


def make_simple(A: AbelianGroup, gens: Sequence[Sequence[int]], form_matrix=None) -> SimpleObject:
    """Simple object on the subgroup generated by ``gens``.

    ``form_matrix`` is given over the canonical basis of that subgroup;
    ``None`` means the trivial form.
    """
    E = canonicalize_subgroup(A, gens)
    if form_matrix is None:
        form = AlternatingForm.zero(E.abstract)
    else:
        form = AlternatingForm.from_matrix(E.abstract, form_matrix)
    return SimpleObject(E, form)


@dataclass(frozen=True)
class FusionResult:
    multiplicity: int
    simple: SimpleObject

    def __post_init__(self):
        if self.multiplicity < 1:
            raise InternalInvariantError(f"fusion multiplicity {self.multiplicity} < 1")


def unit(C: BraidedPointedCategory) -> SimpleObject:
    E = Subgroup.trivial(C.group)
    return SimpleObject(E, AlternatingForm.zero(E.abstract))


def _check_over(X: SimpleObject, C: BraidedPointedCategory):
    if X.subgroup.ambient != C.group:
        raise AmbientMismatchError(f"{X} does not live over {C.group}")


@lru_cache(maxsize=1 << 14)
def antidiagonal(E: Subgroup, F: Subgroup, G) -> tuple[Subgroup, Subgroup]:
    """Image of ``E & F`` in ``E (+) F`` under ``x -> (x, -x)``, and ``E & F`` itself."""
    I = intersect(E, F)
    gens = []
    for x in I.basis_embed:
        e = E.coords(x)
        f = F.abstract.neg(F.coords(x))
        gens.append(e + f)
    return canonicalize_subgroup(G, gens), I


@dataclass(frozen=True)
class FusionSteps:
    """Intermediate data of one fusion: ``b`` on ``E (+) F``, ``Delta``, ``E & F``, ``K``, ``H``, ``rho``."""

    pair_form: AlternatingForm
    antidiagonal: Subgroup
    intersection: Subgroup
    complement: Subgroup
    image: Subgroup
    form: AlternatingForm
    multiplicity: int


def fusion_steps(X: SimpleObject, Y: SimpleObject, C: BraidedPointedCategory) -> FusionSteps:
    """Run the fusion pipeline and keep every intermediate result."""
    _check_over(X, C)
    _check_over(Y, C)
    return _fuse_pair_form(build_pair_form(X, Y, C.braiding))


def fuse(X: SimpleObject, Y: SimpleObject, C: BraidedPointedCategory) -> FusionResult:
    """``X [] Y = m (H, rho)``.

    ``b`` is the pair form on ``E (+) F``, ``K`` the orthogonal complement of
    the antidiagonal copy of ``E & F``, ``H`` the image of ``K`` under the
    sum map and ``rho`` the descent of ``b|_K``;
    ``m = |K| |E & F| / (|E| |F|)``.

    >>> C = BraidedPointedCategory.from_matrix([3], [["1/3"]])
    >>> V = make_simple(C.group, [(1,)])
    >>> r = fuse(V, V, C)
    >>> r.multiplicity, r.simple == unit(C)
    (1, True)
    """
    st = fusion_steps(X, Y, C)
    return FusionResult(st.multiplicity, SimpleObject(st.image, st.form))


# the pair form determines the rest of the pipeline; sweeps over braidings revisit it often
@lru_cache(maxsize=1 << 16)
def _fuse_pair_form(b: AlternatingForm) -> FusionSteps:
    E, F = b.group.parts
    delta, I = antidiagonal(E, F, b.group)
    K = orthogonal_complement(b, delta)
    H = image_under_sum(K, E.ambient)
    rho = descend_form(b, K, H)
    numer, denom = K.order * I.order, E.order * F.order
    if numer % denom:
        raise InternalInvariantError(
            f"|K||E&F| = {numer} is not divisible by |E||F| = {denom}"
        )
    return FusionSteps(b, delta, I, K, H, rho, numer // denom)


def dual(X: SimpleObject, C: BraidedPointedCategory) -> SimpleObject:
    """``(E, psi) -> (E, -psi + Alt(beta)|_E)``; an involution on simple objects."""
    _check_over(X, C)
    twist = alt_part(restrict(C.braiding, X.subgroup))
    return SimpleObject(X.subgroup, twist - X.form)


def enumerate_simples(
    C: BraidedPointedCategory, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> list[SimpleObject]:
    """Every simple object, unit first, then by subgroup order, gen_matrix and form."""
    out = [
        SimpleObject(E, psi)
        for E in enumerate_subgroups(C.group, limit)
        for psi in enumerate_alternating_forms(E, limit)
    ]
    out.sort(key=lambda s: s.sort_key)
    return out


@dataclass
class FusionTable:
    """``entries[i, j] = (m, k)`` meaning ``catalog[i] [] catalog[j] = m catalog[k]``."""

    category: BraidedPointedCategory
    catalog: list[SimpleObject]
    entries: dict[tuple[int, int], tuple[int, int]]
    _index: dict[SimpleObject, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {s: i for i, s in enumerate(self.catalog)}

    def index(self, X: SimpleObject) -> int:
        try:
            return self._index[X]
        except KeyError:
            raise InternalInvariantError(f"{X} is not in the catalog") from None

    def product(self, i: int, j: int) -> tuple[int, int]:
        return self.entries[i, j]

    def __len__(self):
        return len(self.catalog)


def fusion_table(
    C: BraidedPointedCategory,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    fuse_fn=None,
) -> FusionTable:
    """Fuse every ordered pair of catalog simples; ``fuse_fn`` defaults to :func:`fuse`."""
    fuse_fn = fuse_fn or fuse
    catalog = enumerate_simples(C, limit)
    table = FusionTable(C, catalog, {})
    for i, X in enumerate(catalog):
        for j, Y in enumerate(catalog):
            r = fuse_fn(X, Y, C)
            table.entries[i, j] = (r.multiplicity, table.index(r.simple))
    return table


@dataclass
class VerificationReport:
    """Outcome of :func:`verify_ring`; ``checks`` maps a check name to its failures."""

    checks: dict[str, list[str]]
    size: int
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(self.checks.values())

    def lines(self) -> list[str]:
        return [
            f"{name}: {'pass' if not fails else f'FAIL ({len(fails)})'}"
            for name, fails in self.checks.items()
        ]


_MAX_REPORTED = 20


def verify_ring(
    C: BraidedPointedCategory,
    table: FusionTable | None = None,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> VerificationReport:
    """Check unit laws, associativity, positivity and the dual involution on the full table.

    Each product is a multiple of a single simple, so ``(X [] Y) [] Z`` is
    the pair (m1 * m2, k) read off two table lookups, and likewise for
    ``X [] (Y [] Z)``.
    """
    table = table or fusion_table(C, limit)
    n = len(table)
    checks: dict[str, list[str]] = {
        "unit_laws": [],
        "associativity": [],
        "positivity": [],
        "dual_involution": [],
        "dual_bijection": [],
    }

    def fail(name, msg):
        if len(checks[name]) < _MAX_REPORTED:
            checks[name].append(msg)

    u = table.index(unit(C))
    for i in range(n):
        if table.product(u, i) != (1, i):
            fail("unit_laws", f"I [] #{i} = {table.product(u, i)}")
        if table.product(i, u) != (1, i):
            fail("unit_laws", f"#{i} [] I = {table.product(i, u)}")
    for (i, j), (m, _) in table.entries.items():
        if m < 1:
            fail("positivity", f"#{i} [] #{j} has multiplicity {m}")
    mult = np.zeros((n, n), dtype=object)
    prod_ = np.zeros((n, n), dtype=np.intp)
    for (i, j), (m, k) in table.entries.items():
        mult[i, j], prod_[i, j] = m, k
    # (X Y) Z: lookups at [prod[i, j], k]; X (Y Z): lookups at [i, prod[j, k]]
    ij = prod_[:, :, None]
    jk = prod_[None, :, :]
    ii = np.arange(n)[:, None, None]
    kk = np.arange(n)[None, None, :]
    left = prod_[ij, kk]
    right = prod_[ii, jk]
    m_left = mult[:, :, None] * mult[ij, kk]
    m_right = mult[None, :, :] * mult[ii, jk]
    bad = (left != right) | (m_left != m_right)
    for i, j, k in zip(*np.nonzero(bad)):
        fail(
            "associativity",
            f"(#{i} #{j}) #{k} = {m_left[i, j, k]}#{left[i, j, k]} "
            f"but #{i} (#{j} #{k}) = {m_right[i, j, k]}#{right[i, j, k]}",
        )
    image = []
    for i, X in enumerate(table.catalog):
        D = dual(X, C)
        if D not in table._index:
            fail("dual_bijection", f"dual of #{i} is not in the catalog")
            continue
        image.append(table.index(D))
        if dual(D, C) != X:
            fail("dual_involution", f"dual(dual(#{i})) != #{i}")
    if len(set(image)) != n:
        fail("dual_bijection", "dual is not injective on the catalog")
    notes = [
        "dual(E, psi) = (E, -psi + Alt(beta)|_E); whether this is the left or right "
        "dual is not fixed, only involution and bijectivity are checked"
    ]
    report = VerificationReport(checks, n, notes)
    log.debug("verify_ring on %s: %s", C.group, report.lines())
    return report
