"""Cohomological properties of an invariant complex carrying ``J``, ``omega`` and ``g``.

Every statement here is about the finite-dimensional complex of invariant forms.
Reading it as a statement about the compact quotient needs the invariant complex
to compute de Rham cohomology; :func:`provenance` records how well that is known.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cealgebra import CEComplex, CohomologyClass, MasseyResult, ValidationReport, induced_wedge_map, massey_triple
from .errors import PreconditionError, StructureError
from .exterior import Form, basis, coordinates, from_coordinates, wedge
from .geometry import (
    AlmostComplexStructure,
    AlmostKahlerTriple,
    Metric,
    SymplecticForm,
    codifferentials,
    integrability_check,
    real_type_space,
    type_pairs,
)
from .linalg import Matrix, Subspace, kernel, vstack
from .scalar import ZERO

__all__ = [
    "TypeSet",
    "PureTypeSubgroup",
    "PureFullResult",
    "HarmonicBasis",
    "LefschetzResult",
    "FormalityResult",
    "BalancedResult",
    "BoundsResult",
    "StructureAnalysis",
    "AnalysisReport",
    "subgroup",
    "h_plus",
    "h_minus",
    "pure_full",
    "harmonic_space",
    "has_pure_type_basis",
    "lefschetz_type_property",
    "hard_lefschetz",
    "geometric_formality",
    "balanced_check",
    "bounds_check",
    "provenance",
    "analyze_structure",
]


@dataclass(frozen=True)
class TypeSet:
    """A swap-closed set of bidegrees ``(p, q)`` with ``p + q = degree``."""

    degree: int
    pairs: frozenset

    def __init__(self, degree: int, pairs: Iterable[tuple[int, int]]):
        pairs = frozenset((int(p), int(q)) for p, q in pairs)
        for p, q in pairs:
            if p + q != degree:
                raise PreconditionError(f"bidegree ({p},{q}) does not have total degree {degree}")
            if (q, p) not in pairs:
                raise PreconditionError(f"type set is not swap-closed: ({q},{p}) missing")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "pairs", pairs)

    def label(self) -> str:
        return ",".join(f"({p},{q})" for p, q in sorted(self.pairs, reverse=True))


PLUS = TypeSet(2, [(1, 1)])
MINUS = TypeSet(2, [(2, 0), (0, 2)])


@dataclass(frozen=True)
class PureTypeSubgroup:
    type_set: TypeSet
    space: Subspace
    representatives: tuple

    @property
    def dim(self) -> int:
        return self.space.dim


def _closed_of_type(c: CEComplex, J: AlmostComplexStructure, s: TypeSet) -> Subspace:
    return c.cocycles(s.degree) & real_type_space(J, s.degree, s.pairs)


def subgroup(c: CEComplex, J: AlmostComplexStructure, s: TypeSet) -> PureTypeSubgroup:
    """Classes with a closed real representative whose bidegrees lie in ``s``."""
    r = s.degree
    H = c.cohomology(r)
    Z = _closed_of_type(c, J, s)
    space = Subspace.zero(H.dim)
    reps = []
    # Greedy pass over the RREF basis of Z^S keeps a representative for each new class.
    for v in Z.basis:
        grown = space + Subspace(H.dim, [H.coordinates(v)])
        if grown.dim > space.dim:
            space = grown
            reps.append(from_coordinates(c.dim, r, v))
    return PureTypeSubgroup(s, space, tuple(reps))


def h_plus(c: CEComplex, J: AlmostComplexStructure) -> int:
    return subgroup(c, J, PLUS).dim


def h_minus(c: CEComplex, J: AlmostComplexStructure) -> int:
    return subgroup(c, J, MINUS).dim


@dataclass(frozen=True)
class PureFullResult:
    degree: int
    pure: bool
    full: bool
    subgroups: tuple
    # (i, j, class coordinates, representative) for each non-trivial pairwise intersection
    intersection_witnesses: tuple = ()
    # a class (coordinates, representative) outside the sum, when not full
    missing_witness: tuple | None = None


def pure_full(c: CEComplex, J: AlmostComplexStructure, degree: int, partition: Sequence[Iterable] | None = None) -> PureFullResult:
    n = c.dim // 2
    parts = [TypeSet(degree, p) for p in (partition if partition is not None else type_pairs(degree, n))]
    groups = tuple(subgroup(c, J, s) for s in parts)
    H = c.cohomology(degree)
    witnesses = []
    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            meet = groups[i].space & groups[j].space
            if meet.dim:
                v = meet.basis[0]
                witnesses.append((i, j, v, c.representative(degree, v)))
    total = Subspace.zero(H.dim)
    for g in groups:
        total = total + g.space
    missing = None
    if total.dim < H.dim:
        for k in range(H.dim):
            e = tuple(ZERO if t != k else ZERO + 1 for t in range(H.dim))
            if not total.contains(e):
                missing = (e, c.representative(degree, e))
                break
    return PureFullResult(degree, not witnesses, total.dim == H.dim, groups, tuple(witnesses), missing)


# -- harmonic forms ---------------------------------------------------------------------

def _harmonic(c: CEComplex, g: Metric, k: int, cd=None) -> Subspace:
    cd = cd or codifferentials(c, g)
    D = c.d_matrix(k)
    blocks = [m for m in (D, cd.delta_g(k)) if m.nrows]
    if not blocks:
        return Subspace.full(len(basis(c.dim, k)))
    return kernel(vstack(*blocks))


def harmonic_space(c: CEComplex, g: Metric, k: int) -> Subspace:
    """``ker d`` intersected with ``ker delta_g`` in ``Lambda^k``."""
    return _harmonic(c, g, k)


@dataclass(frozen=True)
class HarmonicBasis:
    degree: int
    exists: bool
    # (type label, form) pairs; a basis of the harmonic space when ``exists``
    basis: tuple


def has_pure_type_basis(c: CEComplex, g: Metric, J: AlmostComplexStructure, k: int) -> HarmonicBasis:
    """Whether the harmonic ``k``-forms are spanned by harmonic forms of pure type."""
    Hk = harmonic_space(c, g, k)
    total = Subspace.zero(Hk.ambient_dim)
    out = []
    for pairs in type_pairs(k, c.dim // 2):
        s = TypeSet(k, pairs)
        piece = Hk & real_type_space(J, k, s.pairs)
        total = total + piece
        out.extend((s.label(), from_coordinates(c.dim, k, v)) for v in piece.basis)
    return HarmonicBasis(k, total.dim == Hk.dim, tuple(out))


@dataclass(frozen=True)
class LefschetzResult:
    holds: bool
    witness: Form | None = None
    image: Form | None = None


def lefschetz_type_property(c: CEComplex, triple: AlmostKahlerTriple) -> LefschetzResult:
    """``omega^(n-2) ^ .`` maps harmonic 2-forms to harmonic ``(2n-2)``-forms."""
    n = c.dim // 2
    if n < 2:
        return LefschetzResult(True)
    g, w = triple.g, triple.omega
    cd = codifferentials(c, g)
    src = _harmonic(c, g, 2, cd)
    tgt = _harmonic(c, g, 2 * n - 2, cd)
    L = w.power(n - 2)
    for v in src.basis:
        a = from_coordinates(c.dim, 2, v)
        img = wedge(L, a)
        vec = coordinates(img) if img.terms else [ZERO] * tgt.ambient_dim
        if not tgt.contains(vec):
            return LefschetzResult(False, a, img)
    return LefschetzResult(True)


def hard_lefschetz(c: CEComplex, w: SymplecticForm) -> list[tuple[int, bool]]:
    """``(k, bijective)`` for ``[omega]^k: H^(n-k) -> H^(n+k)``, ``k = 1..n``."""
    if not c.is_closed(w.omega):
        raise PreconditionError("omega is not closed")
    n = c.dim // 2
    out = []
    for k in range(1, n + 1):
        m = induced_wedge_map(c, w.power(k), n - k)
        out.append((k, m.nrows == m.ncols and m.rank() == m.ncols))
    return out


@dataclass(frozen=True)
class FormalityResult:
    holds: bool
    # ((j, a), (k, b)) for the first pair whose product is not harmonic
    witness: tuple | None = None


def geometric_formality(c: CEComplex, g: Metric) -> FormalityResult:
    """Products of harmonic basis forms checked in every degree pair ``j <= k``, ``j + k <= dim``."""
    cd = codifferentials(c, g)
    N = c.dim
    spaces = [_harmonic(c, g, k, cd) for k in range(N + 1)]
    forms = [[from_coordinates(N, k, v) for v in spaces[k].basis] for k in range(N + 1)]
    for j in range(N + 1):
        for k in range(j, N + 1 - j):
            for ia, a in enumerate(forms[j]):
                for ib, b in enumerate(forms[k]):
                    if j == k and ib < ia:
                        continue
                    p = wedge(a, b)
                    if p.terms and not spaces[j + k].contains(coordinates(p)):
                        return FormalityResult(False, ((j, a), (k, b)))
    return FormalityResult(True)


@dataclass(frozen=True)
class BalancedResult:
    form: Form
    d_nonzero: bool
    d_of_power_zero: bool


def balanced_check(c: CEComplex, J: AlmostComplexStructure, h: Form) -> BalancedResult:
    """``d h`` and ``d(h^(n-1))`` for a positive real ``(1,1)``-form ``h``."""
    N = c.dim
    if h.degree != 2 or not h.is_real():
        raise PreconditionError("h must be a real 2-form")
    if J.act(h) != h:
        raise PreconditionError("h is not of type (1,1)")
    W = [[ZERO] * N for _ in range(N)]
    for (i, j), x in h.terms.items():
        W[i - 1][j - 1] = x
        W[j - 1][i - 1] = -x
    try:
        Metric(Matrix(W) @ J.matrix)
    except StructureError as exc:
        raise PreconditionError(f"h(., J.) is not positive-definite: {exc}") from None
    power = Form.constant(N, 1)
    for _ in range(N // 2 - 1):
        power = wedge(power, h)
    return BalancedResult(h, bool(c.d(h).terms), not c.d(power).terms)


@dataclass(frozen=True)
class BoundsResult:
    h_minus: int
    h_plus: int
    h_minus_bound: int
    h_plus_bound: int

    @property
    def h_minus_ok(self) -> bool:
        return self.h_minus <= self.h_minus_bound

    @property
    def h_plus_ok(self) -> bool:
        return self.h_plus <= self.h_plus_bound


def bounds_check(c: CEComplex, J: AlmostComplexStructure) -> BoundsResult:
    n = c.dim // 2
    return BoundsResult(h_minus(c, J), h_plus(c, J), n * (n - 1), n * n)


def provenance(flags: ValidationReport) -> str:
    """How the invariant numbers relate to the de Rham cohomology of a compact quotient."""
    if flags.nilpotent:
        return "invariant complex; equals de Rham cohomology of any nilmanifold quotient (Nomizu)"
    if flags.completely_solvable_hint == "yes":
        return "invariant complex; equals de Rham cohomology if completely solvable (Hattori), sampled spectra are real"
    return "invariant complex only; identification with de Rham cohomology not established"


# -- report assembly --------------------------------------------------------------------

@dataclass
class StructureAnalysis:
    label: str
    h_plus: int
    h_minus: int
    pure: bool
    full: bool
    purity_degree4: bool | None
    purity_degree4_witness: Form | None
    full_witness: Form | None
    integrable: bool
    bounds: BoundsResult
    lefschetz2: LefschetzResult | None = None
    hard_lefschetz: list | None = None
    harmonic_pure_basis: HarmonicBasis | None = None
    massey: list = field(default_factory=list)
    balanced: list = field(default_factory=list)
    formality: FormalityResult | None = None
    requested: PureFullResult | None = None


@dataclass
class AnalysisReport:
    algebra: str
    dim: int
    flags: ValidationReport
    betti: list
    structures: list
    provenance: str
    params: dict = field(default_factory=dict)


def analyze_structure(
    c: CEComplex,
    J: AlmostComplexStructure,
    omega: SymplecticForm | None = None,
    g: Metric | None = None,
    label: str = "J",
    massey: Sequence[tuple] = (),
    balanced: Sequence[tuple] = (),
    degree: int | None = None,
) -> StructureAnalysis:
    """All per-structure verdicts.

    ``massey`` holds ``(a, b, c)`` triples of closed forms; ``balanced`` holds
    ``(J', h)`` pairs, since a balanced candidate may use its own complex structure.
    Items needing ``omega`` or ``g`` are left ``None`` when those are absent.
    ``degree`` adds a pure/full verdict for that degree and its full type partition.
    """
    if degree is not None and not 0 <= degree <= c.dim:
        raise PreconditionError(f"degree {degree} is outside 0..{c.dim}")
    deg2 = pure_full(c, J, 2)
    d4 = None
    d4_witness = None
    if c.dim >= 4:
        deg4 = pure_full(c, J, 4)
        d4 = deg4.pure
        if deg4.intersection_witnesses:
            d4_witness = deg4.intersection_witnesses[0][3]
    bounds = bounds_check(c, J)
    dims = {grp.type_set: grp.dim for grp in deg2.subgroups}
    out = StructureAnalysis(
        label=label,
        h_plus=dims.get(PLUS, 0),
        h_minus=dims.get(MINUS, 0),
        pure=deg2.pure,
        full=deg2.full,
        purity_degree4=d4,
        purity_degree4_witness=d4_witness,
        full_witness=deg2.missing_witness[1] if deg2.missing_witness else None,
        integrable=integrability_check(c.algebra, J),
        bounds=bounds,
    )
    if omega is not None:
        triple = AlmostKahlerTriple(J, omega, g)
        g = triple.g
        out.lefschetz2 = lefschetz_type_property(c, triple)
        out.hard_lefschetz = hard_lefschetz(c, omega)
    if g is not None:
        out.harmonic_pure_basis = has_pure_type_basis(c, g, J, 2)
        out.formality = geometric_formality(c, g)
    if degree is not None:
        out.requested = pure_full(c, J, degree)
    for a, b, cc in massey:
        out.massey.append(massey_triple(c.cls(a), c.cls(b), c.cls(cc)))
    for Jb, h in balanced:
        out.balanced.append(balanced_check(c, Jb, h))
    return out
