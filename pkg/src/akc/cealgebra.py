"""Lie algebras given by structure equations and their Chevalley-Eilenberg complexes.

The differential is fixed on degree one by ``d1[k-1] = d e^k`` and extended to
the whole exterior algebra by the graded Leibniz rule.  Brackets are recovered
with the convention ``d e^k (X, Y) = -e^k([X, Y])``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import _poly
from .errors import InvalidAlgebraError, PreconditionError, StructureError
from .exterior import Form, basis, coordinates, from_coordinates, generator, wedge
from .linalg import Matrix, QuotientPresentation, Subspace, image, kernel, quotient, solve
from .scalar import ONE, ZERO

__all__ = [
    "LieAlgebra",
    "CEComplex",
    "CohomologyClass",
    "MasseyResult",
    "ValidationReport",
    "validate",
    "cup",
    "induced_wedge_map",
    "massey_triple",
]


class LieAlgebra:
    """``dim``-dimensional Lie algebra presented by ``d e^k`` for ``k = 1..dim``."""

    def __init__(self, dim: int, d1: Sequence[Form], name: str = "g"):
        d1 = list(d1) + [Form.zero(dim, 2)] * (dim - len(d1))
        if len(d1) != dim:
            raise StructureError(f"{len(d1)} structure equations for dimension {dim}")
        for k, f in enumerate(d1, 1):
            if f.dim != dim or (f.terms and f.degree != 2):
                raise StructureError(f"d e{k} must be a 2-form in dimension {dim}")
            if not f.is_real():
                raise StructureError(f"d e{k} is not a real form")
        self.dim = dim
        self.d1 = tuple(f if f.terms else Form.zero(dim, 2) for f in d1)
        self.name = name

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def differential(self, a: Form) -> Form:
        if a.dim != self.dim:
            raise StructureError("form does not belong to this algebra")
        out = Form.zero(self.dim, a.degree + 1)
        for key, coeff in a.terms.items():
            for j, k in enumerate(key):
                dk = self.d1[k - 1]
                if not dk.terms:
                    continue
                left = Form(self.dim, j, {key[:j]: ONE})
                right = Form(self.dim, len(key) - j - 1, {key[j + 1:]: ONE})
                term = wedge(left, dk, right) * coeff
                out = out - term if j % 2 else out + term
        return out

    d = differential

    # -- brackets ------------------------------------------------------------------
    @cached_property
    def structure_constants(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """``[e_i, e_j] = sum_k c[(i, j)][k] e_k`` for ``i < j`` (1-based)."""
        out: dict[tuple[int, int], dict[int, Fraction]] = {}
        for k, f in enumerate(self.d1, 1):
            for (i, j), c in f.terms.items():
                out.setdefault((i, j), {})[k] = -c.real
        return out

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        """Bracket of two vectors given by coordinates in the frame ``e_1..e_n``."""
        out = [Fraction(0)] * self.dim
        for (i, j), comps in self.structure_constants.items():
            coef = Fraction(x[i - 1]) * Fraction(y[j - 1]) - Fraction(x[j - 1]) * Fraction(y[i - 1])
            if coef:
                for k, c in comps.items():
                    out[k - 1] += coef * c
        return tuple(out)

    def ad(self, x: Sequence) -> list[list[Fraction]]:
        """Matrix of ``ad_x`` (column ``j`` is ``[x, e_j]``)."""
        n = self.dim
        cols = [self.bracket(x, _unit(n, j)) for j in range(n)]
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def _bracket_space(self, a: Subspace, b: Subspace) -> Subspace:
        vecs = []
        for x in a.basis:
            xr = [z.real for z in x]
            for y in b.basis:
                vecs.append(self.bracket(xr, [z.real for z in y]))
        return Subspace(self.dim, vecs)

    def lower_central_series(self) -> list[Subspace]:
        series = [Subspace.full(self.dim)]
        while series[-1].dim:
            nxt = self._bracket_space(Subspace.full(self.dim), series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def derived_series(self) -> list[Subspace]:
        series = [Subspace.full(self.dim)]
        while series[-1].dim:
            nxt = self._bracket_space(series[-1], series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def change_coframe(self, A: Matrix, name: str | None = None) -> "LieAlgebra":
        """The same algebra in the coframe ``f^k = sum_j A[k][j] e^j``."""
        to_new = coframe_images(A.inverse())
        d1 = []
        for k in range(self.dim):
            df = Form.zero(self.dim, 2)
            for j in range(self.dim):
                c = A.rows[k][j]
                if c:
                    df = df + self.d1[j] * c
            d1.append(_substitute(df, to_new))
        return LieAlgebra(self.dim, d1, name or self.name)


def coframe_images(B: Matrix) -> list[Form]:
    """Degree-1 images ``e^j -> sum_m B[j][m] f^m`` used to rewrite forms in a new coframe."""
    n = B.nrows
    return [Form(n, 1, {(m + 1,): B.rows[j][m] for m in range(n)}) for j in range(n)]


def _substitute(form, images):
    from .exterior import substitute

    return substitute(form, images)


def _unit(n, j):
    v = [0] * n
    v[j] = 1
    return v


@dataclass(frozen=True)
class ValidationReport:
    jacobi_ok: bool
    unimodular: bool
    nilpotent: bool
    solvable: bool
    completely_solvable_hint: str

    def as_dict(self) -> dict:
        return {
            "jacobi": self.jacobi_ok,
            "unimodular": self.unimodular,
            "nilpotent": self.nilpotent,
            "solvable": self.solvable,
            "completely_solvable_hint": self.completely_solvable_hint,
        }


def check_jacobi(algebra: LieAlgebra) -> None:
    for k in range(1, algebra.dim + 1):
        dd = algebra.differential(algebra.d1[k - 1])
        if dd.terms:
            raise InvalidAlgebraError(f"d(d e{k}) = {dd} != 0: Jacobi identity fails", index=k, value=dd)


def validate(algebra: LieAlgebra, samples: int = 20) -> ValidationReport:
    """Jacobi identity (raises on failure) and the structural flags of the algebra."""
    check_jacobi(algebra)
    n = algebra.dim
    unimodular = all(sum(algebra.ad(_unit(n, j))[i][i] for i in range(n)) == 0 for j in range(n))
    nilpotent = algebra.lower_central_series()[-1].dim == 0
    solvable = algebra.derived_series()[-1].dim == 0
    if nilpotent:
        hint = "yes"
    elif not solvable:
        hint = "no"
    else:
        hint = "yes" if _real_spectra(algebra, samples) else "no"
    return ValidationReport(True, unimodular, nilpotent, solvable, hint)


def _real_spectra(algebra: LieAlgebra, samples: int) -> bool:
    n = algebra.dim
    rng = random.Random(20120601)
    probes = [_unit(n, j) for j in range(n)]
    probes += [[rng.randint(-3, 3) for _ in range(n)] for _ in range(samples)]
    return all(_poly.all_roots_real(_poly.charpoly(algebra.ad(x))) for x in probes)


# -- the complex ----------------------------------------------------------------------

class CEComplex:
    """The cochain complex of invariant forms with its per-degree differential matrices."""

    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        self.dim = algebra.dim
        n = algebra.dim
        mats = []
        for k in range(n + 1):
            cols = [coordinates(algebra.differential(Form(n, k, {key: ONE}))) for key in basis(n, k)]
            mats.append(Matrix.from_columns(cols, len(basis(n, k + 1))) if cols else Matrix.zeros(0, 0))
        self.d_matrices = tuple(mats)
        self._cache: dict = {}

    def __repr__(self):
        return f"CEComplex({self.algebra.name!r})"

    def d(self, a: Form) -> Form:
        return self.algebra.differential(a)

    differential = d

    def d_matrix(self, k: int) -> Matrix:
        """Matrix of ``d: Lambda^k -> Lambda^(k+1)`` in lexicographic bases."""
        if k < 0:
            return Matrix.zeros(len(basis(self.dim, 0)), 0)
        return self.d_matrices[k]

    def cocycles(self, k: int) -> Subspace:
        key = ("Z", k)
        if key not in self._cache:
            m = self.d_matrices[k]
            self._cache[key] = kernel(m) if m.ncols else Subspace.full(len(basis(self.dim, k)))
        return self._cache[key]

    def coboundaries(self, k: int) -> Subspace:
        key = ("B", k)
        if key not in self._cache:
            if k == 0:
                sp = Subspace.zero(1)
            else:
                sp = image(self.d_matrices[k - 1])
            self._cache[key] = sp
        return self._cache[key]

    def cohomology(self, k: int) -> QuotientPresentation:
        key = ("H", k)
        if key not in self._cache:
            self._cache[key] = quotient(self.cocycles(k), self.coboundaries(k))
        return self._cache[key]

    def betti(self) -> list[int]:
        return [self.cohomology(k).dim for k in range(self.dim + 1)]

    def is_closed(self, a: Form) -> bool:
        return not self.d(a).terms

    def is_exact(self, a: Form) -> bool:
        return self.coboundaries(a.degree).contains(coordinates(a))

    def cls(self, a: Form) -> "CohomologyClass":
        return CohomologyClass(a.degree, a, self)

    def class_coordinates(self, a: Form) -> tuple:
        if not self.is_closed(a):
            raise PreconditionError(f"form {a} is not closed")
        return self.cohomology(a.degree).coordinates(coordinates(a))

    def class_basis(self, k: int) -> list["CohomologyClass"]:
        """Classes of the deterministic section representatives of ``H^k``."""
        return [self.cls(from_coordinates(self.dim, k, v)) for v in self.cohomology(k).section]

    def representative(self, k: int, coords) -> Form:
        return from_coordinates(self.dim, k, self.cohomology(k).lift(coords))

    def primitive(self, a: Form) -> Form:
        """The least-lex ``x`` with ``d x = a`` (free coordinates set to zero)."""
        k = a.degree
        if k == 0:
            if a.terms:
                raise PreconditionError("a nonzero constant is never exact")
            return Form.zero(self.dim, -1)
        x = solve(self.d_matrices[k - 1], coordinates(a))
        if x is None:
            raise PreconditionError(f"form {a} is not exact")
        return from_coordinates(self.dim, k - 1, x)


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    degree: int
    representative: Form
    complex: CEComplex = field(repr=False)

    def __post_init__(self):
        if self.representative.terms and self.representative.degree != self.degree:
            raise StructureError("representative degree mismatch")
        if not self.complex.is_closed(self.representative):
            raise PreconditionError(f"representative {self.representative} is not closed")

    @property
    def coordinates(self) -> tuple:
        return self.complex.class_coordinates(self.representative)

    def is_zero(self) -> bool:
        return self.complex.is_exact(self.representative)

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        if other.complex is not self.complex or other.degree != self.degree:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.degree, self.coordinates))

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        return CohomologyClass(self.degree, _as_degree(self.representative + other.representative, self.degree), self.complex)

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return CohomologyClass(self.degree, _as_degree(self.representative - other.representative, self.degree), self.complex)

    def __mul__(self, c) -> "CohomologyClass":
        return CohomologyClass(self.degree, _as_degree(self.representative * c, self.degree), self.complex)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1


def _as_degree(f: Form, k: int) -> Form:
    return f if f.terms else Form.zero(f.dim, k)


def cup(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    if a.complex is not b.complex:
        raise StructureError("classes live in different complexes")
    rep = wedge(a.representative, b.representative)
    return CohomologyClass(a.degree + b.degree, _as_degree(rep, a.degree + b.degree), a.complex)


def induced_wedge_map(c: CEComplex, w: Form, k: int) -> Matrix:
    """Matrix of ``[w] cup . : H^k -> H^(k+|w|)`` in the section coordinates."""
    if not c.is_closed(w):
        raise PreconditionError(f"{w} is not closed")
    src = c.cohomology(k)
    tgt_deg = k + w.degree
    if tgt_deg > c.dim:
        return Matrix.zeros(0, src.dim)
    tgt = c.cohomology(tgt_deg)
    cols = []
    for v in src.section:
        img = wedge(w, from_coordinates(c.dim, k, v))
        cols.append(tgt.coordinates(coordinates(img) if img.terms else [ZERO] * tgt.ambient_dim))
    return Matrix.from_columns(cols, tgt.dim)


@dataclass(frozen=True)
class MasseyResult:
    """``<a, b, c>`` as a coset ``representative + indeterminacy`` in ``H^degree``."""

    degree: int
    representative: Form
    class_coordinates: tuple
    indeterminacy: Subspace
    vanishes: bool
    primitives: tuple

    def contains(self, c: CEComplex, form: Form) -> bool:
        """Whether the class of the closed ``form`` lies in the coset."""
        coords = c.class_coordinates(form)
        diff = tuple(x - y for x, y in zip(coords, self.class_coordinates))
        return self.indeterminacy.contains(diff)


def massey_triple(a: CohomologyClass, b: CohomologyClass, cc: CohomologyClass, x: Form | None = None, y: Form | None = None) -> MasseyResult:
    """Triple Massey product with the sign convention ``[x c - (-1)^|a| a y]``.

    ``x`` and ``y`` default to the least-lex primitives of ``a b`` and ``b c``;
    explicit primitives may be passed to probe choice independence.
    """
    comp = a.complex
    ab = wedge(a.representative, b.representative)
    bc = wedge(b.representative, cc.representative)
    if not comp.is_exact(ab) or not comp.is_exact(bc):
        raise PreconditionError("Massey product undefined: a cup b or b cup c is nonzero")
    if x is None:
        x = comp.primitive(ab)
    elif comp.d(x) != ab:
        raise PreconditionError("x is not a primitive of a^b")
    if y is None:
        y = comp.primitive(bc)
    elif comp.d(y) != bc:
        raise PreconditionError("y is not a primitive of b^c")
    deg = a.degree + b.degree + cc.degree - 1
    sign = -1 if a.degree % 2 else 1
    rep = wedge(x, cc.representative) - wedge(a.representative, y) * sign
    rep = _as_degree(rep, deg)
    n = comp.dim
    if deg > n:
        return MasseyResult(deg, rep, (), Subspace.zero(0), True, (x, y))
    coords = comp.class_coordinates(rep)
    target = comp.cohomology(deg)
    vecs = []
    for h in comp.class_basis(b.degree + cc.degree - 1):
        vecs.append(wedge(a.representative, h.representative))
    for h in comp.class_basis(a.degree + b.degree - 1):
        vecs.append(wedge(h.representative, cc.representative))
    indet = target.class_space(coordinates(v) if v.terms else [ZERO] * target.ambient_dim for v in vecs)
    vanishes = indet.contains(coords)
    return MasseyResult(deg, rep, coords, indet, vanishes, (x, y))
