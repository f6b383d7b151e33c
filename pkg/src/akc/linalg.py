"""Exact subspace arithmetic over Q(i).

Vectors are tuples of :class:`~akc.scalar.GaussianRational`.  A
:class:`Subspace` keeps its basis in reduced row echelon form, so two
subspaces are equal exactly when their bases are identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

from . import kernels
from .errors import PreconditionError, StructureError
from .scalar import ONE, ZERO, GaussianRational, as_scalar

Vector = tuple

__all__ = [
    "Matrix",
    "Subspace",
    "QuotientPresentation",
    "rref",
    "kernel",
    "image",
    "sum_spaces",
    "intersect",
    "member",
    "quotient",
    "solve",
]


# -- integer conversion ---------------------------------------------------------------

def _row_to_int(row):
    L = 1
    parts = [z.parts for z in row]
    for _, _, d in parts:
        if d != 1:
            L = lcm(L, d)
    if L == 1:
        return [a for a, _, _ in parts], [b for _, b, _ in parts]
    return [a * (L // d) for a, _, d in parts], [b * (L // d) for _, b, d in parts]


def _rref_rows(rows: Sequence[Sequence[GaussianRational]], ncols: int):
    """Nonzero RREF rows (as tuples) and pivot columns of the row space of ``rows``."""
    if not rows or ncols == 0:
        return [], []
    re_rows, im_rows = [], []
    real = True
    for row in rows:
        a, b = _row_to_int(row)
        re_rows.append(a)
        im_rows.append(b)
        if real and any(b):
            real = False
    re_out, im_out, dens, pivots = kernels.rref_int(re_rows, None if real else im_rows, ncols)
    out = []
    fp = GaussianRational.from_parts
    if im_out is None:
        for row, d in zip(re_out, dens):
            out.append(tuple(fp(a, 0, d) if a else ZERO for a in row))
    else:
        for ra, rb, d in zip(re_out, im_out, dens):
            out.append(tuple(fp(a, b, d) if (a or b) else ZERO for a, b in zip(ra, rb)))
    return out, list(pivots)


def _mat_to_int(rows):
    L = 1
    for row in rows:
        for z in row:
            d = z.parts[2]
            if d != 1:
                L = lcm(L, d)
    re = [[z.parts[0] * (L // z.parts[2]) for z in row] for row in rows]
    real = all(z.parts[1] == 0 for row in rows for z in row)
    im = None if real else [[z.parts[1] * (L // z.parts[2]) for z in row] for row in rows]
    return re, im, L


# -- matrices -------------------------------------------------------------------------

class Matrix:
    """Dense rectangular matrix over Q(i); acts on column vectors."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise StructureError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _trusted(cls, rows, nrows, ncols):
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = nrows
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._trusted(tuple((ZERO,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        if not columns:
            return cls.zeros(nrows, 0)
        cols = [tuple(as_scalar(x) for x in c) for c in columns]
        return cls._trusted(tuple(zip(*cols)) if nrows else (), nrows, len(cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._trusted(tuple(zip(*self.rows)), self.ncols, self.nrows)

    T = property(transpose)

    def conjugate(self) -> "Matrix":
        return Matrix._trusted(tuple(tuple(x.conjugate() for x in r) for r in self.rows), self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.nrows, self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.nrows, self.ncols
        )

    def __neg__(self):
        return Matrix._trusted(tuple(tuple(-a for a in r) for r in self.rows), self.nrows, self.ncols)

    def __mul__(self, scalar) -> "Matrix":
        c = as_scalar(scalar)
        return Matrix._trusted(tuple(tuple(a * c for a in r) for r in self.rows), self.nrows, self.ncols)

    __rmul__ = __mul__

    def _same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise StructureError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise StructureError(f"cannot multiply {self.shape} by {other.shape}")
            return _matmul(self, other)
        vec = tuple(as_scalar(x) for x in other)
        if len(vec) != self.ncols:
            raise StructureError(f"vector of length {len(vec)} for matrix with {self.ncols} columns")
        return self.apply(vec)

    def apply(self, vec: Sequence[GaussianRational]) -> Vector:
        out = []
        for row in self.rows:
            acc = ZERO
            for a, x in zip(row, vec):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.ncols)[0])

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise StructureError("inverse of a non-square matrix")
        n = self.nrows
        aug = [row + tuple(ONE if i == j else ZERO for j in range(n)) for i, row in enumerate(self.rows)]
        red, piv = _rref_rows(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(red) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix._trusted(tuple(r[n:] for r in red[:n]), n, n)

    def det(self) -> GaussianRational:
        if self.nrows != self.ncols:
            raise StructureError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        n = self.nrows
        det = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c]), None)
            if p is None:
                return ZERO
            if p != c:
                a[p], a[c] = a[c], a[p]
                det = -det
            piv = a[c][c]
            det = det * piv
            inv = ONE / piv
            for i in range(c + 1, n):
                f = a[i][c]
                if f:
                    f = f * inv
                    a[i] = [x - f * y if y else x for x, y in zip(a[i], a[c])]
        return det

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.nrows == 0 or B.ncols == 0:
        return Matrix.zeros(A.nrows, B.ncols)
    if A.ncols == 0:
        return Matrix.zeros(A.nrows, B.ncols)
    ar, ai, da = _mat_to_int(A.rows)
    br, bi, db = _mat_to_int(B.rows)
    mm = kernels.matmul_int
    inner = A.ncols
    re = mm(ar, br, inner)
    im = None
    if ai is not None and bi is not None:
        t = mm(ai, bi, inner)
        re = [[x - y for x, y in zip(r, s)] for r, s in zip(re, t)]
        im = [[x + y for x, y in zip(r, s)] for r, s in zip(mm(ar, bi, inner), mm(ai, br, inner))]
    elif ai is not None:
        im = mm(ai, br, inner)
    elif bi is not None:
        im = mm(ar, bi, inner)
    d = da * db
    fp = GaussianRational.from_parts
    if im is None:
        rows = tuple(tuple(fp(x, 0, d) if x else ZERO for x in r) for r in re)
    else:
        rows = tuple(tuple(fp(x, y, d) if (x or y) else ZERO for x, y in zip(r, s)) for r, s in zip(re, im))
    return Matrix._trusted(rows, A.nrows, B.ncols)


def hstack(*mats: Matrix) -> Matrix:
    n = mats[0].nrows
    return Matrix._trusted(tuple(sum((m.rows[i] for m in mats), ()) for i in range(n)), n, sum(m.ncols for m in mats))


def vstack(*mats: Matrix) -> Matrix:
    return Matrix._trusted(sum((m.rows for m in mats), ()), sum(m.nrows for m in mats), mats[0].ncols)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Gauss-Jordan form of ``m`` (zero rows kept at the bottom), pivot columns, rank."""
    red, piv = _rref_rows(m.rows, m.ncols)
    rows = tuple(red) + tuple((ZERO,) * m.ncols for _ in range(m.nrows - len(red)))
    return Matrix._trusted(rows, m.nrows, m.ncols), tuple(piv), len(red)


# -- subspaces ------------------------------------------------------------------------

class Subspace:
    """Subspace of ``Q(i)^ambient_dim`` with a canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis=(), pivots=None, _canonical=False):
        self.ambient_dim = ambient_dim
        if _canonical:
            self.basis = tuple(basis)
            self.pivots = tuple(pivots)
            return
        vecs = [tuple(as_scalar(x) for x in v) for v in basis]
        for v in vecs:
            if len(v) != ambient_dim:
                raise StructureError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, piv = _rref_rows(vecs, ambient_dim)
        self.basis = tuple(red)
        self.pivots = tuple(piv)

    span = classmethod(lambda cls, vectors, ambient_dim: cls(ambient_dim, list(vectors)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), (), _canonical=True)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).rows, range(n), _canonical=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    rank = dim

    def matrix(self) -> Matrix:
        return Matrix._trusted(self.basis, len(self.basis), self.ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise StructureError(f"ambient dimension mismatch {self.ambient_dim} vs {other.ambient_dim}")

    def reduce(self, v: Sequence[GaussianRational]) -> Vector:
        """``v`` minus its component along the basis, i.e. zero on every pivot column."""
        w = list(v)
        for b, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                w = [x - c * y if y else x for x, y in zip(w, b)]
        return tuple(w)

    def contains(self, v: Sequence[GaussianRational]) -> bool:
        if len(v) != self.ambient_dim:
            raise StructureError("vector length does not match ambient dimension")
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence[GaussianRational]) -> Vector:
        """Coefficients of ``v`` in the basis; raises if ``v`` is not in the subspace."""
        if not self.contains(v):
            raise PreconditionError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def combine(self, coeffs: Sequence[GaussianRational]) -> Vector:
        out = [ZERO] * self.ambient_dim
        for c, b in zip(coeffs, self.basis):
            c = as_scalar(c)
            if c:
                out = [x + c * y if y else x for x, y in zip(out, b)]
        return tuple(out)

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_spaces(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def image_under(self, m: Matrix) -> "Subspace":
        return Subspace(m.nrows, [m.apply(b) for b in self.basis])


def kernel(m: Matrix) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    red, piv = _rref_rows(m.rows, m.ncols)
    pivset = set(piv)
    vecs = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for row, p in zip(red, piv):
            if row[f]:
                v[p] = -row[f]
        vecs.append(tuple(v))
    return Subspace(m.ncols, vecs)


def image(m: Matrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace(m.nrows, m.transpose().rows if m.ncols else [])


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if not b.basis:
        return a
    if not a.basis:
        return b
    return Subspace(a.ambient_dim, a.basis + b.basis)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: rows ``[u | u]`` for ``u`` in a and ``[w | 0]`` for ``w`` in b."""
    a._check(b)
    n = a.ambient_dim
    if not a.basis or not b.basis:
        return Subspace.zero(n)
    zero = (ZERO,) * n
    rows = [u + u for u in a.basis] + [w + zero for w in b.basis]
    red, piv = _rref_rows(rows, 2 * n)
    inter = [row[n:] for row, p in zip(red, piv) if p >= n]
    return Subspace(n, inter)


def member(v: Sequence[GaussianRational], a: Subspace) -> bool:
    return a.contains(tuple(as_scalar(x) for x in v))


@dataclass(frozen=True)
class QuotientPresentation:
    """``total / denominator`` with coset representatives vanishing on the denominator's pivots."""

    total: Subspace
    denominator: Subspace
    section: tuple

    @property
    def dim(self) -> int:
        return len(self.section)

    @property
    def ambient_dim(self) -> int:
        return self.total.ambient_dim

    def _section_space(self) -> Subspace:
        return Subspace(self.ambient_dim, self.section, _section_pivots(self.section), _canonical=True)

    def coordinates(self, v: Sequence[GaussianRational]) -> Vector:
        """Coordinates of the class of ``v`` (which must lie in ``total``)."""
        v = tuple(as_scalar(x) for x in v)
        if not self.total.contains(v):
            raise PreconditionError("vector does not lie in the numerator space")
        w = self.denominator.reduce(v)
        return tuple(w[p] for p in _section_pivots(self.section))

    def lift(self, coords: Sequence[GaussianRational]) -> Vector:
        return self._section_space().combine(coords)

    def is_zero_class(self, v: Sequence[GaussianRational]) -> bool:
        return self.denominator.contains(v)

    def class_space(self, vectors: Iterable[Sequence[GaussianRational]]) -> Subspace:
        """Span, in quotient coordinates, of the classes of ``vectors``."""
        return Subspace(self.dim, [self.coordinates(v) for v in vectors])


def _section_pivots(section):
    piv = []
    for v in section:
        piv.append(next(i for i, x in enumerate(v) if x))
    return tuple(piv)


def quotient(a: Subspace, b: Subspace) -> QuotientPresentation:
    a._check(b)
    if not b.is_subspace_of(a):
        raise PreconditionError("quotient denominator is not contained in the numerator")
    reduced = [b.reduce(u) for u in a.basis]
    sec = Subspace(a.ambient_dim, reduced)
    if sec.dim != a.dim - b.dim:
        raise AssertionError("section dimension mismatch")
    return QuotientPresentation(a, b, sec.basis)


def solve(m: Matrix, rhs: Sequence[GaussianRational]):
    """A solution ``x`` of ``m x = rhs`` with all free variables set to zero, or ``None``.

    Among the solutions this is the one supported on pivot columns: the
    deterministic choice used wherever a primitive is needed.
    """
    rhs = tuple(as_scalar(x) for x in rhs)
    if len(rhs) != m.nrows:
        raise StructureError("right-hand side length does not match matrix rows")
    aug = [row + (c,) for row, c in zip(m.rows, rhs)]
    red, piv = _rref_rows(aug, m.ncols + 1)
    if piv and piv[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for row, p in zip(red, piv):
        x[p] = row[m.ncols]
    return tuple(x)
