"""Almost-complex, symplectic and metric structures on invariant forms, and their operators.

Conventions used throughout:

* ``J`` is a matrix acting on the frame ``e_1..e_n`` (column ``i`` is
  ``J e_i``).  It acts on forms by ``(J a)(X1, ..., Xk) = a(J X1, ..., J Xk)``,
  so on the coframe ``J e^k = sum_i J[k][i] e^i`` and ``(1,0)``-forms are the
  ``+i`` eigenvectors.
* ``omega`` has Gram matrix ``W[i][j] = omega(e_i, e_j)``; its inverse extends
  to ``Lambda^k`` by Gram determinants of ``W^-1``.
* ``g`` has Gram matrix ``G[i][j] = g(e_i, e_j)``; the almost-Kaehler metric
  is ``g = omega(., J .)``, i.e. ``G = W J``.
* Orientation: ``vol = sqrt(det G) e^{1...n}``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, isqrt
from typing import Iterable, Sequence

from .cealgebra import CEComplex, LieAlgebra
from .errors import PreconditionError, StructureError
from .exterior import (
    Form,
    basis,
    basis_index,
    coordinates,
    from_coordinates,
    merge_sign,
    substitute,
    top_form,
    wedge,
)
from .linalg import Matrix, Subspace, kernel
from .scalar import I, ONE, ZERO, GaussianRational, as_scalar

__all__ = [
    "AlmostComplexStructure",
    "OneZeroCoframe",
    "SymplecticForm",
    "Metric",
    "AlmostKahlerTriple",
    "onezero_coframe",
    "bidegree_components",
    "integrability_check",
    "hodge_star",
    "symplectic_star",
    "codifferentials",
    "Codifferentials",
    "lefschetz_operator",
    "LefschetzOperator",
    "exterior_power",
    "compatible_complex_structure",
    "type_pairs",
]


def _images_from_matrix(A: Matrix) -> list[Form]:
    """Degree-1 forms ``e^j -> sum_m A[m][j] e^m`` (column ``j`` of ``A``)."""
    n = A.nrows
    return [Form(n, 1, {(m + 1,): A.rows[m][j] for m in range(n)}) for j in range(A.ncols)]


def exterior_power(A: Matrix, k: int) -> Matrix:
    """``Lambda^k A``: entry ``[I][K]`` is the minor ``det A[I, K]`` (lexicographic bases)."""
    n = A.nrows
    images = _images_from_matrix(A)
    cols = [coordinates(substitute(Form(n, k, {key: ONE}), images)) for key in basis(n, k)]
    return Matrix.from_columns(cols, len(basis(n, k)))


def _form_matrix(dim: int, k_from: int, k_to: int, fn) -> Matrix:
    cols = []
    for key in basis(dim, k_from):
        out = fn(Form(dim, k_from, {key: ONE}))
        cols.append(coordinates(out) if out.terms else [ZERO] * len(basis(dim, k_to)))
    return Matrix.from_columns(cols, len(basis(dim, k_to)))


def _apply(m: Matrix, a: Form, k_to: int) -> Form:
    return from_coordinates(a.dim, k_to, m.apply(coordinates(a)))


@lru_cache(maxsize=None)
def _complement_signs(dim: int, k: int):
    """For each degree-k index I: (position of the complement, sign of e^I ^ e^{I^c})."""
    full = tuple(range(1, dim + 1))
    idx = basis_index(dim, dim - k)
    out = []
    for key in basis(dim, k):
        comp = tuple(x for x in full if x not in key)
        out.append((idx[comp], merge_sign(key, comp)))
    return tuple(out)


# -- almost-complex structures ----------------------------------------------------------

class AlmostComplexStructure:
    def __init__(self, matrix: Matrix):
        n = matrix.nrows
        if matrix.ncols != n or n % 2:
            raise StructureError("J must be a square matrix of even size")
        if any(not x.is_real() for row in matrix.rows for x in row):
            raise StructureError("J must have real entries")
        if matrix @ matrix != -Matrix.identity(n):
            raise StructureError("J^2 != -Id")
        self.matrix = matrix
        self.dim = n

    @classmethod
    def from_coframe_action(cls, images: Sequence[Form]) -> "AlmostComplexStructure":
        """``images[k-1] = J e^k`` as degree-1 forms."""
        return cls(Matrix([coordinates(f) for f in images]))

    @classmethod
    def from_frame_action(cls, columns: Sequence[Sequence]) -> "AlmostComplexStructure":
        """``columns[i-1]`` = coordinates of ``J e_i``."""
        return cls(Matrix.from_columns(columns, len(columns)))

    def __eq__(self, other):
        return isinstance(other, AlmostComplexStructure) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    @cached_property
    def coframe_images(self) -> list[Form]:
        n = self.dim
        return [Form(n, 1, {(i + 1,): self.matrix.rows[k][i] for i in range(n)}) for k in range(n)]

    def act(self, a: Form) -> Form:
        """``(J a)(X1..Xk) = a(J X1, ..., J Xk)``."""
        return substitute(a, self.coframe_images)

    @lru_cache(maxsize=None)
    def matrix_on(self, k: int) -> Matrix:
        return exterior_power(self.matrix.transpose(), k)

    def change_coframe(self, A: Matrix) -> "AlmostComplexStructure":
        """The same endomorphism written in the coframe ``f = A e``."""
        # frame coordinates transform by v' = A v
        return AlmostComplexStructure(A @ self.matrix @ A.inverse())

    @cached_property
    def coframe(self) -> "OneZeroCoframe":
        return onezero_coframe(self)

    @cached_property
    def _bigrading(self):
        return _Bigrading(self)


class OneZeroCoframe:
    def __init__(self, phis: Sequence[Form]):
        self.phis = tuple(phis)

    def __iter__(self):
        return iter(self.phis)

    def __len__(self):
        return len(self.phis)

    def __getitem__(self, i):
        return self.phis[i]

    def span(self) -> Subspace:
        n = self.phis[0].dim
        return Subspace(n, [coordinates(p) for p in self.phis])


def onezero_coframe(J: AlmostComplexStructure) -> OneZeroCoframe:
    """RREF basis of ``ker(J^T - i Id)``: the ``(1,0)``-forms."""
    n = J.dim
    m = J.matrix.transpose() - Matrix.identity(n) * I
    ker = kernel(m)
    if ker.dim != n // 2:
        raise AssertionError("eigenspace of J has the wrong dimension")
    return OneZeroCoframe([Form(n, 1, {(i + 1,): v[i] for i in range(n)}) for v in ker.basis])


class _Bigrading:
    """Change of coframe to ``theta = (phi^1..phi^m, conj phi^1..conj phi^m)``."""

    def __init__(self, J: AlmostComplexStructure):
        n = J.dim
        self.n = n
        self.m = n // 2
        phis = list(J.coframe.phis)
        theta = phis + [p.conjugate() for p in phis]
        P = Matrix.from_columns([coordinates(t) for t in theta], n)
        Pinv = P.inverse()
        self.to_theta = _images_from_matrix(Pinv)
        self.from_theta = _images_from_matrix(P)
        self._proj: dict = {}

    def components(self, a: Form) -> dict[tuple[int, int], Form]:
        at = substitute(a, self.to_theta)
        groups: dict[tuple[int, int], dict] = {}
        for key, c in at.terms.items():
            p = sum(1 for j in key if j <= self.m)
            groups.setdefault((p, len(key) - p), {})[key] = c
        out = {}
        for pq in sorted(groups):
            f = substitute(Form(self.n, a.degree, groups[pq]), self.from_theta)
            if f.terms:
                out[pq] = f
        return out

    def projector(self, k: int, pairs: frozenset) -> Matrix:
        key = (k, pairs)
        if key not in self._proj:
            def fn(f):
                comps = self.components(f)
                out = Form.zero(self.n, k)
                for pq in pairs:
                    if pq in comps:
                        out = out + comps[pq]
                return out

            self._proj[key] = _form_matrix(self.n, k, k, fn)
        return self._proj[key]


def bidegree_components(J: AlmostComplexStructure, a: Form) -> dict[tuple[int, int], Form]:
    """Nonzero ``(p, q)`` components of ``a``; they sum to ``a``."""
    return J._bigrading.components(a)


def type_pairs(degree: int, n: int) -> list[tuple[tuple[int, int], ...]]:
    """Swap classes ``{(p,q),(q,p)}`` with ``p <= q`` that occur in ``Lambda^degree`` of a ``2n``-space."""
    out = []
    for p in range(0, degree // 2 + 1):
        q = degree - p
        if q > n:
            continue
        out.append(((p, q),) if p == q else ((p, q), (q, p)))
    return out


def real_type_space(J: AlmostComplexStructure, degree: int, pairs: Iterable[tuple[int, int]]) -> Subspace:
    """Real forms of ``Lambda^degree`` whose components lie in the (swap-closed) type set."""
    pairs = frozenset(pairs)
    for p, q in pairs:
        if (q, p) not in pairs:
            raise PreconditionError(f"type set {sorted(pairs)} is not closed under (p,q)<->(q,p)")
    P = J._bigrading.projector(degree, pairs)
    # P commutes with conjugation, so P maps the real basis monomials to real forms.
    return Subspace(P.nrows, P.transpose().rows)


def integrability_check(algebra: LieAlgebra, J: AlmostComplexStructure) -> bool:
    """``d phi`` has no ``(0,2)`` part for every ``(1,0)``-form ``phi``."""
    for phi in J.coframe:
        if (0, 2) in bidegree_components(J, algebra.differential(phi)):
            return False
    return True


# -- symplectic forms -------------------------------------------------------------------

class SymplecticForm:
    def __init__(self, omega: Form, algebra: LieAlgebra | None = None):
        if omega.degree != 2 or not omega.terms:
            raise StructureError("a symplectic form must be a nonzero 2-form")
        if not omega.is_real():
            raise StructureError("omega must be real")
        n = omega.dim
        if n % 2:
            raise StructureError("odd dimension")
        top = omega
        for _ in range(n // 2 - 1):
            top = wedge(top, omega)
        if not top.terms:
            raise StructureError("omega^n = 0: omega is degenerate")
        if algebra is not None and algebra.differential(omega).terms:
            raise StructureError("omega is not closed")
        self.omega = omega
        self.dim = n
        W = [[ZERO] * n for _ in range(n)]
        for (i, j), c in omega.terms.items():
            W[i - 1][j - 1] = c
            W[j - 1][i - 1] = -c
        self.gram = Matrix(W)
        self.inverse_gram = self.gram.inverse()
        self.volume = top * Fraction(1, factorial(n // 2))

    @cached_property
    def volume_factor(self) -> GaussianRational:
        return self.volume.terms[tuple(range(1, self.dim + 1))]

    def power(self, k: int) -> Form:
        out = Form.constant(self.dim, 1)
        for _ in range(k):
            out = wedge(out, self.omega)
        return out

    @lru_cache(maxsize=None)
    def inverse_on(self, k: int) -> Matrix:
        """``[I][K] = omega^-1(e^I, e^K)``."""
        return exterior_power(self.inverse_gram, k)

    def pairing(self, a: Form, b: Form) -> GaussianRational:
        m = self.inverse_on(a.degree)
        va, vb = coordinates(a), coordinates(b)
        return sum((x * y for x, y in zip(va, m.apply(vb))), ZERO)

    @lru_cache(maxsize=None)
    def star_matrix(self, k: int) -> Matrix:
        n = self.dim
        inv = self.inverse_on(k)
        v = self.volume_factor
        size = len(basis(n, k))
        rows = [[ZERO] * size for _ in range(len(basis(n, n - k)))]
        for i, (ci, sign) in enumerate(_complement_signs(n, k)):
            for K in range(size):
                x = inv.rows[K][i]
                if x:
                    rows[ci][K] = x * v * sign
        return Matrix(rows, size)

    def star(self, a: Form) -> Form:
        return _apply(self.star_matrix(a.degree), a, self.dim - a.degree)


def symplectic_star(w: SymplecticForm, a: Form) -> Form:
    """``b ^ star(a) = omega^-1(a, b) omega^n / n!`` for all ``b`` of the same degree."""
    return w.star(a)


# -- metrics ----------------------------------------------------------------------------

class Metric:
    """Positive-definite metric on the frame; ``orientation`` (+1/-1) picks the sign of ``vol``
    relative to ``e^(1..n)``."""

    def __init__(self, gram: Matrix, orientation: int = 1):
        if orientation not in (1, -1):
            raise PreconditionError("orientation must be +1 or -1")
        n = gram.nrows
        if gram.ncols != n:
            raise StructureError("metric Gram matrix must be square")
        if not gram.is_symmetric() or any(not x.is_real() for r in gram.rows for x in r):
            raise StructureError("metric Gram matrix must be real symmetric")
        for k in range(1, n + 1):
            minor = Matrix([r[:k] for r in gram.rows[:k]]).det()
            if minor.real <= 0:
                raise StructureError(f"metric is not positive-definite (leading minor {k} = {minor})")
        self.gram = gram
        self.dim = n
        self.inverse_gram = gram.inverse()
        self.orientation = orientation

    @classmethod
    def orthonormal(cls, n: int) -> "Metric":
        return cls(Matrix.identity(n))

    def oriented(self, orientation: int) -> "Metric":
        return self if orientation == self.orientation else Metric(self.gram, orientation)

    @cached_property
    def sqrt_det(self):
        """``sqrt(det G)`` when it is rational, else ``None``."""
        d = self.gram.det().real
        p, q = isqrt(d.numerator), isqrt(d.denominator)
        if p * p == d.numerator and q * q == d.denominator:
            return GaussianRational(Fraction(p, q))
        return None

    @cached_property
    def volume(self) -> Form:
        if self.sqrt_det is None:
            raise StructureError("sqrt(det g) is irrational; the volume form is not defined over Q(i)")
        return top_form(self.dim, self.sqrt_det * self.orientation)

    @lru_cache(maxsize=None)
    def inner_on(self, k: int) -> Matrix:
        """``[I][K] = <e^I, e^K>_g``."""
        return exterior_power(self.inverse_gram, k)

    @lru_cache(maxsize=None)
    def inner_on_inverse(self, k: int) -> Matrix:
        return self.inner_on(k).inverse()

    def inner(self, a: Form, b: Form) -> GaussianRational:
        """Bilinear (not sesquilinear) induced inner product."""
        m = self.inner_on(a.degree)
        va, vb = coordinates(a), coordinates(b)
        return sum((x * y for x, y in zip(va, m.apply(vb))), ZERO)

    @lru_cache(maxsize=None)
    def star_matrix(self, k: int) -> Matrix:
        n = self.dim
        s = self.sqrt_det
        if s is None:
            raise StructureError("Hodge star needs a rational sqrt(det g)")
        s = s * self.orientation
        inner = self.inner_on(k)
        size = len(basis(n, k))
        rows = [[ZERO] * size for _ in range(len(basis(n, n - k)))]
        for i, (ci, sign) in enumerate(_complement_signs(n, k)):
            for K in range(size):
                x = inner.rows[i][K]
                if x:
                    rows[ci][K] = x * s * sign
        return Matrix(rows, size)

    def star(self, a: Form) -> Form:
        return _apply(self.star_matrix(a.degree), a, self.dim - a.degree)

    def change_coframe(self, A: Matrix) -> "Metric":
        Ainv = A.inverse()
        return Metric(Ainv.transpose() @ self.gram @ Ainv, self.orientation)


def hodge_star(g: Metric, a: Form) -> Form:
    """``b ^ *a = <b, a>_g vol`` for all ``b`` of the same degree."""
    return g.star(a)


# -- almost-Kaehler triples -------------------------------------------------------------

class AlmostKahlerTriple:
    def __init__(self, J: AlmostComplexStructure, omega: SymplecticForm, g: Metric | None = None):
        W = omega.gram
        if J.matrix.transpose() @ W @ J.matrix != W:
            raise StructureError("omega is not J-invariant: omega(J., J.) != omega")
        G = W @ J.matrix
        if g is None:
            g = Metric(G)
        elif g.gram != G:
            raise StructureError("g != omega(., J.)")
        self.J = J
        self.omega = omega
        self.g = g

    @cached_property
    def symplectic_orientation(self) -> int:
        """Sign of ``omega^n/n!`` against ``e^(1..2n)``."""
        return 1 if self.omega.volume_factor.real > 0 else -1

    @cached_property
    def g_omega(self) -> Metric:
        """``g`` oriented by ``omega^n/n!``; with it ``star_omega = *_g J`` holds degree-wise."""
        return self.g.oriented(self.symplectic_orientation)


def compatible_complex_structure(omega: SymplecticForm, start: Sequence[Sequence] | None = None) -> AlmostComplexStructure:
    """A rational ``J`` compatible with ``omega`` via symplectic Gram-Schmidt.

    ``start`` (vectors, default the frame) fixes the order in which the
    symplectic basis ``a_i, b_i`` is extracted; ``J a_i = b_i``.
    """
    n = omega.dim
    W = omega.gram
    vecs = [tuple(as_scalar(x) for x in v) for v in (start or Matrix.identity(n).rows)]

    def om(u, v):
        return sum((x * y for x, y in zip(u, W.apply(v))), ZERO)

    a_list, b_list = [], []
    while vecs:
        a = vecs.pop(0)
        j = next((i for i, v in enumerate(vecs) if om(a, v)), None)
        if j is None:
            if any(a):
                raise StructureError("start vectors do not span a symplectic space")
            continue
        b = vecs.pop(j)
        c = om(a, b)
        b = tuple(x / c for x in b)
        rest = []
        for v in vecs:
            va, vb = om(v, a), om(v, b)
            rest.append(tuple(x + va * y - vb * z for x, y, z in zip(v, b, a)))
        vecs = [v for v in rest if any(v)]
        a_list.append(a)
        b_list.append(b)
    S = Matrix.from_columns(a_list + b_list, n)
    m = n // 2
    J0 = [[ZERO] * n for _ in range(n)]
    for i in range(m):
        J0[m + i][i] = ONE
        J0[i][m + i] = -ONE
    return AlmostComplexStructure(S @ Matrix(J0) @ S.inverse())


# -- operators on the complex -----------------------------------------------------------

class Codifferentials:
    """``delta_g`` (adjoint of ``d``) and ``delta_omega = (-1)^(k+1) star d star`` per degree."""

    def __init__(self, c: CEComplex, g: Metric | None = None, w: SymplecticForm | None = None):
        self.complex = c
        self.g = g
        self.w = w
        self._cache: dict = {}

    def delta_g(self, k: int) -> Matrix:
        """``Lambda^k -> Lambda^(k-1)``."""
        key = ("g", k)
        if key not in self._cache:
            if self.g is None:
                raise PreconditionError("no metric")
            n = self.complex.dim
            if k == 0:
                self._cache[key] = Matrix.zeros(0, 1)
            else:
                D = self.complex.d_matrix(k - 1)
                self._cache[key] = self.g.inner_on_inverse(k - 1) @ D.transpose() @ self.g.inner_on(k)
        return self._cache[key]

    def delta_omega(self, k: int) -> Matrix:
        key = ("w", k)
        if key not in self._cache:
            if self.w is None:
                raise PreconditionError("no symplectic form")
            n = self.complex.dim
            if k == 0:
                self._cache[key] = Matrix.zeros(0, 1)
            else:
                m = self.w.star_matrix(n - k + 1) @ self.complex.d_matrix(n - k) @ self.w.star_matrix(k)
                self._cache[key] = m if k % 2 else -m
        return self._cache[key]

    def apply_delta_g(self, a: Form) -> Form:
        return _apply(self.delta_g(a.degree), a, a.degree - 1)

    def apply_delta_omega(self, a: Form) -> Form:
        return _apply(self.delta_omega(a.degree), a, a.degree - 1)


def codifferentials(c: CEComplex, g: Metric | None = None, w: SymplecticForm | None = None) -> Codifferentials:
    return Codifferentials(c, g, w)


class LefschetzOperator:
    """``a -> omega^power ^ a``."""

    def __init__(self, w: SymplecticForm, power: int):
        self.w = w
        self.power = power
        self.form = w.power(power)
        self._cache: dict = {}

    def matrix(self, j: int) -> Matrix:
        if j not in self._cache:
            n = self.w.dim
            self._cache[j] = _form_matrix(n, j, j + 2 * self.power, lambda f: wedge(self.form, f))
        return self._cache[j]

    def __call__(self, a: Form) -> Form:
        out = wedge(self.form, a)
        return out if out.terms else Form.zero(a.dim, a.degree + 2 * self.power)


def lefschetz_operator(w: SymplecticForm, power: int) -> LefschetzOperator:
    return LefschetzOperator(w, power)
