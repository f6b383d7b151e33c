"""Sparse homogeneous forms in the exterior algebra of a dual Lie algebra, tensored with C.

A :class:`Form` of degree ``k`` on a ``dim``-dimensional space is a mapping from
strictly increasing index tuples (1-based generator labels, ``(1, 3)`` is
``e^1 ^ e^3``) to nonzero :class:`~akc.scalar.GaussianRational` coefficients.
The basis of each degree is ordered lexicographically.
"""

from __future__ import annotations

from bisect import bisect_right
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import StructureError
from .scalar import ONE, ZERO, GaussianRational, as_scalar

__all__ = [
    "Form",
    "basis",
    "basis_index",
    "wedge",
    "conjugate",
    "coordinates",
    "from_coordinates",
    "generator",
    "monomial",
    "top_form",
    "substitute",
    "merge_sign",
]


@lru_cache(maxsize=None)
def basis(dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Lexicographically ordered multi-indices of ``Lambda^degree`` in dimension ``dim``."""
    if degree < 0 or degree > dim:
        return ()
    return tuple(combinations(range(1, dim + 1), degree))


@lru_cache(maxsize=None)
def basis_index(dim: int, degree: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(basis(dim, degree))}


def merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of the shuffle that sorts ``a + b``; 0 when the tuples share an index."""
    inversions = 0
    n = len(a)
    for x in b:
        pos = bisect_right(a, x)
        if pos and a[pos - 1] == x:
            return 0
        inversions += n - pos
    return -1 if inversions & 1 else 1


def _merge(a, b):
    return tuple(sorted(a + b))


class Form:
    """Immutable homogeneous form.  Zero coefficients are never stored."""

    __slots__ = ("dim", "degree", "terms", "_hash")

    def __init__(self, dim: int, degree: int, terms: Mapping[tuple[int, ...], object] | None = None):
        if degree < 0 or degree > dim:
            if terms:
                raise StructureError(f"degree {degree} impossible in dimension {dim}")
        clean = {}
        if terms:
            for key, value in terms.items():
                key = tuple(key)
                if len(key) != degree:
                    raise StructureError(f"index {key} has length != degree {degree}")
                if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                    raise StructureError(f"index {key} is not strictly increasing")
                if key and (key[0] < 1 or key[-1] > dim):
                    raise StructureError(f"index {key} out of range 1..{dim}")
                c = as_scalar(value)
                if c:
                    clean[key] = c
        self.dim = dim
        self.degree = degree
        self.terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, dim, degree, terms):
        f = object.__new__(cls)
        f.dim = dim
        f.degree = degree
        f.terms = terms
        f._hash = None
        return f

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Form":
        return cls._trusted(dim, degree, {})

    @classmethod
    def constant(cls, dim: int, value=1) -> "Form":
        c = as_scalar(value)
        return cls._trusted(dim, 0, {(): c} if c else {})

    # -- algebra -------------------------------------------------------------------
    def _check(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.dim != self.dim:
            raise StructureError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if other.degree != self.degree and self.terms and other.terms:
            raise StructureError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Form._trusted(self.dim, self.degree, out)

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form._trusted(self.dim, self.degree, {k: -v for k, v in self.terms.items()})

    def __mul__(self, scalar) -> "Form":
        if isinstance(scalar, Form):
            return NotImplemented
        c = as_scalar(scalar)
        if not c:
            return Form.zero(self.dim, self.degree)
        if c == ONE:
            return self
        return Form._trusted(self.dim, self.degree, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Form":
        return self * (ONE / as_scalar(scalar))

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.dim == other.dim
        return self.dim == other.dim and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.degree if self.terms else None, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.terms.values())

    def conjugate(self) -> "Form":
        return conjugate(self)

    def real_part(self) -> "Form":
        return Form(self.dim, self.degree, {k: v.real for k, v in self.terms.items()})

    def imag_part(self) -> "Form":
        return Form(self.dim, self.degree, {k: v.imag for k, v in self.terms.items()})

    def __getitem__(self, key) -> GaussianRational:
        return self.terms.get(tuple(key), ZERO)

    def coordinates(self) -> list[GaussianRational]:
        return coordinates(self)

    def __repr__(self):
        return f"Form(dim={self.dim}, degree={self.degree}, {self})"

    def __str__(self):
        from .render import render_form

        return render_form(self)


def generator(dim: int, k: int) -> Form:
    """The basis 1-form ``e^k``."""
    return monomial(dim, (k,))


def monomial(dim: int, indices: Sequence[int], coefficient=1) -> Form:
    """``coefficient * e^{i1} ^ ... ^ e^{ir}`` for arbitrary (possibly unsorted) indices."""
    idx = tuple(indices)
    if len(set(idx)) != len(idx):
        return Form.zero(dim, len(idx))
    key = tuple(sorted(idx))
    sign = _permutation_sign(idx)
    return Form(dim, len(idx), {key: as_scalar(coefficient) * sign})


def _permutation_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def top_form(dim: int, coefficient=1) -> Form:
    return Form(dim, dim, {tuple(range(1, dim + 1)): coefficient})


def wedge(*forms: Form) -> Form:
    """Exterior product of any number of forms (left to right)."""
    if not forms:
        raise TypeError("wedge needs at least one form")
    out = forms[0]
    for f in forms[1:]:
        out = _wedge2(out, f)
    return out


def _wedge2(a: Form, b: Form) -> Form:
    if not isinstance(a, Form) or not isinstance(b, Form):
        raise TypeError("wedge operands must be Forms")
    if a.dim != b.dim:
        raise StructureError(f"dimension mismatch: {a.dim} vs {b.dim}")
    degree = a.degree + b.degree
    if degree > a.dim or not a.terms or not b.terms:
        return Form.zero(a.dim, degree)
    out: dict[tuple[int, ...], GaussianRational] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            s = merge_sign(ka, kb)
            if not s:
                continue
            key = _merge(ka, kb)
            term = va * vb
            if s < 0:
                term = -term
            acc = out.get(key)
            out[key] = term if acc is None else acc + term
    return Form._trusted(a.dim, degree, {k: v for k, v in out.items() if v})


def conjugate(a: Form) -> Form:
    return Form._trusted(a.dim, a.degree, {k: v.conjugate() for k, v in a.terms.items()})


def coordinates(a: Form) -> list[GaussianRational]:
    """Coefficient vector in the lexicographic basis of ``Lambda^degree``."""
    index = basis_index(a.dim, a.degree)
    vec = [ZERO] * len(index)
    for k, v in a.terms.items():
        vec[index[k]] = v
    return vec


def from_coordinates(dim: int, degree: int, vec: Iterable) -> Form:
    keys = basis(dim, degree)
    vec = list(vec)
    if len(vec) != len(keys):
        raise StructureError(f"expected {comb(dim, degree)} coordinates, got {len(vec)}")
    terms = {}
    for key, v in zip(keys, vec):
        c = as_scalar(v)
        if c:
            terms[key] = c
    return Form._trusted(dim, degree, terms)


def substitute(a: Form, images: Sequence[Form]) -> Form:
    """Apply the algebra homomorphism sending ``e^k`` to ``images[k-1]`` (degree-1 forms).

    This is the pullback along a linear map of the underlying vector space; it
    is used for changes of coframe and for the action of ``J`` on ``Lambda^k``.
    """
    if not images:
        return a
    dim = images[0].dim
    out = Form.zero(dim, a.degree)
    for key, coeff in a.terms.items():
        term = Form.constant(dim, coeff)
        for k in key:
            term = _wedge2(term, images[k - 1])
            if not term.terms:
                break
        out = out + term
    return out
