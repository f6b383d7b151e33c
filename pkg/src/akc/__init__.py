"""Exact Chevalley-Eilenberg cohomology with almost-complex, symplectic and metric data.

Scalars are Gaussian rationals, so every dimension and verdict is exact.
The elimination kernels are compiled with Cython when available; set
``AKC_PURE_PYTHON=1`` to force the pure-Python implementation.
"""

from .scalar import GaussianRational, I
from .exterior import Form, generator, monomial, wedge
from .linalg import Matrix, Subspace, kernel, image, intersect, quotient
from .cealgebra import CEComplex, LieAlgebra, cup, massey_triple, validate
from .geometry import (
    AlmostComplexStructure,
    AlmostKahlerTriple,
    Metric,
    SymplecticForm,
    bidegree_components,
    codifferentials,
    hodge_star,
    integrability_check,
    lefschetz_operator,
    onezero_coframe,
    symplectic_star,
)
from .analysis import (
    TypeSet,
    balanced_check,
    bounds_check,
    geometric_formality,
    hard_lefschetz,
    harmonic_space,
    has_pure_type_basis,
    lefschetz_type_property,
    pure_full,
    subgroup,
)
from .dsl import elaborate, parse, print_document
from .kernels import BACKEND

__version__ = "0.1.0"
