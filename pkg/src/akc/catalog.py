"""Built-in example geometries.

Each entry is a ``.lie`` file shipped in :mod:`akc.data` plus any structures the
language cannot express on its own: extra almost-complex structures, balanced
candidates and Massey triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Mapping

from .dsl import Elaborated, elaborate, parse
from .exterior import monomial
from .geometry import AlmostComplexStructure, Metric, SymplecticForm

__all__ = ["StructureSpec", "CatalogEntry", "names", "describe", "source", "load", "structures_from"]


@dataclass
class StructureSpec:
    label: str
    J: AlmostComplexStructure
    omega: SymplecticForm | None = None
    metric: Metric | None = None
    massey: list = field(default_factory=list)  # (a, b, c) closed 1-forms
    balanced: list = field(default_factory=list)  # (J, h)


@dataclass
class CatalogEntry:
    name: str
    elaborated: Elaborated
    structures: list


def structures_from(el: Elaborated, label: str = "J") -> list[StructureSpec]:
    """The single structure declared in a document, if it declares ``J``."""
    if el.J is None:
        return []
    return [StructureSpec(label, el.J, el.omega, el.metric)]


def _e(n):
    return lambda *idx: monomial(n, idx)


def _nilmanifold(el: Elaborated) -> list[StructureSpec]:
    e = _e(6)
    a = el.params["alpha"]
    spec = structures_from(el, "J_alpha")[0]
    # E^1 = e^1, E^2 = alpha e^2, E^3 = (alpha-1) e^3
    spec.massey.append((e(1), e(3) * (a - 1), e(2) * a))
    return [spec]


def _nakamura(el: Elaborated) -> list[StructureSpec]:
    e = _e(6)
    primary = structures_from(el, "J'")[0]
    # integrable J: phi^1 = e1 + i e2, phi^2 = e3 + i e5, phi^3 = e4 + i e6 (up to scale)
    J = AlmostComplexStructure.from_coframe_action([-e(2), e(1), -e(5), -e(6), e(3), e(4)])
    h = e(1, 2) * Fraction(1, 4) + e(3, 5) + e(4, 6)
    integ = StructureSpec("J", J, balanced=[(J, h)])
    return [primary, integ]


_ENTRIES: dict[str, tuple[str, str, Callable[[Elaborated], list] | None]] = {
    "iwasawa": ("iwasawa.lie", "Iwasawa manifold with a pure, non-full almost-Kaehler structure", None),
    "nakamura": ("nakamura.lie", "completely solvable Nakamura manifold, integrable J and almost-Kaehler J'", _nakamura),
    "nilmanifold-n": ("nilmanifold-n.lie", "nilmanifold with the almost-Kaehler family (J_alpha, omega_alpha), alpha > 1", _nilmanifold),
    "torus6": ("torus6.lie", "flat 6-torus with the standard J0", None),
}

_LABELS = {"iwasawa": "J", "torus6": "J0"}


def names() -> list[str]:
    return sorted(_ENTRIES)


def describe(name: str) -> str:
    return _ENTRIES[name][1]


def source(name: str) -> str:
    if name not in _ENTRIES:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(names())}")
    return resources.files("akc.data").joinpath(_ENTRIES[name][0]).read_text(encoding="utf-8")


def load(name: str, params: Mapping[str, Fraction] | None = None) -> CatalogEntry:
    el = elaborate(parse(source(name)), params)
    extra = _ENTRIES[name][2]
    specs = extra(el) if extra else structures_from(el, _LABELS.get(name, "J"))
    return CatalogEntry(name, el, specs)
