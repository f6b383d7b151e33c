"""Canonical text rendering of scalars and forms in the ``.lie`` expression syntax."""

from __future__ import annotations

from fractions import Fraction

from .scalar import GaussianRational


def render_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_scalar(z: GaussianRational) -> str:
    return str(z)


def render_form(form, sep: str = "^") -> str:
    """``-e1^e3 + 1/2 e2^e4``; complex coefficients are parenthesised: ``(1+i) e1``."""
    if not form.terms:
        return "0"
    parts = []
    for key in sorted(form.terms):
        c = form.terms[key]
        mono = sep.join(f"e{k}" for k in key)
        negative = False
        if c.is_real():
            q = c.real
            if q < 0:
                negative = True
                q = -q
            coeff = "" if q == 1 and mono else render_rational(q)
        else:
            coeff = f"({c})"
        body = f"{coeff} {mono}".strip() if mono else coeff
        parts.append((negative, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for negative, body in parts[1:]:
        out += (" - " if negative else " + ") + body
    return out
