"""Assemble analysis reports and render them as stable JSON or plain text."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .analysis import AnalysisReport, StructureAnalysis, analyze_structure, provenance
from .catalog import StructureSpec
from .cealgebra import CEComplex, validate
from .dsl import Elaborated
from .render import render_form, render_rational

__all__ = ["build_report", "report_dict", "to_json", "to_text", "instances_dict", "dimensions_agree"]


def build_report(el: Elaborated, specs: Sequence[StructureSpec], degree: int | None = None) -> AnalysisReport:
    flags = validate(el.algebra)
    c = CEComplex(el.algebra)
    structures = [
        analyze_structure(c, s.J, s.omega, s.metric, s.label, s.massey, s.balanced, degree)
        for s in specs
    ]
    return AnalysisReport(el.algebra.name, el.algebra.dim, flags, c.betti(), structures, provenance(flags), dict(el.params))


def _form(f):
    return None if f is None else render_form(f)


def _scalar(x):
    return render_rational(x.real) if x.is_real() else str(x)


def _structure(s: StructureAnalysis) -> dict:
    b = s.bounds
    return {
        "label": s.label,
        "h_plus": s.h_plus,
        "h_minus": s.h_minus,
        "pure": s.pure,
        "full": s.full,
        "full_witness": _form(s.full_witness),
        "purity_degree4": s.purity_degree4,
        "purity_degree4_witness": _form(s.purity_degree4_witness),
        "lefschetz2": None if s.lefschetz2 is None else s.lefschetz2.holds,
        "lefschetz2_witness": None if s.lefschetz2 is None or s.lefschetz2.holds else {
            "form": _form(s.lefschetz2.witness),
            "image": _form(s.lefschetz2.image),
        },
        "hard_lefschetz": None if s.hard_lefschetz is None else [
            {"k": k, "bijective": ok} for k, ok in s.hard_lefschetz
        ],
        "integrable": s.integrable,
        "bounds": {
            "h_minus": b.h_minus,
            "h_minus_bound": b.h_minus_bound,
            "h_minus_ok": b.h_minus_ok,
            "h_plus": b.h_plus,
            "h_plus_bound": b.h_plus_bound,
            "h_plus_ok": b.h_plus_ok,
        },
        "harmonic_pure_basis": None if s.harmonic_pure_basis is None else {
            "exists": s.harmonic_pure_basis.exists,
            "basis": [{"type": t, "form": _form(f)} for t, f in s.harmonic_pure_basis.basis],
        },
        "geometric_formality": None if s.formality is None else s.formality.holds,
        "massey": [
            {
                "degree": m.degree,
                "representative": _form(m.representative),
                "class_coordinates": [_scalar(x) for x in m.class_coordinates],
                "indeterminacy_dim": m.indeterminacy.dim,
                "vanishes": m.vanishes,
            }
            for m in s.massey
        ],
        "balanced": [
            {"form": _form(r.form), "d_nonzero": r.d_nonzero, "d_of_power_zero": r.d_of_power_zero}
            for r in s.balanced
        ],
        "requested_degree": None if s.requested is None else {
            "degree": s.requested.degree,
            "subgroups": [{"types": g.type_set.label(), "dim": g.dim} for g in s.requested.subgroups],
            "pure": s.requested.pure,
            "full": s.requested.full,
        },
    }


def report_dict(rep: AnalysisReport) -> dict:
    params = rep.params
    return {
        "algebra": {
            "name": rep.algebra,
            "dim": rep.dim,
            "params": {k: render_rational(Fraction(v)) for k, v in sorted(params.items())},
        },
        "flags": rep.flags.as_dict(),
        "betti": list(rep.betti),
        "structures": [_structure(s) for s in rep.structures],
        "provenance": rep.provenance,
    }


def _signature(d: dict) -> tuple:
    return (tuple(d["betti"]),) + tuple((s["label"], s["h_plus"], s["h_minus"]) for s in d["structures"])


def dimensions_agree(dicts: Sequence[dict]) -> bool:
    return len({_signature(d) for d in dicts}) <= 1


def instances_dict(dicts: Sequence[dict]) -> dict:
    return {"instances": list(dicts), "dimensions_agree": dimensions_agree(dicts)}


def to_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


# -- text ---------------------------------------------------------------------------------

def _yn(v, color: bool) -> str:
    if v is None:
        return "-"
    word = "yes" if v else "no"
    if not color:
        return word
    return f"\x1b[32m{word}\x1b[0m" if v else f"\x1b[31m{word}\x1b[0m"


def to_text(d: dict, color: bool = False) -> str:
    a = d["algebra"]
    params = ", ".join(f"{k}={v}" for k, v in a["params"].items())
    lines = [f"{a['name']} (dim {a['dim']}{', ' + params if params else ''})"]
    f = d["flags"]
    lines.append(
        "  nilpotent {}  solvable {}  unimodular {}  completely solvable (hint) {}".format(
            _yn(f["nilpotent"], color), _yn(f["solvable"], color), _yn(f["unimodular"], color),
            f["completely_solvable_hint"],
        )
    )
    lines.append("  betti: " + " ".join(str(b) for b in d["betti"]))
    for s in d["structures"]:
        lines.append(f"  [{s['label']}]")
        lines.append(f"    h+ = {s['h_plus']}  h- = {s['h_minus']}  pure {_yn(s['pure'], color)}  full {_yn(s['full'], color)}")
        if s["full_witness"]:
            lines.append(f"      class outside H+ + H-: [{s['full_witness']}]")
        lines.append(f"    degree-4 purity {_yn(s['purity_degree4'], color)}")
        if s["purity_degree4_witness"]:
            lines.append(f"      common class: [{s['purity_degree4_witness']}]")
        lines.append(f"    integrable {_yn(s['integrable'], color)}")
        lines.append(f"    Lefschetz type property on 2-forms {_yn(s['lefschetz2'], color)}")
        if s["lefschetz2_witness"]:
            w = s["lefschetz2_witness"]
            lines.append(f"      L({w['form']}) = {w['image']} is not harmonic")
        if s["hard_lefschetz"] is not None:
            hl = "  ".join(f"k={x['k']}: {_yn(x['bijective'], color)}" for x in s["hard_lefschetz"])
            lines.append(f"    hard Lefschetz  {hl}")
        if s["harmonic_pure_basis"] is not None:
            lines.append(f"    pure-type harmonic basis {_yn(s['harmonic_pure_basis']['exists'], color)}")
        if s["geometric_formality"] is not None:
            lines.append(f"    geometric formality {_yn(s['geometric_formality'], color)}")
        b = s["bounds"]
        lines.append(f"    bounds  h- {b['h_minus']} <= {b['h_minus_bound']}  h+ {b['h_plus']} <= {b['h_plus_bound']}")
        for m in s["massey"]:
            lines.append(f"    Massey product: {m['representative']}  vanishes {_yn(m['vanishes'], color)}")
        for r in s["balanced"]:
            lines.append(
                f"    balanced candidate {r['form']}: d h != 0 {_yn(r['d_nonzero'], color)}"
                f"  d(h^(n-1)) = 0 {_yn(r['d_of_power_zero'], color)}"
            )
        rd = s["requested_degree"]
        if rd is not None:
            parts = "  ".join(f"{g['types']}: {g['dim']}" for g in rd["subgroups"])
            lines.append(f"    degree {rd['degree']}: {parts}  pure {_yn(rd['pure'], color)}  full {_yn(rd['full'], color)}")
    lines.append(f"  {d['provenance']}")
    return "\n".join(lines) + "\n"
