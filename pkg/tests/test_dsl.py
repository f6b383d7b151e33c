from fractions import Fraction

import pytest

from akc import catalog
from akc.cealgebra import CEComplex
from akc.dsl import elaborate, parse, print_document, tokenize
from akc.errors import DSLSyntaxError, ElaborationError

from conftest import e6

SOURCES = {name: catalog.source(name) for name in catalog.names()}


@pytest.mark.parametrize("name", sorted(SOURCES))
def test_round_trip(name):
    doc = parse(SOURCES[name])
    printed = print_document(doc)
    assert parse(printed) == doc
    assert print_document(parse(printed)) == printed


def test_minimal_document():
    doc = parse("algebra t2 { dim = 2; }")
    el = elaborate(doc)
    assert el.algebra.dim == 2 and all(f.is_zero() for f in el.algebra.d1)
    assert el.J is None and el.omega is None and el.metric is None


def test_iwasawa_document():
    el = elaborate(parse(SOURCES["iwasawa"]))
    assert el.algebra.d1[4] == -e6(1, 3) + e6(2, 4)
    assert CEComplex(el.algebra).betti()[2] == 8


def test_parameters_and_overrides():
    doc = parse(SOURCES["nilmanifold-n"])
    assert doc.param_map == {"alpha": 2}
    el = elaborate(doc, {"alpha": Fraction(5, 2)})
    assert el.omega.omega == e6(1, 4) + e6(2, 5) * Fraction(5, 2) + e6(3, 6) * Fraction(3, 2)
    assert el.metric is not None  # derived from J and omega
    with pytest.raises(ElaborationError) as exc:
        elaborate(doc, {"beta": 1})
    assert exc.value.kind == "unknown-param"
    with pytest.raises(ElaborationError) as exc:
        elaborate(doc, {"alpha": 1})  # (alpha - 1) in a denominator
    assert exc.value.kind == "unknown-param"


def position(text, start, anchor, last=False):
    """1-based (line, column) of ``anchor`` at or after offset ``start``."""
    i = text.rindex(anchor) if last else text.index(anchor, start)
    line = text.count("\n", 0, i) + 1
    return line, i - (text.rfind("\n", 0, i) + 1) + 1


# (source, old, new, anchor, last, message fragment); the expected position is where the
# corruption was placed, located through ``anchor`` in the corrupted text
CORRUPTIONS = [
    ("iwasawa", "d e5 =", "d e7 =", "e7", False, "out of range"),
    ("iwasawa", "e2^e4;", "e2^e4", "d e6", False, "expected"),
    ("iwasawa", "-1 e1^e3", "-1.5 e1^e3", "1.5", False, "non-rational"),
    ("iwasawa", "e2^e4;", "e2&e4;", "&", False, "unexpected character"),
    ("iwasawa", "d e6 =", "d e5 =", "e5 = -1 e1^e4", False, "duplicate d-equation"),
    ("iwasawa", "+ e2^e4", "+ e2^e2", "e2;", False, "repeated generator"),
    ("iwasawa", "  dim = 6;\n", "", "}", True, "missing dim"),
    ("iwasawa", "iwasawa {", "iwasawa", "dim", False, "expected"),
    ("iwasawa", "omega = e1", "omega e1", "e1^e6", False, "expected"),
    ("iwasawa", "e3^e4;\n}", "e3^e4;\n}\nextra", "extra", False, "after the closing brace"),
    ("iwasawa", "J e1 = -e6;", "J e1 = -e6^e2;", "^e2;", False, "expected"),
    ("iwasawa", "-1 e1^e3 +", "-1 e1 e3 +", "e3 + e2^e4", False, "expected"),
    ("iwasawa", "d e5 =", "dd e5 =", "dd", False, "expected"),
    ("iwasawa", "J e3 = -e4;", "J e3 = -e4;\n  J e3 = e4;", "e3 = e4", False, "duplicate J-equation"),
    ("iwasawa", "J e2 = -e5;", "J e2 = -e0;", "e0", False, "out of range"),
    ("nilmanifold-n", "param alpha = 2;", "param alpha = ;", ";\n  d e4", False, "expected"),
    ("nilmanifold-n", "(alpha - 1) e3^e6", "(alpha - 1 e3^e6", "e3^e6;", False, "expected"),
    ("nilmanifold-n", "param alpha = 2;", "param alpha = 2;\n  param alpha = 3;", "alpha = 3", False, "duplicate parameter"),
    ("nakamura", "metric = orthonormal;", "metric = e1^e1;", "^e1;", False, "expected"),
    ("nakamura", "dim = 6;", "dim = six;", "six", False, "expected"),
    ("torus6", "dim = 6;", "dim = 0;", "0;", False, "positive"),
    ("torus6", "dim = 6;", "dim = 6;\n  dim = 6;", "dim = 6;\n  J", False, "duplicate dim"),
]


def corrupt(src, old, new):
    text = SOURCES[src]
    assert text.count(old) >= 1
    start = text.index(old)
    return text[:start] + new + text[start + len(old):], start


@pytest.mark.parametrize("case", CORRUPTIONS, ids=[f"{i:02d}-{c[5].split()[0]}" for i, c in enumerate(CORRUPTIONS)])
def test_corrupted_corpus(case, tmp_path):
    src, old, new, anchor, last, fragment = case
    text, start = corrupt(src, old, new)
    expected = position(text, start, anchor, last)
    with pytest.raises(DSLSyntaxError) as exc:
        parse(text)
    err = exc.value
    assert (err.line, err.column) == expected, str(err)
    assert fragment in str(err)


def test_corpus_size():
    assert len(CORRUPTIONS) >= 20


def test_expected_token_sets():
    with pytest.raises(DSLSyntaxError) as exc:
        parse("algebra x { dim = 2; d e2 = e1 e2; }")
    assert "'^'" in exc.value.expected
    with pytest.raises(DSLSyntaxError) as exc:
        parse("algebra x { dim 2; }")
    assert "'='" in exc.value.expected


def test_tokens_carry_positions():
    toks = tokenize("algebra a {\n  dim = 2; # note\n}")
    dim = next(t for t in toks if t.text == "dim")
    assert (dim.line, dim.column) == (2, 3)
    assert toks[-1].kind == "EOF"


# -- elaboration diagnostics ----------------------------------------------------------------

def elab_error(text):
    with pytest.raises(ElaborationError) as exc:
        elaborate(parse(text))
    return exc.value


def test_jacobi_diagnostic():
    # d e4 = e2^e3 with d e2 = e1^e2 appended: d(d e4) = e1^e2^e3 != 0 (computed by hand)
    text = SOURCES["nilmanifold-n"].replace("  d e4 = e2^e3;", "  d e4 = e2^e3;\n  d e2 = e1^e2;")
    err = elab_error(text)
    assert err.kind == "jacobi"
    assert (err.line, err.column) == position(text, 0, "d e4")


def test_j_diagnostics():
    base = "algebra x {{ dim = 4; {} }}"
    assert elab_error(base.format("J e1 = e1; J e2 = e2; J e3 = -e4;")).kind == "j-square"
    assert elab_error(base.format("J e1 = -e2;")).kind == "j-underdetermined"
    assert elab_error(base.format("J e1 = -e2; J e2 = e3; J e3 = -e4;")).kind == "j-square"


def test_symplectic_and_metric_diagnostics():
    nil = "algebra x {{ dim = 4; d e4 = e1^e2; {} }}"
    # d(e3^e4) = -e3^e1^e2 != 0
    assert elab_error(nil.format("omega = e1^e2 + e3^e4;")).kind == "omega-not-closed"
    assert elab_error(nil.format("omega = e1^e2;")).kind == "omega-degenerate"
    flat = "algebra x {{ dim = 4; J e1 = -e2; J e3 = -e4; {} }}"
    # omega = -(e12 + e34) is J-invariant but does not tame J
    assert elab_error(flat.format("omega = -1 e1^e2 - e3^e4;")).kind == "metric-not-positive"
    # J(e1^e3 + e2^e4) = itself, but J(e1^e4 + e2^e3) = -(e1^e4 + e2^e3)
    assert elab_error(flat.format("omega = e1^e3 + e2^e4;")).kind == "metric-not-positive"
    assert elab_error(flat.format("omega = e1^e4 + e2^e3;")).kind == "not-compatible"
    assert elab_error(flat.format("omega = e1^e2 + e3^e4; metric = 2 e1*e1 + e2*e2 + e3*e3 + e4*e4;")).kind == "not-compatible"
    ok = elaborate(parse(flat.format("omega = e1^e2 + e3^e4; metric = orthonormal;")))
    assert ok.metric.gram.rows[0][0] == 1


def test_metric_free_document_still_analysable():
    text = SOURCES["iwasawa"].replace("  omega = e1^e6 + e2^e5 + e3^e4;\n", "")
    el = elaborate(parse(text))
    assert el.J is not None and el.omega is None and el.metric is None
