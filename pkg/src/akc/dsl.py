"""The ``.lie`` structure-equation language: lexer, recursive-descent parser, printer, elaborator.

A document looks like::

    algebra iwasawa {
      dim = 6;
      d e5 = -1 e1^e3 + e2^e4;
      d e6 = -1 e1^e4 - e2^e3;
      J e1 = -e6;  J e2 = -e5;  J e3 = -e4;
      omega = e1^e6 + e2^e5 + e3^e4;
    }

``J`` lines give the action on the coframe (``J e1 = -e6`` reads ``J e^1 = -e^6``);
generators that are not listed are completed from ``J^2 = -1``.
Coefficients are rationals, parameter names, or parenthesised rational
expressions in both, optionally followed by ``/`` and another such atom.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cealgebra import LieAlgebra, check_jacobi
from .errors import DSLSyntaxError, ElaborationError, InvalidAlgebraError, StructureError
from .exterior import Form, coordinates, monomial
from .geometry import AlmostComplexStructure, AlmostKahlerTriple, Metric, SymplecticForm
from .linalg import Matrix, Subspace
from .render import render_rational

__all__ = [
    "Num", "Param", "BinOp", "Neg", "Term", "Statement", "SourceDocument", "Elaborated",
    "parse", "print_document", "elaborate", "evaluate",
]


# -- coefficient expressions ------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Param:
    name: str
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


def _fold(node):
    if isinstance(node, Neg) and isinstance(node.arg, Num):
        return Num(-node.arg.value)
    if isinstance(node, BinOp) and isinstance(node.left, Num) and isinstance(node.right, Num):
        a, b = node.left.value, node.right.value
        return Num({"+": a + b, "-": a - b, "*": a * b, "/": a / b}[node.op])
    return node


def evaluate(node, params: Mapping[str, Fraction]) -> Fraction:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Param):
        if node.name not in params:
            raise ElaborationError("unknown-param", f"parameter {node.name!r} is not declared", *node.pos)
        return Fraction(params[node.name])
    if isinstance(node, Neg):
        return -evaluate(node.arg, params)
    a, b = evaluate(node.left, params), evaluate(node.right, params)
    if node.op == "/":
        if b == 0:
            raise ElaborationError("unknown-param", "coefficient divides by zero for these parameter values")
        return a / b
    return {"+": a + b, "-": a - b, "*": a * b}[node.op]


def _print_expr(node) -> str:
    if isinstance(node, Num):
        v = node.value
        if v < 0:
            return f"(-{render_rational(-v)})"
        return render_rational(v) if v.denominator == 1 else f"({render_rational(v)})"
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Neg):
        return f"-{_print_child(node.arg)}"
    return f"{_print_child(node.left)} {node.op} {_print_child(node.right)}"


def _print_child(node) -> str:
    s = _print_expr(node)
    return s if isinstance(node, (Num, Param)) else f"({s})"


def _print_coeff(node) -> str:
    if isinstance(node, Num) and node.value >= 0:
        return render_rational(node.value)
    if isinstance(node, Param):
        return node.name
    return f"({_print_expr(node)})"


# -- document model -----------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    sign: int
    coeff: object | None
    gens: tuple


@dataclass(frozen=True)
class Statement:
    kind: str  # "d", "J", "omega", "metric"
    target: int | None
    terms: tuple | None  # None for ``metric = orthonormal``
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SourceDocument:
    name: str
    dim: int
    params: tuple  # ((name, Fraction), ...)
    d_equations: tuple
    j_lines: tuple
    omega: Statement | None
    metric: Statement | None

    @property
    def param_map(self) -> dict:
        return dict(self.params)


# -- lexer ----------------------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[{};=^*/()+\-])"
)
_GEN = re.compile(r"e(\d+)$")


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, GEN, punct text, EOF
    text: str
    line: int
    column: int
    end: int  # absolute offset after the token


def tokenize(text: str) -> list[Token]:
    out = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        col = i - line_start + 1
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "num":
            if not s.isdigit():
                raise DSLSyntaxError(f"non-rational literal {s!r}; write rationals as p/q", line, col)
            out.append(Token("INT", s, line, col, m.end()))
        elif kind == "ident":
            g = _GEN.match(s)
            out.append(Token("GEN" if g else "IDENT", s, line, col, m.end()))
        elif kind == "punct":
            out.append(Token(s, s, line, col, m.end()))
        i = m.end()
    out.append(Token("EOF", "", line, i - line_start + 1, len(text)))
    return out


_KEYWORDS = {"algebra", "dim", "param", "d", "J", "omega", "metric", "orthonormal"}
_STMT_START = ("dim", "param", "d", "J", "omega", "metric", "}")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message, expected=(), tok=None):
        tok = tok or self.tok
        raise DSLSyntaxError(message, tok.line, tok.column, expected)

    def _describe(self, tok):
        return "end of input" if tok.kind == "EOF" else repr(tok.text)

    def is_word(self, word):
        return self.tok.kind == "IDENT" and self.tok.text == word

    def expect(self, kind, word=None):
        tok = self.tok
        ok = (tok.kind == "IDENT" and tok.text == word) if word else tok.kind == kind
        if not ok:
            want = repr(word) if word else (kind if kind in ("INT", "IDENT", "GEN") else repr(kind))
            self.error(f"unexpected {self._describe(tok)}", [want])
        self.i += 1
        return tok

    # document := "algebra" NAME "{" stmt* "}"
    def document(self) -> tuple:
        self.expect("IDENT", "algebra")
        name = self.name()
        self.expect("{")
        stmts = []
        while not self.tok.kind == "}":
            if self.tok.kind == "EOF":
                self.error("unexpected end of input", [repr(s) for s in _STMT_START])
            stmts.append(self.statement())
        close = self.expect("}")
        if self.tok.kind != "EOF":
            self.error(f"unexpected {self._describe(self.tok)} after the closing brace", ["end of input"])
        return name, stmts, close

    def name(self) -> str:
        # hyphenated names such as nilmanifold-n, written without spaces
        first = self.tok
        if first.kind not in ("IDENT", "GEN"):
            self.error(f"unexpected {self._describe(first)}", ["IDENT"])
        self.i += 1
        parts = [first.text]
        while self.tok.kind == "-" and self.toks[self.i + 1].kind in ("IDENT", "GEN", "INT") and self._adjacent():
            parts.append("-" + self.toks[self.i + 1].text)
            self.i += 2
        return "".join(parts)

    def _adjacent(self) -> bool:
        prev, dash, nxt = self.toks[self.i - 1], self.tok, self.toks[self.i + 1]
        return prev.end == dash.end - 1 and nxt.end - len(nxt.text) == dash.end

    def statement(self):
        tok = self.tok
        if tok.kind != "IDENT" or tok.text not in ("dim", "param", "d", "J", "omega", "metric"):
            self.error(f"unexpected {self._describe(tok)}", [repr(s) for s in _STMT_START])
        self.i += 1
        pos = (tok.line, tok.column)
        word = tok.text
        if word == "dim":
            self.expect("=")
            n = self.expect("INT")
            self.expect(";")
            return ("dim", int(n.text), pos, n)
        if word == "param":
            ident = self.expect("IDENT")
            if ident.text in _KEYWORDS:
                self.error(f"{ident.text!r} is reserved", ["IDENT"], ident)
            self.expect("=")
            value = self.signed_rational()
            self.expect(";")
            return ("param", (ident.text, value), pos, ident)
        if word in ("d", "J"):
            gen = self.expect("GEN")
            self.expect("=")
            terms = self.expr(1 if word == "J" else 2, "^")
            self.expect(";")
            return (word, terms, pos, gen)
        self.expect("=")
        if word == "metric" and self.is_word("orthonormal"):
            self.i += 1
            self.expect(";")
            return ("metric", None, pos, tok)
        terms = self.expr(2, "^" if word == "omega" else "*")
        self.expect(";")
        return (word, terms, pos, tok)

    def signed_rational(self) -> Fraction:
        neg = False
        if self.tok.kind == "-":
            neg = True
            self.i += 1
        num = int(self.expect("INT").text)
        den = 1
        if self.tok.kind == "/":
            self.i += 1
            dt = self.expect("INT")
            den = int(dt.text)
            if den == 0:
                self.error("zero denominator", tok=dt)
        v = Fraction(num, den)
        return -v if neg else v

    # expr := "0" | sign? term (("+" | "-") term)*
    def expr(self, arity: int, joiner: str) -> tuple:
        if self.tok.kind == "INT" and self.tok.text.strip("0") == "" and self.toks[self.i + 1].kind == ";":
            self.i += 1
            return ()
        terms = []
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
        terms.append(self.term(sign, arity, joiner))
        while self.tok.kind in ("+", "-"):
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
            terms.append(self.term(sign, arity, joiner))
        if self.tok.kind not in (";",):
            self.error(f"unexpected {self._describe(self.tok)}", ["';'", "'+'", "'-'"])
        return tuple(terms)

    def term(self, sign: int, arity: int, joiner: str) -> tuple:
        coeff = None
        if self.tok.kind in ("INT", "IDENT", "("):
            coeff = self.coefficient()
        gens = [self.gen()]
        while len(gens) < arity:
            if self.tok.kind != joiner:
                self.error(f"unexpected {self._describe(self.tok)}", [repr(joiner)])
            self.i += 1
            gens.append(self.gen())
        if self.tok.kind in ("^", "*"):
            self.error(f"too many factors: expected a {arity}-fold product", ["';'", "'+'", "'-'"])
        return (Term(sign, coeff, tuple(g for g, _ in gens)), [t for _, t in gens])

    def gen(self):
        tok = self.tok
        if tok.kind != "GEN":
            self.error(f"unexpected {self._describe(tok)}", ["GEN"])
        self.i += 1
        return int(tok.text[1:]), tok

    # coefficient := atom ("/" atom)?
    def coefficient(self):
        node = self.atom()
        if self.tok.kind == "/":
            slash = self.tok
            self.i += 1
            den = self.atom()
            node = self._div(node, den, slash)
        return node

    def _div(self, a, b, tok):
        if isinstance(b, Num) and b.value == 0:
            self.error("division by zero", tok=tok)
        return _fold(BinOp("/", a, b))

    def atom(self):
        tok = self.tok
        if tok.kind == "INT":
            self.i += 1
            return Num(Fraction(int(tok.text)))
        if tok.kind == "IDENT":
            if tok.text in _KEYWORDS:
                self.error(f"{tok.text!r} is reserved", ["INT", "IDENT", "'('"])
            self.i += 1
            return Param(tok.text, (tok.line, tok.column))
        if tok.kind == "(":
            self.i += 1
            node = self.ratexpr()
            self.expect(")")
            return node
        self.error(f"unexpected {self._describe(tok)}", ["INT", "IDENT", "'('"])

    # ratexpr := product (("+"|"-") product)* ; product := unary (("*"|"/") unary)*
    def ratexpr(self):
        node = self.product()
        while self.tok.kind in ("+", "-"):
            op = self.tok.kind
            self.i += 1
            node = _fold(BinOp(op, node, self.product()))
        return node

    def product(self):
        node = self.unary()
        while self.tok.kind in ("*", "/"):
            tok = self.tok
            self.i += 1
            rhs = self.unary()
            node = self._div(node, rhs, tok) if tok.kind == "/" else _fold(BinOp("*", node, rhs))
        return node

    def unary(self):
        if self.tok.kind == "-":
            self.i += 1
            return _fold(Neg(self.unary()))
        return self.atom()


def parse(text: str) -> SourceDocument:
    """Parse a ``.lie`` document; errors carry a 1-based line and column."""
    p = _Parser(text)
    name, stmts, close = p.document()
    dim = None
    params: dict = {}
    d_eqs, j_lines = [], []
    omega = metric = None
    seen_d, seen_j = {}, {}
    gen_refs = []
    repeated = []  # (e_k, token of the second e_k) in wedge terms
    for kind, payload, pos, tok in stmts:
        if kind == "dim":
            if dim is not None:
                raise DSLSyntaxError("duplicate dim statement", *pos)
            dim = payload
            if dim < 1:
                raise DSLSyntaxError("dimension must be positive", tok.line, tok.column)
        elif kind == "param":
            pname, value = payload
            if pname in params:
                raise DSLSyntaxError(f"duplicate parameter {pname!r}", tok.line, tok.column)
            params[pname] = value
        elif kind in ("d", "J"):
            target = int(tok.text[1:])
            seen = seen_d if kind == "d" else seen_j
            if target in seen:
                raise DSLSyntaxError(f"duplicate {kind}-equation for e{target}", tok.line, tok.column)
            seen[target] = tok
            gen_refs.append((target, tok))
            terms = _unpack(payload, gen_refs, repeated if kind == "d" else None)
            (d_eqs if kind == "d" else j_lines).append(Statement(kind, target, terms, pos))
        else:
            if (kind == "omega" and omega is not None) or (kind == "metric" and metric is not None):
                raise DSLSyntaxError(f"duplicate {kind} statement", *pos)
            terms = _unpack(payload, gen_refs, repeated if kind == "omega" else None) if payload is not None else None
            st = Statement(kind, None, terms, pos)
            if kind == "omega":
                omega = st
            else:
                metric = st
    if dim is None:
        raise DSLSyntaxError("missing dim statement", close.line, close.column, ["'dim'"])
    for idx, tok in gen_refs:
        if not 1 <= idx <= dim:
            raise DSLSyntaxError(f"generator index e{idx} out of range 1..{dim}", tok.line, tok.column)
    if repeated:
        g, tok = repeated[0]
        raise DSLSyntaxError(f"repeated generator in e{g}^e{g}", tok.line, tok.column)
    return SourceDocument(name, dim, tuple(params.items()), tuple(d_eqs), tuple(j_lines), omega, metric)


def _unpack(payload, gen_refs, repeated=None):
    out = []
    for term, toks in payload:
        for g, tok in zip(term.gens, toks):
            gen_refs.append((g, tok))
        if repeated is not None and len(term.gens) == 2 and term.gens[0] == term.gens[1]:
            repeated.append((term.gens[0], toks[1]))
        out.append(term)
    return tuple(out)


# -- printer ----------------------------------------------------------------------------

def _print_terms(terms, joiner: str) -> str:
    if not terms:
        return "0"
    out = []
    for i, t in enumerate(terms):
        mono = joiner.join(f"e{g}" for g in t.gens)
        body = f"{_print_coeff(t.coeff)} {mono}" if t.coeff is not None else mono
        if i == 0:
            out.append(("-" if t.sign < 0 else "") + body)
        else:
            out.append((" - " if t.sign < 0 else " + ") + body)
    return "".join(out)


def print_document(doc: SourceDocument) -> str:
    lines = [f"algebra {doc.name} {{", f"  dim = {doc.dim};"]
    for name, value in doc.params:
        lines.append(f"  param {name} = {render_rational(value)};")
    for st in doc.d_equations:
        lines.append(f"  d e{st.target} = {_print_terms(st.terms, '^')};")
    for st in doc.j_lines:
        lines.append(f"  J e{st.target} = {_print_terms(st.terms, '^')};")
    if doc.omega is not None:
        lines.append(f"  omega = {_print_terms(doc.omega.terms, '^')};")
    if doc.metric is not None:
        body = "orthonormal" if doc.metric.terms is None else _print_terms(doc.metric.terms, "*")
        lines.append(f"  metric = {body};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- elaboration ------------------------------------------------------------------------

@dataclass
class Elaborated:
    document: SourceDocument
    params: dict
    algebra: LieAlgebra
    J: AlmostComplexStructure | None = None
    omega: SymplecticForm | None = None
    metric: Metric | None = None


def _form_of(st: Statement, n: int, degree: int, params) -> Form:
    out = Form.zero(n, degree)
    for t in st.terms:
        c = evaluate(t.coeff, params) if t.coeff is not None else Fraction(1)
        out = out + monomial(n, t.gens, c * t.sign)
    return out


def _complete_j(doc: SourceDocument, params) -> AlmostComplexStructure:
    n = doc.dim
    pairs = []
    for st in doc.j_lines:
        src = coordinates(monomial(n, (st.target,)))
        img = coordinates(_form_of(st, n, 1, params))
        pairs.append((src, img))
        pairs.append((img, tuple(-x for x in src)))
    space = Subspace(n, [u for u, _ in pairs])
    if space.dim < n:
        missing = next(k for k in range(1, n + 1) if not space.contains(coordinates(monomial(n, (k,)))))
        line, col = doc.j_lines[0].pos if doc.j_lines else (None, None)
        raise ElaborationError("j-underdetermined", f"J e{missing} is not determined by the J lines and J^2 = -1", line, col)
    # pick independent sources, solve T U = V for the coefficient action T = J^T
    chosen, acc = [], Subspace.zero(n)
    for u, v in pairs:
        grown = acc + Subspace(n, [u])
        if grown.dim > acc.dim:
            acc = grown
            chosen.append((u, v))
    U = Matrix.from_columns([u for u, _ in chosen], n)
    V = Matrix.from_columns([v for _, v in chosen], n)
    T = V @ U.inverse()
    for u, v in pairs:
        if tuple(T.apply(u)) != tuple(v):
            line, col = doc.j_lines[0].pos
            raise ElaborationError("j-square", "the J lines are inconsistent with J^2 = -1", line, col)
    try:
        return AlmostComplexStructure(T.transpose())
    except StructureError as exc:
        line, col = doc.j_lines[0].pos
        raise ElaborationError("j-square", str(exc), line, col) from None


def _metric_gram(st: Statement, n: int, params) -> Matrix:
    G = [[Fraction(0)] * n for _ in range(n)]
    for t in st.terms:
        c = (evaluate(t.coeff, params) if t.coeff is not None else Fraction(1)) * t.sign
        i, j = t.gens[0] - 1, t.gens[1] - 1
        if i == j:
            G[i][i] += c
        else:
            G[i][j] += c / 2
            G[j][i] += c / 2
    return Matrix(G)


def elaborate(doc: SourceDocument, overrides: Mapping[str, Fraction] | None = None) -> Elaborated:
    """Build and validate the algebra and whichever of ``J``, ``omega``, ``g`` are declared."""
    params = doc.param_map
    for k, v in (overrides or {}).items():
        if k not in params:
            raise ElaborationError("unknown-param", f"document {doc.name!r} declares no parameter {k!r}")
        params[k] = Fraction(v)
    n = doc.dim
    d1 = [Form.zero(n, 2)] * n
    for st in doc.d_equations:
        d1[st.target - 1] = _form_of(st, n, 2, params)
    algebra = LieAlgebra(n, d1, doc.name)
    try:
        check_jacobi(algebra)
    except InvalidAlgebraError as exc:
        st = next((s for s in doc.d_equations if s.target == exc.index), None)
        line, col = st.pos if st is not None else (None, None)
        raise ElaborationError("jacobi", str(exc), line, col) from None
    out = Elaborated(doc, params, algebra)
    if doc.j_lines:
        out.J = _complete_j(doc, params)
    if doc.omega is not None:
        line, col = doc.omega.pos
        w = _form_of(doc.omega, n, 2, params)
        if algebra.differential(w).terms:
            raise ElaborationError("omega-not-closed", f"d omega = {algebra.differential(w)}", line, col)
        try:
            out.omega = SymplecticForm(w, algebra)
        except StructureError as exc:
            raise ElaborationError("omega-degenerate", str(exc), line, col) from None
    if doc.metric is not None:
        line, col = doc.metric.pos
        gram = Matrix.identity(n) if doc.metric.terms is None else _metric_gram(doc.metric, n, params)
        try:
            out.metric = Metric(gram)
        except StructureError as exc:
            raise ElaborationError("metric-not-positive", str(exc), line, col) from None
    if out.J is not None and out.omega is not None:
        line, col = doc.omega.pos
        W = out.omega.gram
        if out.J.matrix.transpose() @ W @ out.J.matrix != W:
            raise ElaborationError("not-compatible", "omega is not J-invariant", line, col)
        try:
            triple = AlmostKahlerTriple(out.J, out.omega, out.metric)
        except StructureError as exc:
            kind = "not-compatible" if out.metric is not None else "metric-not-positive"
            msg = str(exc) if out.metric is not None else f"omega(., J.) is not positive-definite (omega does not tame J): {exc}"
            raise ElaborationError(kind, msg, line, col) from None
        out.metric = triple.g
    return out
