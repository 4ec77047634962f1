"""Text format for ACI-matrices and subspace lists, plus analysis reports.

Grammar (whitespace is insignificant, ``#`` starts a comment)::

    document  := 'field' Q ['modpoly' INT+] body
    body      := matrix | subspace+
    matrix    := '[' row (';' row)* ']'
    row       := entry (',' entry)*
    entry     := ['-'] term (('+' | '-') term)*
    term      := coeff | var | coeff '*' var
    coeff     := INT | 'g:' DIGITS
    var       := letter (letter | digit)*
    subspace  := 'subspace' vector ('+' vector)*
    vector    := '[' ['-'] coeff (',' ['-'] coeff)* ']'

``Q`` is the field order.  In F_{p^k} a coefficient ``g:d_{k-1}...d_1d_0``
is the element ``d_{k-1} g^{k-1} + ... + d_0`` (digits base p, most
significant first); plain integers always denote prime-subfield elements.
``modpoly`` lists the modulus coefficients lowest degree first and is only
needed when the built-in one is not wanted.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field as dc_field
from typing import Any, Optional

from .aci import ACIMatrix, AffineForm, Equivalence
from .errors import ACIError, ACISyntaxError, UnknownFieldElement
from .gf import DEFAULT_MODPOLYS, Field, GF

SCHEMA_VERSION = 1

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<gcoef>g:[0-9]+)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
  | (?P<punct>[\[\],;+\-*])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> tuple[list[Token], list[str]]:
    tokens, comments = [], []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        mt = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if mt is None:
            raise ACISyntaxError(line, col, "a token", text[pos])
        kind = mt.lastgroup
        chunk = mt.group()
        if kind == "comment":
            comments.append(chunk[1:].strip())
        elif kind != "ws":
            tokens.append(Token(kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = mt.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens, comments


@dataclass
class AffineSubspaceSpec:
    base: list[int]
    directions: list[list[int]]


@dataclass
class Document:
    field: Field
    matrix: Optional[ACIMatrix] = None
    subspaces: Optional[list[AffineSubspaceSpec]] = None
    comments: list[str] = dc_field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.tokens, self.comments = tokenize(text)
        self.i = 0
        self.F: Optional[Field] = None

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, expected: str):
        t = self.tok
        raise ACISyntaxError(t.line, t.col, expected, t.text or "end of input")

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("punct", "ident"):
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.error(repr(text))

    def expect_kind(self, kind: str, what: str) -> Token:
        t = self.tok
        if t.kind != kind:
            self.error(what)
        self.i += 1
        return t

    def document(self) -> Document:
        if self.tok.text != "field":
            self.error("'field' declaration")
        self.i += 1
        q_tok = self.expect_kind("int", "field order")
        modpoly = None
        if self.accept("modpoly"):
            modpoly = []
            while self.tok.kind == "int":
                modpoly.append(int(self.tok.text))
                self.i += 1
            if not modpoly:
                self.error("modpoly coefficients")
        try:
            self.F = GF(int(q_tok.text), modpoly)
        except ACIError as exc:
            raise ACISyntaxError(q_tok.line, q_tok.col, f"a valid field ({exc})", q_tok.text) from exc
        doc = Document(self.F, comments=self.comments)
        if self.tok.text == "[":
            doc.matrix = self.matrix()
        elif self.tok.text == "subspace":
            doc.subspaces = []
            while self.accept("subspace"):
                doc.subspaces.append(self.subspace())
        else:
            self.error("'[' or 'subspace'")
        if self.tok.kind != "eof":
            self.error("end of input")
        return doc

    def coeff(self) -> int:
        F = self.F
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return F.reduce(int(t.text))
        if t.kind == "gcoef":
            self.i += 1
            ds = t.text[2:]
            if F.k == 1 or len(ds) > F.k or any(int(d) >= F.p for d in ds):
                raise UnknownFieldElement(f"line {t.line}, col {t.col}: {t.text} is not an element of F_{F.q}")
            return F.from_digits([int(d) for d in reversed(ds.rjust(F.k, "0"))])
        self.error("a coefficient")

    def term(self) -> tuple[int, Optional[str]]:
        if self.tok.kind == "ident":
            name = self.tok.text
            self.i += 1
            return 1, name
        c = self.coeff()
        if self.accept("*"):
            name = self.expect_kind("ident", "a variable").text
            return c, name
        return c, None

    def entry(self) -> AffineForm:
        F = self.F
        sign = -1 if self.accept("-") else 1
        const, terms = 0, {}
        while True:
            c, name = self.term()
            if sign < 0:
                c = F.neg(c)
            if name is None:
                const = F.add(const, c)
            else:
                terms[name] = F.add(terms.get(name, 0), c)
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        return AffineForm(const, tuple(sorted((v, a) for v, a in terms.items() if a)))

    def matrix(self) -> ACIMatrix:
        self.expect("[")
        rows = [[self.entry()]]
        while True:
            if self.accept(","):
                rows[-1].append(self.entry())
            elif self.accept(";"):
                rows.append([self.entry()])
            else:
                break
        start = self.tok
        self.expect("]")
        if len({len(r) for r in rows}) != 1:
            raise ACISyntaxError(start.line, start.col, "rows of equal length", "]")
        return ACIMatrix(self.F, tuple(tuple(r) for r in rows))

    def signed_coeff(self) -> int:
        if self.accept("-"):
            return self.F.neg(self.coeff())
        return self.coeff()

    def vector(self) -> list[int]:
        self.expect("[")
        v = [self.signed_coeff()]
        while self.accept(","):
            v.append(self.signed_coeff())
        self.expect("]")
        return v

    def subspace(self) -> AffineSubspaceSpec:
        base = self.vector()
        dirs = []
        while self.accept("+"):
            dirs.append(self.vector())
        return AffineSubspaceSpec(base, dirs)


def parse_document(text: str) -> Document:
    return _Parser(text).document()


def parse_matrix(text: str) -> ACIMatrix:
    doc = parse_document(text)
    if doc.matrix is None:
        raise ACISyntaxError(1, 1, "a matrix literal", "subspace list")
    return doc.matrix


# -- serialization ------------------------------------------------------------

def format_element(F: Field, code: int) -> str:
    if code < F.p:
        return str(code)
    ds = F.digits(code)
    return "g:" + "".join(str(d) for d in reversed(ds)).lstrip("0")


def format_form(F: Field, f: AffineForm) -> str:
    parts = []
    for v, c in f.terms:
        parts.append(v if c == 1 else f"{format_element(F, c)}*{v}")
    if f.const or not parts:
        parts.append(format_element(F, f.const))
    return "+".join(parts)


def format_field(F: Field) -> str:
    head = f"field {F.q}"
    if F.k > 1 and F.modpoly != DEFAULT_MODPOLYS.get(F.q):
        head += " modpoly " + " ".join(str(c) for c in F.modpoly)
    return head


def serialize_matrix(A: ACIMatrix) -> str:
    F = A.field
    body = " ; ".join(", ".join(format_form(F, f) for f in row) for row in A.rows)
    return f"{format_field(F)}\n[ {body} ]"


def serialize_subspaces(F: Field, subspaces: list[AffineSubspaceSpec]) -> str:
    def vec(v):
        return "[" + ", ".join(format_element(F, x) for x in v) + "]"

    lines = [format_field(F)]
    for S in subspaces:
        lines.append("subspace " + " + ".join([vec(S.base)] + [vec(d) for d in S.directions]))
    return "\n".join(lines)


def digest(A: ACIMatrix) -> str:
    return hashlib.sha256(serialize_matrix(A).encode()).hexdigest()[:16]


# -- reports -------------------------------------------------------------------

@dataclass
class Analysis:
    """Everything one CLI run computed about one matrix; absent parts are None."""

    matrix: ACIMatrix
    source: Optional[str] = None
    rank: Any = None
    classification: Any = None
    decomposition: Any = None
    core: Any = None
    extra: dict = dc_field(default_factory=dict)


_FLAGS = (
    "full_rank", "square_fr", "minimal_fr", "maximal_fr", "row_reducible",
    "column_reducible", "irreducible", "column_augmentable", "completely_irreducible",
)


def _span(r: tuple[int, int]) -> list[int]:
    # half-open 0-based -> inclusive 1-based
    return [r[0] + 1, r[1]]


def witness_dict(F: Field, E: Equivalence) -> dict:
    return {
        "T": [" ".join(format_element(F, x) for x in row) for row in E.T.rows],
        "Q": " ".join(str(p + 1) for p in E.perm),
    }


def _matrix_rows(A: ACIMatrix) -> list[str]:
    return [", ".join(format_form(A.field, f) for f in row) for row in A.rows]


def _block(b) -> Any:
    if b is None:
        return "absent"
    return {"tag": b.tag, "rows": _span(b.rows), "cols": _span(b.cols), "rank": b.rank}


def report_dict(a: Analysis) -> dict:
    A = a.matrix
    F = A.field
    out: dict[str, Any] = {"schema": SCHEMA_VERSION}
    if a.source is not None:
        out["source"] = a.source
    out["digest"] = digest(A)
    out["field"] = format_field(F)[len("field "):]
    out["shape"] = [A.m, A.n]
    out["matrix"] = _matrix_rows(A)
    if a.rank is not None:
        R = a.rank
        out["rank"] = {
            "rank_set": list(R.rank_set),
            "mrank": R.mrank,
            "Mrank": R.Mrank,
            "constant": R.constant,
            "completions_examined": R.completions_examined,
            "method": R.method,
        }
    if a.classification is not None:
        c = a.classification
        cls: dict[str, Any] = {"constant": c.constant}
        for name in _FLAGS:
            cls[name] = getattr(c, name)
        cls["reducible_row"] = None if c.reducible_row is None else c.reducible_row + 1
        cls["reducible_column"] = None if c.reducible_column is None else c.reducible_column + 1
        cls["augmenting_vector"] = (
            None if c.augmenting_vector is None else [format_element(F, x) for x in c.augmenting_vector]
        )
        out["classification"] = cls
    if a.decomposition is not None:
        D = a.decomposition
        out["decomposition"] = {
            "case": D.case,
            "rank": D.rank,
            "r": D.r,
            "s": D.s,
            "B": _block(D.B),
            "C": _block(D.C),
            "witness": witness_dict(F, D.witness),
            "result": _matrix_rows(D.matrix),
        }
    if a.core is not None:
        K = a.core
        out["core"] = {
            "rows": _span(K.rows),
            "cols": _span(K.cols),
            "rank": K.rank,
            "case": K.decomposition.case,
            "witness": witness_dict(F, K.witness),
            "core": _matrix_rows(K.core),
        }
    out.update(a.extra)
    return out


def _text_lines(value: Any, indent: int, key: Optional[str]) -> list[str]:
    pad = "  " * indent
    head = f"{pad}{key}:" if key is not None else pad.rstrip()
    if isinstance(value, dict):
        lines = [head] if key is not None else []
        for k, v in value.items():
            lines += _text_lines(v, indent + (1 if key is not None else 0), k)
        return lines
    if isinstance(value, list) and value and all(isinstance(v, str) for v in value):
        return [head] + [f"{pad}  {v}" for v in value]
    return [f"{head} {json.dumps(value)}"]


def emit_report(a: Analysis, fmt: str = "structured") -> str:
    """JSON (``structured``) or indented ``key: value`` lines (``text``); keys in fixed order."""
    data = report_dict(a)
    if fmt == "structured":
        return json.dumps(data, indent=2, ensure_ascii=True)
    if fmt == "text":
        return "\n".join(_text_lines(data, 0, None))
    raise ValueError(f"unknown report format {fmt!r}")
