"""Textual presentations of quotients of path algebras: parsing, printing, validation.

Grammar (one stanza keyword per line, '#' starts a comment)::

    algebra "name"            (optional)
    field rational | field prime P
    vertices v1 v2 ...
    arrows a: v1 -> v2  b: v2 -> v1 ...
    relations
      a.b - 2*b.a             (one relation per line)
    order arrows a b ... [vertices v1 v2 ...]

Orders are listed from largest to smallest.  Without an ``order`` stanza
the declaration order is used the same way.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .linalg.field import Field, is_prime
from .quiver import FreeElement, Quiver, path_length


class PresentationError(ValueError):
    """Syntax or semantic error in a presentation, with a source position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class Presentation:
    quiver: Quiver
    field: Field
    relations: list
    name: str = ""
    labels: list = dc_field(default_factory=list, compare=False)
    family: str | None = dc_field(default=None, compare=False)
    params: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.labels:
            self.labels = [f"r{i + 1}" for i in range(len(self.relations))]
        if len(self.labels) != len(self.relations):
            raise ValueError("one label per relation")
        for lab, r in zip(self.labels, self.relations):
            check_relation(r, lab)

    def with_relations(self, relations, labels=None) -> "Presentation":
        return Presentation(self.quiver, self.field, list(relations), self.name,
                            list(labels) if labels else [], self.family, dict(self.params))

    def with_field(self, field: Field) -> "Presentation":
        rels = [FreeElement(self.quiver, field, {p: field(c) for p, c in r.terms.items()})
                for r in self.relations]
        return Presentation(self.quiver, field, rels, self.name, list(self.labels),
                            self.family, dict(self.params))


def check_relation(r: FreeElement, label: str = "relation", line: int | None = None) -> None:
    if r.is_zero():
        raise PresentationError(f"{label} is zero", line)
    if not r.is_uniform():
        raise PresentationError(f"{label} is not uniform (paths have different endpoints)", line)
    if r.min_length() < 2:
        raise PresentationError(f"{label} contains a path of length < 2", line)


_TOKEN = re.compile(r"\s*(?:(?P<arrow>->|→)|(?P<num>\d+(?:/\d+)?)(?=\s*\*)|(?P<ident>[^\W]\w*|\d\w*)"
                    r"|(?P<str>\"[^\"]*\")|(?P<op>[+\-−*.:]))")


def _tokens(text: str, lineno: int):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"unexpected character {text[pos:].lstrip()[:1]!r}", lineno,
                                    len(text[:pos]) + len(text[pos:]) - len(text[pos:].lstrip()) + 1)
        kind = m.lastgroup
        val = m.group(kind)
        col = m.start(kind) + 1
        if kind == "op" and val == "−":
            val = "-"
        if kind == "arrow":
            kind, val = "op", "->"
        out.append((kind, val, col))
        pos = m.end()
    return out


_KEYWORDS = {"algebra", "field", "vertices", "arrows", "relations", "order"}


def parse_presentation(text: str, name: str = "") -> Presentation:
    field = None
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    rel_lines: list[tuple[int, list]] = []
    arrow_order = vertex_order = None
    stanza = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = _tokens(line, lineno)
        head = toks[0]
        if head[0] == "ident" and head[1] in _KEYWORDS:
            stanza = head[1]
            rest = toks[1:]
            if stanza == "algebra":
                if rest and rest[0][0] == "str":
                    name = rest[0][1][1:-1]
                    rest = rest[1:]
                if rest and rest[0] == ("ident", "field", rest[0][2]):
                    stanza = "field"
                    rest = rest[1:]
                    field = _parse_field(rest, lineno)
                    stanza = None
                elif rest:
                    raise PresentationError("unexpected text after algebra name", lineno, rest[0][2])
                continue
            if stanza == "field":
                field = _parse_field(rest, lineno)
                stanza = None
                continue
            if stanza == "order":
                arrow_order, vertex_order = _parse_order(rest, lineno, arrow_order, vertex_order)
                continue
            toks = rest
            if not toks:
                continue
        if stanza == "vertices":
            for kind, val, col in toks:
                if kind != "ident":
                    raise PresentationError(f"expected vertex name, got {val!r}", lineno, col)
                if val in vertices:
                    raise PresentationError(f"duplicate vertex {val!r}", lineno, col)
                vertices.append(val)
        elif stanza == "arrows":
            i = 0
            while i < len(toks):
                chunk = toks[i:i + 5]
                if len(chunk) < 5 or chunk[1][1] != ":" or chunk[3][1] != "->" or \
                        chunk[0][0] != "ident" or chunk[2][0] != "ident" or chunk[4][0] != "ident":
                    raise PresentationError("expected 'name: source -> target'", lineno, toks[i][2])
                a, src, tgt = chunk[0][1], chunk[2][1], chunk[4][1]
                for v, c in ((src, chunk[2][2]), (tgt, chunk[4][2])):
                    if v not in vertices:
                        raise PresentationError(f"unknown vertex {v!r}", lineno, c)
                if any(a == x[0] for x in arrows):
                    raise PresentationError(f"duplicate arrow {a!r}", lineno, chunk[0][2])
                arrows.append((a, src, tgt))
                i += 5
        elif stanza == "relations":
            rel_lines.append((lineno, toks))
        elif stanza == "order":
            arrow_order, vertex_order = _parse_order(toks, lineno, arrow_order, vertex_order, cont=True)
        else:
            raise PresentationError(f"expected a stanza keyword, got {head[1]!r}", lineno, head[2])
    if field is None:
        raise PresentationError("missing 'field' header")
    if not vertices:
        raise PresentationError("no vertices declared")
    try:
        quiver = Quiver(vertices, arrows, arrow_order, vertex_order)
    except ValueError as e:
        raise PresentationError(str(e)) from None
    relations = [_parse_relation(quiver, field, toks, lineno) for lineno, toks in rel_lines]
    return Presentation(quiver, field, relations, name)


def _parse_field(toks, lineno) -> Field:
    if len(toks) == 1 and toks[0][1] == "rational":
        return Field(0)
    if len(toks) == 2 and toks[0][1] == "prime" and toks[1][1].isdigit():
        p = int(toks[1][1])
        if not is_prime(p):
            raise PresentationError(f"characteristic {p} is not prime", lineno, toks[1][2])
        return Field(p)
    col = toks[0][2] if toks else None
    raise PresentationError("expected 'field rational' or 'field prime P'", lineno, col)


def _parse_order(toks, lineno, arrow_order, vertex_order, cont=False):
    # 'order arrows a b c vertices x y'; continuation lines extend the last list
    target = None
    if cont:
        target = "vertices" if vertex_order is not None else "arrows"
    for kind, val, col in toks:
        if kind == "ident" and val in ("arrows", "vertices"):
            target = val
            if val == "arrows":
                arrow_order = arrow_order or []
            else:
                vertex_order = vertex_order or []
            continue
        if kind != "ident" or target is None:
            raise PresentationError(f"unexpected {val!r} in order stanza", lineno, col)
        (arrow_order if target == "arrows" else vertex_order).append(val)
    return arrow_order, vertex_order


def _parse_relation(quiver: Quiver, field: Field, toks, lineno) -> FreeElement:
    terms = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val, col = toks[i]
        if expect_term:
            if kind == "op" and val in "+-":
                sign = -sign if val == "-" else sign
                i += 1
                continue
            coeff = Fraction(1)
            if kind == "num":
                coeff = Fraction(val)
                if i + 1 >= len(toks) or toks[i + 1][1] != "*":
                    raise PresentationError("expected '*' after coefficient", lineno, col)
                i += 2
                if i >= len(toks):
                    raise PresentationError("missing path after coefficient", lineno, col)
                kind, val, col = toks[i]
            if kind != "ident":
                raise PresentationError(f"expected a path, got {val!r}", lineno, col)
            names = [(val, col)]
            i += 1
            while i + 1 < len(toks) and toks[i][1] == "." and toks[i + 1][0] == "ident":
                names.append((toks[i + 1][1], toks[i + 1][2]))
                i += 2
            if i < len(toks) and toks[i][1] == ".":
                raise PresentationError("dangling '.'", lineno, toks[i][2])
            path = _resolve_path(quiver, names, lineno)
            try:
                c = field(sign * coeff)
            except ZeroDivisionError as e:
                raise PresentationError(str(e), lineno, col) from None
            terms.append((path, c))
            sign = 1
            expect_term = False
        else:
            if kind == "op" and val in "+-":
                sign = -1 if val == "-" else 1
                expect_term = True
                i += 1
                continue
            raise PresentationError(f"expected '+' or '-', got {val!r}", lineno, col)
    if expect_term:
        raise PresentationError("relation ends with an operator or is empty", lineno)
    rel = FreeElement(quiver, field, terms)
    check_relation(rel, "relation", lineno)
    return rel


def _resolve_path(quiver: Quiver, names, lineno):
    if len(names) == 1 and names[0][0] in quiver.vindex:
        raise PresentationError(f"vertex {names[0][0]!r} used as a relation term (length 0)",
                                lineno, names[0][1])
    for n, col in names:
        if n not in quiver.aindex:
            raise PresentationError(f"unknown arrow {n!r}", lineno, col)
    try:
        return quiver.make_path([n for n, _ in names])
    except ValueError as e:
        raise PresentationError(str(e), lineno, names[0][1]) from None


def print_presentation(p: Presentation) -> str:
    q = p.quiver
    lines = []
    lines.append(f'algebra "{p.name}"' if p.name else "algebra")
    lines.append("field rational" if p.field.characteristic == 0 else f"field prime {p.field.characteristic}")
    lines.append("vertices " + " ".join(q.vertices))
    lines.append("arrows")
    for a in q.arrows:
        lines.append(f"  {a.name}: {q.vertices[a.source]} -> {q.vertices[a.target]}")
    lines.append("relations")
    for lab, r in zip(p.labels, p.relations):
        lines.append(f"  {_relation_text(r)}  # {lab}")
    lines.append("order arrows " + " ".join(q.arrow_order) + " vertices " + " ".join(q.vertex_order))
    return "\n".join(lines) + "\n"


def _relation_text(r: FreeElement) -> str:
    parts = []
    for k, (path, c) in enumerate(r.items()):
        neg = False
        if r.field.characteristic == 0 and c < 0:
            neg, c = True, -c
        body = r.quiver.path_str(path)
        if c != 1:
            body = f"{c}*{body}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


@dataclass
class Finding:
    kind: str
    message: str
    relations: tuple = ()


def validate(p: Presentation) -> list[Finding]:
    """Advisory findings: duplicates up to scalar, and relations implied by the others.

    The implied-relation check works modulo the admissibility truncation, so
    it requires the quotient to be finite dimensional; if it is not, that is
    reported as a finding instead.
    """
    from .quotient import QuotientError, build_quotient, relation_in_ideal

    findings: list[Finding] = []
    seen: dict = {}
    f = p.field
    for i, r in enumerate(p.relations):
        items = r.items()
        lead = items[0][1]
        inv = f.inv(lead)
        key = tuple((path, f.mul(c, inv)) for path, c in items)
        if key in seen:
            findings.append(Finding("duplicate", f"{p.labels[i]} duplicates {p.labels[seen[key]]} up to scalar",
                                    (seen[key], i)))
        else:
            seen[key] = i
    q = p.quiver
    if sorted(q.arrow_order) != sorted(a.name for a in q.arrows):
        findings.append(Finding("order", "arrow order incomplete"))
    dup = {i for fd in findings for i in fd.relations[1:]}
    try:
        cap = build_quotient(p).nilpotency + 1
        for i, r in enumerate(p.relations):
            if i in dup:
                continue
            others = [s for j, s in enumerate(p.relations) if j != i and j not in dup]
            if relation_in_ideal(p, r, others, cap=cap):
                findings.append(Finding("consequence", f"{p.labels[i]} follows from the other relations", (i,)))
    except QuotientError as e:
        findings.append(Finding("admissibility", str(e)))
    return findings
