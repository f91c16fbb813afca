"""Quivers, paths, elements of the free path algebra KQ and the length-lexicographic order.

A path is a tuple of ints.  A non-trivial path is the tuple of its arrow
indices (composed left to right).  The trivial path at vertex ``v`` is the
1-tuple ``(-(v + 1),)``.  Tuples keep paths hashable and cheap to concatenate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg.field import Field, format_scalar


Path = tuple


def vertex_path(v: int) -> Path:
    return (-(v + 1),)


def is_trivial(p: Path) -> bool:
    return p[0] < 0


def path_length(p: Path) -> int:
    return 0 if p[0] < 0 else len(p)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """Vertices and arrows with a fixed total order.

    ``vertex_rank[v]`` and ``arrow_rank[a]`` are integers; larger rank means
    larger in the order.  By default the first declared vertex/arrow is the
    largest, so declaration order is read as descending.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]],
                 arrow_order: Sequence[str] | None = None,
                 vertex_order: Sequence[str] | None = None):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex name")
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.arrows: list[Arrow] = []
        self.aindex: dict[str, int] = {}
        for name, src, tgt in arrows:
            if name in self.aindex or name in self.vindex:
                raise ValueError(f"duplicate name {name!r}")
            for end in (src, tgt):
                if end not in self.vindex:
                    raise ValueError(f"arrow {name!r} uses undeclared vertex {end!r}")
            self.aindex[name] = len(self.arrows)
            self.arrows.append(Arrow(name, self.vindex[src], self.vindex[tgt]))
        self.set_order(arrow_order, vertex_order)
        self.out_arrows = [[a for a, ar in enumerate(self.arrows) if ar.source == v]
                           for v in range(len(self.vertices))]
        self.in_arrows = [[a for a, ar in enumerate(self.arrows) if ar.target == v]
                          for v in range(len(self.vertices))]

    def set_order(self, arrow_order=None, vertex_order=None) -> None:
        arrow_order = list(arrow_order) if arrow_order else [a.name for a in self.arrows]
        vertex_order = list(vertex_order) if vertex_order else list(self.vertices)
        if sorted(arrow_order) != sorted(a.name for a in self.arrows):
            raise ValueError("arrow order must list every arrow exactly once")
        if sorted(vertex_order) != sorted(self.vertices):
            raise ValueError("vertex order must list every vertex exactly once")
        n = len(arrow_order)
        self.arrow_rank = [0] * n
        for pos, name in enumerate(arrow_order):
            self.arrow_rank[self.aindex[name]] = n - 1 - pos
        m = len(vertex_order)
        self.vertex_rank = [0] * m
        for pos, name in enumerate(vertex_order):
            self.vertex_rank[self.vindex[name]] = m - 1 - pos
        self.arrow_order = arrow_order
        self.vertex_order = vertex_order

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    # paths

    def origin(self, p: Path) -> int:
        return -p[0] - 1 if p[0] < 0 else self.arrows[p[0]].source

    def terminus(self, p: Path) -> int:
        return -p[0] - 1 if p[0] < 0 else self.arrows[p[-1]].target

    def compose(self, p: Path, q: Path):
        """Concatenate ``p`` then ``q``; None when t(p) != o(q)."""
        if self.terminus(p) != self.origin(q):
            return None
        if p[0] < 0:
            return q
        if q[0] < 0:
            return p
        return p + q

    def make_path(self, arrow_names: Sequence[str]) -> Path:
        if not arrow_names:
            raise ValueError("empty path; use vertex_path")
        idx = []
        for n in arrow_names:
            if n not in self.aindex:
                raise KeyError(f"unknown arrow {n!r}")
            idx.append(self.aindex[n])
        for a, b in zip(idx, idx[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                raise ValueError(f"arrows {self.arrows[a].name} and {self.arrows[b].name} do not compose")
        return tuple(idx)

    def path_by_name(self, text: str) -> Path:
        """'a.b.c' or a vertex name."""
        text = text.strip()
        if text in self.vindex:
            return vertex_path(self.vindex[text])
        return self.make_path([t for t in text.split(".")])

    def path_str(self, p: Path) -> str:
        if p[0] < 0:
            return "e_" + self.vertices[-p[0] - 1]
        return ".".join(self.arrows[a].name for a in p)

    def sort_key(self, p: Path):
        """Key whose natural order is the length-lexicographic order."""
        if p[0] < 0:
            return (0, (self.vertex_rank[-p[0] - 1],))
        ar = self.arrow_rank
        return (len(p), tuple(ar[a] for a in p))

    def lenlex_less(self, p: Path, q: Path) -> bool:
        return self.sort_key(p) < self.sort_key(q)

    def enumerate_paths(self, max_len: int) -> list[Path]:
        """All paths of length <= max_len, ascending in lenlex."""
        out = [vertex_path(v) for v in range(self.num_vertices)]
        layer = [(a,) for a in range(self.num_arrows)] if max_len >= 1 else []
        length = 1
        while layer and length <= max_len:
            out.extend(layer)
            if length == max_len:
                break
            nxt = []
            for p in layer:
                for b in self.out_arrows[self.arrows[p[-1]].target]:
                    nxt.append(p + (b,))
            layer = nxt
            length += 1
        out.sort(key=self.sort_key)
        return out

    def paths_of_length(self, length: int, start: int | None = None) -> list[Path]:
        if length == 0:
            vs = range(self.num_vertices) if start is None else [start]
            return [vertex_path(v) for v in vs]
        if start is None:
            layer = [(a,) for a in range(self.num_arrows)]
        else:
            layer = [(a,) for a in self.out_arrows[start]]
        for _ in range(length - 1):
            layer = [p + (b,) for p in layer for b in self.out_arrows[self.arrows[p[-1]].target]]
        return layer

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return (self.vertices, self.arrows, self.arrow_order, self.vertex_order) == \
            (other.vertices, other.arrows, other.arrow_order, other.vertex_order)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Quiver({self.num_vertices} vertices, {self.num_arrows} arrows)"


# elements of KQ: dicts {path: nonzero scalar}


def elem_add(field: Field, f: dict, g: dict, scale=1) -> dict:
    out = dict(f)
    p = field.characteristic
    for path, c in g.items():
        v = out.get(path, 0) + scale * c
        if p:
            v %= p
        if v:
            out[path] = v
        else:
            out.pop(path, None)
    return out


def elem_mul(quiver: Quiver, field: Field, f: dict, g: dict) -> dict:
    out: dict = {}
    p = field.characteristic
    for x, a in f.items():
        for y, b in g.items():
            z = quiver.compose(x, y)
            if z is None:
                continue
            v = out.get(z, 0) + a * b
            if p:
                v %= p
            if v:
                out[z] = v
            else:
                out.pop(z, None)
    return out


class FreeElement:
    """A K-linear combination of paths in KQ with canonical (sorted, non-zero) terms."""

    __slots__ = ("quiver", "field", "terms")

    def __init__(self, quiver: Quiver, field: Field, terms: dict | Iterable = ()):
        self.quiver = quiver
        self.field = field
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        for path, c in items:
            c = field(c)
            if not c:
                continue
            v = field.add(acc.get(path, field.zero), c)
            if v:
                acc[path] = v
            else:
                acc.pop(path, None)
        self.terms = acc

    @classmethod
    def path(cls, quiver: Quiver, field: Field, p: Path, coeff=1) -> "FreeElement":
        return cls(quiver, field, {p: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def paths(self) -> list[Path]:
        return sorted(self.terms, key=self.quiver.sort_key)

    def items(self):
        """(path, coeff) pairs, descending in lenlex."""
        return [(p, self.terms[p]) for p in sorted(self.terms, key=self.quiver.sort_key, reverse=True)]

    def tip(self) -> Path:
        if not self.terms:
            raise ValueError("tip of zero element")
        return max(self.terms, key=self.quiver.sort_key)

    def is_uniform(self) -> bool:
        q = self.quiver
        ends = {(q.origin(p), q.terminus(p)) for p in self.terms}
        return len(ends) <= 1

    def endpoints(self) -> tuple[int, int]:
        q = self.quiver
        ends = {(q.origin(p), q.terminus(p)) for p in self.terms}
        if len(ends) != 1:
            raise ValueError("element is not uniform or is zero")
        return next(iter(ends))

    def min_length(self) -> int:
        return min(path_length(p) for p in self.terms)

    def max_length(self) -> int:
        return max(path_length(p) for p in self.terms)

    def __add__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(self.quiver, self.field, elem_add(self.field, self.terms, other.terms))

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(self.quiver, self.field, elem_add(self.field, self.terms, other.terms, -1))

    def __neg__(self) -> "FreeElement":
        return FreeElement(self.quiver, self.field, {p: -c for p, c in self.terms.items()})

    def scale(self, c) -> "FreeElement":
        c = self.field(c)
        return FreeElement(self.quiver, self.field, {p: self.field.mul(v, c) for p, v in self.terms.items()})

    def __mul__(self, other: "FreeElement") -> "FreeElement":
        return kq_multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (p, c) in enumerate(self.items()):
            ps = self.quiver.path_str(p)
            neg = False
            if self.field.characteristic == 0 and c < 0:
                neg, c = True, -c
            cs = "" if c == 1 else format_scalar(c) + "*"
            sign = ("-" if neg else "") if i == 0 else (" - " if neg else " + ")
            parts.append(f"{sign}{cs}{ps}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"FreeElement({self.to_str()})"


def compose(quiver: Quiver, p: Path, q: Path):
    return quiver.compose(p, q)


def tip(f: FreeElement) -> Path:
    return f.tip()


def kq_multiply(f: FreeElement, g: FreeElement) -> FreeElement:
    return FreeElement(f.quiver, f.field, elem_mul(f.quiver, f.field, f.terms, g.terms))
