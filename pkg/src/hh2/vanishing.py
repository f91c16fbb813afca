"""A sufficient combinatorial condition for HH^2 = 0, with a witness.

Hypotheses, checked in order:
  1. every boundary pair (v, w) of f2 has vΛw = 0 or a single nontip p;
  2. the relations of f2 at such a pair can be written p - q with q a path;
  3. every path of Y = {p} ∪ {q} owns an arrow occurring in no other path of Y;
  4. each q has such an arrow occurring exactly once in it.
When they hold, the map sending that arrow a to -a (all other arrows to 0)
has coboundary equal to the basis map "p - q ↦ p, others ↦ 0", so every
element of Hom(Q^2, Λ) is a coboundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg.matrix import EchelonBasis
from .quiver import path_length


def boundary_set(f2) -> list:
    """Endpoint pairs of the relations, sorted and without repeats."""
    return sorted(set(f2.ends))


def g2_set(A, f2) -> list:
    q = A.quiver
    out = set()
    for v, w in boundary_set(f2):
        out.update(A.hom_basis(v, w))
    return sorted(out, key=q.sort_key)


@dataclass
class SeparationAnalysis:
    paths: list
    layers: list
    private: dict          # path -> arrows occurring in it and in no other path of its layer's input

    @property
    def separated(self) -> bool:
        return sum(len(l) for l in self.layers) == len(set(self.paths))


def _level0(X: list) -> tuple:
    counts: dict = {}
    for p in X:
        for a in set(p):
            counts[a] = counts.get(a, 0) + 1
    layer, private = [], {}
    for p in X:
        own = [a for a in dict.fromkeys(p) if counts[a] == 1]
        if own:
            layer.append(p)
            private[p] = own
    return layer, private


def l_layers(X) -> SeparationAnalysis:
    """Layers L_0(X), L_1(X), ... until the remainder stops shrinking."""
    rest = list(dict.fromkeys(X))
    layers, private = [], {}
    while rest:
        layer, own = _level0(rest)
        if not layer:
            break
        layers.append(layer)
        for p in layer:
            private.setdefault(p, own[p])
        taken = set(layer)
        rest = [p for p in rest if p not in taken]
    return SeparationAnalysis(list(X), layers, private)


@dataclass
class Witness:
    relation: int
    p: tuple
    q: tuple
    arrow: int


@dataclass
class VanishingVerdict:
    applicable: bool
    reason: str = ""
    hypothesis: int = 0
    pair: tuple | None = None
    g2: list = dc_field(default_factory=list)
    Y: list = dc_field(default_factory=list)
    witnesses: list = dc_field(default_factory=list)
    relations: list = dc_field(default_factory=list)   # rewritten p - q relations, as dicts

    def describe(self, quiver) -> list:
        ps = quiver.path_str
        if not self.applicable:
            return [self.reason]
        out = []
        for w in self.witnesses:
            out.append(f"{ps(w.p)} - {ps(w.q)}: arrow {quiver.arrows[w.arrow].name}")
        return out or ["vacuous: every boundary pair has vΛw = 0"]


def _fail(hyp, reason, pair=None, **kw):
    return VanishingVerdict(False, reason, hyp, pair, **kw)


def vanishing_check(A, f2) -> VanishingVerdict:
    q = A.quiver
    F = A.field
    vname = lambda v: q.vertices[v]
    bdy = boundary_set(f2)
    pairs = []
    for v, w in bdy:
        basis = A.hom_basis(v, w)
        if len(basis) > 1:
            return _fail(1, f"dim vΛw > 1 at (v, w) = ({vname(v)}, {vname(w)}): dimension {len(basis)}", (v, w))
        if basis:
            pairs.append((v, w, basis[0]))
    g2 = [p for _, _, p in pairs]
    Y, found, rewritten = [], [], []
    for v, w, p in pairs:
        idx = [i for i, e in enumerate(f2.ends) if e == (v, w)]
        # columns: every path occurring, p last, so pivots land on the q's
        cols = sorted({path for i in idx for path in f2.elements[i].terms if path != p}, key=q.sort_key)
        cols.append(p)
        colidx = {c: k for k, c in enumerate(cols)}
        ech = EchelonBasis(F)
        for i in idx:
            ech.add({colidx[path]: c for path, c in f2.elements[i].terms.items()})
        ech.make_reduced()
        pk = len(cols) - 1
        for piv in sorted(ech.pivots):
            row = ech.pivots[piv]
            if piv == pk or len(row) != 2 or pk not in row:
                return _fail(2, f"relation at ({vname(v)}, {vname(w)}) is not of the form p - q "
                                f"with p = {q.path_str(p)}", (v, w))
            # row = q + c p; need p - q up to scaling, i.e. c = -1
            if row[pk] != F.neg(F.one):
                return _fail(2, f"relation at ({vname(v)}, {vname(w)}) is p - c*q with c != 1", (v, w))
            qq = cols[piv]
            Y.append(qq)
            found.append((f2.ends.index((v, w)), p, qq))
            rewritten.append({p: F.one, qq: F.neg(F.one)})
        Y.append(p)
    Y = list(dict.fromkeys(Y))
    analysis = l_layers(Y)
    level0 = set(analysis.layers[0]) if analysis.layers else set()
    for path in Y:
        if path not in level0:
            return _fail(3, f"L0(Y) != Y: {q.path_str(path)} has no arrow of its own", g2=g2, Y=Y)
    witnesses = []
    for rel, p, qq in found:
        once = [a for a in analysis.private[qq] if qq.count(a) == 1]
        if not once:
            return _fail(4, f"no associated arrow occurs exactly once in {q.path_str(qq)}", g2=g2, Y=Y)
        witnesses.append(Witness(rel, p, qq, once[0]))
    return VanishingVerdict(True, "", 0, None, g2, Y, witnesses, rewritten)


def coboundary_preimages(front, verdict: VanishingVerdict) -> list:
    """The maps ψ (arrow a ↦ -a, other arrows ↦ 0) over the Hom(Q^1, Λ) basis, one per witness."""
    from .cohomology import hom_basis_of
    A = front.algebra
    h1 = hom_basis_of(A, front.summands[1])
    return [{h1.index[(w.arrow, (w.arrow,))]: A.field.neg(A.field.one)} for w in verdict.witnesses]


def preimages_span_hom2(front, verdict: VanishingVerdict) -> bool:
    """Do the coboundaries of the witness maps span all of Hom(Q^2, Λ)?"""
    from .cohomology import hom_basis_of, matrix_of_d
    A = front.algebra
    d2 = matrix_of_d(front, 2)
    span = EchelonBasis(A.field)
    for psi in coboundary_preimages(front, verdict):
        span.add(d2.apply(psi))
    return len(span) == len(hom_basis_of(A, front.summands[2]))
