"""Front of the minimal projective bimodule resolution Q3 -> Q2 -> Q1 -> Q0 -> Λ.

Q0 has one summand per vertex, Q1 one per arrow, Q2 one per element of a
minimal generating set f2 of I, Q3 one per element of f3.  f3 comes from the
minimal right-module resolutions of the simple modules: for each vertex v
the third syzygy of S_v is computed by linear algebra and its minimal
generators are lifted to elements y = sum f2_i p_i of KQ.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

from .linalg.matrix import EchelonBasis, Matrix, nullspace_basis, rank, solve_combination
from .quiver import FreeElement, elem_add, elem_mul, path_length, vertex_path
from .quotient import QuotientAlgebra, _Truncation

log = logging.getLogger(__name__)


class ResolutionError(RuntimeError):
    pass


@dataclass
class RelationSet:
    elements: list
    labels: list
    ends: list  # (origin, terminus) per element

    def __len__(self):
        return len(self.elements)


def make_relation_set(elements, labels=None) -> RelationSet:
    labels = list(labels) if labels else [f"r{i + 1}" for i in range(len(elements))]
    return RelationSet(list(elements), labels, [e.endpoints() for e in elements])


def minimalize_relations(A: QuotientAlgebra, gens, labels=None) -> RelationSet:
    """Greedy subset of ``gens`` whose images form a basis of I/(JI + IJ).

    Works in KQ/J^(N+1); since J^N lies in I, J^(N+1) lies in JI, so the
    truncation loses nothing.
    """
    gens = list(gens)
    labels = list(labels) if labels else [f"r{i + 1}" for i in range(len(gens))]
    trunc = _Truncation(A.quiver, A.field, A.nilpotency)
    basis = trunc.reduce_ideal([g.terms for g in gens], outer_min=1)
    keep, keep_labels = [], []
    for g, lab in zip(gens, labels):
        if basis.add(trunc.vector(g.terms)):
            keep.append(g)
            keep_labels.append(lab)
    return make_relation_set(keep, keep_labels)


@dataclass
class F3Element:
    y: FreeElement
    origin: int
    terminus: int
    right: list  # [(i, p_i FreeElement)]
    left: list   # [(coeff, q FreeElement, i, r FreeElement)]
    exact: bool = True  # left decomposition equals y exactly in KQ

    def right_sum(self, f2: RelationSet) -> FreeElement:
        out = FreeElement(self.y.quiver, self.y.field)
        for i, p in self.right:
            out = out + f2.elements[i] * p
        return out

    def left_sum(self, f2: RelationSet) -> FreeElement:
        out = FreeElement(self.y.quiver, self.y.field)
        for c, q, i, r in self.left:
            out = out + (q * f2.elements[i] * r).scale(c)
        return out


def compute_f3(A: QuotientAlgebra, f2: RelationSet, minimal: bool = True) -> list:
    """Lifted generators of the third syzygies of the simple modules.

    With ``minimal=False`` the set f2 may be redundant; the lifts may then
    have unit coefficients p_i and the resulting front is exact but not
    minimal.
    """
    out = []
    for v in range(A.quiver.num_vertices):
        out.extend(_f3_at_vertex(A, f2, v, minimal))
    return out


def _f3_at_vertex(A: QuotientAlgebra, f2: RelationSet, v: int, minimal: bool = True) -> list:
    q = A.quiver
    F = A.field
    rels = [i for i, (o, _) in enumerate(f2.ends) if o == v]
    if not rels:
        return []
    # P1 basis: (a, mu) with o(a) = v, mu a nontip from t(a)
    p1_index = {}
    for a in q.out_arrows[v]:
        for mu in A.nontips_from(q.arrows[a].target):
            p1_index[(a, mu)] = len(p1_index)
    # P2 basis grouped by right end w = t(mu)
    p2_by_end: dict = {}
    for i in rels:
        t = f2.ends[i][1]
        for mu in A.nontips_from(t):
            p2_by_end.setdefault(q.terminus(mu), []).append((i, mu))
    splits = {}
    for i in rels:
        parts = {}
        for p, c in f2.elements[i].terms.items():
            a = p[0]
            rest = p[1:] if len(p) > 1 else vertex_path(q.arrows[a].target)
            parts.setdefault(a, {})[rest] = c
        splits[i] = parts

    def image(i, mu) -> dict:
        vec = {}
        for a, xa in splits[i].items():
            for path, c in xa.items():
                for r, x in A.mul_paths(path, mu).items():
                    j = p1_index[(a, r)]
                    val = F.add(vec.get(j, F.zero), F.mul(c, x))
                    if val:
                        vec[j] = val
                    else:
                        vec.pop(j, None)
        return vec

    # kernel per right end, as sparse vectors over local P2 indices
    kernels: dict = {}
    local_index: dict = {}
    for w, basis in p2_by_end.items():
        local_index[w] = {b: k for k, b in enumerate(basis)}
        cols = [image(i, mu) for i, mu in basis]
        M = Matrix.from_columns(F, len(p1_index), cols)
        kernels[w] = [{k: x for k, x in enumerate(vec) if x} for vec in nullspace_basis(M)]

    results = []
    for w in sorted(p2_by_end, key=lambda u: q.vertex_order.index(q.vertices[u])):
        K = kernels[w]
        if not K:
            continue
        idx = local_index[w]
        basis_w = p2_by_end[w]
        R = EchelonBasis(F)
        for b in q.in_arrows[w]:
            src = q.arrows[b].source
            for k in kernels.get(src, []):
                src_basis = p2_by_end[src]
                kb = {}
                for pos, c in k.items():
                    i, mu = src_basis[pos]
                    for r, x in A.mul_paths(mu, (b,)).items():
                        j = idx[(i, r)]
                        val = F.add(kb.get(j, F.zero), F.mul(c, x))
                        if val:
                            kb[j] = val
                        else:
                            kb.pop(j, None)
                if kb:
                    R.add(kb)
        for k in K:
            red = R.reduce(k, full=True)
            if not red:
                continue
            if R.add(red):
                results.append(_lift(A, f2, v, w, basis_w, red, minimal))
    return results


def _lift(A: QuotientAlgebra, f2: RelationSet, v: int, w: int, basis_w, vec: dict,
          minimal: bool = True) -> F3Element:
    q = A.quiver
    F = A.field
    # normalise: smallest position first, coefficient 1
    lead = min(vec)
    inv = F.inv(vec[lead])
    vec = {k: F.mul(c, inv) for k, c in vec.items()}
    pcomp: dict = {}
    for pos in sorted(vec):
        i, mu = basis_w[pos]
        if minimal and path_length(mu) == 0:
            raise ResolutionError("third syzygy generator has a unit component (resolution not minimal)")
        pcomp.setdefault(i, {})[mu] = vec[pos]
    y: dict = {}
    right = []
    for i in sorted(pcomp):
        p = pcomp[i]
        right.append((i, FreeElement(q, F, p)))
        y = elem_add(F, y, elem_mul(q, F, f2.elements[i].terms, p))
    if not y:
        raise ResolutionError("lifted f3 element is zero")
    yel = FreeElement(q, F, y)
    left, exact = _left_decomposition(A, f2, y)
    return F3Element(yel, v, w, right, left, exact)


def _left_decomposition(A: QuotientAlgebra, f2: RelationSet, y: dict):
    q = A.quiver
    F = A.field
    groups: dict = {}
    for p, c in y.items():
        a = p[0]
        rest = p[1:] if len(p) > 1 else vertex_path(q.arrows[a].target)
        groups.setdefault(a, {})[rest] = c
    left = []
    exact = True
    for a in sorted(groups, key=lambda b: -q.arrow_rank[b]):
        wa = groups[a]
        if A.normal_form(wa):
            raise ResolutionError("left decomposition failed: component is not in the ideal")
        terms, ex = _express_in_ideal(A, f2, wa)
        exact = exact and ex
        apath = (a,)
        for c, u, i, r in terms:
            left.append((c, FreeElement(q, F, {q.compose(apath, u): F.one}), i, FreeElement(q, F, {r: F.one})))
    return left, exact


def _express_in_ideal(A: QuotientAlgebra, f2: RelationSet, w: dict):
    """Write w = sum c u f v with f in f2; exact in KQ when possible.

    Falls back to equality modulo paths of length >= 2N - 1, which is enough:
    after prefixing an arrow, such paths have zero image under the Leibniz
    derivation into Λ ⊗ Λ.
    """
    q = A.quiver
    F = A.field
    N = A.nilpotency
    some = next(iter(w))
    o, t = q.origin(some), q.terminus(some)
    maxlen = max(path_length(p) for p in w)
    limit = max(maxlen, 2 * N - 2)
    for L in range(maxlen, limit + 1):
        truncated = L == limit
        res = _solve_in_ideal(A, f2, w, o, t, L, truncated)
        if res is not None:
            return res, not truncated
    raise ResolutionError("left decomposition failed: no expression found")


def _solve_in_ideal(A, f2, w, o, t, L, truncated):
    q = A.quiver
    F = A.field
    paths = q.enumerate_paths(L)
    by_ends: dict = {}
    for p in paths:
        by_ends.setdefault((q.origin(p), q.terminus(p)), []).append(p)
    cols: dict = {}

    def col(p):
        if p not in cols:
            cols[p] = len(cols)
        return cols[p]

    gens = []
    triples = []
    for i, f in enumerate(f2.elements):
        fo, ft = f2.ends[i]
        fmax = f.max_length()
        fmin = f.min_length()
        for u in by_ends.get((o, fo), []):
            lu = path_length(u)
            if lu + fmin > L:
                continue
            for v in by_ends.get((ft, t), []):
                lv = path_length(v)
                if lu + lv + (fmin if truncated else fmax) > L:
                    continue
                row = {}
                for p, c in f.terms.items():
                    if lu + path_length(p) + lv > L:
                        continue
                    j = col(q.compose(q.compose(u, p), v))
                    row[j] = F.add(row.get(j, F.zero), c)
                row = {j: c for j, c in row.items() if c}
                if row:
                    gens.append(row)
                    triples.append((u, i, v))
    target = {}
    for p, c in w.items():
        if path_length(p) <= L:
            target[col(p)] = c
    if not gens:
        return None
    coeffs = solve_combination(target, gens, F)
    if coeffs is None:
        return None
    return [(c, u, i, v) for c, (u, i, v) in zip(coeffs, triples) if c]


# formal maps: per generator a list of (coeff, lambda, summand, mu) with lambda, mu nontips


def _tensor_terms(A: QuotientAlgebra, left: dict, s: int, right: dict, scale=1):
    F = A.field
    L = A.normal_form(left)
    R = A.normal_form(right)
    out = []
    for lp, lc in L.items():
        for rp, rc in R.items():
            c = F.mul(F(scale), F.mul(lc, rc))
            if c:
                out.append((c, lp, s, rp))
    return out


def _collect(F, terms):
    acc: dict = {}
    for c, lp, s, rp in terms:
        k = (lp, s, rp)
        val = F.add(acc.get(k, F.zero), c)
        if val:
            acc[k] = val
        else:
            acc.pop(k, None)
    return [(c, lp, s, rp) for (lp, s, rp), c in acc.items()]


@dataclass
class RealizedMap:
    """Matrix of a bimodule map on K-bases, stored block by (o(λ), t(μ))."""
    blocks: dict  # (v, w) -> (source basis, target basis, columns as sparse dicts)

    def rank(self, field) -> int:
        total = 0
        for src, tgt, cols in self.blocks.values():
            if cols:
                total += rank(Matrix.from_columns(field, len(tgt), cols))
        return total


@dataclass
class ResolutionFront:
    algebra: QuotientAlgebra
    f2: RelationSet
    f3: list
    summands: list  # per degree 0..3: list of (origin, terminus)
    formal: list    # per degree 1..3 (index 0 unused): list per generator of terms
    realized: dict = dc_field(default_factory=dict)

    def dims(self) -> list:
        A = self.algebra
        out = []
        for summ in self.summands:
            out.append(sum(len(A.nontips_to(o)) * len(A.nontips_from(t)) for o, t in summ))
        return out


def build_front(A: QuotientAlgebra, f2: RelationSet, f3=None, realize: bool = True,
                minimal: bool = True) -> ResolutionFront:
    q = A.quiver
    F = A.field
    if f3 is None:
        f3 = compute_f3(A, f2, minimal)
    s0 = [(v, v) for v in range(q.num_vertices)]
    s1 = [(ar.source, ar.target) for ar in q.arrows]
    s2 = list(f2.ends)
    s3 = [(y.origin, y.terminus) for y in f3]
    A1 = []
    for a, ar in enumerate(q.arrows):
        terms = _tensor_terms(A, {vertex_path(ar.source): 1}, ar.source, {(a,): 1})
        terms += _tensor_terms(A, {(a,): 1}, ar.target, {vertex_path(ar.target): 1}, -1)
        A1.append(_collect(F, terms))
    A2 = [_collect(F, a2_terms(A, x)) for x in f2.elements]
    A3 = []
    for y in f3:
        terms = []
        for i, p in y.right:
            terms += _tensor_terms(A, {vertex_path(y.origin): 1}, i, p.terms)
        for c, qq, i, r in y.left:
            terms += _tensor_terms(A, qq.terms, i, r.terms, F.neg(c))
        A3.append(_collect(F, terms))
    front = ResolutionFront(A, f2, f3, [s0, s1, s2, s3], [None, A1, A2, A3])
    if realize:
        for k in (1, 2, 3):
            front.realized[k] = realize_map(A, front.summands[k], front.summands[k - 1], front.formal[k])
    return front


def a2_terms(A: QuotientAlgebra, x: FreeElement):
    q = A.quiver
    terms = []
    for p, c in x.terms.items():
        n = len(p)
        for k in range(n):
            left = p[:k] if k else vertex_path(q.arrows[p[0]].source)
            right = p[k + 1:] if k + 1 < n else vertex_path(q.arrows[p[-1]].target)
            terms += _tensor_terms(A, {left: 1}, p[k], {right: 1}, c)
    return terms


def _basis_elements(A: QuotientAlgebra, summands):
    """Basis (λ, s, μ) of ⊕ Λo(s) ⊗ t(s)Λ grouped by block (o(λ), t(μ))."""
    q = A.quiver
    blocks: dict = {}
    for s, (o, t) in enumerate(summands):
        lams = A.nontips_to(o)
        mus = A.nontips_from(t)
        for lam in lams:
            for mu in mus:
                blocks.setdefault((q.origin(lam), q.terminus(mu)), []).append((lam, s, mu))
    return blocks


def realize_map(A: QuotientAlgebra, src_summands, tgt_summands, formal) -> RealizedMap:
    F = A.field
    src_blocks = _basis_elements(A, src_summands)
    tgt_blocks = _basis_elements(A, tgt_summands)
    blocks = {}
    keys = set(src_blocks) | set(tgt_blocks)
    for key in sorted(keys):
        src = src_blocks.get(key, [])
        tgt = tgt_blocks.get(key, [])
        tindex = {b: i for i, b in enumerate(tgt)}
        cols = []
        for lam, s, mu in src:
            vec: dict = {}
            for c, lp, t, rp in formal[s]:
                left = A.mul_paths(lam, lp)
                if not left:
                    continue
                right = A.mul_paths(rp, mu)
                if not right:
                    continue
                for l2, lc in left.items():
                    for r2, rc in right.items():
                        j = tindex[(l2, t, r2)]
                        val = F.add(vec.get(j, F.zero), F.mul(c, F.mul(lc, rc)))
                        if val:
                            vec[j] = val
                        else:
                            vec.pop(j, None)
            cols.append(vec)
        blocks[key] = (src, tgt, cols)
    return RealizedMap(blocks)


def _compose_zero(F, outer: RealizedMap, inner: RealizedMap) -> bool:
    """outer ∘ inner == 0, checked block by block."""
    for key, (src, mid, cols) in inner.blocks.items():
        if not cols:
            continue
        osrc, otgt, ocols = outer.blocks.get(key, ([], [], []))
        if not ocols:
            continue
        M = Matrix.from_columns(F, len(otgt), ocols)
        for col in cols:
            if M.apply(col):
                return False
    return True


@dataclass
class ExactnessReport:
    ok: bool
    ranks: dict
    dims: dict
    failures: list


def check_exactness(front: ResolutionFront) -> ExactnessReport:
    A = front.algebra
    F = A.field
    if not front.realized:
        for k in (1, 2, 3):
            front.realized[k] = realize_map(A, front.summands[k], front.summands[k - 1], front.formal[k])
    dims = front.dims()
    r1 = front.realized[1].rank(F)
    r2 = front.realized[2].rank(F)
    r3 = front.realized[3].rank(F)
    failures = []
    if r1 != dims[0] - A.dimension:
        failures.append(f"rank A1 = {r1}, expected dim Q0 - dim Λ = {dims[0] - A.dimension}")
    if r2 != dims[1] - r1:
        failures.append(f"rank A2 = {r2}, expected dim Q1 - rank A1 = {dims[1] - r1}")
    if r3 != dims[2] - r2:
        failures.append(f"rank A3 = {r3}, expected dim Q2 - rank A2 = {dims[2] - r2}")
    if not _compose_zero(F, front.realized[1], front.realized[2]):
        failures.append("A1 A2 != 0")
    if not _compose_zero(F, front.realized[2], front.realized[3]):
        failures.append("A2 A3 != 0")
    ranks = {"A1": r1, "A2": r2, "A3": r3}
    return ExactnessReport(not failures, ranks, {f"Q{i}": d for i, d in enumerate(dims)}, failures)
