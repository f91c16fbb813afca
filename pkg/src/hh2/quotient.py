"""The finite-dimensional quotient KQ/I: nontip basis, normal forms, multiplication.

Everything is computed inside the truncation KQ/J^(L+1) (paths of length
<= L).  The image of I there is spanned by the products u.f.v with terms of
length > L dropped.  The quotient of that truncation is Λ/rad^(L+1), so its
dimension grows strictly with L until rad^L = 0; the first L where it stops
growing is the nilpotency index.
"""

from __future__ import annotations

from collections import defaultdict

from .linalg.field import Field
from .linalg.matrix import EchelonBasis
from .quiver import FreeElement, Quiver, elem_mul, path_length, vertex_path


class QuotientError(ValueError):
    pass


DEFAULT_CAP = 64
# give up rather than enumerate more paths than this in one truncation
MAX_TRUNCATION_PATHS = 5_000


def count_paths(quiver: Quiver, L: int) -> int:
    """Number of paths of length <= L (trivial paths included)."""
    n = quiver.num_vertices
    ways = [1] * n  # paths of the current length ending at each vertex
    total = n
    for _ in range(L):
        nxt = [0] * n
        for a in quiver.arrows:
            nxt[a.target] += ways[a.source]
        ways = nxt
        total += sum(ways)
        if not total or not any(ways):
            break
    return total


class _Truncation:
    """Paths of length <= L and the echelon basis of the image of an ideal."""

    def __init__(self, quiver: Quiver, field: Field, L: int):
        self.quiver = quiver
        self.field = field
        self.L = L
        paths = quiver.enumerate_paths(L)
        paths.reverse()  # descending lenlex: column 0 is the largest path
        self.paths = paths
        self.col = {p: i for i, p in enumerate(paths)}
        self.ending = defaultdict(list)
        self.starting = defaultdict(list)
        for p in paths:
            self.ending[quiver.terminus(p)].append(p)
            self.starting[quiver.origin(p)].append(p)

    def product_rows(self, gen: dict, outer_min: int = 0):
        """Sparse rows of u.gen.v over all u, v with the product not entirely truncated."""
        q = self.quiver
        L = self.L
        col = self.col
        mod = self.field.characteristic
        some = next(iter(gen))
        o, t = q.origin(some), q.terminus(some)
        gmin = min(path_length(p) for p in gen)
        terms = list(gen.items())
        for u in self.ending[o]:
            lu = path_length(u)
            if lu + gmin > L:
                continue
            for v in self.starting[t]:
                lv = path_length(v)
                if lu + lv < outer_min or lu + gmin + lv > L:
                    continue
                row = {}
                for path, c in terms:
                    if lu + len_nz(path) + lv > L:
                        continue
                    w = q.compose(q.compose(u, path), v)
                    j = col[w]
                    x = row.get(j, 0) + c
                    if mod:
                        x %= mod
                    if x:
                        row[j] = x
                    else:
                        row.pop(j, None)
                if row:
                    yield row

    def reduce_ideal(self, gens, outer_min: int = 0) -> EchelonBasis:
        basis = EchelonBasis(self.field)
        for g in gens:
            for row in self.product_rows(g, outer_min):
                basis.add(row)
        return basis

    def vector(self, elem: dict) -> dict:
        out = {}
        for p, c in elem.items():
            if path_length(p) <= self.L:
                out[self.col[p]] = c
        return out


def len_nz(p) -> int:
    return 0 if p[0] < 0 else len(p)


class QuotientAlgebra:
    """Λ = KQ/I with its nontip basis and normal-form table."""

    def __init__(self, presentation, nilpotency: int, trunc: _Truncation, basis: EchelonBasis):
        self.presentation = presentation
        self.quiver: Quiver = presentation.quiver
        self.field: Field = presentation.field
        self.nilpotency = nilpotency
        q = self.quiver
        basis.make_reduced()
        pivots = basis.pivots
        paths = trunc.paths
        self.tip_paths = sorted((paths[c] for c in pivots), key=q.sort_key)
        nontips = [p for i, p in enumerate(paths) if i not in pivots]
        nontips.sort(key=q.sort_key)
        self.nontips = nontips
        self.index = {p: i for i, p in enumerate(nontips)}
        f = self.field
        nf: dict = {}
        for c, row in pivots.items():
            p = paths[c]
            if path_length(p) >= nilpotency:
                continue
            val = {}
            for j, x in row.items():
                if j != c:
                    val[paths[j]] = f.neg(x)
            nf[p] = val
        for p in nontips:
            nf[p] = {p: f.one}
        self._nf = nf
        self._hom: dict = {}
        self._mul_cache: dict = {}

    @property
    def dimension(self) -> int:
        return len(self.nontips)

    def minimal_tips(self) -> list:
        tips = set(self.tip_paths)
        out = []
        for p in self.tip_paths:
            n = path_length(p)
            if n == 0:
                continue
            proper = any(p[i:j] in tips for i in range(n) for j in range(i + 1, n + 1) if (i, j) != (0, n))
            if not proper:
                out.append(p)
        return out

    def path_nf(self, p) -> dict:
        if path_length(p) >= self.nilpotency:
            return {}
        return self._nf[p]

    def normal_form(self, f) -> dict:
        """Normal form of a KQ element (FreeElement or {path: coeff})."""
        terms = f.terms if isinstance(f, FreeElement) else f
        fld = self.field
        mod = fld.characteristic
        out: dict = {}
        for p, c in terms.items():
            for r, x in self.path_nf(p).items():
                v = out.get(r, 0) + c * x
                if mod:
                    v %= mod
                if v:
                    out[r] = v
                else:
                    out.pop(r, None)
        return out

    def multiply(self, x: dict, y: dict) -> dict:
        return self.normal_form(elem_mul(self.quiver, self.field, x, y))

    def mul_paths(self, p, q) -> dict:
        """Normal form of the product of two paths (cached)."""
        key = (p, q)
        hit = self._mul_cache.get(key)
        if hit is None:
            w = self.quiver.compose(p, q)
            hit = {} if w is None else self.path_nf(w)
            self._mul_cache[key] = hit
        return hit

    def hom_basis(self, v: int, w: int) -> list:
        key = (v, w)
        if key not in self._hom:
            q = self.quiver
            self._hom[key] = [p for p in self.nontips if q.origin(p) == v and q.terminus(p) == w]
        return self._hom[key]

    def nontips_from(self, v: int) -> list:
        q = self.quiver
        return [p for p in self.nontips if q.origin(p) == v]

    def nontips_to(self, w: int) -> list:
        q = self.quiver
        return [p for p in self.nontips if q.terminus(p) == w]

    def nontip_count_by_pair(self) -> dict:
        q = self.quiver
        out: dict = {}
        for p in self.nontips:
            k = (q.vertices[q.origin(p)], q.vertices[q.terminus(p)])
            out[k] = out.get(k, 0) + 1
        return out

    def element_str(self, x: dict) -> str:
        return FreeElement(self.quiver, self.field, x).to_str()

    def one(self) -> dict:
        return {vertex_path(v): self.field.one for v in range(self.quiver.num_vertices)}

    def __repr__(self) -> str:
        return f"QuotientAlgebra(dim={self.dimension}, N={self.nilpotency})"


def _truncated_dim(pres, L: int):
    trunc = _Truncation(pres.quiver, pres.field, L)
    basis = trunc.reduce_ideal([r.terms for r in pres.relations])
    return len(trunc.paths) - len(basis), trunc, basis


def build_quotient(pres, cap: int = DEFAULT_CAP) -> QuotientAlgebra:
    """Build Λ = KQ/I; raise QuotientError if rad^N != 0 for every N <= cap."""
    if cap < 1:
        raise ValueError("cap must be positive")
    prev = pres.quiver.num_vertices  # dim Λ/rad
    for L in range(1, cap + 1):
        if count_paths(pres.quiver, L) > MAX_TRUNCATION_PATHS:
            raise QuotientError(f"not admissible within reach: no rad^N = 0 found for N < {L} "
                                f"and the length-{L} truncation has too many paths")
        dim, trunc, basis = _truncated_dim(pres, L)
        if dim == prev:
            return QuotientAlgebra(pres, L, trunc, basis)
        prev = dim
    raise QuotientError(f"not admissible within cap: rad^N != 0 for all N <= {cap}")


def normal_form(A: QuotientAlgebra, f) -> dict:
    return A.normal_form(f)


def multiply(A: QuotientAlgebra, x: dict, y: dict) -> dict:
    return A.multiply(x, y)


def hom_basis(A: QuotientAlgebra, v: int, w: int) -> list:
    return A.hom_basis(v, w)


def relation_in_ideal(pres, r, others, cap: int | None = None) -> bool:
    """Is ``r`` in the ideal generated by ``others``?

    If it is, both ideals coincide with the full one, so the nilpotency index
    of the full presentation bounds the search.
    """
    if cap is None:
        cap = build_quotient(pres).nilpotency + 1
    if not others:
        return False
    sub = pres.with_relations(others)
    try:
        B = build_quotient(sub, cap=cap)
    except QuotientError:
        return False
    return not B.normal_form(r)


def format_element(A: QuotientAlgebra, x: dict) -> str:
    return A.element_str(x)


__all__ = ["QuotientAlgebra", "QuotientError", "build_quotient", "normal_form", "multiply",
           "hom_basis", "relation_in_ideal"]
