"""HH^0, HH^1 and HH^2 from the resolution front.

Hom(Q^i, Λ) is identified with the direct sum of o(s)Λt(s) over the
summands s of Q^i (a map is determined by where it sends each generator),
so its basis is the set of pairs (summand, nontip).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg.matrix import EchelonBasis, Matrix, nullspace_basis, rank, rref
from .quiver import FreeElement
from .resolution import ResolutionFront


@dataclass
class HomBasis:
    summands: list       # (origin, terminus) per summand
    entries: list        # flat list of (summand, nontip)
    index: dict          # (summand, nontip) -> flat index

    def __len__(self):
        return len(self.entries)


def hom_basis_of(A, summands) -> HomBasis:
    entries = []
    for s, (o, t) in enumerate(summands):
        for nu in A.hom_basis(o, t):
            entries.append((s, nu))
    return HomBasis(list(summands), entries, {e: i for i, e in enumerate(entries)})


def matrix_of_d(front: ResolutionFront, i: int) -> Matrix:
    """Matrix of f -> f∘A_i; columns over Hom(Q^{i-1}, Λ), rows over Hom(Q^i, Λ)."""
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    A = front.algebra
    F = A.field
    src = hom_basis_of(A, front.summands[i - 1])
    tgt = hom_basis_of(A, front.summands[i])
    # group formal terms by the summand of Q^{i-1} they hit
    by_t: dict = {}
    for s, terms in enumerate(front.formal[i]):
        for c, lam, t, mu in terms:
            by_t.setdefault(t, []).append((s, c, lam, mu))
    cols = []
    for t, nu in src.entries:
        col: dict = {}
        for s, c, lam, mu in by_t.get(t, ()):
            for p, x in A.mul_paths(lam, nu).items():
                for r, y in A.mul_paths(p, mu).items():
                    j = tgt.index[(s, r)]
                    val = F.add(col.get(j, F.zero), F.mul(c, F.mul(x, y)))
                    if val:
                        col[j] = val
                    else:
                        col.pop(j, None)
        cols.append(col)
    return Matrix.from_columns(F, len(tgt), cols)


@dataclass
class Cocycle:
    vector: dict                  # flat Hom(Q^2) index -> scalar
    values: list                  # [(f2 index, {nontip: coeff})]

    def to_strings(self, front) -> list:
        A = front.algebra
        return [(front.f2.labels[i], A.element_str(v)) for i, v in self.values]


@dataclass
class CohomologyReport:
    hh0: int
    hh1: int
    hh2: int
    ranks: dict
    hom_dims: dict
    basis: list
    characteristic: int
    label: str
    front: ResolutionFront = dc_field(repr=False, default=None)
    d: dict = dc_field(repr=False, default_factory=dict)
    hom: dict = dc_field(repr=False, default_factory=dict)

    @property
    def im_d2(self) -> int:
        return self.ranks["d2"]

    @property
    def ker_d3(self) -> int:
        return self.hom_dims["Hom2"] - self.ranks["d3"]


def _vector_to_values(hb: HomBasis, vec: dict) -> list:
    per: dict = {}
    for j, c in sorted(vec.items()):
        s, nu = hb.entries[j]
        per.setdefault(s, {})[nu] = c
    return sorted(per.items())


def hh_report(A, front: ResolutionFront, label: str = "") -> CohomologyReport:
    F = A.field
    d = {i: matrix_of_d(front, i) for i in (1, 2, 3)}
    hom = {i: hom_basis_of(A, front.summands[i]) for i in range(4)}
    r = {f"d{i}": rank(d[i]) for i in (1, 2, 3)}
    dims = {f"Hom{i}": len(hom[i]) for i in range(4)}
    hh0 = dims["Hom0"] - r["d1"]
    hh1 = dims["Hom1"] - r["d1"] - r["d2"]
    hh2 = dims["Hom2"] - r["d2"] - r["d3"]
    basis = _hh2_basis(F, d[2], d[3], hom[2])
    if len(basis) != hh2:
        raise ArithmeticError(f"HH2 basis has {len(basis)} elements, dimension is {hh2}")
    return CohomologyReport(hh0, hh1, hh2, r, dims, basis, F.characteristic, label, front, d, hom)


def _hh2_basis(F, d2: Matrix, d3: Matrix, hb: HomBasis) -> list:
    n = len(hb)
    if n == 0:
        return []
    kernel = [{j: x for j, x in enumerate(v) if x} for v in nullspace_basis(d3)]
    if not kernel:
        return []
    # reduced echelon rows of the kernel are sparse coset candidates
    K = Matrix(F, len(kernel), n, dict(enumerate(kernel)))
    red, _ = rref(K)
    cands = [row for row in red.data.values() if row]
    cands.sort(key=lambda v: (len({hb.entries[j][0] for j in v}), min(v), sorted(v)))
    im = EchelonBasis(F)
    for col in d2.columns():
        if col:
            im.add(col)
    out = []
    for v in cands:
        if im.add(v):
            out.append(Cocycle(dict(v), _vector_to_values(hb, v)))
    return out


def cocycle_vector(report: CohomologyReport, values: dict) -> dict:
    """Flat Hom(Q^2) vector of the map sending f2 element i to values[i] (a KQ element)."""
    A = report.front.algebra
    F = A.field
    hb = report.hom[2]
    vec: dict = {}
    for i, elem in values.items():
        terms = elem.terms if isinstance(elem, FreeElement) else elem
        for p, c in A.normal_form(terms).items():
            key = (i, p)
            if key not in hb.index:
                raise ValueError(f"value for relation {i} has the wrong endpoints")
            j = hb.index[key]
            vec[j] = F.add(vec.get(j, F.zero), c)
    return {j: c for j, c in vec.items() if c}


def is_cocycle(report: CohomologyReport, vec: dict) -> bool:
    return not report.d[3].apply(vec)


def cocycle_is_coboundary(report: CohomologyReport, c) -> bool:
    vec = c.vector if isinstance(c, Cocycle) else c
    n = len(report.hom[2])
    if any(j >= n or j < 0 for j in vec):
        raise ValueError("cocycle is not over this Hom basis")
    im = EchelonBasis(report.front.algebra.field)
    for col in report.d[2].columns():
        if col:
            im.add(col)
    return im.contains(vec)


@dataclass
class Recognition:
    cocycles: list            # per given cocycle: (is_cocycle, is_coboundary)
    independent: bool         # independent modulo Im d2
    spans: bool               # together with Im d2 they span Ker d3

    @property
    def ok(self) -> bool:
        return all(c and not b for c, b in self.cocycles) and self.independent and self.spans


def recognize(report: CohomologyReport, vectors: list) -> Recognition:
    """Do the given Hom(Q^2) vectors form a basis of HH^2 modulo Im d2?"""
    F = report.front.algebra.field
    flags = [(is_cocycle(report, v), cocycle_is_coboundary(report, v)) for v in vectors]
    im = EchelonBasis(F)
    for col in report.d[2].columns():
        if col:
            im.add(col)
    base = len(im)
    added = sum(1 for v in vectors if im.add(v))
    independent = added == len(vectors)
    spans = len(im) == report.ker_d3 and base + added == len(im)
    return Recognition(flags, independent, spans)
