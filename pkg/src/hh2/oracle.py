"""Brute-force HH^0..HH^2 from the reduced bar complex relative to the vertex span E.

Cochains of degree n are E-bimodule maps J ⊗_E ... ⊗_E J -> Λ (n factors,
J the radical), so a basis is given by pairs (composable tuple of nontips of
positive length, nontip with the same endpoints as the tuple).  C^0 is the
direct sum of the corners vΛv.  Because E is separable this computes the
ordinary Hochschild cohomology.  Nothing here uses the projective resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .linalg.matrix import Matrix, rank
from .quiver import path_length, vertex_path

DEFAULT_LIMIT = 60


class OracleLimitError(RuntimeError):
    def __init__(self, dim: int, limit: int):
        super().__init__(f"dim Λ = {dim} exceeds the oracle limit {limit}")
        self.dim = dim
        self.limit = limit


@dataclass
class BarResult:
    hh0: int
    hh1: int
    hh2: int
    cochain_dims: list
    ranks: list


def _tuples(A, n: int) -> list:
    q = A.quiver
    rad = [p for p in A.nontips if path_length(p) > 0]
    if n == 0:
        return [(vertex_path(v),) for v in range(q.num_vertices)]
    layer = [(r,) for r in rad]
    for _ in range(n - 1):
        layer = [t + (r,) for t in layer for r in rad if q.terminus(t[-1]) == q.origin(r)]
    return layer


def _cochain_basis(A, tuples):
    q = A.quiver
    entries = []
    for T in tuples:
        for nu in A.hom_basis(q.origin(T[0]), q.terminus(T[-1])):
            entries.append((T, nu))
    return entries, {e: i for i, e in enumerate(entries)}


def _differential(A, n: int, src, src_index, tgt_tuples, tgt_index) -> Matrix:
    """δ: C^n -> C^{n+1} with rows over C^{n+1} and columns over C^n."""
    q = A.quiver
    F = A.field
    data: dict = {}

    def put(row, col, c):
        r = data.setdefault(row, {})
        val = F.add(r.get(col, F.zero), c)
        if val:
            r[col] = val
        else:
            r.pop(col, None)

    for T in tgt_tuples:
        o, t = q.origin(T[0]), q.terminus(T[-1])
        if n == 0:
            r = T[0]
            # (δf)(r) = r f(e_t) - f(e_o) r
            for nu in A.hom_basis(t, t):
                col = src_index[((vertex_path(t),), nu)]
                for z, c in A.mul_paths(r, nu).items():
                    put(tgt_index[(T, z)], col, c)
            for nu in A.hom_basis(o, o):
                col = src_index[((vertex_path(o),), nu)]
                for z, c in A.mul_paths(nu, r).items():
                    put(tgt_index[(T, z)], col, F.neg(c))
            continue
        r1, rl = T[0], T[-1]
        rest = T[1:]
        for nu in A.hom_basis(q.origin(rest[0]), t):
            col = src_index[(rest, nu)]
            for z, c in A.mul_paths(r1, nu).items():
                put(tgt_index[(T, z)], col, c)
        for k in range(n):
            sign = F.one if (k + 1) % 2 == 0 else F.neg(F.one)
            for m, c in A.mul_paths(T[k], T[k + 1]).items():
                inner = T[:k] + (m,) + T[k + 2:]
                for nu in A.hom_basis(o, t):
                    put(tgt_index[(T, nu)], src_index[(inner, nu)], F.mul(sign, c))
        head = T[:-1]
        sign = F.one if (n + 1) % 2 == 0 else F.neg(F.one)
        for nu in A.hom_basis(o, q.origin(rl)):
            col = src_index[(head, nu)]
            for z, c in A.mul_paths(nu, rl).items():
                put(tgt_index[(T, z)], col, F.mul(sign, c))
    return Matrix(F, len(tgt_index), len(src_index), data)


def bar_complex(A, top: int = 3):
    """Cochain bases C^0..C^top and the differentials δ^0..δ^{top-1}."""
    bases = []
    for n in range(top + 1):
        tuples = _tuples(A, n)
        entries, index = _cochain_basis(A, tuples)
        bases.append((tuples, entries, index))
    deltas = []
    for n in range(top):
        _, src, sidx = bases[n]
        tt, _, tidx = bases[n + 1]
        deltas.append(_differential(A, n, src, sidx, tt, tidx))
    return bases, deltas


def bar_hh(A, limit: int = DEFAULT_LIMIT) -> BarResult:
    if A.dimension > limit:
        raise OracleLimitError(A.dimension, limit)
    bases, deltas = bar_complex(A)
    dims = [len(b[1]) for b in bases]
    r = [rank(d) for d in deltas]
    return BarResult(dims[0] - r[0], dims[1] - r[0] - r[1], dims[2] - r[1] - r[2], dims, r)
