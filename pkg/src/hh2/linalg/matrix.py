"""Sparse exact matrices, incremental echelon bases, rank and nullspace."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .field import Field
from . import _kernels

# dense GF(p) elimination is used below this many entries
DENSE_LIMIT = 4_000_000


class Matrix:
    """A ``rows x cols`` matrix over ``field`` stored as sparse rows.

    ``data[i]`` maps column index to a non-zero scalar.  Dimensions are fixed
    at creation; treat instances as immutable once built.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data: dict[int, dict[int, object]] = {}
        if data:
            for i, row in data.items():
                clean = {j: v for j, v in row.items() if v}
                if clean:
                    self.data[i] = clean

    @classmethod
    def from_dense(cls, field: Field, entries: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        data = {}
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            data[i] = {j: field(v) for j, v in enumerate(row) if field(v)}
        return cls(field, rows, cols, data)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, {i: {i: field.one} for i in range(n)})

    @classmethod
    def from_columns(cls, field: Field, rows: int, columns: Sequence[dict]) -> "Matrix":
        data: dict[int, dict[int, object]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    data.setdefault(i, {})[j] = v
        return cls(field, rows, len(columns), data)

    def __getitem__(self, key):
        i, j = key
        return self.data.get(i, {}).get(j, self.field.zero)

    def to_dense(self) -> list[list]:
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for i, row in self.data.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def to_numpy(self) -> np.ndarray:
        if self.field.characteristic == 0:
            raise TypeError("numpy export is only for prime fields")
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for i, row in self.data.items():
            for j, v in row.items():
                a[i, j] = v
        return a

    def transpose(self) -> "Matrix":
        data: dict[int, dict[int, object]] = {}
        for i, row in self.data.items():
            for j, v in row.items():
                data.setdefault(j, {})[i] = v
        return Matrix(self.field, self.cols, self.rows, data)

    def column(self, j: int) -> dict[int, object]:
        return {i: row[j] for i, row in self.data.items() if j in row}

    def columns(self) -> list[dict[int, object]]:
        cols: list[dict[int, object]] = [{} for _ in range(self.cols)]
        for i, row in self.data.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def is_zero(self) -> bool:
        return not self.data

    def nnz(self) -> int:
        return sum(len(r) for r in self.data.values())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        p = f.characteristic
        out: dict[int, dict[int, object]] = {}
        for i, row in self.data.items():
            acc: dict[int, object] = {}
            for k, a in row.items():
                orow = other.data.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            if p:
                acc = {j: v % p for j, v in acc.items() if v % p}
            else:
                acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return Matrix(f, self.rows, other.cols, out)

    def apply(self, vec: dict[int, object]) -> dict[int, object]:
        """Matrix times a sparse column vector."""
        f = self.field
        out: dict[int, object] = {}
        for i, row in self.data.items():
            s = 0
            for j, v in row.items():
                x = vec.get(j)
                if x:
                    s += v * x
            if f.characteristic:
                s %= f.characteristic
            if s:
                out[i] = s
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field, self.rows, self.cols, self.data) == (other.field, other.rows, other.cols, other.data)

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.rows}x{self.cols}, nnz={self.nnz()})"


def _axpy(field: Field, target: dict, c, row: dict) -> None:
    """target -= c * row, in place, dropping zeros."""
    p = field.characteristic
    if p:
        for j, v in row.items():
            x = (target.get(j, 0) - c * v) % p
            if x:
                target[j] = x
            else:
                target.pop(j, None)
    else:
        for j, v in row.items():
            x = target.get(j, 0) - c * v
            if x:
                target[j] = x
            else:
                target.pop(j, None)


class EchelonBasis:
    """Incrementally maintained semi-echelon basis of a row space.

    Pivots are the *smallest* column index of each stored row, and each
    stored row is scaled so that its pivot entry is 1.  Column indices at or
    above ``tag_offset`` are bookkeeping columns that never become pivots
    while real columns remain; they record which inserted rows combine into
    each stored row.
    """

    def __init__(self, field: Field, tag_offset: int | None = None):
        self.field = field
        self.tag_offset = tag_offset
        self.pivots: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def _lead(self, row: dict):
        if self.tag_offset is None:
            return min(row) if row else None
        real = [j for j in row if j < self.tag_offset]
        return min(real) if real else None

    def reduce(self, row: dict, full: bool = False) -> dict:
        """Return ``row`` minus a combination of basis rows.

        With ``full=False`` only leading terms are cleared, which is enough to
        decide membership; ``full=True`` clears every pivot column.
        """
        r = dict(row)
        if not full:
            while True:
                c = self._lead(r)
                if c is None or c not in self.pivots:
                    return r
                _axpy(self.field, r, r[c], self.pivots[c])
        done: set[int] = set()
        while True:
            cands = [j for j in r if j in self.pivots and j not in done
                     and (self.tag_offset is None or j < self.tag_offset)]
            if not cands:
                return r
            c = min(cands)
            done.add(c)
            _axpy(self.field, r, r[c], self.pivots[c])

    def contains(self, row: dict) -> bool:
        return self._lead(self.reduce(row)) is None

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True iff it enlarged the span."""
        r = self.reduce(row)
        c = self._lead(r)
        if c is None:
            return False
        inv = self.field.inv(r[c])
        if inv != 1:
            f = self.field
            r = {j: f.mul(v, inv) for j, v in r.items()}
        self.pivots[c] = r
        return True

    def make_reduced(self) -> None:
        """Back-substitute so no stored row has a non-zero entry in another pivot column."""
        for c in sorted(self.pivots, reverse=True):
            row = self.pivots[c]
            others = [j for j in row if j != c and j in self.pivots]
            for j in sorted(others):
                if j in row:
                    _axpy(self.field, row, row[j], self.pivots[j])


def _dense_ok(m: Matrix) -> bool:
    p = m.field.characteristic
    return 0 < p <= _kernels.MAX_DENSE_PRIME and m.rows * m.cols <= DENSE_LIMIT


def rank(m: Matrix) -> int:
    """Exact rank over the matrix's field."""
    if m.is_zero():
        return 0
    if _dense_ok(m):
        return len(_kernels.rref_modp(m.to_numpy(), m.field.characteristic))
    basis = EchelonBasis(m.field)
    for row in m.data.values():
        basis.add(row)
    return len(basis)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    f = m.field
    if _dense_ok(m) and not m.is_zero():
        a = m.to_numpy()
        piv = [int(c) for c in _kernels.rref_modp(a, f.characteristic)]
        data = {i: {j: int(v) for j, v in enumerate(a[i]) if v} for i in range(len(piv))}
        return Matrix(f, m.rows, m.cols, data), piv
    basis = EchelonBasis(f)
    for row in m.data.values():
        basis.add(row)
    basis.make_reduced()
    piv = sorted(basis.pivots)
    data = {i: dict(basis.pivots[c]) for i, c in enumerate(piv)}
    return Matrix(f, m.rows, m.cols, data), piv


def nullspace_basis(m: Matrix) -> list[list]:
    """Basis of {v : m v = 0}, one dense vector per free column, in column order."""
    f = m.field
    red, piv = rref(m)
    pivset = set(piv)
    out = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [f.zero] * m.cols
        v[free] = f.one
        for i, c in enumerate(piv):
            x = red.data.get(i, {}).get(free)
            if x:
                v[c] = f.neg(x)
        out.append(v)
    return out


def _as_sparse(v) -> dict[int, object]:
    if isinstance(v, dict):
        return {j: x for j, x in v.items() if x}
    return {j: x for j, x in enumerate(v) if x}


def in_span(v, spanning: Iterable, field: Field) -> bool:
    """True iff ``v`` is a linear combination of the vectors in ``spanning``.

    Vectors may be dense sequences or sparse ``{index: scalar}`` dicts.
    """
    target = {j: field(x) for j, x in _as_sparse(v).items()}
    target = {j: x for j, x in target.items() if x}
    if not target:
        return True
    basis = EchelonBasis(field)
    for s in spanning:
        basis.add({j: field(x) for j, x in _as_sparse(s).items() if field(x)})
    return basis.contains(target)


def solve_combination(target: dict, generators: Sequence[dict], field: Field):
    """Coefficients ``c`` with ``sum(c[k] * generators[k]) == target``, or None.

    Free coefficients are set to zero; generators are consumed in order.
    """
    offset = 1 + max([max(g) for g in generators if g] + [max(target) if target else 0])
    basis = EchelonBasis(field, tag_offset=offset)
    for k, g in enumerate(generators):
        row = dict(g)
        row[offset + k] = field.one
        basis.add(row)
    r = basis.reduce(dict(target))
    if any(j < offset for j in r):
        return None
    coeffs = [field.zero] * len(generators)
    for j, v in r.items():
        coeffs[j - offset] = field.neg(v)
    return coeffs
