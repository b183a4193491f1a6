"""Exact Gaussian elimination over Q and F_p: RREF, kernels, solving, span tests.

Deterministic by construction: pivots are chosen as the first nonzero row in
column order, so bases and reduced forms are reproducible across runs and
platforms.  Over Q the forward pass works on primitive integer rows (each row
is rescaled to coprime integers after every combination), which keeps
intermediate entries small on the d=4 differential matrices; pivots are
normalized to 1 only at the end.  Over F_p small matrices are eliminated as
dense numpy residue arrays, large ones with sparse rows.

Truncated rings are rejected: they have zero divisors, and the package never
eliminates over them (matrix-vector evaluation lives on TensorMap instead).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import InputError, UnsupportedRingError
from .scalars import PrimeField, RationalField, TruncatedRing

_DENSE_CELLS = 1 << 22


def _require_base_field(field, what: str):
    if isinstance(field, TruncatedRing):
        raise UnsupportedRingError(f"{what} over a truncated ring")
    if not isinstance(field, (RationalField, PrimeField)):
        raise InputError(f"unsupported coefficient ring {field!r}")


class ExactMatrix:
    """Sparse column-major exact matrix: {col: {row: scalar}}, no stored zeros."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows: int, cols: int, data: dict | None = None):
        _require_base_field(field, "ExactMatrix")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data if data is not None else {}

    @classmethod
    def from_entries(cls, field, rows, cols, entries):
        m = cls(field, rows, cols)
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise InputError(f"entry ({r},{c}) outside {rows}x{cols}")
            if not field.is_zero(v):
                col = m.data.setdefault(c, {})
                v = field.add(col[r], v) if r in col else v
                if field.is_zero(v):
                    col.pop(r, None)
                else:
                    col[r] = v
        m.data = {c: col for c, col in m.data.items() if col}
        return m

    @classmethod
    def from_columns(cls, field, rows, columns):
        """columns: list of sparse dicts {row: scalar} or dense lists."""
        m = cls(field, rows, len(columns))
        for c, col in enumerate(columns):
            items = col.items() if isinstance(col, dict) else enumerate(col)
            dst = {}
            for r, v in items:
                if not field.is_zero(v):
                    dst[r] = v
            if dst:
                m.data[c] = dst
        return m

    def entry(self, r: int, c: int):
        return self.data.get(c, {}).get(r, self.field.zero)

    def entries(self):
        for c in sorted(self.data):
            for r in sorted(self.data[c]):
                yield (r, c, self.data[c][r])

    def nnz(self) -> int:
        return sum(len(col) for col in self.data.values())

    def column(self, c: int) -> dict:
        return dict(self.data.get(c, {}))

    def matvec(self, v) -> list:
        """Exact M x for a dense list or sparse dict x."""
        field = self.field
        out = [field.zero] * self.rows
        items = v.items() if isinstance(v, dict) else enumerate(v)
        for c, x in items:
            if field.is_zero(x):
                continue
            col = self.data.get(c)
            if not col:
                continue
            for r, a in col.items():
                out[r] = field.add(out[r], field.mul(a, x))
        return out

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise InputError(f"matmul shape mismatch {self.cols} vs {other.rows}")
        field = self.field
        out = ExactMatrix(field, self.rows, other.cols)
        for j, bcol in other.data.items():
            acc = {}
            for k, bv in bcol.items():
                acol = self.data.get(k)
                if not acol:
                    continue
                for i, av in acol.items():
                    p = field.mul(av, bv)
                    acc[i] = field.add(acc[i], p) if i in acc else p
            acc = {i: v for i, v in acc.items() if not field.is_zero(v)}
            if acc:
                out.data[j] = acc
        return out

    def is_zero(self) -> bool:
        return not self.data

    def transpose_entries(self):
        return ((c, r, v) for r, c, v in self.entries())

    # ------------------------------------------------------------------ elimination

    def rref(self):
        """Reduced row-echelon form; returns (ExactMatrix, pivot columns, rank)."""
        reduced_rows, pivots = self._rref_rows()
        out = ExactMatrix(self.field, self.rows, self.cols)
        for i, row in enumerate(reduced_rows):
            for c, v in row.items():
                out.data.setdefault(c, {})[i] = v
        return out, pivots, len(pivots)

    def rank(self) -> int:
        return len(self._rref_rows()[1])

    def _rref_rows(self, aug: dict | None = None):
        """Row dicts of the RREF.  aug maps one extra virtual column (index
        self.cols) carrying a right-hand side through the elimination."""
        if isinstance(self.field, PrimeField) and aug is None \
                and self.rows * self.cols <= _DENSE_CELLS and self.cols > 0:
            return self._rref_rows_dense()
        rows = [dict() for _ in range(self.rows)]
        for c, col in self.data.items():
            for r, v in col.items():
                rows[r][c] = v
        if aug is not None:
            for r, v in aug.items():
                if not self.field.is_zero(v):
                    rows[r][self.cols] = v
        if isinstance(self.field, RationalField):
            return _rref_sparse_rational(rows, self.cols)
        return _rref_sparse_prime(rows, self.cols, self.field.p)

    def _rref_rows_dense(self):
        p = self.field.p
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for c, col in self.data.items():
            for r, v in col.items():
                a[r, c] = v % p
        pivots = []
        pr = 0
        for c in range(self.cols):
            if pr >= self.rows:
                break
            nz = np.nonzero(a[pr:, c])[0]
            if nz.size == 0:
                continue
            i = pr + int(nz[0])
            if i != pr:
                a[[pr, i]] = a[[i, pr]]
            a[pr] = (a[pr] * pow(int(a[pr, c]), p - 2, p)) % p
            hit = np.nonzero(a[:, c])[0]
            for r in hit:
                if r != pr:
                    a[r] = (a[r] - a[r, c] * a[pr]) % p
            pivots.append(c)
            pr += 1
        rows = [dict() for _ in range(self.rows)]
        for r, c in zip(*np.nonzero(a)):
            rows[r][int(c)] = int(a[r, c])
        return rows, pivots

    # ------------------------------------------------------------------ derived objects

    def kernel_basis(self) -> list:
        """Null-space basis in canonical free-variable order (one basis vector
        per non-pivot column, with a 1 there and pivot rows filled in)."""
        reduced, pivots = self._rref_rows()
        field = self.field
        pivset = set(pivots)
        basis = []
        for f in range(self.cols):
            if f in pivset:
                continue
            v = [field.zero] * self.cols
            v[f] = field.one
            for k, c in enumerate(pivots):
                coeff = reduced[k].get(f)
                if coeff is not None:
                    v[c] = field.neg(coeff)
            basis.append(v)
        return basis

    def image_membership(self, columns) -> list:
        """Column-space membership for many vectors with one elimination of
        [M | c_1 ... c_k] (pivots restricted to M's columns): c_j lies in
        im(M) exactly when no reduced row beyond rank(M) touches column j."""
        k = len(columns)
        rows = [dict() for _ in range(self.rows)]
        for c, col in self.data.items():
            for r, v in col.items():
                rows[r][c] = v
        for j, colv in enumerate(columns):
            items = colv.items() if isinstance(colv, dict) else enumerate(colv)
            for r, v in items:
                if not self.field.is_zero(v):
                    rows[r][self.cols + j] = v
        if isinstance(self.field, RationalField):
            reduced, pivots = _rref_sparse_rational(rows, self.cols)
        else:
            reduced, pivots = _rref_sparse_prime(rows, self.cols, self.field.p)
        out = [True] * k
        for i in range(len(pivots), self.rows):
            for cc in reduced[i]:
                out[cc - self.cols] = False
        return out

    def solve(self, b):
        """Particular solution of M x = b with free variables zeroed, or a
        SolveCertificate recording the inconsistent reduced row."""
        items = b.items() if isinstance(b, dict) else enumerate(b)
        if not isinstance(b, dict) and len(b) != self.rows:
            raise InputError(f"rhs length {len(b)} != rows {self.rows}")
        aug = {r: v for r, v in items if not self.field.is_zero(v)}
        if aug and max(aug) >= self.rows:
            raise InputError("rhs index outside matrix")
        reduced, pivots = self._rref_rows(aug=aug)
        field = self.field
        for i in range(len(pivots), self.rows):
            row = reduced[i]
            if row:
                # only the augmented column can survive past the pivot rows
                return SolveCertificate(row_index=i, row=dict(row),
                                        rank=len(pivots), rank_augmented=len(pivots) + 1)
        x = [field.zero] * self.cols
        for k, c in enumerate(pivots):
            x[c] = reduced[k].get(self.cols, field.zero)
        return x

    def __repr__(self):
        return f"ExactMatrix({self.field!r}, {self.rows}x{self.cols}, nnz={self.nnz()})"


@dataclass
class SolveCertificate:
    """Witness that b is outside the column space: after full elimination the
    reduced row `row_index` has zero matrix part but a nonzero rhs entry."""
    row_index: int
    row: dict
    rank: int
    rank_augmented: int

    def __bool__(self):
        return False


def _primitive(row: dict) -> dict:
    """Rescale a rational row to coprime integers with positive leading entry."""
    if not row:
        return row
    denom_lcm = 1
    for v in row.values():
        d = v.denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    content = 0
    for v in row.values():
        content = gcd(content, abs(v.numerator * (denom_lcm // v.denominator)))
    lead = row[min(row)]
    scale = Fraction(denom_lcm, content)
    if lead < 0:
        scale = -scale
    return {c: Fraction(int(v * scale)) for c, v in row.items()}


def _rref_sparse_rational(rows: list, ncols: int):
    rows = [_primitive(r) for r in rows]
    pivots = []
    pr = 0
    for c in range(ncols):
        pivot_idx = None
        for i in range(pr, len(rows)):
            if c in rows[i]:
                pivot_idx = i
                break
        if pivot_idx is None:
            continue
        rows[pr], rows[pivot_idx] = rows[pivot_idx], rows[pr]
        prow = rows[pr]
        pv = prow[c]
        for i in range(len(rows)):
            if i == pr:
                continue
            row = rows[i]
            f = row.get(c)
            if f is None:
                continue
            # integer combination pv*row - f*prow, rescaled to primitive form
            new = {}
            for cc, v in row.items():
                new[cc] = pv * v
            for cc, v in prow.items():
                w = new.get(cc, Fraction(0)) - f * v
                if w:
                    new[cc] = w
                else:
                    new.pop(cc, None)
            rows[i] = _primitive(new)
        pivots.append(c)
        pr += 1
    for k, c in enumerate(pivots):
        pv = rows[k][c]
        if pv != 1:
            rows[k] = {cc: v / pv for cc, v in rows[k].items()}
    return rows, pivots


def _rref_sparse_prime(rows: list, ncols: int, p: int):
    pivots = []
    pr = 0
    for c in range(ncols):
        pivot_idx = None
        for i in range(pr, len(rows)):
            if c in rows[i]:
                pivot_idx = i
                break
        if pivot_idx is None:
            continue
        rows[pr], rows[pivot_idx] = rows[pivot_idx], rows[pr]
        inv = pow(rows[pr][c], p - 2, p)
        rows[pr] = {cc: (v * inv) % p for cc, v in rows[pr].items() if v % p}
        prow = rows[pr]
        for i in range(len(rows)):
            if i == pr:
                continue
            f = rows[i].get(c)
            if f is None:
                continue
            row = rows[i]
            for cc, v in prow.items():
                w = (row.get(cc, 0) - f * v) % p
                if w:
                    row[cc] = w
                else:
                    row.pop(cc, None)
        pivots.append(c)
        pr += 1
    return rows, pivots


def in_span(basis, v, field):
    """Exact membership of v in span(basis); returns (bool, coords or None)."""
    if not basis:
        items = v.items() if isinstance(v, dict) else enumerate(v)
        ok = all(field.is_zero(x) for _, x in items)
        return (ok, [] if ok else None)
    n = len(basis[0]) if not isinstance(basis[0], dict) else None
    if n is not None:
        for col in basis:
            if len(col) != n:
                raise InputError("in_span: inconsistent column lengths")
        if not isinstance(v, dict) and len(v) != n:
            raise InputError("in_span: vector length mismatch")
    m = ExactMatrix.from_columns(field, n if n is not None else _dict_rows(basis, v), basis)
    sol = m.solve(v)
    if isinstance(sol, SolveCertificate):
        return (False, None)
    return (True, sol)


def _dict_rows(basis, v):
    top = 0
    for col in basis:
        if col:
            top = max(top, max(col) + 1)
    if isinstance(v, dict) and v:
        top = max(top, max(v) + 1)
    return top


def invert_matrix(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse of a square matrix; InputError when singular."""
    if m.rows != m.cols:
        raise InputError("invert_matrix needs a square matrix")
    n = m.rows
    field = m.field
    aug = ExactMatrix(field, n, 2 * n)
    for r, c, v in m.entries():
        aug.data.setdefault(c, {})[r] = v
    for i in range(n):
        aug.data.setdefault(n + i, {})[i] = field.one
    reduced, pivots = aug._rref_rows()
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise InputError("matrix is singular")
    out = ExactMatrix(field, n, n)
    for i in range(n):
        for c, v in reduced[i].items():
            if c >= n:
                out.data.setdefault(c - n, {})[i] = v
    return out
