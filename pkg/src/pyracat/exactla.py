"""Exact linear algebra over the rationals and prime fields.

Matrices are numpy object arrays whose entries are :class:`fractions.Fraction`
(or plain ints reduced mod p).  All elimination goes through one sparse,
fully-reducing row eliminator, so every derived basis is deterministic: the
reduced row echelon form of a matrix is unique and that is what we compute.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class RationalField:
    char = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, float):
            raise TypeError("floating point entries are not allowed")
        return Fraction(x)

    def norm(self, x):
        return x

    def inv(self, x):
        return 1 / Fraction(x)

    def to_json(self, x) -> str:
        return str(Fraction(x))


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.char = p

    def __repr__(self):
        return f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("GF", self.char))

    def coerce(self, x) -> int:
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
        if isinstance(x, float):
            raise TypeError("floating point entries are not allowed")
        return int(x) % self.char

    def norm(self, x):
        return x % self.char

    def inv(self, x):
        if x % self.char == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(x), -1, self.char)

    def to_json(self, x) -> str:
        return str(int(x) % self.char)


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# dense helpers


def mat(rows, field=QQ, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build an exact matrix from nested sequences (ints, "p/q" strings, Fractions)."""
    rows = list(rows) if not isinstance(rows, np.ndarray) else rows
    if shape is not None and len(rows) == 0:
        return zeros(*shape, field=field)
    out = np.array(
        [[field.coerce(x) for x in row] for row in rows], dtype=object
    )
    if out.ndim != 2:
        if shape is None:
            raise ValueError("cannot infer the shape of an empty matrix")
        out = out.reshape(shape)
    if shape is not None and out.shape != tuple(shape):
        raise ValueError(f"expected shape {shape}, got {out.shape}")
    return out


def vec(entries, field=QQ) -> np.ndarray:
    return np.array([field.coerce(x) for x in entries], dtype=object)


def zeros(rows: int, cols: int, field=QQ) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(field.coerce(0))
    return out


def eye(n: int, field=QQ) -> np.ndarray:
    out = zeros(n, n, field)
    for i in range(n):
        out[i, i] = field.coerce(1)
    return out


def matmul(a: np.ndarray, b: np.ndarray, field=QQ) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1], field)
    n, m = a.shape[0], b.shape[1]
    # exact entries are mostly zero in practice, so accumulate over nonzeros only
    brows = [[(j, x) for j, x in enumerate(row) if x != 0] for row in b.tolist()]
    out = zeros(n, m, field)
    p = field.char
    for i, row in enumerate(a.tolist()):
        acc: dict = {}
        for t, x in enumerate(row):
            if x != 0:
                for j, y in brows[t]:
                    acc[j] = acc.get(j, 0) + x * y
        for j, v in acc.items():
            out[i, j] = v % p if p else v
    return out


def kronecker(a: np.ndarray, b: np.ndarray, field=QQ) -> np.ndarray:
    """Kronecker product, row-major block convention: block (i, j) is a[i, j] * b."""
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows == 0 or cols == 0:
        return zeros(rows, cols, field)
    out = np.kron(a, b)
    if field.char:
        out = out % field.char
    return out


def is_zero(a: np.ndarray) -> bool:
    return not any(x != 0 for x in a.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def block_matrix(blocks: Sequence[Sequence[np.ndarray]], field=QQ) -> np.ndarray:
    rows = [np.concatenate(list(r), axis=1) if len(r) else None for r in blocks]
    return np.concatenate(rows, axis=0) if rows else zeros(0, 0, field)


# ---------------------------------------------------------------------------
# sparse elimination


class Eliminator:
    """Incremental reduced row echelon form over a field.

    Rows are dicts ``{column: value}``.  Pivot rows are kept fully reduced, the
    pivot of a row is its smallest column, so the final state is exactly the
    (unique) RREF of the rows inserted so far.
    """

    def __init__(self, ncols: int, field=QQ):
        self.ncols = ncols
        self.field = field
        self.rows: dict[int, dict[int, object]] = {}
        self._occ: dict[int, set[int]] = {}

    def _touch(self, pivot: int, row: dict):
        for c in row:
            if c != pivot:
                self._occ.setdefault(c, set()).add(pivot)

    def _untouch(self, pivot: int, row: dict):
        for c in row:
            if c != pivot:
                s = self._occ.get(c)
                if s is not None:
                    s.discard(pivot)

    def reduce(self, row: dict) -> dict:
        """Reduce ``row`` against the current pivots; returns a new dict."""
        f = self.field
        row = {c: v for c, v in row.items() if v != 0}
        for c in [c for c in row if c in self.rows]:
            coef = row.get(c)
            if not coef:
                continue
            for cc, vv in self.rows[c].items():
                nv = f.norm(row.get(cc, 0) - coef * vv)
                if nv == 0:
                    row.pop(cc, None)
                else:
                    row[cc] = nv
        return row

    def insert(self, row: dict) -> int | None:
        """Insert a row; returns the new pivot column or None if dependent."""
        f = self.field
        row = self.reduce(row)
        if not row:
            return None
        piv = min(row)
        inv = f.inv(row[piv])
        row = {c: f.norm(v * inv) for c, v in row.items()}
        for other in list(self._occ.get(piv, ())):
            orow = self.rows[other]
            coef = orow.get(piv)
            if not coef:
                continue
            self._untouch(other, orow)
            for cc, vv in row.items():
                nv = f.norm(orow.get(cc, 0) - coef * vv)
                if nv == 0:
                    orow.pop(cc, None)
                else:
                    orow[cc] = nv
            self._touch(other, orow)
        self._occ.pop(piv, None)
        self.rows[piv] = row
        self._touch(piv, row)
        return piv

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def _dense_rows(M: np.ndarray) -> list[dict]:
    return [{j: x for j, x in enumerate(r) if x != 0} for r in M]


def rref(M: np.ndarray, field=QQ) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    m, n = M.shape
    el = Eliminator(n, field)
    for r in _dense_rows(M):
        el.insert(r)
    R = zeros(m, n, field)
    piv = el.pivots()
    for i, p in enumerate(piv):
        for c, v in el.rows[p].items():
            R[i, c] = v
    return R, piv, len(piv)


def rank(M: np.ndarray, field=QQ) -> int:
    el = Eliminator(M.shape[1], field)
    for r in _dense_rows(M):
        el.insert(r)
    return el.rank


def solve_sparse(rows: Iterable[tuple[dict, object]], ncols: int, field=QQ):
    """Solve a sparse system; rows are ``(coeffs, rhs)``.

    Returns a dict ``{column: value}`` (free variables zero) or None when the
    system is inconsistent.
    """
    el = Eliminator(ncols + 1, field)
    for coeffs, rhs in rows:
        r = dict(coeffs)
        if rhs != 0:
            r[ncols] = field.coerce(rhs)
        p = el.insert(r)
        if p == ncols:
            return None
    if ncols in el.rows:
        return None
    return {p: r.get(ncols, 0) for p, r in el.rows.items() if r.get(ncols, 0) != 0}


def nullspace_sparse(rows: Iterable[dict], ncols: int, field=QQ) -> list[dict]:
    """Basis of the solution space of a homogeneous sparse system.

    One vector per free column in increasing order; the free column carries 1.
    """
    el = Eliminator(ncols, field)
    for r in rows:
        el.insert(r)
    piv = set(el.rows)
    col_in: dict[int, list[int]] = {}
    for p, r in el.rows.items():
        for c in r:
            if c != p:
                col_in.setdefault(c, []).append(p)
    basis = []
    one = field.coerce(1)
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: one}
        for p in col_in.get(f, ()):
            v[p] = field.norm(-el.rows[p][f])
        basis.append(v)
    return basis


def solve(A: np.ndarray, b, field=QQ):
    """Some x with A x = b (free variables zero), or None if inconsistent."""
    b = np.asarray(b, dtype=object).reshape(-1)
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A has {A.shape[0]} rows, b has {b.shape[0]}")
    sol = solve_sparse(zip(_dense_rows(A), b), A.shape[1], field)
    if sol is None:
        return None
    x = zeros(A.shape[1], 1, field).reshape(-1)
    for c, v in sol.items():
        x[c] = v
    return x


def nullspace(A: np.ndarray, field=QQ) -> list[np.ndarray]:
    basis = nullspace_sparse(_dense_rows(A), A.shape[1], field)
    out = []
    for v in basis:
        x = zeros(A.shape[1], 1, field).reshape(-1)
        for c, val in v.items():
            x[c] = val
        out.append(x)
    return out


def inverse(A: np.ndarray, field=QQ) -> np.ndarray:
    n, m = A.shape
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    R, piv, r = rref(np.concatenate([A, eye(n, field)], axis=1), field)
    if piv[:n] != list(range(n)) or r < n or any(p >= n for p in piv[:n]):
        raise np.linalg.LinAlgError("matrix is singular")
    return R[:, n:]


def is_invertible(A: np.ndarray, field=QQ) -> bool:
    return A.shape[0] == A.shape[1] and rank(A, field) == A.shape[0]


def column_basis(A: np.ndarray, field=QQ) -> np.ndarray:
    """Columns of ``A`` at the pivot positions of rref(A): a basis of its column space."""
    _, piv, _ = rref(A, field)
    return A[:, piv] if piv else zeros(A.shape[0], 0, field)


def row_space(vectors: Sequence[np.ndarray], n: int, field=QQ) -> np.ndarray:
    """RREF basis (as rows) of the span of ``vectors``."""
    el = Eliminator(n, field)
    for v in vectors:
        el.insert({j: x for j, x in enumerate(v) if x != 0})
    out = zeros(el.rank, n, field)
    for i, p in enumerate(el.pivots()):
        for c, v in el.rows[p].items():
            out[i, c] = v
    return out


def left_inverse(K: np.ndarray, field=QQ) -> np.ndarray:
    """A matrix L with L K = I for K of full column rank."""
    n, k = K.shape
    if k == 0:
        return zeros(0, n, field)
    R, piv, _ = rref(np.concatenate([K, eye(n, field)], axis=1), field)
    if piv[:k] != list(range(k)):
        raise np.linalg.LinAlgError("columns are not independent")
    return R[:k, k:]


def to_json(M: np.ndarray, field=QQ) -> list[list[str]]:
    return [[field.to_json(x) for x in row] for row in M]
