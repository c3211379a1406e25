"""Finite-dimensional algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .. import exactla as la


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, msg: str):
        self.problems.append(msg)


class Algebra:
    """``x_i x_j = sum_k mul[i, j, k] x_k`` with a unit and primitive idempotents.

    Most of the package assumes the basis is Peirce adapted, i.e. every basis
    element lies in a single ``e_p A e_q``; :meth:`peirce_adapted` produces such
    a basis from any other one.
    """

    def __init__(self, name: str, basis: list[str], mul: np.ndarray, unit, idempotents, field=la.QQ):
        n = len(basis)
        if mul.shape != (n, n, n):
            raise ValueError(f"structure constants must have shape {(n, n, n)}, got {mul.shape}")
        self.name = name
        self.basis = list(basis)
        self.dim = n
        self.field = field
        self.mul = mul
        self.unit = la.vec(unit, field)
        self.idempotents = [la.vec(e, field) for e in idempotents]
        if len(self.unit) != n or any(len(e) != n for e in self.idempotents):
            raise ValueError("unit and idempotents must have one coordinate per basis element")

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim})"

    @property
    def n(self) -> int:
        """Number of primitive idempotents."""
        return len(self.idempotents)

    # arithmetic

    @cached_property
    def left_mats(self) -> list[np.ndarray]:
        """``left_mats[i]``: matrix of ``y -> x_i y``."""
        return [np.ascontiguousarray(self.mul[i, :, :].T) for i in range(self.dim)]

    @cached_property
    def right_mats(self) -> list[np.ndarray]:
        """``right_mats[j]``: matrix of ``y -> y x_j``."""
        return [np.ascontiguousarray(self.mul[:, j, :].T) for j in range(self.dim)]

    def L(self, x) -> np.ndarray:
        return _combine(x, self.left_mats, self.dim, self.field)

    def R(self, x) -> np.ndarray:
        return _combine(x, self.right_mats, self.dim, self.field)

    def multiply(self, x, y) -> np.ndarray:
        return la.matmul(self.L(x), np.asarray(y, dtype=object).reshape(-1, 1), self.field).reshape(-1)

    def basis_vector(self, i: int) -> np.ndarray:
        v = la.zeros(1, self.dim, self.field).reshape(-1)
        v[i] = self.field.coerce(1)
        return v

    # checks

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        f, n = self.field, self.dim
        one = self.unit
        Lu, Ru = self.L(one), self.R(one)
        if not (la.equal(Lu, la.eye(n, f)) and la.equal(Ru, la.eye(n, f))):
            rep.add("unit does not act as the identity")
        for i in range(n):
            for j in range(n):
                xy = self.mul[i, j, :]
                # (x_i x_j) x_k == x_i (x_j x_k) for all k, as matrices of right multiplication
                lhs = self.L(xy)
                rhs = la.matmul(self.left_mats[i], self.left_mats[j], f)
                if not la.equal(lhs, rhs):
                    for k in range(n):
                        if not la.equal(lhs[:, k], rhs[:, k]):
                            rep.add(f"associativity fails on ({self.basis[i]}, {self.basis[j]}, {self.basis[k]})")
                            break
        total = la.zeros(1, n, f).reshape(-1)
        for p, e in enumerate(self.idempotents):
            total = total + e
            for q, e2 in enumerate(self.idempotents):
                prod = self.multiply(e, e2)
                want = e if p == q else la.zeros(1, n, f).reshape(-1)
                if not la.equal(prod, want):
                    rep.add(f"idempotents {p + 1}, {q + 1} are not orthogonal idempotents")
        if f.char:
            total = total % f.char
        if not la.equal(total, one):
            rep.add("idempotents do not sum to the unit")
        if rep.ok and f.char == 0:
            for p in range(self.n):
                top = self.corner_dim(p, p) - self.radical_corner_dim(p, p)
                if top != 1:
                    rep.add(f"idempotent {p + 1} is not primitive (local quotient has dimension {top})")
        return rep

    # Peirce structure

    def corner_projector(self, p: int, q: int) -> np.ndarray:
        """Matrix of ``x -> e_p x e_q``."""
        return la.matmul(self.L(self.idempotents[p]), self.R(self.idempotents[q]), self.field)

    def corner_dim(self, p: int, q: int) -> int:
        return la.rank(self.corner_projector(p, q), self.field)

    @cached_property
    def block_of(self) -> list[tuple[int, int]] | None:
        """``(p, q)`` with basis element i in ``e_p A e_q``, or None if the basis is not adapted."""
        out = []
        for i in range(self.dim):
            v = self.basis_vector(i)
            hit = None
            for p in range(self.n):
                for q in range(self.n):
                    if la.equal(self.multiply(self.multiply(self.idempotents[p], v), self.idempotents[q]), v):
                        hit = (p, q)
            if hit is None:
                return None
            out.append(hit)
        return out

    @property
    def is_adapted(self) -> bool:
        return self.block_of is not None

    @cached_property
    def blocks(self) -> dict[tuple[int, int], list[int]]:
        """Basis indices of each ``e_p A e_q``."""
        if self.block_of is None:
            raise ValueError("basis is not Peirce adapted; call peirce_adapted() first")
        out = {(p, q): [] for p in range(self.n) for q in range(self.n)}
        for i, pq in enumerate(self.block_of):
            out[pq].append(i)
        return out

    def cartan(self) -> list[list[int]]:
        """``C[p][q] = dim e_p A e_q``."""
        return [[self.corner_dim(p, q) for q in range(self.n)] for p in range(self.n)]

    def peirce_adapted(self) -> tuple["Algebra", np.ndarray]:
        """An isomorphic algebra in a Peirce-adapted basis, and the change of basis.

        The returned matrix has the new basis vectors as columns (old coordinates).
        """
        f = self.field
        cols, labels = [], []
        for p in range(self.n):
            for q in range(self.n):
                rows = la.row_space(list(self.corner_projector(p, q).T), self.dim, f)
                for t, r in enumerate(rows):
                    cols.append(r)
                    labels.append(f"e{p + 1}A e{q + 1}[{t}]")
        B = la.mat([list(c) for c in cols], f, shape=(len(cols), self.dim)).T.copy()
        Binv = la.inverse(B, f)
        n = self.dim
        mul = np.empty((n, n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                mul[i, j, :] = la.matmul(Binv, self.multiply(B[:, i], B[:, j]).reshape(-1, 1), f).reshape(-1)
        to_new = lambda v: la.matmul(Binv, np.asarray(v, dtype=object).reshape(-1, 1), f).reshape(-1)
        out = Algebra(
            self.name, labels, mul, to_new(self.unit), [to_new(e) for e in self.idempotents], f
        )
        return out, B

    # radical

    @cached_property
    def trace_form(self) -> np.ndarray:
        """``T[i, j] = tr(L(x_i x_j))``; its kernel is the radical in characteristic zero."""
        if self.field.char:
            raise NotImplementedError("the radical is only computed in characteristic zero")
        traces = [sum(np.diag(M), Fraction(0)) for M in self.left_mats]
        T = la.zeros(self.dim, self.dim, self.field)
        for i in range(self.dim):
            for j in range(self.dim):
                T[i, j] = sum((self.mul[i, j, k] * traces[k] for k in range(self.dim)), Fraction(0))
        return T

    def radical_corner_dim(self, p: int, q: int) -> int:
        return len(self.radical_corner_basis(p, q))

    def radical_corner_basis(self, p: int, q: int) -> list[np.ndarray]:
        """A basis of ``e_p rad(A) e_q`` (coordinate vectors)."""
        P = self.corner_projector(p, q)
        span = la.column_basis(P, self.field)
        if span.shape[1] == 0:
            return []
        # x = span @ c is in the radical iff T x = 0
        null = la.nullspace(la.matmul(self.trace_form, span, self.field), self.field)
        return [la.matmul(span, c.reshape(-1, 1), self.field).reshape(-1) for c in null]

    @cached_property
    def radical_basis(self) -> list[np.ndarray]:
        """Peirce-homogeneous basis of the Jacobson radical."""
        return [v for p in range(self.n) for q in range(self.n) for v in self.radical_corner_basis(p, q)]

    def is_basic(self) -> bool:
        return all(
            self.corner_dim(p, q) - self.radical_corner_dim(p, q) == (1 if p == q else 0)
            for p in range(self.n)
            for q in range(self.n)
        )

    # json

    def to_json(self) -> dict:
        f = self.field
        mul = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if self.mul[i, j, k] != 0:
                        mul.append([i, j, k, f.to_json(self.mul[i, j, k])])
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": self.basis,
            "unit": [f.to_json(x) for x in self.unit],
            "mul": mul,
            "idempotents": [[f.to_json(x) for x in e] for e in self.idempotents],
            "char": f.char,
        }


def _combine(x, mats, n, field):
    out = la.zeros(n, n, field)
    for c, M in zip(x, mats):
        if c != 0:
            out = out + c * M
    if field.char:
        out = out % field.char
    return out


def algebra_from_json(data: dict) -> Algebra:
    """Parse an algebra; malformed data raises ValueError/KeyError/TypeError."""
    char = int(data.get("char", 0))
    field = la.GF(char) if char else la.QQ
    basis = [str(b) for b in data["basis"]]
    n = int(data.get("dim", len(basis)))
    if n != len(basis):
        raise ValueError("dim does not match the number of basis labels")
    mul = np.empty((n, n, n), dtype=object)
    mul.fill(field.coerce(0))
    for entry in data["mul"]:
        i, j, k, c = entry
        if not all(isinstance(t, int) and 0 <= t < n for t in (i, j, k)):
            raise ValueError(f"bad structure constant index {entry!r}")
        mul[i, j, k] = field.norm(mul[i, j, k] + field.coerce(c))
    unit = [field.coerce(x) for x in data["unit"]]
    idem = [[field.coerce(x) for x in e] for e in data["idempotents"]]
    return Algebra(str(data.get("name", "algebra")), basis, mul, unit, idem, field)


# ---------------------------------------------------------------------------
# constructors


def truncated_polynomial(n: int, field=la.QQ) -> Algebra:
    """``k[x]/(x^n)`` with basis ``1, x, ..., x^{n-1}``."""
    if n < 1:
        raise ValueError("n must be positive")
    mul = np.empty((n, n, n), dtype=object)
    mul.fill(field.coerce(0))
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mul[i, j, i + j] = field.coerce(1)
    basis = ["1"] + ["x" if i == 1 else f"x^{i}" for i in range(1, n)]
    unit = [1] + [0] * (n - 1)
    return Algebra(f"k[x]/x^{n}", basis, mul, unit, [unit], field)


def path_algebra_A(n: int, max_length: int | None = None, field=la.QQ) -> Algebra:
    """Path algebra of the linear quiver ``1 -> 2 -> ... -> n`` modulo paths of length ``max_length``.

    The path from i to j (i <= j) lies in ``e_j A e_i``; a product ``p q`` is
    "first q, then p".  Basis: trivial paths ``e1..en`` then longer paths by
    length and source, labelled by their arrows (``a1`` is the arrow 1 -> 2).
    """
    if n < 1:
        raise ValueError("n must be positive")
    paths = [(i, i) for i in range(n)]
    for length in range(1, n):
        if max_length is not None and length >= max_length:
            break
        paths += [(i, i + length) for i in range(n - length)]
    index = {p: t for t, p in enumerate(paths)}
    N = len(paths)
    mul = np.empty((N, N, N), dtype=object)
    mul.fill(field.coerce(0))
    for s, (i, j) in enumerate(paths):
        for t, (k, l) in enumerate(paths):
            # (i -> j) after (k -> l) is defined when l == i
            if l == i and (k, j) in index:
                mul[s, t, index[(k, j)]] = field.coerce(1)
    labels = [
        f"e{i + 1}" if i == j else "".join(f"a{m + 1}" for m in reversed(range(i, j))) for i, j in paths
    ]
    unit = [1 if i == j else 0 for i, j in paths]
    idem = [[1 if t == p else 0 for t in range(N)] for p in range(n)]
    suffix = "" if max_length is None else f"/rad^{max_length}"
    return Algebra(f"A{n}{suffix}", labels, mul, unit, idem, field)


def semisimple(n: int, field=la.QQ) -> Algebra:
    """``k^n`` with its coordinate idempotents."""
    mul = np.empty((n, n, n), dtype=object)
    mul.fill(field.coerce(0))
    for i in range(n):
        mul[i, i, i] = field.coerce(1)
    idem = [[1 if t == p else 0 for t in range(n)] for p in range(n)]
    return Algebra(f"k^{n}", [f"e{i + 1}" for i in range(n)], mul, [1] * n, idem, field)
