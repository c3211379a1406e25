"""Modules and bimodules over an :class:`Algebra` as action matrices.

One class covers left modules, right modules and bimodules: a missing side is
``None``.  Left actions are homomorphisms ``L(xy) = L(x) L(y)``, right actions
anti-homomorphisms ``R(xy) = R(y) R(x)``.  All constructions keep bases
Peirce homogeneous, so each basis vector carries a label ``(p, q)`` with
``e_p v e_q = v`` (``None`` on a missing side).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .. import exactla as la
from .algebra import Algebra


class Module:
    def __init__(self, A: Algebra, dim: int, left: list | None, right: list | None, name: str = ""):
        if left is None and right is None:
            raise ValueError("a module needs at least one action")
        self.A = A
        self.dim = int(dim)
        self.left = left
        self.right = right
        self.name = name
        for mats in (left, right):
            if mats is not None:
                if len(mats) != A.dim:
                    raise ValueError("need one action matrix per algebra basis element")
                if any(m.shape != (self.dim, self.dim) for m in mats):
                    raise ValueError("action matrices must be dim x dim")
        self.certificate = None  # optional list of (i, j, generator) making this a standard projective

    def __repr__(self):
        kind = "Bimodule" if self.is_bimodule else f"{self.side.capitalize()}Module"
        return f"{kind}({self.name or '?'}, dim={self.dim})"

    @property
    def field(self):
        return self.A.field

    @property
    def is_bimodule(self) -> bool:
        return self.left is not None and self.right is not None

    @property
    def side(self) -> str:
        if self.is_bimodule:
            return "bi"
        return "left" if self.left is not None else "right"

    def L(self, x) -> np.ndarray:
        return _combine(x, self.left, self.dim, self.field)

    def R(self, x) -> np.ndarray:
        return _combine(x, self.right, self.dim, self.field)

    def actions(self) -> list[np.ndarray]:
        """All action matrices, left then right."""
        return list(self.left or []) + list(self.right or [])

    @cached_property
    def labels(self) -> list[tuple] | None:
        """Peirce label of each basis vector, or None when the basis is not homogeneous."""
        A, f = self.A, self.field
        lp = [self.L(e) for e in A.idempotents] if self.left is not None else None
        rp = [self.R(e) for e in A.idempotents] if self.right is not None else None
        out = []
        for c in range(self.dim):
            lab = []
            for proj in (lp, rp):
                if proj is None:
                    lab.append(None)
                    continue
                hit = [p for p, P in enumerate(proj) if P[c, c] == 1 and sum(1 for x in P[:, c] if x != 0) == 1]
                if len(hit) != 1:
                    return None
                lab.append(hit[0])
            out.append(tuple(lab))
        return out

    def block(self, p, q) -> list[int]:
        """Basis indices with label ``(p, q)``."""
        if self.labels is None:
            raise ValueError("module basis is not Peirce homogeneous")
        return [c for c, lab in enumerate(self.labels) if lab == (p, q)]

    def validate(self) -> list[str]:
        A, f = self.A, self.field
        problems = []
        I = la.eye(self.dim, f)
        for side, mats, act in (("left", self.left, self.L), ("right", self.right, self.R)):
            if mats is None:
                continue
            if not la.equal(act(A.unit), I):
                problems.append(f"unit does not act as the identity on the {side}")
            for i in range(A.dim):
                for j in range(A.dim):
                    prod = act(A.mul[i, j, :])
                    want = la.matmul(mats[i], mats[j], f) if side == "left" else la.matmul(mats[j], mats[i], f)
                    if not la.equal(prod, want):
                        problems.append(f"{side} action is not multiplicative on ({A.basis[i]}, {A.basis[j]})")
        if self.is_bimodule:
            for i in range(A.dim):
                for j in range(A.dim):
                    if not la.equal(
                        la.matmul(self.left[i], self.right[j], f), la.matmul(self.right[j], self.left[i], f)
                    ):
                        problems.append(f"actions of {A.basis[i]} and {A.basis[j]} do not commute")
        return problems

    def to_json(self) -> dict:
        f = self.field
        out = {"dim": self.dim}
        if self.left is not None:
            out["left"] = [la.to_json(m, f) for m in self.left]
        if self.right is not None:
            out["right"] = [la.to_json(m, f) for m in self.right]
        return out


class Bimodule(Module):
    def __init__(self, A: Algebra, dim: int, left: list, right: list, name: str = ""):
        if left is None or right is None:
            raise ValueError("a bimodule needs both actions")
        super().__init__(A, dim, left, right, name)


class OneSidedModule(Module):
    def __init__(self, A: Algebra, dim: int, mats: list, side: str, name: str = ""):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        super().__init__(A, dim, mats if side == "left" else None, mats if side == "right" else None, name)


def _combine(x, mats, n, field):
    if mats is None:
        raise ValueError("no action on this side")
    out = la.zeros(n, n, field)
    for c, M in zip(x, mats):
        if c != 0:
            out = out + c * M
    if field.char:
        out = out % field.char
    return out


def module_from_json(data: dict, A: Algebra) -> Module:
    f = A.field
    n = int(data["dim"])
    left = [la.mat(m, f, shape=(n, n)) for m in data["left"]] if "left" in data else None
    right = [la.mat(m, f, shape=(n, n)) for m in data["right"]] if "right" in data else None
    return Module(A, n, left, right, data.get("name", ""))


def _restrict(M: np.ndarray, rows: list[int], cols: list[int]) -> np.ndarray:
    return np.ascontiguousarray(M[np.ix_(rows, cols)]) if rows and cols else la.zeros(len(rows), len(cols))


# ---------------------------------------------------------------------------
# basic modules


def regular(A: Algebra) -> Bimodule:
    return Bimodule(A, A.dim, list(A.left_mats), list(A.right_mats), "A")


def left_regular(A: Algebra) -> OneSidedModule:
    return OneSidedModule(A, A.dim, list(A.left_mats), "left", "A")


def right_regular(A: Algebra) -> OneSidedModule:
    return OneSidedModule(A, A.dim, list(A.right_mats), "right", "A")


def dual(M: Module) -> Module:
    """``Hom_k(M, k)`` in the dual basis: left action ``R(a)^T``, right action ``L(a)^T``."""
    tr = lambda mats: None if mats is None else [np.ascontiguousarray(m.T) for m in mats]
    return Module(M.A, M.dim, tr(M.right), tr(M.left), f"D({M.name})")


def left_projective(A: Algebra, i: int) -> OneSidedModule:
    """``A e_i``, spanned by the basis elements of the blocks ``e_p A e_i``."""
    idx = [t for t, (p, q) in enumerate(A.block_of) if q == i]
    M = OneSidedModule(A, len(idx), [_restrict(m, idx, idx) for m in A.left_mats], "left", f"Ae{i + 1}")
    M.certificate = [(i, None, _coords(A.idempotents[i], idx))]
    return M


def right_projective(A: Algebra, j: int) -> OneSidedModule:
    """``e_j A``."""
    idx = [t for t, (p, q) in enumerate(A.block_of) if p == j]
    M = OneSidedModule(A, len(idx), [_restrict(m, idx, idx) for m in A.right_mats], "right", f"e{j + 1}A")
    M.certificate = [(None, j, _coords(A.idempotents[j], idx))]
    return M


def left_injective(A: Algebra, i: int) -> Module:
    """``D(e_i A)``, the injective hull of the i-th simple left module."""
    M = dual(right_projective(A, i))
    M.name = f"D(e{i + 1}A)"
    return M


def _coords(v, idx: list[int]) -> np.ndarray:
    return np.array([v[t] for t in idx], dtype=object)


# ---------------------------------------------------------------------------
# tensor products


def tensor_k(M: Module, N: Module, name: str = "") -> Module:
    """``M (x)_k N`` with M's left action and N's right action (basis m outer, n inner)."""
    if M.left is None or N.right is None:
        raise ValueError("tensor_k needs a left module and a right module")
    f = M.field
    Im, In = la.eye(M.dim, f), la.eye(N.dim, f)
    left = [la.kronecker(m, In, f) for m in M.left]
    right = [la.kronecker(Im, m, f) for m in N.right]
    return Bimodule(M.A, M.dim * N.dim, left, right, name or f"{M.name}(x){N.name}")


@dataclass
class TensorOverA:
    """``M (x)_A N`` with the quotient map from ``M (x)_k N`` and a section."""

    module: Module
    proj: np.ndarray  # dim x (dim M * dim N)
    section: np.ndarray  # (dim M * dim N) x dim
    free: list[int]  # kept coordinates of M (x)_k N


def tensor_over_A(M: Module, N: Module, name: str = "") -> TensorOverA:
    """Quotient of ``M (x)_k N`` by ``m a (x) n - m (x) a n``; basis = non-pivot coordinates of the RREF."""
    if M.right is None or N.left is None:
        raise ValueError("tensor over A needs a right action on M and a left action on N")
    A, f = M.A, M.field
    m, n = M.dim, N.dim
    el = la.Eliminator(m * n, f)
    nzR = [_nonzeros(R) for R in M.right]
    nzL = [_nonzeros(L) for L in N.left]
    for x in range(A.dim):
        for s in range(m):
            for t in range(n):
                row: dict = {}
                for r, v in nzR[x].get(s, ()):
                    row[r * n + t] = row.get(r * n + t, 0) + v
                for r, v in nzL[x].get(t, ()):
                    row[s * n + r] = row.get(s * n + r, 0) - v
                el.insert(row)
    pivots = set(el.rows)
    free = [c for c in range(m * n) if c not in pivots]
    d = len(free)
    pos = {c: t for t, c in enumerate(free)}
    P = la.zeros(d, m * n, f)
    for t, c in enumerate(free):
        P[t, c] = f.coerce(1)
    for p, row in el.rows.items():
        for c, v in row.items():
            if c != p:
                P[pos[c], p] = f.norm(-v)
    S = la.zeros(m * n, d, f)
    for t, c in enumerate(free):
        S[c, t] = f.coerce(1)
    left = right = None
    if M.left is not None:
        In = la.eye(n, f)
        left = [la.matmul(P, la.matmul(la.kronecker(L, In, f), S, f), f) for L in M.left]
    if N.right is not None:
        Im = la.eye(m, f)
        right = [la.matmul(P, la.matmul(la.kronecker(Im, R, f), S, f), f) for R in N.right]
    if left is None and right is None:
        raise ValueError("M (x)_A N would have no action; not supported")
    mod = Module(A, d, left, right, name or f"{M.name}(x)_A{N.name}")
    return TensorOverA(mod, P, S, free)


def _nonzeros(Mat: np.ndarray) -> dict[int, list]:
    """Column -> list of (row, value) of the nonzero entries."""
    out: dict[int, list] = {}
    rows, cols = Mat.shape
    for c in range(cols):
        for r in range(rows):
            v = Mat[r, c]
            if v != 0:
                out.setdefault(c, []).append((r, v))
    return out


def tensor_morphism(src: TensorOverA, tgt: TensorOverA, f_mat: np.ndarray, g_mat: np.ndarray) -> np.ndarray:
    """``f (x)_A g`` between two computed tensor products."""
    fld = src.module.field
    return la.matmul(tgt.proj, la.matmul(la.kronecker(f_mat, g_mat, fld), src.section, fld), fld)


def element_in_tensor(T: TensorOverA, m_vec, n_vec) -> np.ndarray:
    """Coordinates of ``m (x) n`` in ``M (x)_A N``."""
    fld = T.module.field
    v = la.kronecker(
        np.asarray(m_vec, dtype=object).reshape(-1, 1), np.asarray(n_vec, dtype=object).reshape(-1, 1), fld
    )
    return la.matmul(T.proj, v, fld).reshape(-1)


# ---------------------------------------------------------------------------
# direct sums


def direct_sum_modules(mods: list[Module], name: str = "") -> tuple[Module, list, list]:
    if not mods:
        raise ValueError("need at least one module")
    A, f = mods[0].A, mods[0].field
    dims = [M.dim for M in mods]
    total = sum(dims)

    def blockdiag(mats):
        out = la.zeros(total, total, f)
        off = 0
        for M, d in zip(mats, dims):
            out[off : off + d, off : off + d] = M
            off += d
        return out

    left = [blockdiag([M.left[x] for M in mods]) for x in range(A.dim)] if mods[0].left is not None else None
    right = [blockdiag([M.right[x] for M in mods]) for x in range(A.dim)] if mods[0].right is not None else None
    S = Module(A, total, left, right, name or "+".join(M.name for M in mods))
    inj, proj = [], []
    off = 0
    for d in dims:
        i = la.zeros(total, d, f)
        for r in range(d):
            i[off + r, r] = f.coerce(1)
        inj.append(i)
        proj.append(np.ascontiguousarray(i.T))
        off += d
    return S, inj, proj


def restrict_to_submodule(M: Module, basis: np.ndarray, name: str = "") -> tuple[Module, np.ndarray]:
    """The submodule spanned by the columns of ``basis`` (assumed invariant); returns it and the inclusion."""
    f = M.field
    Linv = la.left_inverse(basis, f)
    conj = lambda mats: None if mats is None else [la.matmul(Linv, la.matmul(m, basis, f), f) for m in mats]
    return Module(M.A, basis.shape[1], conj(M.left), conj(M.right), name), basis


# ---------------------------------------------------------------------------
# the bimodules of interest


def standard_projective(A: Algebra, i: int, j: int) -> Bimodule:
    """``P_ij = A e_i (x)_k e_j A`` in the product of Peirce bases, with generator ``e_i (x) e_j``."""
    Ae, eA = left_projective(A, i), right_projective(A, j)
    P = tensor_k(Ae, eA, f"P{i + 1}{j + 1}")
    g = la.kronecker(
        Ae.certificate[0][2].reshape(-1, 1), eA.certificate[0][2].reshape(-1, 1), A.field
    ).reshape(-1)
    P.certificate = [(i, j, g)]
    return P


def injective_projective(A: Algebra, i: int, j: int) -> Bimodule:
    """``Q_ij = D(e_i A) (x)_k e_j A``."""
    return tensor_k(left_injective(A, i), right_projective(A, j), f"Q{i + 1}{j + 1}")


def bimodule_F(A: Algebra) -> Bimodule:
    return tensor_k(left_regular(A), right_regular(A), "F")


def bimodule_G(A: Algebra) -> Bimodule:
    """``A* (x)_k A`` where ``A* = D(A_A)`` is a left module."""
    return tensor_k(dual(right_regular(A)), right_regular(A), "G")
