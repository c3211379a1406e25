"""Tops, projective covers, projective resolutions and summand multiplicities of bimodules."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .. import exactla as la
from .algebra import Algebra
from .hom import find_isomorphism, pairing_rank
from .modules import (
    Module,
    direct_sum_modules,
    injective_projective,
    left_injective,
    left_projective,
    restrict_to_submodule,
    standard_projective,
)


def _block_indices(M: Module) -> dict:
    out: dict = {}
    for c, lab in enumerate(M.labels):
        out.setdefault(lab, []).append(c)
    return out


def radical_image(M: Module) -> list[np.ndarray]:
    """Spanning vectors of ``rad(A) M + M rad(A)`` (whichever sides act)."""
    A, f = M.A, M.field
    vecs = []
    for r in A.radical_basis:
        for side in ("left", "right"):
            if getattr(M, side) is None:
                continue
            S = M.L(r) if side == "left" else M.R(r)
            for c in range(M.dim):
                col = S[:, c]
                if any(x != 0 for x in col):
                    vecs.append(col)
    return vecs


def top_generators(M: Module) -> list[tuple[tuple, np.ndarray]]:
    """Basis vectors of M whose classes form a basis of the top, with their Peirce labels.

    Chosen greedily in basis order modulo the radical image, so the result is
    deterministic.
    """
    if M.labels is None:
        raise ValueError("module basis is not Peirce homogeneous")
    f = M.field
    el = la.Eliminator(M.dim, f)
    for v in radical_image(M):
        el.insert({j: x for j, x in enumerate(v) if x != 0})
    out = []
    one = f.coerce(1)
    for c in range(M.dim):
        if el.insert({c: one}) is not None:
            g = la.zeros(1, M.dim, f).reshape(-1)
            g[c] = one
            out.append((M.labels[c], g))
    return out


def top_dims(M: Module) -> list[list[int]]:
    """``t[i][j]`` = dimension of the ``(i, j)`` Peirce part of the top of M."""
    n = M.A.n
    t = [[0] * n for _ in range(n)]
    for (p, q), _ in top_generators(M):
        t[p if p is not None else 0][q if q is not None else 0] += 1
    return t


# ---------------------------------------------------------------------------
# covers and resolutions


def projective_sum(A: Algebra, labels: list[tuple[int, int]]) -> Module:
    """``P_{i1 j1} + P_{i2 j2} + ...`` in the standard model, with generator certificates."""
    if not labels:
        return zero_bimodule(A)
    parts = [standard_projective(A, i, j) for i, j in labels]
    S, inj, _ = direct_sum_modules(parts, "+".join(p.name for p in parts))
    S.certificate = [
        (i, j, la.matmul(ii, p.certificate[0][2].reshape(-1, 1), A.field).reshape(-1))
        for (i, j), p, ii in zip(labels, parts, inj)
    ]
    return S


def zero_bimodule(A: Algebra) -> Module:
    z = la.zeros(0, 0, A.field)
    return Module(A, 0, [z] * A.dim, [z] * A.dim, "0")


def map_from_generators(P: Module, M: Module, images: list[np.ndarray]) -> np.ndarray:
    """The bimodule map from a certified projective P sending the s-th generator to ``images[s]``."""
    A, f = M.A, M.field
    out = la.zeros(M.dim, P.dim, f)
    col = 0
    for (i, j, _), y in zip(P.certificate, images):
        lidx = [t for t, (p, q) in enumerate(A.block_of) if q == i]
        ridx = [t for t, (p, q) in enumerate(A.block_of) if p == j]
        ycol = np.asarray(y, dtype=object).reshape(-1, 1)
        Ry = {v: la.matmul(M.R(A.basis_vector(v)), ycol, f) for v in ridx}
        for u in lidx:
            Lu = M.L(A.basis_vector(u))
            for v in ridx:
                out[:, col] = la.matmul(Lu, Ry[v], f).reshape(-1)
                col += 1
    if col != P.dim:
        raise ValueError("certificate does not match the module dimension")
    return out


@dataclass
class Cover:
    projective: Module
    labels: list[tuple[int, int]]
    surjection: np.ndarray


def projective_cover(M: Module) -> Cover:
    """``P = sum P_ij`` over the top generators of M with the induced surjection."""
    gens = top_generators(M)
    labels = [lab for lab, _ in gens]
    P = projective_sum(M.A, labels)
    eps = map_from_generators(P, M, [g for _, g in gens]) if labels else la.zeros(M.dim, 0, M.field)
    if la.rank(eps, M.field) != M.dim:
        raise RuntimeError("projective cover is not surjective")
    return Cover(P, labels, eps)


def kernel_basis(h: np.ndarray, src: Module, tgt: Module) -> np.ndarray:
    """Homogeneous kernel basis of a label-preserving map, one Peirce block at a time."""
    f = src.field
    sb, tb = _block_indices(src), _block_indices(tgt) if tgt.dim else {}
    cols = []
    for lab in sorted(sb, key=lambda x: tuple(-1 if v is None else v for v in x)):
        c_idx = sb[lab]
        r_idx = tb.get(lab, [])
        if r_idx:
            sub = np.ascontiguousarray(h[np.ix_(r_idx, c_idx)])
            null = la.nullspace(sub, f)
        else:
            null = [la.eye(len(c_idx), f)[:, t] for t in range(len(c_idx))]
        for v in null:
            full = la.zeros(1, src.dim, f).reshape(-1)
            for t, c in enumerate(c_idx):
                full[c] = v[t]
            cols.append(full)
    if not cols:
        return la.zeros(src.dim, 0, f)
    return np.stack(cols, axis=1)


@dataclass
class Resolution:
    """``... -> Q_1 -> Q_0 -> M`` with ``diffs[k]: Q_{k+1} -> Q_k`` and ``augmentation: Q_0 -> M``."""

    module: Module
    terms: list[Module]
    labels: list[list[tuple[int, int]]]
    diffs: list[np.ndarray]
    augmentation: np.ndarray
    terminated: bool
    kernel_dims: list[int] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def is_exact(self) -> bool:
        """Rank bookkeeping: ``dim Q_k = rank(d_k) + rank(d_{k+1})`` with ``d_0`` the augmentation."""
        f = self.module.field
        ranks = [la.rank(self.augmentation, f)] + [la.rank(d, f) for d in self.diffs]
        if ranks[0] != self.module.dim:
            return False
        for k, Q in enumerate(self.terms):
            below = ranks[k]
            above = ranks[k + 1] if k + 1 < len(ranks) else (0 if self.terminated else Q.dim - below)
            if below + above != Q.dim:
                return False
        return True

    def is_complex(self) -> bool:
        f = self.module.field
        maps = [self.augmentation] + self.diffs
        return all(la.is_zero(la.matmul(maps[k], maps[k + 1], f)) for k in range(len(maps) - 1))


def projective_resolution(M: Module, length: int) -> Resolution:
    """Iterated projective covers of kernels, stopping early when a kernel vanishes."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    f = M.field
    cover = projective_cover(M)
    terms, labels, diffs = [cover.projective], [cover.labels], []
    K = kernel_basis(cover.surjection, cover.projective, M)
    kernel_dims = [K.shape[1]]
    for _ in range(length):
        if K.shape[1] == 0:
            break
        sub, incl = restrict_to_submodule(terms[-1], K, "ker")
        c = projective_cover(sub)
        d = la.matmul(incl, c.surjection, f)
        terms.append(c.projective)
        labels.append(c.labels)
        diffs.append(d)
        K = kernel_basis(d, c.projective, terms[-2])
        kernel_dims.append(K.shape[1])
    return Resolution(M, terms, labels, diffs, cover.surjection, K.shape[1] == 0, kernel_dims)


# ---------------------------------------------------------------------------
# multiplicities


@lru_cache(maxsize=None)
def _nakayama(A: Algebra) -> tuple:
    """``nu[i] = k`` when the injective hull ``D(e_i A)`` is isomorphic to ``A e_k``, else None."""
    out = []
    for i in range(A.n):
        I = left_injective(A, i)
        hit = None
        for k in range(A.n):
            if find_isomorphism(I, left_projective(A, k)) is not None:
                hit = k
                break
        out.append(hit)
    return tuple(out)


def nakayama(A: Algebra) -> list[int | None]:
    return list(_nakayama(A))


@dataclass
class Decomposition:
    """Multiplicities over ``P_ij`` and over ``Q_ij`` for non-projective injectives ``D(e_i A)``."""

    P: list[list[int]]
    Q: list[list[int]]
    q_rows: list[int]
    consistent: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"P": self.P, "Q": self.Q, "q_rows": self.q_rows, "consistent": self.consistent}

    def __eq__(self, other):
        return isinstance(other, Decomposition) and self.P == other.P and self.Q == other.Q

    def scaled(self, d: int) -> "Decomposition":
        return Decomposition(
            [[d * x for x in r] for r in self.P], [[d * x for x in r] for r in self.Q], self.q_rows, self.consistent
        )


def decompose_projective(X: Module) -> Decomposition:
    """Multiplicities of the indecomposables ``P_ij`` (and ``Q_ij``) in X.

    Each multiplicity is the rank of the trace pairing between ``Hom(U, X)``
    and ``Hom(X, U)``; the total dimension is tallied against ``dim X`` and a
    mismatch (X outside the additive closure) is reported as inconsistent.
    """
    A = X.A
    n = A.n
    q_rows = [i for i, k in enumerate(nakayama(A)) if k is None]
    P = [[pairing_rank(standard_projective(A, i, j), X) for j in range(n)] for i in range(n)]
    Q = [[0] * n for _ in range(n)]
    total = sum(P[i][j] * standard_projective(A, i, j).dim for i in range(n) for j in range(n))
    for i in q_rows:
        for j in range(n):
            U = injective_projective(A, i, j)
            Q[i][j] = pairing_rank(U, X)
            total += Q[i][j] * U.dim
    ok = total == X.dim
    return Decomposition(P, Q, q_rows, ok, "" if ok else f"summands account for {total} of {X.dim} dimensions")
