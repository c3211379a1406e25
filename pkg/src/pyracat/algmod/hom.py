"""Homomorphism spaces, isomorphism search and summand multiplicities."""
from __future__ import annotations

import numpy as np

from .. import exactla as la
from ..rng import make_rng
from .modules import Module, _nonzeros


def _generators(M: Module) -> list[int]:
    """Algebra basis indices whose actions must be imposed.

    When both modules are Peirce homogeneous the label restriction already
    forces commuting with the idempotents, so those are skipped.
    """
    A = M.A
    idem = {tuple(e) for e in A.idempotents}
    return [x for x in range(A.dim) if tuple(A.basis_vector(x)) not in idem]


def hom_basis(M: Module, N: Module) -> list[np.ndarray]:
    """Basis of ``Hom(M, N)`` as ``N.dim x M.dim`` matrices, commuting with every action M and N share."""
    if (M.left is None) != (N.left is None) or (M.right is None) != (N.right is None):
        raise ValueError("modules must have the same sides")
    f = M.field
    labeled = M.labels is not None and N.labels is not None
    if labeled:
        by_label: dict = {}
        for c, lab in enumerate(M.labels):
            by_label.setdefault(lab, []).append(c)
        pairs = [(r, c) for r, lab in enumerate(N.labels) for c in by_label.get(lab, ())]
        gens = _generators(M)
    else:
        pairs = [(r, c) for r in range(N.dim) for c in range(M.dim)]
        gens = list(range(M.A.dim))
    var = {p: t for t, p in enumerate(pairs)}
    if not var:
        return []
    rows = []
    for side in ("left", "right"):
        if getattr(M, side) is None:
            continue
        for x in gens:
            SM, SN = getattr(M, side)[x], getattr(N, side)[x]
            colsM = _nonzeros(SM)  # column c -> (t, SM[t, c])
            rowsN = _nonzeros(np.ascontiguousarray(SN.T))  # row r -> (t, SN[r, t])
            # (X SM - SN X)[r, c] = sum_t X[r, t] SM[t, c] - sum_t SN[r, t] X[t, c]
            for r in range(N.dim):
                for c in range(M.dim):
                    row: dict = {}
                    for t, v in colsM.get(c, ()):
                        j = var.get((r, t))
                        if j is not None:
                            row[j] = f.norm(row.get(j, 0) + v)
                    for t, v in rowsN.get(r, ()):
                        j = var.get((t, c))
                        if j is not None:
                            row[j] = f.norm(row.get(j, 0) - v)
                    row = {j: v for j, v in row.items() if v != 0}
                    if row:
                        rows.append(row)
    out = []
    for vec in la.nullspace_sparse(rows, len(pairs), f):
        X = la.zeros(N.dim, M.dim, f)
        for j, v in vec.items():
            X[pairs[j]] = v
        out.append(X)
    return out


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_basis(M, N))


def is_homomorphism(X: np.ndarray, M: Module, N: Module) -> bool:
    f = M.field
    for side in ("left", "right"):
        a, b = getattr(M, side), getattr(N, side)
        if a is None:
            continue
        for SM, SN in zip(a, b):
            if not la.equal(la.matmul(X, SM, f), la.matmul(SN, X, f)):
                return False
    return True


def _combo(coeffs, basis, f):
    out = la.zeros(*basis[0].shape, f)
    for c, B in zip(coeffs, basis):
        if c:
            out = out + f.coerce(c) * B
    return out if not f.char else out % f.char


def find_isomorphism(M: Module, N: Module, seed: int = 0, trials: int = 64) -> np.ndarray | None:
    """An invertible homomorphism ``M -> N`` or None.

    Deterministic patterns are tried first (each basis element, the all-ones
    combination, alternating signs), then seeded random integer combinations.
    None means no isomorphism was found; for modules with local summands a
    generic combination is invertible whenever any is, so failure after the
    random trials is overwhelmingly likely to be a true negative.
    """
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return la.zeros(0, 0, M.field)
    basis = hom_basis(M, N)
    if not basis:
        return None
    f = M.field
    k = len(basis)
    patterns = [[1 if t == s else 0 for t in range(k)] for s in range(k)]
    patterns.append([1] * k)
    patterns.append([(-1) ** t for t in range(k)])
    patterns.append([t + 1 for t in range(k)])
    rng = make_rng(seed)
    patterns += [list(rng.integers(-3, 4, size=k)) for _ in range(trials)]
    for p in patterns:
        X = _combo([int(c) for c in p], basis, f)
        if la.is_invertible(X, f):
            return X
    return None


def pairing_rank(U: Module, V: Module) -> int:
    """Multiplicity of the indecomposable ``U`` (local endomorphism ring, residue field k) in ``V``.

    Equals the rank of ``(f, g) -> tr(g f) / dim U`` on ``Hom(U, V) x Hom(V, U)``:
    a composite ``g f`` in the local ring ``End(U)`` is invertible exactly when
    its residue, read off from the trace, is nonzero.
    """
    fs = hom_basis(U, V)
    if not fs:
        return 0
    gs = hom_basis(V, U)
    if not gs:
        return 0
    fld = U.field
    P = la.zeros(len(fs), len(gs), fld)
    for a, F in enumerate(fs):
        FT = F.T
        for b, G in enumerate(gs):
            # tr(G F) = sum_{i,j} G[i, j] F[j, i]
            P[a, b] = fld.norm(sum(x * y for x, y in zip(G.ravel(), FT.ravel()) if x != 0 and y != 0))
    return la.rank(P, fld)


def is_indecomposable_local(U: Module) -> bool:
    """``End(U)`` is local with residue field k.

    Subtracting the trace part from each endomorphism basis element leaves a
    complement of the identity; the ring is local exactly when that complement
    generates a nilpotent algebra.
    """
    f = U.field
    n = U.dim
    basis = hom_basis(U, U)
    if not basis or n == 0 or (f.char and n % f.char == 0):
        return False
    inv_n = f.inv(f.coerce(n))
    gens = []
    for B in basis:
        t = f.norm(sum(B[i, i] for i in range(n)))
        X = B - la.eye(n, f) * f.norm(t * inv_n)
        gens.append(X % f.char if f.char else X)
    layer = gens
    for _ in range(n):
        prods = [la.matmul(P, X, f) for P in layer for X in gens]
        rows = la.row_space([P.ravel() for P in prods], n * n, f)
        if rows.shape[0] == 0:
            return True
        layer = [rows[i].reshape(n, n) for i in range(rows.shape[0])]
    return False
