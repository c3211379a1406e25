"""Category oracles backed by bimodules.

:class:`BimoduleCategory` is the concrete additive category of stored
bimodules with hom-solver morphisms.  :class:`ProjectiveBimoduleCategory` is a
skeletal model of ``add(A (x)_k A)``: an object is a tuple of labels ``(i, j)``
standing for ``P_{i1 j1} + P_{i2 j2} + ...``, and a morphism block
``P_kl -> P_ij`` is a coefficient matrix over ``e_k A e_i (x) e_j A e_l`` (the
generator goes to ``sum F[u, v] u (x) v``).  Tensor over A is computed on
labels through ``P_ij (x)_A P_kl = P_il (x) e_j A e_k``.
"""
from __future__ import annotations

import numpy as np

from .. import exactla as la
from ..catcore import AdditiveCategory, MonoidalCategory
from .algebra import Algebra
from .hom import hom_basis
from .modules import (
    Module,
    direct_sum_modules,
    element_in_tensor,
    regular,
    standard_projective,
    tensor_over_A,
)
from .resolution import map_from_generators, projective_sum, zero_bimodule


class BimoduleCategory(AdditiveCategory):
    """Objects are :class:`Module` bimodules; ``Hom(M, N)`` is ``N.dim x M.dim`` matrices."""

    strict_on_the_nose = False

    def __init__(self, A: Algebra, generators: list[Module] | None = None):
        self.A = A
        self.field = A.field
        if generators is None:
            generators = [regular(A)] + [standard_projective(A, i, j) for i in range(A.n) for j in range(A.n)]
        self.generators = generators
        self._hom_cache: dict = {}

    def __repr__(self):
        return f"BimoduleCategory({self.A.name})"

    def zero_object(self):
        return zero_bimodule(self.A)

    def is_zero_object(self, X) -> bool:
        return X.dim == 0

    def same_object(self, X, Y) -> bool:
        if X is Y:
            return True
        return (
            X.dim == Y.dim
            and all(la.equal(a, b) for a, b in zip(X.left, Y.left))
            and all(la.equal(a, b) for a, b in zip(X.right, Y.right))
        )

    def direct_sum(self, objs):
        if not objs:
            return self.zero_object(), [], []
        return direct_sum_modules(list(objs))

    def identity(self, X):
        return la.eye(X.dim, self.field)

    def zero(self, X, Y):
        return la.zeros(Y.dim, X.dim, self.field)

    def compose(self, g, f):
        return la.matmul(g, f, self.field)

    def add(self, f, g):
        if f.shape != g.shape:
            raise ValueError(f"shape mismatch {f.shape} + {g.shape}")
        out = f + g
        return out % self.field.char if self.field.char else out

    def scale(self, c, f):
        out = self.field.coerce(c) * f
        if self.field.char:
            out = out % self.field.char
        return out if out.size else la.zeros(*f.shape, self.field)

    def equal(self, f, g) -> bool:
        return la.equal(f, g)

    def is_zero(self, f) -> bool:
        return la.is_zero(f)

    def hom_basis(self, X, Y):
        key = (id(X), id(Y))
        hit = self._hom_cache.get(key)
        if hit is None or hit[0] is not X or hit[1] is not Y:
            hit = (X, Y, hom_basis(X, Y) if X.dim and Y.dim else [])
            self._hom_cache[key] = hit
        return hit[2]

    def flatten(self, f):
        return list(f.flat)

    def sample_object(self, rng):
        """Zero, one generator, or the sum of two generators."""
        k = int(rng.integers(0, 3))
        if k == 0:
            return self.zero_object()
        picks = [self.generators[int(rng.integers(0, len(self.generators)))] for _ in range(k)]
        return picks[0] if k == 1 else self.direct_sum(picks)[0]

    def object_to_json(self, X):
        return X.to_json()

    def mor_to_json(self, f):
        return la.to_json(f, self.field)


# ---------------------------------------------------------------------------
# the skeletal category of projective bimodules


class SkelMor:
    """Morphism ``src -> tgt`` with blocks ``{(t, s): coefficient matrix}``; zero blocks are dropped."""

    __slots__ = ("src", "tgt", "blocks")

    def __init__(self, src: tuple, tgt: tuple, blocks: dict):
        self.src = src
        self.tgt = tgt
        self.blocks = {k: B for k, B in blocks.items() if B.size and any(x != 0 for x in B.flat)}

    def __repr__(self):
        return f"SkelMor({len(self.src)} -> {len(self.tgt)}, {len(self.blocks)} blocks)"


class ProjectiveBimoduleCategory(MonoidalCategory):
    """Skeletal ``add(A (x)_k A)`` with the tensor product over A; monoidal but not strict."""

    strict_on_the_nose = False

    def __init__(self, A: Algebra):
        if not A.is_adapted:
            raise ValueError("the algebra basis must be Peirce adapted")
        self.A = A
        self.field = A.field
        n = A.n
        self.corner = {(p, q): A.blocks.get((p, q), []) for p in range(n) for q in range(n)}
        # coordinates of e_i inside its corner basis
        self._idem = []
        for i, e in enumerate(A.idempotents):
            idx = self.corner[(i, i)]
            self._idem.append(np.array([e[t] for t in idx], dtype=object))
        self._mul_cache: dict = {}
        self._real_cache: dict = {}

    def __repr__(self):
        return f"ProjectiveBimoduleCategory({self.A.name})"

    def B(self, p: int, q: int) -> list[int]:
        """Algebra basis indices spanning ``e_p A e_q``."""
        return self.corner[(p, q)]

    def _mul(self, p, q, r):
        """``M[x, y, z]`` = coefficient of the z-th basis element of ``e_p A e_r`` in ``x y``."""
        key = (p, q, r)
        M = self._mul_cache.get(key)
        if M is None:
            bx, by, bz = self.B(p, q), self.B(q, r), self.B(p, r)
            M = np.ascontiguousarray(self.A.mul[np.ix_(bx, by, bz)]) if bx and by and bz else None
            if M is None:
                M = np.empty((len(bx), len(by), len(bz)), dtype=object)
                M.fill(self.field.coerce(0))
            self._mul_cache[key] = M
        return M

    # objects

    def zero_object(self):
        return ()

    def is_zero_object(self, X) -> bool:
        return len(X) == 0

    def direct_sum(self, objs):
        objs = [tuple(o) for o in objs]
        total = tuple(lab for o in objs for lab in o)
        inj, proj = [], []
        off = 0
        for o in objs:
            blocks = {(off + s, s): self._id_block(lab) for s, lab in enumerate(o)}
            inj.append(SkelMor(o, total, blocks))
            proj.append(SkelMor(total, o, {(s, off + s): self._id_block(lab) for s, lab in enumerate(o)}))
            off += len(o)
        return total, inj, proj

    def _id_block(self, lab):
        i, j = lab
        return np.outer(self._idem[i], self._idem[j])

    def _shape(self, src_lab, tgt_lab):
        (k, l), (i, j) = src_lab, tgt_lab
        return len(self.B(k, i)), len(self.B(j, l))

    # morphisms

    def identity(self, X):
        return SkelMor(X, X, {(s, s): self._id_block(lab) for s, lab in enumerate(X)})

    def zero(self, X, Y):
        return SkelMor(X, Y, {})

    def _compose_block(self, G, F, k, l, i, j, m, q):
        """``(u' (x) v') o (u (x) v) = (u u') (x) (v' v)`` for ``P_kl -> P_ij -> P_mq``."""
        M1 = self._mul(k, i, m)  # u in e_k A e_i, u' in e_i A e_m
        M2 = self._mul(q, j, l)  # v' in e_q A e_j, v in e_j A e_l
        X = np.tensordot(F, M1, axes=([0], [0]))  # [v, u', u'']
        X = np.tensordot(X, G, axes=([1], [0]))  # [v, u'', v']
        return np.tensordot(X, M2, axes=([0, 2], [1, 0]))  # [u'', v'']

    def compose(self, g: SkelMor, f: SkelMor) -> SkelMor:
        if len(g.src) != len(f.tgt):
            raise ValueError("morphisms are not composable")
        fld = self.field
        by_mid: dict = {}
        for (t, s), F in f.blocks.items():
            by_mid.setdefault(t, []).append((s, F))
        out: dict = {}
        for (r, t), G in g.blocks.items():
            i, j = f.tgt[t]
            m, q = g.tgt[r]
            for s, F in by_mid.get(t, ()):
                k, l = f.src[s]
                H = self._compose_block(G, F, k, l, i, j, m, q)
                out[(r, s)] = out[(r, s)] + H if (r, s) in out else H
        if fld.char:
            out = {key: H % fld.char for key, H in out.items()}
        return SkelMor(f.src, g.tgt, out)

    def add(self, f: SkelMor, g: SkelMor) -> SkelMor:
        out = dict(f.blocks)
        for key, B in g.blocks.items():
            out[key] = out[key] + B if key in out else B
        if self.field.char:
            out = {k: B % self.field.char for k, B in out.items()}
        return SkelMor(f.src, f.tgt, out)

    def scale(self, c, f: SkelMor) -> SkelMor:
        c = self.field.coerce(c)
        out = {k: c * B for k, B in f.blocks.items()}
        if self.field.char:
            out = {k: B % self.field.char for k, B in out.items()}
        return SkelMor(f.src, f.tgt, out)

    def equal(self, f: SkelMor, g: SkelMor) -> bool:
        if f.blocks.keys() != g.blocks.keys():
            return False
        return all(la.equal(B, g.blocks[k]) for k, B in f.blocks.items())

    def is_zero(self, f: SkelMor) -> bool:
        return not f.blocks

    def hom_basis(self, X, Y):
        out = []
        zero = self.field.coerce(0)
        one = self.field.coerce(1)
        for t, tl in enumerate(Y):
            for s, sl in enumerate(X):
                a, b = self._shape(sl, tl)
                for u in range(a):
                    for v in range(b):
                        B = np.empty((a, b), dtype=object)
                        B.fill(zero)
                        B[u, v] = one
                        out.append(SkelMor(X, Y, {(t, s): B}))
        return out

    def hom_dim(self, X, Y) -> int:
        return sum(a * b for tl in Y for sl in X for a, b in [self._shape(sl, tl)])

    def flatten(self, f: SkelMor) -> list:
        out = []
        zero = self.field.coerce(0)
        for t, tl in enumerate(f.tgt):
            for s, sl in enumerate(f.src):
                B = f.blocks.get((t, s))
                if B is None:
                    a, b = self._shape(sl, tl)
                    out.extend([zero] * (a * b))
                else:
                    out.extend(B.flat)
        return out

    # monoidal structure

    def unit(self):
        raise NotImplementedError("the regular bimodule is not projective; the skeletal model has no unit")

    def tensor_summands(self, X, Y) -> list[tuple[int, int, int]]:
        """Summands ``(s, t, c)`` of ``X (x)_A Y`` with c running over the basis of ``e_j A e_k``."""
        return [(s, t, c) for s, (i, j) in enumerate(X) for t, (k, l) in enumerate(Y) for c in range(len(self.B(j, k)))]

    def tensor_obj(self, X, Y):
        return tuple((X[s][0], Y[t][1]) for s, t, _ in self.tensor_summands(X, Y))

    def tensor_mor(self, f: SkelMor, g: SkelMor, src=None, tgt=None) -> SkelMor:
        """Block at ``(s', t', c'), (s, t, c)`` is ``F N G`` with ``N[v, u2]`` the c'-coordinate of ``v c u2``."""
        X, Y = f.src, g.src
        X2, Y2 = f.tgt, g.tgt
        if src is not None and (tuple(src[0]) != X or tuple(src[1]) != Y):
            raise ValueError("source objects do not match the morphisms")
        S = self.tensor_summands(X, Y)
        T = self.tensor_summands(X2, Y2)
        spos = {key: r for r, key in enumerate(S)}
        tpos = {key: r for r, key in enumerate(T)}
        fld = self.field
        by_f: dict = {}
        for (s2, s), F in f.blocks.items():
            by_f.setdefault(s, []).append((s2, F))
        by_g: dict = {}
        for (t2, t), G in g.blocks.items():
            by_g.setdefault(t, []).append((t2, G))
        out: dict = {}
        for s, (i, j) in enumerate(X):
            for t, (k, l) in enumerate(Y):
                nc = len(self.B(j, k))
                if not nc:
                    continue
                for s2, F in by_f.get(s, ()):
                    j2 = X2[s2][1]
                    for t2, G in by_g.get(t, ()):
                        k2 = Y2[t2][0]
                        nc2 = len(self.B(j2, k2))
                        if not nc2:
                            continue
                        # v in e_{j2} A e_j, c in e_j A e_k, u2 in e_k A e_{k2}
                        Mvc = self._mul(j2, j, k)  # [v, c, w] with w in e_{j2} A e_k
                        Mwu = self._mul(j2, k, k2)  # [w, u2, c']
                        for c in range(nc):
                            N = np.tensordot(Mvc[:, c, :], Mwu, axes=([1], [0]))  # [v, u2, c']
                            for c2 in range(nc2):
                                H = la.matmul(la.matmul(F, np.ascontiguousarray(N[:, :, c2]), fld), G, fld)
                                key = (tpos[(s2, t2, c2)], spos[(s, t, c)])
                                out[key] = out[key] + H if key in out else H
        if fld.char:
            out = {k: B % fld.char for k, B in out.items()}
        return SkelMor(self.tensor_obj(X, Y), self.tensor_obj(X2, Y2), out)

    # sampling and json

    def sample_object(self, rng):
        n = self.A.n
        k = int(rng.integers(0, 3))
        return tuple((int(rng.integers(0, n)), int(rng.integers(0, n))) for _ in range(k))

    def object_to_json(self, X):
        return [[i + 1, j + 1] for i, j in X]

    def object_from_json(self, data):
        return tuple((int(i) - 1, int(j) - 1) for i, j in data)

    def mor_to_json(self, f: SkelMor):
        return [
            {"target": t, "source": s, "coeffs": la.to_json(B, self.field)} for (t, s), B in sorted(f.blocks.items())
        ]

    def mor_from_json(self, data, X, Y):
        blocks = {}
        for e in data:
            t, s = int(e["target"]), int(e["source"])
            blocks[(t, s)] = la.mat(e["coeffs"], self.field, shape=self._shape(X[s], Y[t]))
        return SkelMor(tuple(X), tuple(Y), blocks)

    # concrete realization

    def realize(self, X) -> Module:
        """The standard-model bimodule ``P_{i1 j1} + ...`` with generator certificates."""
        X = tuple(X)
        M = self._real_cache.get(X)
        if M is None:
            M = projective_sum(self.A, list(X))
            self._real_cache[X] = M
        return M

    def _offsets(self, X) -> list[int]:
        offs, o = [], 0
        for i, j in X:
            offs.append(o)
            o += len(self._left_idx(i)) * len(self._right_idx(j))
        return offs

    def _left_idx(self, i):
        return [t for t, (p, q) in enumerate(self.A.block_of) if q == i]

    def _right_idx(self, j):
        return [t for t, (p, q) in enumerate(self.A.block_of) if p == j]

    def realize_mor(self, f: SkelMor) -> np.ndarray:
        """Matrix between realizations: block ``sum F[u, v] (x -> x u) (x) (y -> v y)``."""
        A, fld = self.A, self.field
        so, to = self._offsets(f.src), self._offsets(f.tgt)
        ds = self.realize(f.src).dim if f.src else 0
        dt = self.realize(f.tgt).dim if f.tgt else 0
        out = la.zeros(dt, ds, fld)
        for (t, s), F in f.blocks.items():
            k, l = f.src[s]
            i, j = f.tgt[t]
            li_t, li_s = self._left_idx(i), self._left_idx(k)
            ri_t, ri_s = self._right_idx(j), self._right_idx(l)
            bu, bv = self.B(k, i), self.B(j, l)
            blk = la.zeros(len(li_t) * len(ri_t), len(li_s) * len(ri_s), fld)
            for a, u in enumerate(bu):
                Ru = np.ascontiguousarray(A.right_mats[u][np.ix_(li_t, li_s)])
                for b, v in enumerate(bv):
                    c = F[a, b]
                    if c == 0:
                        continue
                    Lv = np.ascontiguousarray(A.left_mats[v][np.ix_(ri_t, ri_s)])
                    blk = blk + c * la.kronecker(Ru, Lv, fld)
            out[to[t] : to[t] + blk.shape[0], so[s] : so[s] + blk.shape[1]] += blk
        if fld.char:
            out = out % fld.char
        return out

    def translate(self, h: np.ndarray, X, Y) -> SkelMor:
        """Skeletal morphism whose realization is the bimodule map ``h: realize(X) -> realize(Y)``.

        Reads the image of each source generator in the Peirce coordinates of
        the target summands.
        """
        X, Y = tuple(X), tuple(Y)
        fld = self.field
        src = self.realize(X)
        to = self._offsets(Y)
        blocks = {}
        for s, (k, l) in enumerate(X):
            g = src.certificate[s][2]
            y = la.matmul(h, g.reshape(-1, 1), fld).reshape(-1)
            for t, (i, j) in enumerate(Y):
                li, ri = self._left_idx(i), self._right_idx(j)
                bu, bv = self.B(k, i), self.B(j, l)
                if not bu or not bv:
                    continue
                B = np.empty((len(bu), len(bv)), dtype=object)
                for a, u in enumerate(bu):
                    for b, v in enumerate(bv):
                        B[a, b] = y[to[t] + li.index(u) * len(ri) + ri.index(v)]
                blocks[(t, s)] = B
        out = SkelMor(X, Y, blocks)
        if not la.equal(self.realize_mor(out), h):
            raise ValueError("matrix is not a bimodule map between the realizations")
        return out

    def comparison(self, X, Y):
        """``(T, kappa)``: the computed ``realize(X) (x)_A realize(Y)`` and the canonical
        isomorphism ``realize(X (x) Y) -> T`` sending the generator of summand
        ``(s, t, c)`` to ``g_s (x) c g_t``."""
        X, Y = tuple(X), tuple(Y)
        RX, RY = self.realize(X), self.realize(Y)
        T = tensor_over_A(RX, RY)
        images = []
        fld = self.field
        for s, t, c in self.tensor_summands(X, Y):
            j, k = X[s][1], Y[t][0]
            cvec = self.A.basis_vector(self.B(j, k)[c])
            gt = RY.certificate[t][2].reshape(-1, 1)
            right = la.matmul(RY.L(cvec), gt, fld).reshape(-1)
            images.append(element_in_tensor(T, RX.certificate[s][2], right))
        XY = self.tensor_obj(X, Y)
        if not XY:
            return T, la.zeros(T.module.dim, 0, fld)
        return T, map_from_generators(self.realize(XY), T.module, images)
