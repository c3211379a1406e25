"""The enlarged table inside the homotopy category of pyramids over projective bimodules.

``G = A* (x)_k A`` is replaced by a projective resolution ``Q`` (a width-1
pyramid), ``F = A (x)_k A`` by a width-0 pyramid, and each of the products
``F.Q``, ``Q.F`` and ``Q.Q`` is compared with ``d`` copies of ``F``, ``Q``,
``Q``.  The comparison map is lifted from a bimodule isomorphism on degree
zero, and the equivalence is then certified by solving for a homotopy inverse.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .algmod.algebra import Algebra
from .algmod.categories import ProjectiveBimoduleCategory
from .algmod.hom import find_isomorphism, is_homomorphism
from .algmod.modules import Module, bimodule_G, direct_sum_modules, tensor_morphism, tensor_over_A
from .algmod.resolution import Resolution, projective_resolution
from .index import ZERO, IndexVector, height, shift
from .pyramid.core import GradedMatrixMap, Pyramid, check_axioms, embed_object, is_morphism, power
from .pyramid.homotopy import (
    MorphismSystem,
    add_chain_conditions,
    add_map_slots,
    is_homotopy_equivalence,
    map_from_values,
)
from .pyramid.monoidal import tensor


class PreconditionError(Exception):
    """Raised when a verification is requested on an instance that cannot support it."""


class LiftingError(Exception):
    """The augmentation could not be lifted to a pyramid morphism."""


@dataclass
class Augmented:
    """A pyramid in nonpositive heights with maps from its height-0 cells to a bimodule."""

    pyramid: Pyramid
    module: Module
    aug: dict  # height-0 cell -> matrix realize(cell) -> module
    name: str = ""


@dataclass
class DAInHomotopyInstance:
    algebra: Algebra
    length: int
    cat: ProjectiveBimoduleCategory
    resolution: Resolution
    F: Augmented
    Q: Augmented
    terminated: bool
    isos: dict = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.algebra.dim

    def summary(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "length": self.length,
            "terminated": self.terminated,
            "kernel_dims": list(self.resolution.kernel_dims),
            "resolution": [[[i + 1, j + 1] for i, j in labs] for labs in self.resolution.labels],
        }


def build_instance(A: Algebra, length: int) -> DAInHomotopyInstance:
    """Resolve G by projective bimodules up to ``length`` and package F and Q as pyramids."""
    cat = ProjectiveBimoduleCategory(A)
    G = bimodule_G(A)
    res = projective_resolution(G, length)
    if not res.is_complex() or not res.is_exact():
        raise RuntimeError("projective resolution failed its exactness bookkeeping")
    cells = {IndexVector([-k]): tuple(labs) for k, labs in enumerate(res.labels)}
    diffs = {
        (IndexVector([-(k + 1)]), 1): cat.translate(d, res.labels[k + 1], res.labels[k])
        for k, d in enumerate(res.diffs)
    }
    Q_pyr = Pyramid(cat, 1, cells, diffs)
    bad = check_axioms(Q_pyr)
    if bad:
        raise RuntimeError(f"resolution pyramid violates the axioms: {bad[0]}")
    F_obj = tuple((i, j) for i in range(A.n) for j in range(A.n))
    F_mod = cat.realize(F_obj)
    F_aug = Augmented(embed_object(cat, F_obj), F_mod, {ZERO: la.eye(F_mod.dim, A.field)}, "F")
    Q_aug = Augmented(Q_pyr, G, {ZERO: res.augmentation}, "Q")
    return DAInHomotopyInstance(A, length, cat, res, F_aug, Q_aug, res.terminated)


# ---------------------------------------------------------------------------
# augmented products


def tensor_augmented(cat: ProjectiveBimoduleCategory, X: Augmented, Y: Augmented) -> Augmented:
    P = tensor(X.pyramid, Y.pyramid)
    target = tensor_over_A(X.module, Y.module)
    n = X.pyramid.width
    aug = {}
    for a, fa in X.aug.items():
        for b, fb in Y.aug.items():
            T, kappa = cat.comparison(X.pyramid.cells[a], Y.pyramid.cells[b])
            h = tensor_morphism(T, target, fa, fb)
            aug[a + shift(b, n)] = la.matmul(h, kappa, cat.field)
    return Augmented(P, target.module, aug, f"{X.name}.{Y.name}")


def power_augmented(X: Augmented, d: int) -> Augmented:
    P = power(X.pyramid, d)
    M, _, _ = direct_sum_modules([X.module] * d)
    aug = {}
    for a, h in X.aug.items():
        out = la.zeros(M.dim, h.shape[1] * d, M.field)
        r, c = h.shape
        for t in range(d):
            out[t * r : (t + 1) * r, t * c : (t + 1) * c] = h
        aug[a] = out
    return Augmented(P, M, aug, f"{X.name}^{d}")


def lift_augmentation(
    cat: ProjectiveBimoduleCategory, src: Augmented, tgt: Augmented, theta: np.ndarray
) -> GradedMatrixMap:
    """A pyramid morphism ``f`` with ``tgt.aug o realize(f) = theta o src.aug`` on height 0.

    Solved jointly with the morphism conditions as one linear system; raises
    :class:`LiftingError` when no lift exists.
    """
    P, Q = src.pyramid, tgt.pyramid
    if any(height(a) > 0 for a in P.cells) or any(height(a) > 0 for a in Q.cells):
        raise PreconditionError("augmented pyramids must live in nonpositive heights")
    fld = cat.field
    sys = MorphismSystem(cat)
    add_map_slots(sys, "f", P, Q, 0)
    add_chain_conditions(sys, "f", P, Q)
    flat = lambda M: list(M.flat)
    for b in P.cells_of_height(0):
        terms = []
        for a in Q.cells_of_height(0):
            eps = tgt.aug[a]
            terms.append((("f", a, b), lambda m, eps=eps: la.matmul(eps, cat.realize_mor(m), fld)))
        rhs = la.matmul(theta, src.aug[b], fld)
        sys.equation(terms, rhs, flatten=flat)
    vals = sys.solve()
    if vals is None:
        raise LiftingError(f"no lift of the augmentation from {src.name} to {tgt.name}")
    f = map_from_values(vals, "f", P, Q, 0)
    if not is_morphism(f):
        raise LiftingError("lifted map failed the morphism check")
    for b in P.cells_of_height(0):
        acc = la.zeros(tgt.module.dim, src.aug[b].shape[1], fld)
        for a in Q.cells_of_height(0):
            m = f.entries.get((a, b))
            if m is not None:
                acc = acc + la.matmul(tgt.aug[a], cat.realize_mor(m), fld)
        if not la.equal(acc, la.matmul(theta, src.aug[b], fld)):
            raise LiftingError("lifted map does not cover the isomorphism")
    return f


# ---------------------------------------------------------------------------
# the table check


@dataclass
class ProductResult:
    lhs: str
    rhs: str
    multiplicity: int
    iso_found: bool
    lifted: bool
    equivalent: bool
    witness_sizes: dict | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "multiplicity": self.multiplicity,
            "iso_found": self.iso_found,
            "lifted": self.lifted,
            "equivalent": self.equivalent,
            "witness_sizes": self.witness_sizes,
            "detail": self.detail,
        }


def check_product(inst: DAInHomotopyInstance, left: Augmented, right: Augmented, base: Augmented, seed: int = 0):
    """Is ``left . right`` homotopy equivalent to ``base^d``?"""
    cat, d = inst.cat, inst.d
    src = tensor_augmented(cat, left, right)
    tgt = power_augmented(base, d)
    lhs, rhs = f"{left.name}.{right.name}", f"{base.name}^{d}"
    out = ProductResult(lhs, rhs, d, False, False, False)
    theta = find_isomorphism(src.module, tgt.module, seed=seed)
    if theta is None:
        out.detail = "no bimodule isomorphism in degree zero"
        return out, None
    out.iso_found = True
    inst.isos[lhs] = theta
    try:
        f = lift_augmentation(cat, src, tgt, theta)
    except LiftingError as e:
        out.detail = str(e)
        return out, None
    out.lifted = True
    w = is_homotopy_equivalence(f)
    if w is None:
        out.detail = "no homotopy inverse"
        return out, None
    out.equivalent = True
    out.witness_sizes = w.sizes()
    return out, (f, w)


def verify_da_table(inst: DAInHomotopyInstance, seed: int = 0) -> list[ProductResult]:
    """``F.Q ~ F^d``, ``Q.F ~ Q^d`` and ``Q.Q ~ Q^d`` with re-validated witnesses."""
    if not inst.terminated:
        raise PreconditionError(
            f"resolution of G did not terminate within length {inst.length} "
            f"(kernel dimension {inst.resolution.kernel_dims[-1]})"
        )
    F, Q = inst.F, inst.Q
    results = []
    for left, right, base in ((F, Q, F), (Q, F, Q), (Q, Q, Q)):
        res, _ = check_product(inst, left, right, base, seed)
        results.append(res)
    return results


def report(inst: DAInHomotopyInstance, results: list[ProductResult]) -> dict:
    return {
        "instance": inst.summary(),
        "products": [r.to_json() for r in results],
        "ok": all(r.equivalent for r in results),
    }
