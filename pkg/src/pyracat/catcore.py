"""Additive and strict monoidal category contracts, and the matrix category.

Pyramid code is written against :class:`AdditiveCategory` /
:class:`MonoidalCategory`.  A category object ("oracle") supplies objects,
morphisms and the structure maps; morphism equality is structural, so
implementations must keep morphisms in a normal form.

The linear structure is exposed through :meth:`AdditiveCategory.hom_basis` and
:meth:`AdditiveCategory.flatten`; together they let the homotopy solver turn
equations between morphisms into linear systems over the base field.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import exactla as la


class AdditiveCategory(ABC):
    field = la.QQ

    # objects
    @abstractmethod
    def zero_object(self): ...

    @abstractmethod
    def is_zero_object(self, X) -> bool: ...

    def same_object(self, X, Y) -> bool:
        return X == Y

    @abstractmethod
    def direct_sum(self, objs: Sequence) -> tuple[Any, list, list]:
        """Biproduct with its injections and projections (in input order)."""

    # morphisms
    @abstractmethod
    def identity(self, X): ...

    @abstractmethod
    def zero(self, X, Y): ...

    @abstractmethod
    def compose(self, g, f):
        """``g o f``."""

    @abstractmethod
    def add(self, f, g): ...

    @abstractmethod
    def scale(self, c, f): ...

    def neg(self, f):
        return self.scale(-1, f)

    def sub(self, f, g):
        return self.add(f, self.neg(g))

    @abstractmethod
    def equal(self, f, g) -> bool: ...

    @abstractmethod
    def is_zero(self, f) -> bool: ...

    @abstractmethod
    def hom_basis(self, X, Y) -> list:
        """A basis of Hom(X, Y), in a fixed order."""

    def hom_dim(self, X, Y) -> int:
        return len(self.hom_basis(X, Y))

    @abstractmethod
    def flatten(self, f) -> list:
        """An injective linear embedding of Hom(X, Y) into field^N (N fixed per pair)."""

    def linear_combination(self, coeffs, basis, X, Y):
        out = self.zero(X, Y)
        for c, b in zip(coeffs, basis):
            if c != 0:
                out = self.add(out, self.scale(c, b))
        return out

    # sampling for the law checker
    def sample_object(self, rng):
        raise NotImplementedError

    def sample_morphism(self, rng, X, Y):
        basis = self.hom_basis(X, Y)
        coeffs = [Fraction(int(rng.integers(-3, 4))) for _ in basis]
        return self.linear_combination(coeffs, basis, X, Y)

    # json
    def object_to_json(self, X):
        raise NotImplementedError

    def object_from_json(self, data):
        raise NotImplementedError

    def mor_to_json(self, f):
        raise NotImplementedError

    def mor_from_json(self, data, X, Y):
        raise NotImplementedError


class MonoidalCategory(AdditiveCategory):
    strict_on_the_nose = False

    @abstractmethod
    def unit(self): ...

    @abstractmethod
    def tensor_obj(self, X, Y): ...

    @abstractmethod
    def tensor_mor(self, f, g, src, tgt):
        """``f o_0 g`` for f: src[0] -> tgt[0], g: src[1] -> tgt[1]."""


class Action(ABC):
    """A biadditive action ``acting x category -> category``."""

    acting: MonoidalCategory
    category: AdditiveCategory

    @abstractmethod
    def act_obj(self, X, Y): ...

    @abstractmethod
    def act_mor(self, f, g, src, tgt): ...


class RegularAction(Action):
    """A monoidal category acting on itself by its tensor product."""

    def __init__(self, cat: MonoidalCategory):
        self.acting = cat
        self.category = cat

    def act_obj(self, X, Y):
        return self.acting.tensor_obj(X, Y)

    def act_mor(self, f, g, src, tgt):
        return self.acting.tensor_mor(f, g, src, tgt)


# ---------------------------------------------------------------------------
# the matrix category


class MatCat(MonoidalCategory):
    """Objects are ranks; Hom(m, n) is n x m matrices; tensor is Kronecker."""

    strict_on_the_nose = True

    def __init__(self, field=la.QQ):
        self.field = field

    def __repr__(self):
        return f"MatCat({self.field!r})"

    def zero_object(self):
        return 0

    def is_zero_object(self, X) -> bool:
        return X == 0

    def direct_sum(self, objs):
        objs = [int(x) for x in objs]
        total = sum(objs)
        inj, proj = [], []
        off = 0
        for m in objs:
            i = la.zeros(total, m, self.field)
            for r in range(m):
                i[off + r, r] = self.field.coerce(1)
            inj.append(i)
            proj.append(np.ascontiguousarray(i.T))
            off += m
        return total, inj, proj

    def identity(self, X):
        return la.eye(X, self.field)

    def zero(self, X, Y):
        return la.zeros(Y, X, self.field)

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
        out = []
        for r in range(Y):
            for c in range(X):
                e = la.zeros(Y, X, self.field)
                e[r, c] = self.field.coerce(1)
                out.append(e)
        return out

    def hom_dim(self, X, Y) -> int:
        return X * Y

    def flatten(self, f):
        return list(f.flat)

    def unit(self):
        return 1

    def tensor_obj(self, X, Y):
        return X * Y

    def tensor_mor(self, f, g, src=None, tgt=None):
        return la.kronecker(f, g, self.field)

    def sample_object(self, rng):
        return int(rng.integers(0, 4))

    def sample_morphism(self, rng, X, Y):
        vals = rng.integers(-3, 4, size=(Y, X))
        return la.mat(vals.tolist(), self.field, shape=(Y, X))

    def object_to_json(self, X):
        return int(X)

    def object_from_json(self, data):
        if not isinstance(data, int) or data < 0:
            raise ValueError(f"MatCat object must be a nonnegative integer, got {data!r}")
        return data

    def mor_to_json(self, f):
        return la.to_json(f, self.field)

    def mor_from_json(self, data, X, Y):
        return la.mat(data, self.field, shape=(Y, X))


class FaultyMatCat(MatCat):
    """MatCat with a sign error in composition (negates the first output row).

    Used to check that the law checker and the strictness suites catch faults.
    """

    def compose(self, g, f):
        out = la.matmul(g, f, self.field)
        if out.shape[0]:
            out = out.copy()
            out[0, :] = -out[0, :]
        return out


def matcat_compose(f, g):
    """``f o g`` in MatCat."""
    return MatCat().compose(f, g)


def matcat_tensor(f, g):
    return MatCat().tensor_mor(f, g)


def matcat_dsum(objs):
    return MatCat().direct_sum(objs)


# ---------------------------------------------------------------------------
# law checker


@dataclass
class LawReport:
    checked: dict[str, int] = field(default_factory=dict)
    failures: dict[str, list[str]] = field(default_factory=dict)

    def record(self, law: str, ok: bool, detail: str = ""):
        self.checked[law] = self.checked.get(law, 0) + 1
        self.failures.setdefault(law, [])
        if not ok:
            self.failures[law].append(detail)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def failed_laws(self) -> list[str]:
        return [k for k, v in self.failures.items() if v]

    def to_json(self) -> dict:
        return {
            law: {"checked": n, "failed": len(self.failures.get(law, []))}
            for law, n in self.checked.items()
        }


def check_oracle(cat: AdditiveCategory, samples: int, rng, monoidal: bool | None = None) -> LawReport:
    """Randomized check of the additive (and, if present, monoidal) laws."""
    rep = LawReport()
    eq = cat.equal
    if monoidal is None:
        monoidal = isinstance(cat, MonoidalCategory)
    for s in range(samples):
        X, Y, Z, W = (cat.sample_object(rng) for _ in range(4))
        f = cat.sample_morphism(rng, X, Y)
        f2 = cat.sample_morphism(rng, X, Y)
        g = cat.sample_morphism(rng, Y, Z)
        g2 = cat.sample_morphism(rng, Y, Z)
        h = cat.sample_morphism(rng, Z, W)
        c = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
        tag = f"sample {s}"

        rep.record("associativity", eq(cat.compose(h, cat.compose(g, f)), cat.compose(cat.compose(h, g), f)), tag)
        rep.record(
            "identity",
            eq(cat.compose(cat.identity(Y), f), f) and eq(cat.compose(f, cat.identity(X)), f),
            tag,
        )
        rep.record(
            "bilinearity",
            eq(cat.compose(g, cat.add(f, f2)), cat.add(cat.compose(g, f), cat.compose(g, f2)))
            and eq(cat.compose(cat.add(g, g2), f), cat.add(cat.compose(g, f), cat.compose(g2, f)))
            and eq(cat.compose(g, cat.scale(c, f)), cat.scale(c, cat.compose(g, f))),
            tag,
        )
        rep.record("additive inverse", cat.is_zero(cat.add(f, cat.neg(f))), tag)

        S, inj, proj = cat.direct_sum([X, Y])
        ok = True
        for i, (a, pa) in enumerate(zip((X, Y), proj)):
            for j, (b, ib) in enumerate(zip((X, Y), inj)):
                lhs = cat.compose(pa, ib)
                ok &= eq(lhs, cat.identity(a)) if i == j else cat.is_zero(lhs)
        total = cat.add(cat.compose(inj[0], proj[0]), cat.compose(inj[1], proj[1]))
        ok &= eq(total, cat.identity(S))
        rep.record("biproduct", ok, tag)
        rep.record("hom additivity", cat.hom_dim(S, Z) == cat.hom_dim(X, Z) + cat.hom_dim(Y, Z), tag)

        if monoidal:
            Xp, Yp, Zp = (cat.sample_object(rng) for _ in range(3))
            # gamma: X -> Y, alpha: Y -> Z ; delta: Xp -> Yp, beta: Yp -> Zp
            gamma, alpha = f, g
            delta = cat.sample_morphism(rng, Xp, Yp)
            beta = cat.sample_morphism(rng, Yp, Zp)
            beta2 = cat.sample_morphism(rng, Yp, Zp)
            t = cat.tensor_mor
            lhs = cat.compose(t(alpha, beta, (Y, Yp), (Z, Zp)), t(gamma, delta, (X, Xp), (Y, Yp)))
            rhs = t(cat.compose(alpha, gamma), cat.compose(beta, delta), (X, Xp), (Z, Zp))
            rep.record("interchange", eq(lhs, rhs), tag)
            rep.record(
                "biadditivity",
                eq(t(cat.add(f, f2), delta, (X, Xp), (Y, Yp)),
                   cat.add(t(f, delta, (X, Xp), (Y, Yp)), t(f2, delta, (X, Xp), (Y, Yp))))
                and eq(t(alpha, cat.add(beta, beta2), (Y, Yp), (Z, Zp)),
                       cat.add(t(alpha, beta, (Y, Yp), (Z, Zp)), t(alpha, beta2, (Y, Yp), (Z, Zp)))),
                tag,
            )
            rep.record(
                "tensor identities",
                eq(t(cat.identity(X), cat.identity(Xp), (X, Xp), (X, Xp)), cat.identity(cat.tensor_obj(X, Xp))),
                tag,
            )
            if cat.strict_on_the_nose:
                T = cat.tensor_obj
                one = cat.unit()
                ok = cat.same_object(T(T(X, Y), Z), T(X, T(Y, Z)))
                ok &= cat.same_object(T(one, X), X) and cat.same_object(T(X, one), X)
                ok &= eq(
                    t(t(f, delta, (X, Xp), (Y, Yp)), beta, (T(X, Xp), Yp), (T(Y, Yp), Zp)),
                    t(f, t(delta, beta, (Xp, Yp), (Yp, Zp)), (X, T(Xp, Yp)), (Y, T(Yp, Zp))),
                )
                ok &= eq(t(cat.identity(one), f, (one, X), (one, Y)), f)
                rep.record("strictness", ok, tag)
    return rep
