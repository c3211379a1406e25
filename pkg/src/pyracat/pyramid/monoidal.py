"""The tensor product of pyramids and the induced action on pyramids.

For ``P`` of width n and ``Q`` of width m the product lives in width n + m:
the cell at ``a (+) shift_n(b)`` is ``X_a * Y_b``; differentials of ``P`` act
in directions 1..n as ``d * id`` and those of ``Q`` in directions n+1..n+m as
``(-1)^{ht a} id * d``.  Both the tensor and the action are the same product
with a different elementary ``*``.
"""
from __future__ import annotations

from ..catcore import Action, MonoidalCategory, RegularAction
from ..index import IndexVector, epsilon, height, shift
from .core import GradedMatrixMap, Pyramid, embed_object, identity


def _join(a: IndexVector, b: IndexVector, n: int) -> IndexVector:
    return a + shift(b, n)


def act(P: Pyramid, Y: Pyramid, action: Action) -> Pyramid:
    """``P`` (over the acting category) acting on ``Y`` (over ``action.category``)."""
    n = P.width
    C = action.category
    ao, am = action.act_obj, action.act_mor
    cells = {}
    for a, X in P.cells.items():
        for b, Z in Y.cells.items():
            cells[_join(a, b, n)] = ao(X, Z)
    cells = {c: W for c, W in cells.items() if not C.is_zero_object(W)}
    A = action.acting
    diffs = {}
    for (a, i), f in P.diffs.items():
        X, X2 = P.cells[a], P.cells[a + epsilon(i)]
        for b, Z in Y.cells.items():
            c = _join(a, b, n)
            if c in cells and _join(a + epsilon(i), b, n) in cells:
                diffs[(c, i)] = am(f, C.identity(Z), (X, Z), (X2, Z))
    for (b, j), g in Y.diffs.items():
        Z, Z2 = Y.cells[b], Y.cells[b + epsilon(j)]
        for a, X in P.cells.items():
            c = _join(a, b, n)
            if c in cells and _join(a, b + epsilon(j), n) in cells:
                h = am(A.identity(X), g, (X, Z), (X, Z2))
                diffs[(c, n + j)] = C.neg(h) if height(a) % 2 else h
    return Pyramid(C, n + Y.width, cells, diffs)


def act_morphisms(alpha: GradedMatrixMap, beta: GradedMatrixMap, action: Action) -> GradedMatrixMap:
    """Blocks ``alpha_{a',a} * beta_{b',b}`` at ``(a' (+) b', a (+) b)``; no extra sign."""
    if alpha.degree or beta.degree:
        raise ValueError("only degree-0 maps can be multiplied")
    src = act(alpha.source, beta.source, action)
    tgt = act(alpha.target, beta.target, action)
    n, n2 = alpha.source.width, alpha.target.width
    C = action.category
    entries = {}
    for (a2, a), f in alpha.entries.items():
        X, X2 = alpha.source.cells[a], alpha.target.cells[a2]
        for (b2, b), g in beta.entries.items():
            c, c2 = _join(a, b, n), _join(a2, b2, n2)
            if c not in src.cells or c2 not in tgt.cells:
                continue
            Z, Z2 = beta.source.cells[b], beta.target.cells[b2]
            h = action.act_mor(f, g, (X, Z), (X2, Z2))
            entries[(c2, c)] = C.add(entries[(c2, c)], h) if (c2, c) in entries else h
    return GradedMatrixMap(src, tgt, 0, entries)


def act_left(P: Pyramid, beta: GradedMatrixMap, action: Action) -> GradedMatrixMap:
    """``P`` acting on a morphism: identity blocks on the frozen side."""
    return act_morphisms(identity(P), beta, action)


def act_right(alpha: GradedMatrixMap, Y: Pyramid, action: Action) -> GradedMatrixMap:
    return act_morphisms(alpha, identity(Y), action)


def tensor(P: Pyramid, Q: Pyramid) -> Pyramid:
    cat = P.cat
    if not isinstance(cat, MonoidalCategory):
        raise TypeError("tensor needs a monoidal base category")
    return act(P, Q, RegularAction(cat))


def tensor_morphisms(alpha: GradedMatrixMap, beta: GradedMatrixMap) -> GradedMatrixMap:
    cat = alpha.cat
    if not isinstance(cat, MonoidalCategory):
        raise TypeError("tensor needs a monoidal base category")
    return act_morphisms(alpha, beta, RegularAction(cat))


def unit_pyramid(cat: MonoidalCategory) -> Pyramid:
    return embed_object(cat, cat.unit())
