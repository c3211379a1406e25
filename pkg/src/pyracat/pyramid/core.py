"""Pyramids over an additive category, their graded maps and the additive structure.

A pyramid stores only its nonzero cells and nonzero differentials, keyed by
:class:`~pyracat.index.IndexVector`.  Graded maps (morphisms, homotopies and the
differential itself) are sparse dicts ``{(target_index, source_index): morphism}``
with a fixed height shift, so "block matrix at height k" is just a view.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from ..catcore import AdditiveCategory
from ..index import ZERO, IndexVector, epsilon, height


class Pyramid:
    """A finitely supported pyramid ``(cells, diffs, width)``.

    ``cells`` maps index vectors to nonzero objects, ``diffs`` maps
    ``(a, i)`` to a morphism ``X_a -> X_{a + e_i}``.  Zero objects and zero
    differentials are dropped on construction, so two pyramids with the same
    data compare equal.
    """

    __slots__ = ("cat", "width", "cells", "diffs", "_heights")

    def __init__(self, cat: AdditiveCategory, width: int, cells: dict, diffs: dict | None = None):
        if width < 0:
            raise ValueError("width must be nonnegative")
        self.cat = cat
        self.width = int(width)
        self.cells = {a: X for a, X in cells.items() if not cat.is_zero_object(X)}
        self.diffs = {}
        for (a, i), f in (diffs or {}).items():
            if cat.is_zero(f):
                continue
            if a not in self.cells or a + epsilon(i) not in self.cells:
                raise ValueError(f"nonzero differential at {a.to_json()} dir {i} touches a zero cell")
            self.diffs[(a, i)] = f
        by_height = defaultdict(list)
        for a in self.cells:
            by_height[height(a)].append(a)
        self._heights = {k: sorted(v) for k, v in by_height.items()}

    def __repr__(self):
        return f"Pyramid(width={self.width}, cells={len(self.cells)}, diffs={len(self.diffs)})"

    def obj(self, a: IndexVector):
        X = self.cells.get(a)
        return self.cat.zero_object() if X is None else X

    def d(self, a: IndexVector, i: int):
        """The differential at ``a`` in direction ``i``, or None when zero."""
        return self.diffs.get((a, i))

    def heights(self) -> list[int]:
        return sorted(self._heights)

    def cells_of_height(self, k: int) -> list[IndexVector]:
        return list(self._heights.get(k, ()))

    def is_zero(self) -> bool:
        return not self.cells

    def __eq__(self, other):
        if not isinstance(other, Pyramid):
            return NotImplemented
        if self is other:
            return True
        if self.width != other.width or self.cells.keys() != other.cells.keys():
            return False
        if self.diffs.keys() != other.diffs.keys():
            return False
        cat = self.cat
        if not all(cat.same_object(X, other.cells[a]) for a, X in self.cells.items()):
            return False
        return all(cat.equal(f, other.diffs[k]) for k, f in self.diffs.items())

    __hash__ = None

    def differential(self) -> "GradedMatrixMap":
        """All differentials as one degree +1 self-map."""
        return GradedMatrixMap(
            self, self, 1, {(a + epsilon(i), a): f for (a, i), f in self.diffs.items()}
        )


class GradedMatrixMap:
    """A family of base morphisms ``X_b -> Y_a`` with ``ht(a) = ht(b) + degree``.

    Degree 0 gives pyramid morphisms (blocks ``alpha^(k)``), degree -1 gives
    homotopies (blocks ``chi^(k)`` from height k to k-1).
    """

    __slots__ = ("source", "target", "degree", "entries")

    def __init__(self, source: Pyramid, target: Pyramid, degree: int, entries: dict):
        cat = source.cat
        self.source = source
        self.target = target
        self.degree = int(degree)
        self.entries = {}
        for (a, b), f in entries.items():
            if cat.is_zero(f):
                continue
            if height(a) != height(b) + self.degree:
                raise ValueError(
                    f"entry {a.to_json()} <- {b.to_json()} does not have degree {self.degree}"
                )
            if a not in target.cells or b not in source.cells:
                raise ValueError(f"nonzero entry {a.to_json()} <- {b.to_json()} touches a zero cell")
            self.entries[(a, b)] = f

    @property
    def cat(self) -> AdditiveCategory:
        return self.source.cat

    def __repr__(self):
        return f"GradedMatrixMap(degree={self.degree}, entries={len(self.entries)})"

    def entry(self, a: IndexVector, b: IndexVector):
        f = self.entries.get((a, b))
        if f is None:
            return self.cat.zero(self.source.obj(b), self.target.obj(a))
        return f

    def block(self, k: int) -> "BlockMatrix":
        """Rows: target cells of height k + degree; columns: source cells of height k."""
        rows = self.target.cells_of_height(k + self.degree)
        cols = self.source.cells_of_height(k)
        ents = {(a, b): f for (a, b), f in self.entries.items() if height(b) == k}
        return BlockMatrix(rows, cols, ents)

    def heights(self) -> list[int]:
        return sorted({height(b) for _, b in self.entries})

    def __eq__(self, other):
        if not isinstance(other, GradedMatrixMap):
            return NotImplemented
        if self.degree != other.degree or self.entries.keys() != other.entries.keys():
            return False
        if not (self.source == other.source and self.target == other.target):
            return False
        return all(self.cat.equal(f, other.entries[k]) for k, f in self.entries.items())

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class BlockMatrix:
    rows: list
    cols: list
    entries: dict

    def get(self, r, c):
        return self.entries.get((r, c))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)


@dataclass(frozen=True)
class Violation:
    axiom: str
    at: tuple
    detail: str

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "at": list(self.at), "detail": self.detail}


# ---------------------------------------------------------------------------
# axioms and the differential matrices


def check_axioms(P: Pyramid) -> list[Violation]:
    cat = P.cat
    out = []
    for a in sorted(P.cells):
        if a.support_bound > P.width:
            out.append(Violation("I", (a.to_json(),), f"nonzero cell beyond width {P.width}"))
    for (a, i) in sorted(P.diffs, key=lambda k: (k[0], k[1])):
        if not 1 <= i <= P.width:
            out.append(Violation("I", (a.to_json(), i), f"differential direction outside 1..{P.width}"))
    for (a, i), f in sorted(P.diffs.items(), key=lambda kv: kv[0]):
        g = P.d(a + epsilon(i), i)
        if g is not None and not cat.is_zero(cat.compose(g, f)):
            out.append(Violation("III", (a.to_json(), i), "d o d is nonzero"))
    for a in sorted(P.cells):
        for i in range(1, P.width + 1):
            for j in range(i + 1, P.width + 1):
                corner = a + epsilon(i) + epsilon(j)
                if corner not in P.cells:
                    continue
                X, Z = P.cells[a], P.cells[corner]
                total = cat.zero(X, Z)
                for first, second in ((i, j), (j, i)):
                    f1 = P.d(a, first)
                    f2 = P.d(a + epsilon(first), second)
                    if f1 is not None and f2 is not None:
                        total = cat.add(total, cat.compose(f2, f1))
                if not cat.is_zero(total):
                    out.append(Violation("IV", (a.to_json(), i, j), "square does not anticommute"))
    return out


def d_matrix(P: Pyramid, k: int) -> BlockMatrix:
    """Rows: height k+1 cells; columns: height k cells; entry ``d_{b,i}`` at ``(b + e_i, b)``."""
    return P.differential().block(k)


# ---------------------------------------------------------------------------
# algebra of graded maps


def _require_same_ends(f: GradedMatrixMap, g: GradedMatrixMap):
    if f.degree != g.degree:
        raise ValueError("degree mismatch")
    if not (f.source == g.source and f.target == g.target):
        raise ValueError("endpoint mismatch")


def compose(beta: GradedMatrixMap, alpha: GradedMatrixMap) -> GradedMatrixMap:
    """``beta o alpha`` (blockwise matrix product); degrees add."""
    if not (alpha.target is beta.source or alpha.target == beta.source):
        raise ValueError("endpoint mismatch: alpha.target != beta.source")
    cat = alpha.cat
    by_row = defaultdict(list)
    for (m, b), f in alpha.entries.items():
        by_row[m].append((b, f))
    acc: dict = {}
    for (a, m), g in beta.entries.items():
        for b, f in by_row.get(m, ()):
            h = cat.compose(g, f)
            acc[(a, b)] = cat.add(acc[(a, b)], h) if (a, b) in acc else h
    return GradedMatrixMap(alpha.source, beta.target, alpha.degree + beta.degree, acc)


def add_morphisms(f: GradedMatrixMap, g: GradedMatrixMap) -> GradedMatrixMap:
    _require_same_ends(f, g)
    cat = f.cat
    acc = dict(f.entries)
    for k, h in g.entries.items():
        acc[k] = cat.add(acc[k], h) if k in acc else h
    return GradedMatrixMap(f.source, f.target, f.degree, acc)


def scale_morphism(c, f: GradedMatrixMap) -> GradedMatrixMap:
    cat = f.cat
    return GradedMatrixMap(f.source, f.target, f.degree, {k: cat.scale(c, h) for k, h in f.entries.items()})


def negate(f: GradedMatrixMap) -> GradedMatrixMap:
    return scale_morphism(-1, f)


def subtract(f: GradedMatrixMap, g: GradedMatrixMap) -> GradedMatrixMap:
    return add_morphisms(f, negate(g))


def identity(P: Pyramid) -> GradedMatrixMap:
    return GradedMatrixMap(P, P, 0, {(a, a): P.cat.identity(X) for a, X in P.cells.items()})


def zero_map(P: Pyramid, Q: Pyramid, degree: int = 0) -> GradedMatrixMap:
    return GradedMatrixMap(P, Q, degree, {})


def is_morphism(alpha: GradedMatrixMap) -> bool:
    """Chain condition ``alpha^(k+1) d^(k) = d'^(k) alpha^(k)`` at every height."""
    if alpha.degree != 0:
        return False
    lhs = compose(alpha, alpha.source.differential())
    rhs = compose(alpha.target.differential(), alpha)
    return lhs == rhs


def homotopy_expression(chi: GradedMatrixMap) -> GradedMatrixMap:
    """``chi d + d' chi`` for a degree -1 map ``chi``."""
    if chi.degree != -1:
        raise ValueError("homotopies have degree -1")
    return add_morphisms(
        compose(chi, chi.source.differential()), compose(chi.target.differential(), chi)
    )


# ---------------------------------------------------------------------------
# direct sums and embedding


def direct_sum_many(pyramids: Sequence[Pyramid]) -> tuple[Pyramid, list, list]:
    """Componentwise biproduct with its injections and projections.

    At each index only the summands with a nonzero cell take part; an index
    carried by a single summand keeps that summand's object unchanged.
    """
    if not pyramids:
        raise ValueError("need at least one pyramid")
    cat = pyramids[0].cat
    width = max(P.width for P in pyramids)
    index = sorted(set().union(*(P.cells for P in pyramids)))
    cells, inj, proj = {}, {}, {}
    for a in index:
        present = [t for t, P in enumerate(pyramids) if a in P.cells]
        objs = [pyramids[t].cells[a] for t in present]
        if len(objs) == 1:
            S = objs[0]
            ii = pp = [cat.identity(S)]
        else:
            S, ii, pp = cat.direct_sum(objs)
        cells[a] = S
        inj[a] = dict(zip(present, ii))
        proj[a] = dict(zip(present, pp))
    diffs = {}
    for t, P in enumerate(pyramids):
        for (a, i), f in P.diffs.items():
            b = a + epsilon(i)
            h = cat.compose(inj[b][t], cat.compose(f, proj[a][t]))
            diffs[(a, i)] = cat.add(diffs[(a, i)], h) if (a, i) in diffs else h
    S = Pyramid(cat, width, cells, diffs)
    injections = [
        GradedMatrixMap(P, S, 0, {(a, a): inj[a][t] for a in P.cells}) for t, P in enumerate(pyramids)
    ]
    projections = [
        GradedMatrixMap(S, P, 0, {(a, a): proj[a][t] for a in P.cells}) for t, P in enumerate(pyramids)
    ]
    return S, injections, projections


def direct_sum(P: Pyramid, Q: Pyramid) -> tuple[Pyramid, list, list]:
    return direct_sum_many([P, Q])


def power(P: Pyramid, d: int) -> Pyramid:
    """``P^{+d}`` (the zero pyramid for d = 0)."""
    if d == 0:
        return Pyramid(P.cat, P.width, {})
    return direct_sum_many([P] * d)[0]


def embed_object(cat: AdditiveCategory, X) -> Pyramid:
    """``X`` placed at the zero index, width 0."""
    return Pyramid(cat, 0, {ZERO: X})


def embed_morphism(f, src: Pyramid, tgt: Pyramid) -> GradedMatrixMap:
    """A base morphism between two embedded objects as a pyramid morphism."""
    return GradedMatrixMap(src, tgt, 0, {(ZERO, ZERO): f})


def zero_pyramid(cat: AdditiveCategory, width: int = 0) -> Pyramid:
    return Pyramid(cat, width, {})


# ---------------------------------------------------------------------------
# json


def pyramid_to_json(P: Pyramid) -> dict:
    cat = P.cat
    return {
        "width": P.width,
        "cells": [{"index": a.to_json(), "object": cat.object_to_json(P.cells[a])} for a in sorted(P.cells)],
        "diffs": [
            {"at": a.to_json(), "dir": i, "mor": cat.mor_to_json(f)}
            for (a, i), f in sorted(P.diffs.items(), key=lambda kv: kv[0])
        ],
    }


def pyramid_from_json(data: dict, cat: AdditiveCategory) -> Pyramid:
    """Parse a pyramid; raises ValueError/KeyError/TypeError on malformed input."""
    if not isinstance(data, dict):
        raise ValueError("pyramid JSON must be an object")
    width = data["width"]
    if not isinstance(width, int) or width < 0:
        raise ValueError("width must be a nonnegative integer")
    cells = {}
    for c in data.get("cells", []):
        a = IndexVector.from_json(c["index"])
        if a in cells:
            raise ValueError(f"duplicate cell {a.to_json()}")
        cells[a] = cat.object_from_json(c["object"])
    diffs = {}
    for e in data.get("diffs", []):
        a = IndexVector.from_json(e["at"])
        i = e["dir"]
        if not isinstance(i, int) or i < 1:
            raise ValueError(f"bad direction {i!r}")
        X = cells.get(a, cat.zero_object())
        Y = cells.get(a + epsilon(i), cat.zero_object())
        diffs[(a, i)] = cat.mor_from_json(e["mor"], X, Y)
    return Pyramid(cat, width, cells, diffs)


def map_to_json(f: GradedMatrixMap) -> dict:
    cat = f.cat
    blocks = []
    for k in f.heights():
        ents = sorted(((ab, h) for ab, h in f.entries.items() if height(ab[1]) == k), key=lambda kv: kv[0])
        blocks.append(
            {
                "height": k,
                "entries": [{"row": a.to_json(), "col": b.to_json(), "mor": cat.mor_to_json(h)} for (a, b), h in ents],
            }
        )
    return {"degree": f.degree, "blocks": blocks}


def map_from_json(data: dict, source: Pyramid, target: Pyramid) -> GradedMatrixMap:
    cat = source.cat
    entries = {}
    for blk in data.get("blocks", []):
        for e in blk["entries"]:
            a, b = IndexVector.from_json(e["row"]), IndexVector.from_json(e["col"])
            entries[(a, b)] = cat.mor_from_json(e["mor"], source.obj(b), target.obj(a))
    return GradedMatrixMap(source, target, data.get("degree", 0), entries)
