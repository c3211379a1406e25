"""Bounded complexes, totalization of pyramids and the inclusion of complexes."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..catcore import AdditiveCategory, MonoidalCategory
from ..index import IndexVector, epsilon, height
from .core import GradedMatrixMap, Pyramid


class Complex:
    """``M_k`` with differentials ``f_k: M_k -> M_{k+1}``; zero data is dropped."""

    __slots__ = ("cat", "objects", "diffs")

    def __init__(self, cat: AdditiveCategory, objects: dict, diffs: dict | None = None):
        self.cat = cat
        self.objects = {int(k): X for k, X in objects.items() if not cat.is_zero_object(X)}
        self.diffs = {}
        for k, f in (diffs or {}).items():
            if cat.is_zero(f):
                continue
            if k not in self.objects or k + 1 not in self.objects:
                raise ValueError(f"nonzero differential at degree {k} touches a zero object")
            self.diffs[int(k)] = f

    def obj(self, k: int):
        X = self.objects.get(k)
        return self.cat.zero_object() if X is None else X

    def d(self, k: int):
        f = self.diffs.get(k)
        return self.cat.zero(self.obj(k), self.obj(k + 1)) if f is None else f

    def degrees(self) -> list[int]:
        return sorted(self.objects)

    def is_complex(self) -> bool:
        cat = self.cat
        return all(
            cat.is_zero(cat.compose(self.diffs[k + 1], f)) for k, f in self.diffs.items() if k + 1 in self.diffs
        )

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        if self.objects.keys() != other.objects.keys() or self.diffs.keys() != other.diffs.keys():
            return False
        cat = self.cat
        return all(cat.same_object(X, other.objects[k]) for k, X in self.objects.items()) and all(
            cat.equal(f, other.diffs[k]) for k, f in self.diffs.items()
        )

    __hash__ = None

    def __repr__(self):
        return f"Complex(degrees={self.degrees()})"


class ChainMap:
    __slots__ = ("source", "target", "components")

    def __init__(self, source: Complex, target: Complex, components: dict):
        cat = source.cat
        self.source = source
        self.target = target
        self.components = {int(k): f for k, f in components.items() if not cat.is_zero(f)}

    def at(self, k: int):
        f = self.components.get(k)
        return self.source.cat.zero(self.source.obj(k), self.target.obj(k)) if f is None else f

    def is_chain_map(self) -> bool:
        cat = self.source.cat
        degs = set(self.source.objects) | set(self.target.objects)
        return all(
            cat.equal(cat.compose(self.at(k + 1), self.source.d(k)), cat.compose(self.target.d(k), self.at(k)))
            for k in degs | {k - 1 for k in degs}
        )

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        cat = self.source.cat
        return (
            self.source == other.source
            and self.target == other.target
            and self.components.keys() == other.components.keys()
            and all(cat.equal(f, other.components[k]) for k, f in self.components.items())
        )

    __hash__ = None


def chain_compose(g: ChainMap, f: ChainMap) -> ChainMap:
    cat = f.source.cat
    degs = set(f.components) & set(g.components)
    return ChainMap(f.source, g.target, {k: cat.compose(g.components[k], f.components[k]) for k in degs})


def chain_identity(C: Complex) -> ChainMap:
    return ChainMap(C, C, {k: C.cat.identity(X) for k, X in C.objects.items()})


def complex_to_json(C: Complex) -> dict:
    cat = C.cat
    return {
        "objects": [{"degree": k, "object": cat.object_to_json(C.objects[k])} for k in C.degrees()],
        "diffs": [{"degree": k, "mor": cat.mor_to_json(C.diffs[k])} for k in sorted(C.diffs)],
    }


def complex_from_json(data: dict, cat: AdditiveCategory) -> Complex:
    objects = {int(o["degree"]): cat.object_from_json(o["object"]) for o in data.get("objects", [])}
    zero = cat.zero_object()
    diffs = {
        int(e["degree"]): cat.mor_from_json(
            e["mor"], objects.get(int(e["degree"]), zero), objects.get(int(e["degree"]) + 1, zero)
        )
        for e in data.get("diffs", [])
    }
    return Complex(cat, objects, diffs)


# ---------------------------------------------------------------------------
# inclusion and totalization


def axis_index(k: int) -> IndexVector:
    return IndexVector([k])


def include_complex(C: Complex) -> Pyramid:
    """Width-1 pyramid with ``M_k`` at ``k e_1``."""
    cells = {axis_index(k): X for k, X in C.objects.items()}
    diffs = {(axis_index(k), 1): f for k, f in C.diffs.items()}
    return Pyramid(C.cat, 1, cells, diffs)


@dataclass
class Totalization:
    """A totalized complex together with the biproduct data used to build it."""

    complex: Complex
    order: dict = field(default_factory=dict)  # height -> sorted cells
    inj: dict = field(default_factory=dict)  # cell -> injection X_a -> M_k
    proj: dict = field(default_factory=dict)  # cell -> projection M_k -> X_a


def _sum_cells(cat: AdditiveCategory, objs: list):
    if len(objs) == 1:
        idm = cat.identity(objs[0])
        return objs[0], [idm], [idm]
    return cat.direct_sum(objs)


def totalization(P: Pyramid) -> Totalization:
    cat = P.cat
    out = Totalization(None)
    objects = {}
    for k in P.heights():
        cells = P.cells_of_height(k)
        M, ii, pp = _sum_cells(cat, [P.cells[a] for a in cells])
        objects[k] = M
        out.order[k] = cells
        for a, i, p in zip(cells, ii, pp):
            out.inj[a] = i
            out.proj[a] = p
    diffs = {}
    for (a, i), f in P.diffs.items():
        b = a + epsilon(i)
        h = cat.compose(out.inj[b], cat.compose(f, out.proj[a]))
        k = height(a)
        diffs[k] = cat.add(diffs[k], h) if k in diffs else h
    out.complex = Complex(cat, objects, diffs)
    return out


def totalize(P: Pyramid) -> Complex:
    """``M_k`` is the biproduct of the height-k cells in lexicographic order."""
    return totalization(P).complex


def totalize_morphism(alpha: GradedMatrixMap) -> ChainMap:
    if alpha.degree != 0:
        raise ValueError("only degree-0 maps totalize to chain maps")
    cat = alpha.cat
    S, T = totalization(alpha.source), totalization(alpha.target)
    comps = {}
    for (a, b), f in alpha.entries.items():
        h = cat.compose(T.inj[a], cat.compose(f, S.proj[b]))
        k = height(b)
        comps[k] = cat.add(comps[k], h) if k in comps else h
    return ChainMap(S.complex, T.complex, comps)


def canonical_unit(P: Pyramid) -> tuple[GradedMatrixMap, GradedMatrixMap]:
    """``u: P -> include(totalize(P))`` and its inverse ``v``, built from biproduct maps."""
    tot = totalization(P)
    I = include_complex(tot.complex)
    u = GradedMatrixMap(P, I, 0, {(axis_index(height(a)), a): tot.inj[a] for a in P.cells})
    v = GradedMatrixMap(I, P, 0, {(a, axis_index(height(a))): tot.proj[a] for a in P.cells})
    return u, v


# ---------------------------------------------------------------------------
# the total tensor complex, computed directly on complexes


@dataclass
class TotalTensor:
    complex: Complex
    pairs: dict  # degree k -> list of (p, q) with p + q = k
    inj: dict  # (p, q) -> injection M_p (x) N_q -> T_k
    proj: dict


def total_tensor_complex(C: Complex, D: Complex) -> TotalTensor:
    """``T_k = sum_{p+q=k} C_p (x) D_q`` with ``d (x) 1 + (-1)^p 1 (x) d``."""
    cat = C.cat
    if not isinstance(cat, MonoidalCategory):
        raise TypeError("total tensor complex needs a monoidal category")
    T = cat.tensor_obj
    by_deg: dict[int, list] = {}
    for p in C.degrees():
        for q in D.degrees():
            if not cat.is_zero_object(T(C.objects[p], D.objects[q])):
                by_deg.setdefault(p + q, []).append((p, q))
    objects, inj, proj = {}, {}, {}
    for k, pairs in by_deg.items():
        pairs.sort()
        M, ii, pp = _sum_cells(cat, [T(C.objects[p], D.objects[q]) for p, q in pairs])
        objects[k] = M
        for pq, i, pr in zip(pairs, ii, pp):
            inj[pq], proj[pq] = i, pr
    diffs = {}

    def put(k, h):
        diffs[k] = cat.add(diffs[k], h) if k in diffs else h

    for (p, q) in inj:
        X, Y = C.objects[p], D.objects[q]
        if p in C.diffs and (p + 1, q) in inj:
            X2 = C.objects[p + 1]
            h = cat.tensor_mor(C.diffs[p], cat.identity(Y), (X, Y), (X2, Y))
            put(p + q, cat.compose(inj[(p + 1, q)], cat.compose(h, proj[(p, q)])))
        if q in D.diffs and (p, q + 1) in inj:
            Y2 = D.objects[q + 1]
            h = cat.tensor_mor(cat.identity(X), D.diffs[q], (X, Y), (X, Y2))
            if p % 2:
                h = cat.neg(h)
            put(p + q, cat.compose(inj[(p, q + 1)], cat.compose(h, proj[(p, q)])))
    return TotalTensor(Complex(cat, objects, diffs), by_deg, inj, proj)


def tensor_comparison(P: Pyramid, Q: Pyramid, PQ: Pyramid) -> tuple[ChainMap, ChainMap]:
    """Explicit chain isomorphism ``totalize(P (x) Q) -> total tensor of the totalizations``.

    ``PQ`` must be the pyramid tensor of ``P`` and ``Q``.  Each cell
    ``Z_c = X_a (x) Y_b`` is sent by the tensor of the two totalization
    injections into the ``(ht a, ht b)`` summand; no signs are needed.
    Returns the map and its inverse.
    """
    cat = P.cat
    n = P.width
    tp, tq, tz = totalization(P), totalization(Q), totalization(PQ)
    TT = total_tensor_complex(tp.complex, tq.complex)
    fwd, back = {}, {}
    for c in PQ.cells:
        a = IndexVector(c.entries[:n])
        b = IndexVector(c.entries[n:])
        p, q = height(a), height(b)
        X, Y = P.cells[a], Q.cells[b]
        Mp, Nq = tp.complex.objects[p], tq.complex.objects[q]
        up = cat.tensor_mor(tp.inj[a], tq.inj[b], (X, Y), (Mp, Nq))
        down = cat.tensor_mor(tp.proj[a], tq.proj[b], (Mp, Nq), (X, Y))
        h = cat.compose(TT.inj[(p, q)], cat.compose(up, tz.proj[c]))
        g = cat.compose(tz.inj[c], cat.compose(down, TT.proj[(p, q)]))
        k = p + q
        fwd[k] = cat.add(fwd[k], h) if k in fwd else h
        back[k] = cat.add(back[k], g) if k in back else g
    return ChainMap(tz.complex, TT.complex, fwd), ChainMap(TT.complex, tz.complex, back)


def is_chain_isomorphism(f: ChainMap, g: ChainMap) -> bool:
    """Both are chain maps and compose to identities on both sides."""
    return (
        f.is_chain_map()
        and g.is_chain_map()
        and chain_compose(g, f) == chain_identity(f.source)
        and chain_compose(f, g) == chain_identity(f.target)
    )

