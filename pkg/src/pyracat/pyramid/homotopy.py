"""Linear solving for unknown morphisms: null-homotopies, chain maps, homotopy inverses.

Every unknown base morphism is written in the hom basis supplied by the
category, and every equation between morphisms is flattened coordinatewise, so
each question becomes one sparse linear system over the base field.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable

from .. import exactla as la
from ..catcore import AdditiveCategory
from ..index import epsilon, height
from .core import (
    GradedMatrixMap,
    Pyramid,
    add_morphisms,
    compose,
    homotopy_expression,
    identity,
    is_morphism,
    subtract,
)


@dataclass
class _Slot:
    X: object
    Y: object
    basis: list
    offset: int


class MorphismSystem:
    """Unknown morphisms ``X -> Y`` plus linear equations between morphisms.

    An equation is a list of terms ``(slot, fn)`` where ``fn`` sends a basis
    morphism of the slot to a morphism in the equation's hom space (it must be
    linear), and a right-hand side.  Slots with a zero hom space are never
    created; terms mentioning them are skipped.
    """

    def __init__(self, cat: AdditiveCategory):
        self.cat = cat
        self.slots: dict[Hashable, _Slot] = {}
        self.nvars = 0
        self.rows: list[tuple[dict, object]] = []
        self.inconsistent = False

    def slot(self, key: Hashable, X, Y, basis: list | None = None) -> bool:
        """Register an unknown; returns False if its hom space is zero."""
        if key in self.slots:
            return True
        basis = self.cat.hom_basis(X, Y) if basis is None else basis
        if not basis:
            return False
        self.slots[key] = _Slot(X, Y, basis, self.nvars)
        self.nvars += len(basis)
        return True

    def has(self, key: Hashable) -> bool:
        return key in self.slots

    def equation(self, terms: list[tuple[Hashable, Callable]], rhs=None, flatten: Callable | None = None):
        """Add ``sum fn(slot) == rhs`` (``rhs`` None means zero).

        ``flatten`` turns a term value into coordinates; it defaults to the
        category's, and can be replaced when terms live somewhere else (for
        example as concrete matrices).
        """
        cat = self.cat
        f = cat.field
        flat = cat.flatten if flatten is None else flatten
        acc: dict[int, dict[int, object]] = {}
        for key, fn in terms:
            s = self.slots.get(key)
            if s is None:
                continue
            for j, b in enumerate(s.basis):
                for t, v in enumerate(flat(fn(b))):
                    if v != 0:
                        row = acc.setdefault(t, {})
                        nv = f.norm(row.get(s.offset + j, 0) + v)
                        if nv == 0:
                            row.pop(s.offset + j, None)
                        else:
                            row[s.offset + j] = nv
        rvec = flat(rhs) if rhs is not None else []
        for t in sorted(set(acc) | {t for t, v in enumerate(rvec) if v != 0}):
            row = acc.get(t, {})
            r = rvec[t] if t < len(rvec) else 0
            if not row:
                if r != 0:
                    self.inconsistent = True
                continue
            self.rows.append((row, r))

    def compose_term(self, key: Hashable, left=None, right=None, coeff=1):
        """Term ``coeff * left o slot o right``."""
        cat = self.cat

        def fn(b):
            h = b
            if right is not None:
                h = cat.compose(h, right)
            if left is not None:
                h = cat.compose(left, h)
            return h if coeff == 1 else cat.scale(coeff, h)

        return (key, fn)

    def _unpack(self, vec: dict) -> dict:
        out = {}
        for key, s in self.slots.items():
            coeffs = [vec.get(s.offset + j, 0) for j in range(len(s.basis))]
            if any(c != 0 for c in coeffs):
                out[key] = self.cat.linear_combination(coeffs, s.basis, s.X, s.Y)
        return out

    def solve(self) -> dict | None:
        """Values of all nonzero unknowns, or None if the system is inconsistent."""
        if self.inconsistent:
            return None
        sol = la.solve_sparse(self.rows, self.nvars, self.cat.field)
        return None if sol is None else self._unpack(sol)

    def solution_space(self) -> list[dict]:
        """Basis of the homogeneous solution space (right-hand sides ignored)."""
        basis = la.nullspace_sparse([r for r, _ in self.rows], self.nvars, self.cat.field)
        return [self._unpack(v) for v in basis]


# ---------------------------------------------------------------------------
# building blocks


def add_map_slots(sys: MorphismSystem, name: str, P: Pyramid, Q: Pyramid, degree: int):
    """Unknown entries of a graded map ``P -> Q`` of the given degree."""
    for b, X in sorted(P.cells.items()):
        for a in Q.cells_of_height(height(b) + degree):
            sys.slot((name, a, b), X, Q.cells[a])


def map_from_values(values: dict, name: str, P: Pyramid, Q: Pyramid, degree: int) -> GradedMatrixMap:
    return GradedMatrixMap(
        P, Q, degree, {(a, b): f for (n, a, b), f in values.items() if n == name}
    )


def homotopy_terms(sys: MorphismSystem, name: str, P: Pyramid, Q: Pyramid, a, b, coeff=1) -> list:
    """Terms of ``(chi d + d chi)_{a,b}`` for the degree -1 unknown ``name``."""
    terms = []
    for i in range(1, P.width + 1):
        f = P.d(b, i)
        if f is not None:
            terms.append(sys.compose_term((name, a, b + epsilon(i)), right=f, coeff=coeff))
    for i in range(1, Q.width + 1):
        a0 = a - epsilon(i)
        g = Q.d(a0, i)
        if g is not None:
            terms.append(sys.compose_term((name, a0, b), left=g, coeff=coeff))
    return terms


def add_chain_conditions(sys: MorphismSystem, name: str, P: Pyramid, Q: Pyramid):
    """Equations ``g d = d g`` for the degree-0 unknown ``name: P -> Q``."""
    for b in sorted(P.cells):
        for a in Q.cells_of_height(height(b) + 1):
            terms = []
            for i in range(1, P.width + 1):
                f = P.d(b, i)
                if f is not None:
                    terms.append(sys.compose_term((name, a, b + epsilon(i)), right=f))
            for i in range(1, Q.width + 1):
                g = Q.d(a - epsilon(i), i)
                if g is not None:
                    terms.append(sys.compose_term((name, a - epsilon(i), b), left=g, coeff=-1))
            if terms:
                sys.equation(terms)


# ---------------------------------------------------------------------------
# public solvers


def is_null_homotopic(alpha: GradedMatrixMap) -> GradedMatrixMap | None:
    """A homotopy ``chi`` with ``alpha = chi d + d chi``, or None if there is none."""
    P, Q = alpha.source, alpha.target
    sys = MorphismSystem(alpha.cat)
    add_map_slots(sys, "chi", P, Q, -1)
    for b in sorted(P.cells):
        for a in Q.cells_of_height(height(b)):
            rhs = alpha.entries.get((a, b))
            sys.equation(homotopy_terms(sys, "chi", P, Q, a, b), rhs)
    vals = sys.solve()
    if vals is None:
        return None
    chi = map_from_values(vals, "chi", P, Q, -1)
    if not homotopy_expression(chi) == alpha:
        raise RuntimeError("null-homotopy witness failed re-validation")
    return chi


def morphism_space(P: Pyramid, Q: Pyramid) -> list[GradedMatrixMap]:
    """Basis of all pyramid morphisms ``P -> Q``."""
    sys = MorphismSystem(P.cat)
    add_map_slots(sys, "g", P, Q, 0)
    add_chain_conditions(sys, "g", P, Q)
    return [map_from_values(v, "g", P, Q, 0) for v in sys.solution_space()]


@dataclass
class HomotopyEquivalence:
    inverse: GradedMatrixMap
    source_homotopy: GradedMatrixMap
    target_homotopy: GradedMatrixMap

    def sizes(self) -> dict:
        return {
            "inverse": len(self.inverse.entries),
            "source_homotopy": len(self.source_homotopy.entries),
            "target_homotopy": len(self.target_homotopy.entries),
        }


def validate_equivalence(f: GradedMatrixMap, w: HomotopyEquivalence) -> bool:
    """Re-check all witness identities by substitution."""
    g = w.inverse
    P, Q = f.source, f.target
    return (
        is_morphism(f)
        and is_morphism(g)
        and subtract(compose(g, f), identity(P)) == homotopy_expression(w.source_homotopy)
        and subtract(compose(f, g), identity(Q)) == homotopy_expression(w.target_homotopy)
    )


def is_homotopy_equivalence(f: GradedMatrixMap) -> HomotopyEquivalence | None:
    """Solve jointly for ``g`` and homotopies with ``gf - 1 ~ 0`` and ``fg - 1 ~ 0``.

    ``f`` is fixed, so every condition is linear in the unknowns.
    """
    P, Q = f.source, f.target
    cat = f.cat
    sys = MorphismSystem(cat)
    add_map_slots(sys, "g", Q, P, 0)
    add_map_slots(sys, "hP", P, P, -1)
    add_map_slots(sys, "hQ", Q, Q, -1)
    add_chain_conditions(sys, "g", Q, P)

    f_by_col: dict = {}
    f_by_row: dict = {}
    for (a, b), h in f.entries.items():
        f_by_col.setdefault(b, []).append((a, h))
        f_by_row.setdefault(a, []).append((b, h))

    # g f - 1 = hP d + d hP
    for b2 in sorted(P.cells):
        for b in P.cells_of_height(height(b2)):
            terms = [sys.compose_term(("g", b, a), right=h) for a, h in f_by_col.get(b2, ())]
            terms += homotopy_terms(sys, "hP", P, P, b, b2, coeff=-1)
            rhs = cat.identity(P.cells[b]) if b == b2 else None
            sys.equation(terms, rhs)
    # f g - 1 = hQ d + d hQ
    for a2 in sorted(Q.cells):
        for a in Q.cells_of_height(height(a2)):
            terms = [sys.compose_term(("g", b, a2), left=h) for b, h in f_by_row.get(a, ())]
            terms += homotopy_terms(sys, "hQ", Q, Q, a, a2, coeff=-1)
            rhs = cat.identity(Q.cells[a]) if a == a2 else None
            sys.equation(terms, rhs)

    vals = sys.solve()
    if vals is None:
        return None
    w = HomotopyEquivalence(
        map_from_values(vals, "g", Q, P, 0),
        map_from_values(vals, "hP", P, P, -1),
        map_from_values(vals, "hQ", Q, Q, -1),
    )
    if not validate_equivalence(f, w):
        raise RuntimeError("homotopy-equivalence witnesses failed re-validation")
    return w


def random_morphism(P: Pyramid, Q: Pyramid, rng, basis: list | None = None) -> GradedMatrixMap:
    """A random integer combination of the morphism-space basis."""
    basis = morphism_space(P, Q) if basis is None else basis
    out = GradedMatrixMap(P, Q, 0, {})
    for m in basis:
        c = Fraction(int(rng.integers(-2, 3)))
        if c:
            out = add_morphisms(out, GradedMatrixMap(P, Q, 0, {k: P.cat.scale(c, h) for k, h in m.entries.items()}))
    return out
