"""The ten acceptance criteria, each run at full size.

Every test appends one ``PASS``/``FAIL`` line to the terminal summary.
"""
import time
from contextlib import contextmanager

import numpy as np

from conftest import ACCEPTANCE_LINES
from pyracat import exactla as la
from pyracat.algmod.modules import bimodule_F, bimodule_G, tensor_over_A
from pyracat.algmod.resolution import decompose_projective
from pyracat.catcore import MatCat
from pyracat.cells import (
    ID,
    adjunction_check,
    build_table,
    cell_structure,
    enumerate_quasi_idempotents,
    mult_vectors,
    rank_one_decompose,
    table_coherence,
    verify_identities,
)
from pyracat.pyramid.complexes import (
    Complex,
    canonical_unit,
    include_complex,
    is_chain_isomorphism,
    tensor_comparison,
    totalize,
)
from pyracat.pyramid.core import check_axioms, compose, embed_object, homotopy_expression, identity, is_morphism
from pyracat.pyramid.homotopy import is_null_homotopic, random_morphism, validate_equivalence
from pyracat.pyramid.monoidal import tensor, unit_pyramid
from pyracat.pyramid.sampling import random_complex, random_pyramid, random_tensor_pair, random_width1, square_cases
from pyracat.rng import make_rng
from pyracat.verify import build_instance, check_product

CAT = MatCat()


@contextmanager
def criterion(number: int, title: str, budget: float | None = None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.1f} s, budget {budget} s"
    except BaseException as e:
        ACCEPTANCE_LINES.append(f"FAIL  {number:2d}. {title}: {e}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {number:2d}. {title} ({elapsed:.2f} s)")


def test_01_axioms_of_tensor_pyramids():
    with criterion(1, "200 tensor pyramids satisfy the axioms, all three square cases", budget=10):
        rng = make_rng(1)
        seen = {"first": 0, "second": 0, "mixed": 0}
        for _ in range(200):
            X, Y = random_tensor_pair(CAT, rng)
            P = tensor(X, Y)
            assert P.width <= 2 and len(P.cells) <= 6
            assert all(r <= 3 for r in P.cells.values())
            assert check_axioms(P) == []
            for case, k in square_cases(P, X.width).items():
                seen[case] += k
        assert all(seen.values()), seen


def test_02_strict_associativity_and_units():
    with criterion(2, "100 triples associate strictly, unit laws exact", budget=30):
        rng = make_rng(2)
        U = unit_pyramid(CAT)
        for _ in range(100):
            X, Y, Z = (random_pyramid(CAT, rng) for _ in range(3))
            left, right = tensor(tensor(X, Y), Z), tensor(X, tensor(Y, Z))
            assert left.width == right.width
            assert left.cells == right.cells
            assert left.diffs.keys() == right.diffs.keys()
            assert left == right
            assert tensor(U, X) == X and tensor(X, U) == X


def test_03_totalize_and_include_are_inverse():
    with criterion(3, "canonical units invert on 50 pyramids, totalize(include) = id on 50 complexes"):
        rng = make_rng(3)
        for _ in range(50):
            P = random_pyramid(CAT, rng)
            u, v = canonical_unit(P)
            assert is_morphism(u) and is_morphism(v)
            assert compose(v, u) == identity(P)
            assert compose(u, v) == identity(u.target)
        for _ in range(50):
            C = random_complex(CAT, rng)
            assert totalize(include_complex(C)) == C


def test_04_total_tensor_oracle():
    with criterion(4, "50 pairs: totalized tensor is isomorphic to the total tensor complex"):
        rng = make_rng(4)
        for _ in range(50):
            X, Y = random_pyramid(CAT, rng), random_pyramid(CAT, rng)
            f, g = tensor_comparison(X, Y, tensor(X, Y))
            assert is_chain_isomorphism(f, g)


def test_05_homotopy_solver():
    with criterion(5, "cone identity null-homotopic, embed identity not, 20 ideal composites"):
        rng = make_rng(5)
        # 0 -> X = X -> 0
        cone = include_complex(Complex(CAT, {0: 2, 1: 2}, {0: la.eye(2)}))
        chi = is_null_homotopic(identity(cone))
        assert chi is not None
        assert homotopy_expression(chi) == identity(cone)
        assert is_null_homotopic(identity(embed_object(CAT, 2))) is None
        small = include_complex(Complex(CAT, {0: 1, 1: 1}, {0: la.eye(1)}))
        for _ in range(20):
            Q = random_width1(CAT, rng, 2, 2)
            h = random_morphism(small, Q, rng)
            g = random_morphism(Q, Q, rng)
            k = random_morphism(small, small, rng)
            for composite in (compose(g, h), compose(h, k)):
                chi = is_null_homotopic(composite)
                assert chi is not None and homotopy_expression(chi) == composite


def test_06_bimodule_products(kx2, a2):
    with criterion(6, "FF, FG, GF, GG are d copies at the bimodule level", budget=5):
        make = {"F": bimodule_F, "G": bimodule_G}
        for A in (kx2, a2):
            for left, right, result in (("F", "F", "F"), ("F", "G", "F"), ("G", "F", "G"), ("G", "G", "G")):
                got = decompose_projective(tensor_over_A(make[left](A), make[right](A)).module)
                want = decompose_projective(make[result](A)).scaled(A.dim)
                assert got.consistent and got == want, (A.name, left, right)


def test_07_identity_suite(kx2, a2):
    with criterion(7, "vector identities and [F]^t = [[G]] on add(proj + inj)"):
        for A in (kx2, a2):
            checks = verify_identities(mult_vectors(A))
            assert all(c.holds for c in checks), [c.to_json() for c in checks if not c.holds]
            by_name = {c.identity: c for c in checks}
            assert by_name["d_squared"].rhs == A.dim**2
            adj = adjunction_check(A)
            assert adj.transpose_holds


def test_08_homotopy_verification_for_a2(a2):
    with criterion(8, "A2 with L=1: F.Q, Q.F, Q.Q equivalent to 3 copies, witnesses re-validated", budget=60):
        inst = build_instance(a2, 1)
        assert inst.terminated
        F, Q = inst.F, inst.Q
        for left, right, base in ((F, Q, F), (Q, F, Q), (Q, Q, Q)):
            res, witness = check_product(inst, left, right, base)
            assert res.equivalent, f"{res.lhs}: {res.detail}"
            f, w = witness
            assert validate_equivalence(f, w)


def test_09_quasi_idempotents_have_rank_one():
    with criterion(9, "exhaustive X^2 = dX search finds only rank one, 100 rank-one recoveries", budget=60):
        res = enumerate_quasi_idempotents(max_size=3, max_entry=3, max_d=27)
        assert res["exceptions"] == []
        assert all(res["counts"][m] > 0 for m in (1, 2, 3))
        rng = make_rng(9)
        for _ in range(100):
            rows, cols = (int(x) for x in rng.integers(1, 5, size=2))
            v = rng.integers(0, 6, size=rows)
            w = rng.integers(0, 6, size=cols)
            v[rng.integers(0, rows)] = max(1, v.max())
            w[rng.integers(0, cols)] = max(1, w.max())
            H = np.outer(v, w).tolist()
            r = rank_one_decompose(H)
            assert r is not None and not r.degenerate
            assert np.outer(r.v, r.w).tolist() == H


def test_10_table_coherence_and_cells(kx2, a2):
    with criterion(10, "tables match bimodule tensors, CA has two cells, DA left cells by column"):
        for A in (kx2, a2):
            for flavor in ("CA", "DA"):
                table = build_table(A.cartan(), flavor)
                assert table_coherence(table, A) == []
            S = cell_structure(build_table(A.cartan(), "CA"))
            assert len(S.two_sided_cells) == 2
            D = cell_structure(build_table(A.cartan(), "DA"))
            for cell in D.left_cells:
                if ID in cell:
                    continue
                assert len({s.j for s in cell}) == 1
                assert {s.i for s in cell} == set(range(1, A.n + 1))
            assert {next(iter(c)).j for c in D.left_cells if ID not in c} == set(range(1, A.n + 1))
