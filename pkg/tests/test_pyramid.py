from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pyracat import exactla as la
from pyracat.catcore import MatCat, RegularAction
from pyracat.index import ZERO, IndexVector, epsilon
from pyracat.pyramid import (
    Complex,
    GradedMatrixMap,
    Pyramid,
    add_morphisms,
    act,
    act_left,
    act_morphisms,
    act_right,
    canonical_unit,
    chain_compose,
    chain_identity,
    check_axioms,
    compose,
    complex_from_json,
    complex_to_json,
    d_matrix,
    direct_sum,
    embed_object,
    homotopy_expression,
    identity,
    include_complex,
    is_chain_isomorphism,
    is_homotopy_equivalence,
    is_morphism,
    is_null_homotopic,
    map_from_json,
    map_to_json,
    negate,
    pyramid_from_json,
    pyramid_to_json,
    random_morphism,
    tensor,
    tensor_comparison,
    tensor_morphisms,
    totalize,
    totalize_morphism,
    unit_pyramid,
    zero_map,
    zero_pyramid,
)
from pyracat.pyramid.sampling import random_complex, random_pyramid, random_tensor_pair, random_width1, square_cases
from pyracat.rng import make_rng

CAT = MatCat()
seeds = st.integers(0, 2**32 - 1)


def M(rows):
    return la.mat(rows)


def square(signs=(1, 1, 1, -1)):
    """Rank-one square 0 -> e1, e2 -> e1+e2 with face maps scaled by ``signs``."""
    a, b, c = ZERO, epsilon(1), epsilon(2)
    cells = {a: 1, b: 1, c: 1, b + epsilon(2): 1}
    s1, s2, s3, s4 = signs
    diffs = {(a, 1): M([[s1]]), (a, 2): M([[s2]]), (b, 2): M([[s3]]), (c, 1): M([[s4]])}
    return Pyramid(CAT, 2, cells, diffs)


def cone(rank=2):
    """0 -> X = X -> 0 as a width-1 pyramid."""
    return include_complex(Complex(CAT, {0: rank, 1: rank}, {0: la.eye(rank)}))


def pyramid_from_seed(seed, max_width=2):
    return random_pyramid(CAT, make_rng(seed), max_width)


# ---------------------------------------------------------------------------
# axioms and differential matrices


def test_embedded_object_is_valid():
    assert check_axioms(embed_object(CAT, 3)) == []


def test_commuting_square_violates_anticommutation():
    bad = check_axioms(square((1, 1, 1, 1)))
    assert [v.axiom for v in bad] == ["IV"]
    assert bad[0].at == ([], 1, 2)


def test_anticommuting_square_is_valid():
    assert check_axioms(square()) == []


def test_d_squared_violation_is_located():
    C = Complex(CAT, {0: 1, 1: 1, 2: 1}, {0: M([[1]]), 1: M([[1]])})
    bad = check_axioms(include_complex(C))
    assert [(v.axiom, v.at) for v in bad] == [("III", ([], 1))]


def test_cells_beyond_width_violate_axiom_one():
    P = Pyramid(CAT, 1, {IndexVector([0, 1]): 2})
    assert [v.axiom for v in check_axioms(P)] == ["I"]


def test_tensor_of_width_one_pyramids_is_valid():
    rng = make_rng(11)
    for _ in range(20):
        P, Q = random_width1(CAT, rng), random_width1(CAT, rng)
        assert check_axioms(tensor(P, Q)) == []


def test_d_matrix_examples():
    assert d_matrix(embed_object(CAT, 2), 0).shape == (0, 1)
    C = Complex(CAT, {0: 2, 1: 1}, {0: M([[1, 2]])})
    D = d_matrix(include_complex(C), 0)
    assert D.shape == (1, 1) and la.equal(D.get(epsilon(1), ZERO), M([[1, 2]]))
    S = d_matrix(square(), 1)
    corner = epsilon(1) + epsilon(2)
    assert S.shape == (1, 2)
    assert S.rows == [corner] and S.cols == [epsilon(2), epsilon(1)]
    assert la.equal(S.get(corner, epsilon(1)), M([[1]])) and la.equal(S.get(corner, epsilon(2)), M([[-1]]))


def test_zero_differentials_and_cells_are_dropped():
    P = Pyramid(CAT, 1, {ZERO: 2, epsilon(1): 0}, {})
    assert list(P.cells) == [ZERO]
    Q = Pyramid(CAT, 1, {ZERO: 1, epsilon(1): 1}, {(ZERO, 1): M([[0]])})
    assert Q.diffs == {}


def test_nonzero_differential_into_zero_cell_is_rejected():
    with pytest.raises(ValueError):
        Pyramid(CAT, 1, {ZERO: 1}, {(ZERO, 1): M([[1]])})


# ---------------------------------------------------------------------------
# morphisms


def test_identity_is_morphism_and_neutral():
    P = square()
    w = identity(P)
    assert is_morphism(w)
    f = random_morphism(P, P, make_rng(3))
    assert compose(w, f) == f == compose(f, w)


def test_perturbed_map_is_not_a_morphism():
    P = square()
    w = identity(P)
    entries = dict(w.entries)
    entries[(ZERO, ZERO)] = M([[2]])
    assert not is_morphism(GradedMatrixMap(P, P, 0, entries))


def test_identity_of_zero_pyramid_is_empty():
    Z = zero_pyramid(CAT, 2)
    assert identity(Z).entries == {}
    assert is_morphism(identity(Z))


def test_additive_structure():
    P = square()
    f = random_morphism(P, P, make_rng(4))
    assert add_morphisms(f, negate(f)).is_zero()
    assert add_morphisms(zero_map(P, P), f) == f


def test_endpoint_mismatch_raises():
    with pytest.raises(ValueError):
        compose(identity(square()), identity(embed_object(CAT, 1)))


@given(seeds)
def test_composition_is_associative_and_bilinear(seed):
    rng = make_rng(seed)
    P = random_width1(CAT, rng, 3, 2)
    f, g, h, g2 = (random_morphism(P, P, rng) for _ in range(4))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert compose(add_morphisms(g, g2), f) == add_morphisms(compose(g, f), compose(g2, f))
    assert compose(h, add_morphisms(g, g2)) == add_morphisms(compose(h, g), compose(h, g2))


@given(seeds)
def test_totalization_is_functorial(seed):
    rng = make_rng(seed)
    P = random_width1(CAT, rng, 3, 2)
    f, g = random_morphism(P, P, rng), random_morphism(P, P, rng)
    assert totalize_morphism(compose(g, f)) == chain_compose(totalize_morphism(g), totalize_morphism(f))
    assert totalize_morphism(identity(P)) == chain_identity(totalize(P))


# ---------------------------------------------------------------------------
# direct sums, embedding, inclusion, totalization


def test_direct_sum_with_zero_is_identity_on_data():
    P = square()
    S, inj, proj = direct_sum(P, zero_pyramid(CAT, 2))
    assert S == P
    assert compose(proj[0], inj[0]) == identity(P)


@given(seeds)
def test_biproduct_identities(seed):
    rng = make_rng(seed)
    P, Q = random_pyramid(CAT, rng), random_pyramid(CAT, rng)
    S, inj, proj = direct_sum(P, Q)
    assert check_axioms(S) == []
    assert all(is_morphism(m) for m in inj + proj)
    assert compose(proj[0], inj[0]) == identity(P)
    assert compose(proj[1], inj[1]) == identity(Q)
    assert compose(proj[0], inj[1]).is_zero() and compose(proj[1], inj[0]).is_zero()
    assert add_morphisms(compose(inj[0], proj[0]), compose(inj[1], proj[1])) == identity(S)


@given(seeds)
def test_totalization_of_direct_sum(seed):
    rng = make_rng(seed)
    P, Q = random_pyramid(CAT, rng), random_pyramid(CAT, rng)
    S, inj, _ = direct_sum(P, Q)
    TS = totalize(S)
    iP, iQ = totalize_morphism(inj[0]), totalize_morphism(inj[1])
    for k in TS.degrees():
        # [iP iQ] : TP_k + TQ_k -> TS_k must be invertible
        blocks = [iP.at(k), iQ.at(k)]
        assert la.is_invertible(la.block_matrix([blocks]))
    assert iP.is_chain_map() and iQ.is_chain_map()


def test_embedded_object_totalizes_to_degree_zero():
    T = totalize(embed_object(CAT, 4))
    assert T.objects == {0: 4} and T.diffs == {}


def test_unit_embedding_is_tensor_unit():
    P = pyramid_from_seed(5)
    assert tensor(embed_object(CAT, 1), P) == P


def test_include_examples():
    assert include_complex(Complex(CAT, {})).is_zero()
    P = include_complex(Complex(CAT, {-1: 2, 0: 1}, {-1: M([[1, 1]])}))
    assert sorted(P.cells) == [IndexVector([-1]), ZERO]
    assert P.width == 1


@given(seeds)
def test_totalize_of_include_is_identity(seed):
    C = random_complex(CAT, make_rng(seed))
    assert totalize(include_complex(C)) == C


def test_square_totalizes_to_three_term_complex():
    W, X, Y, Z = 1, 2, 1, 3
    f = M([[1], [2]])  # W -> X along e1
    g = M([[3]])  # W -> Y along e2
    h = M([[1, 0], [0, 1], [1, 1]])  # X -> Z along e2
    k = la.matmul(h, f) * Fraction(-1) * Fraction(1, 3)  # Y -> Z along e1, so that h f + k g = 0
    a, e1, e2 = ZERO, epsilon(1), epsilon(2)
    P = Pyramid(CAT, 2, {a: W, e1: X, e2: Y, e1 + e2: Z}, {(a, 1): f, (a, 2): g, (e1, 2): h, (e2, 1): k})
    assert check_axioms(P) == []
    T = totalize(P)
    assert T.objects == {0: W, 1: X + Y, 2: Z}
    # lexicographic order puts e2 = (0, 1) before e1 = (1)
    assert la.equal(T.d(0), la.block_matrix([[g], [f]]))
    assert la.equal(T.d(1), la.block_matrix([[k, h]]))
    assert T.is_complex()


def test_canonical_unit_on_embedded_object_is_identity():
    P = embed_object(CAT, 3)
    u, v = canonical_unit(P)
    # include() always has width 1, so only the data coincides with the identity
    assert u.target.cells == P.cells and u.target.width == 1
    assert u.entries.keys() == v.entries.keys() == {(ZERO, ZERO)}
    assert la.equal(u.entries[(ZERO, ZERO)], la.eye(3)) and la.equal(v.entries[(ZERO, ZERO)], la.eye(3))


@given(seeds)
def test_canonical_unit_round_trips(seed):
    P = pyramid_from_seed(seed)
    u, v = canonical_unit(P)
    assert is_morphism(u) and is_morphism(v)
    assert compose(v, u) == identity(P)
    assert compose(u, v) == identity(u.target)


# ---------------------------------------------------------------------------
# homotopies


def test_zero_map_is_null_homotopic():
    P = square()
    chi = is_null_homotopic(zero_map(P, P))
    assert chi is not None and chi.is_zero()


def test_identity_of_embedded_object_is_not_null_homotopic():
    P = embed_object(CAT, 2)
    assert is_null_homotopic(identity(P)) is None


def test_identity_of_cone_is_null_homotopic():
    P = cone()
    chi = is_null_homotopic(identity(P))
    assert chi is not None
    assert homotopy_expression(chi) == identity(P)
    assert la.equal(chi.entries[(ZERO, epsilon(1))], la.eye(2))


def test_identity_is_homotopy_equivalence():
    P = square()
    w = is_homotopy_equivalence(identity(P))
    assert w is not None and w.inverse == identity(P)
    assert w.source_homotopy.is_zero() and w.target_homotopy.is_zero()


def test_contractible_source_is_equivalent_to_zero():
    P = cone()
    Z = zero_pyramid(CAT, 1)
    assert is_homotopy_equivalence(zero_map(P, Z)) is not None
    assert is_homotopy_equivalence(zero_map(embed_object(CAT, 1), zero_pyramid(CAT))) is None


@given(seeds)
def test_null_homotopic_maps_form_an_ideal(seed):
    rng = make_rng(seed)
    P = cone(1)
    Q = random_width1(CAT, rng, 2, 2)
    h = random_morphism(P, Q, rng)
    assert is_null_homotopic(h) is not None  # factors through the contractible P
    g = random_morphism(Q, Q, rng)
    assert is_null_homotopic(compose(g, h)) is not None
    k = random_morphism(P, P, rng)
    assert is_null_homotopic(compose(h, k)) is not None


# ---------------------------------------------------------------------------
# tensor and action


def test_tensor_widths_add():
    P, Q = cone(1), cone(1)
    assert tensor(P, Q).width == 2
    assert tensor(square(), cone(1)).width == 3


def test_tensor_sign_on_second_leg():
    P = include_complex(Complex(CAT, {0: 1, 1: 1}, {0: M([[2]])}))
    Q = include_complex(Complex(CAT, {0: 1, 1: 1}, {0: M([[3]])}))
    T = tensor(P, Q)
    assert la.equal(T.d(ZERO, 2), M([[3]]))
    assert la.equal(T.d(epsilon(1), 2), M([[-3]]))  # ht of the first leg is 1
    assert la.equal(T.d(ZERO, 1), M([[2]])) and la.equal(T.d(epsilon(2), 1), M([[2]]))
    assert check_axioms(T) == []


def test_unit_laws_over_matcat():
    U = unit_pyramid(CAT)
    P = square()
    assert tensor(U, P) == P == tensor(P, U)
    assert tensor(U, U) == U


def test_tensor_needs_monoidal_base(a2):
    from pyracat.algmod.categories import BimoduleCategory

    cat = BimoduleCategory(a2)
    P = embed_object(cat, cat.generators[0])
    with pytest.raises(TypeError):
        tensor(P, P)


@given(seeds)
def test_tensors_satisfy_axioms_and_cover_sign_cases(seed):
    rng = make_rng(seed)
    P, Q = random_tensor_pair(CAT, rng)
    T = tensor(P, Q)
    assert check_axioms(T) == []
    assert T.width == P.width + Q.width
    assert sum(square_cases(T, P.width).values()) >= 0


@given(seeds)
def test_strict_associativity(seed):
    rng = make_rng(seed)
    X, Y, Z = (random_pyramid(CAT, rng, 1) for _ in range(3))
    assert tensor(tensor(X, Y), Z) == tensor(X, tensor(Y, Z))


@given(seeds)
def test_total_tensor_oracle(seed):
    rng = make_rng(seed)
    X, Y = random_pyramid(CAT, rng), random_pyramid(CAT, rng)
    XY = tensor(X, Y)
    f, g = tensor_comparison(X, Y, XY)
    assert is_chain_isomorphism(f, g)


def test_identity_tensor_identity_is_identity():
    P, Q = square(), cone(2)
    assert tensor_morphisms(identity(P), identity(Q)) == identity(tensor(P, Q))


@given(seeds)
def test_tensor_of_morphisms_is_functorial(seed):
    rng = make_rng(seed)
    P, Q = random_width1(CAT, rng, 2, 2), random_width1(CAT, rng, 2, 2)
    a, a2 = random_morphism(P, P, rng), random_morphism(P, P, rng)
    b, b2 = random_morphism(Q, Q, rng), random_morphism(Q, Q, rng)
    ab = tensor_morphisms(a, b)
    assert is_morphism(ab)
    assert tensor_morphisms(compose(a2, a), compose(b2, b)) == compose(tensor_morphisms(a2, b2), ab)


def test_action_unit_and_associativity():
    act_ = RegularAction(CAT)
    rng = make_rng(8)
    for _ in range(10):
        P, P2, Y = (random_pyramid(CAT, rng, 1) for _ in range(3))
        assert act(unit_pyramid(CAT), Y, act_) == Y
        assert act(tensor(P, P2), Y, act_) == act(P, act(P2, Y, act_), act_)


def test_action_interchange():
    act_ = RegularAction(CAT)
    rng = make_rng(9)
    for _ in range(10):
        P, Y = random_width1(CAT, rng, 2, 2), random_width1(CAT, rng, 2, 2)
        alpha, beta = random_morphism(P, P, rng), random_morphism(Y, Y, rng)
        lhs = compose(act_left(P, beta, act_), act_right(alpha, Y, act_))
        rhs = compose(act_right(alpha, Y, act_), act_left(P, beta, act_))
        assert lhs == act_morphisms(alpha, beta, act_) == rhs


# ---------------------------------------------------------------------------
# serialization


@given(seeds)
def test_pyramid_json_round_trip(seed):
    P = pyramid_from_seed(seed)
    assert pyramid_from_json(pyramid_to_json(P), CAT) == P


def test_map_and_complex_json_round_trip():
    P = square()
    f = random_morphism(P, P, make_rng(1))
    assert map_from_json(map_to_json(f), P, P) == f
    C = random_complex(CAT, make_rng(2))
    assert complex_from_json(complex_to_json(C), CAT) == C


def test_malformed_pyramid_json():
    with pytest.raises((ValueError, KeyError, TypeError)):
        pyramid_from_json({"cells": []}, CAT)
    with pytest.raises((ValueError, KeyError, TypeError)):
        pyramid_from_json({"width": 1, "cells": [{"index": [0], "object": -1}]}, CAT)
