import json

import pytest

from pyracat import exactla as la
from pyracat.algmod.hom import find_isomorphism
from pyracat.index import ZERO
from pyracat.pyramid.core import check_axioms, is_morphism
from pyracat.pyramid.homotopy import validate_equivalence
from pyracat.verify import (
    LiftingError,
    PreconditionError,
    build_instance,
    check_product,
    lift_augmentation,
    power_augmented,
    report,
    tensor_augmented,
    verify_da_table,
)


@pytest.fixture(scope="module")
def a2_instance(a2):
    return build_instance(a2, 1)


def test_kx2_instance_summary(kx2):
    inst = build_instance(kx2, 0)
    s = inst.summary()
    assert s["terminated"] and s["length"] == 0
    assert s["kernel_dims"] == [0]
    assert inst.d == 2
    assert check_axioms(inst.Q.pyramid) == []


def test_a2_instance_summary(a2_instance):
    s = a2_instance.summary()
    assert s["terminated"]
    assert s["kernel_dims"] == [3, 0]
    assert s["resolution"] == [[[1, 1], [1, 2], [1, 1], [1, 2]], [[2, 1], [2, 2]]]
    assert a2_instance.Q.pyramid.width == 1
    assert check_axioms(a2_instance.Q.pyramid) == []


def test_a2_length_zero_is_a_precondition_failure(a2):
    inst = build_instance(a2, 0)
    assert not inst.terminated
    assert inst.summary()["kernel_dims"] == [3]
    with pytest.raises(PreconditionError, match="kernel dimension 3"):
        verify_da_table(inst)


def test_kx2_table(kx2):
    inst = build_instance(kx2, 0)
    results = verify_da_table(inst, seed=3)
    assert [r.lhs for r in results] == ["F.Q", "Q.F", "Q.Q"]
    assert all(r.iso_found and r.lifted and r.equivalent for r in results)
    rep = report(inst, results)
    assert rep["ok"]
    json.dumps(rep)


def test_a2_table_with_revalidated_witnesses(a2_instance):
    inst = a2_instance
    F, Q = inst.F, inst.Q
    for left, right, base in ((F, Q, F), (Q, F, Q), (Q, Q, Q)):
        res, witness = check_product(inst, left, right, base, seed=0)
        assert res.equivalent, res.detail
        f, w = witness
        assert is_morphism(f)
        assert validate_equivalence(f, w)
        assert res.multiplicity == 3
        assert res.to_json()["witness_sizes"] == w.sizes()


def test_lift_covers_the_isomorphism(kx2):
    inst = build_instance(kx2, 0)
    src = tensor_augmented(inst.cat, inst.F, inst.Q)
    tgt = power_augmented(inst.F, inst.d)
    theta = find_isomorphism(src.module, tgt.module)
    assert theta is not None
    f = lift_augmentation(inst.cat, src, tgt, theta)
    assert is_morphism(f)


def test_lift_fails_for_a_non_homomorphism(kx2):
    inst = build_instance(kx2, 0)
    src = tensor_augmented(inst.cat, inst.F, inst.Q)
    tgt = power_augmented(inst.F, inst.d)
    n = src.module.dim
    # zero lifts trivially; a single matrix unit is not a bimodule map and cannot be lifted
    assert is_morphism(lift_augmentation(inst.cat, src, tgt, la.zeros(tgt.module.dim, n, kx2.field)))
    theta = la.zeros(tgt.module.dim, n, kx2.field)
    theta[0, 0] = 1
    with pytest.raises(LiftingError):
        lift_augmentation(inst.cat, src, tgt, theta)


def test_F_times_F_is_d_copies_of_F(kx2):
    inst = build_instance(kx2, 0)
    res, witness = check_product(inst, inst.F, inst.F, inst.F)
    assert res.equivalent and witness is not None
    aug = tensor_augmented(inst.cat, inst.F, inst.F)
    assert set(aug.aug) == {ZERO}
