"""Pyramids over additive categories: axioms, morphisms, homotopies, totalization, tensor."""
from .complexes import (
    ChainMap,
    Complex,
    canonical_unit,
    chain_compose,
    chain_identity,
    complex_from_json,
    complex_to_json,
    include_complex,
    is_chain_isomorphism,
    tensor_comparison,
    total_tensor_complex,
    totalization,
    totalize,
    totalize_morphism,
)
from .core import (
    GradedMatrixMap,
    Pyramid,
    Violation,
    add_morphisms,
    check_axioms,
    compose,
    d_matrix,
    direct_sum,
    direct_sum_many,
    embed_morphism,
    embed_object,
    homotopy_expression,
    identity,
    is_morphism,
    map_from_json,
    map_to_json,
    negate,
    power,
    pyramid_from_json,
    pyramid_to_json,
    scale_morphism,
    subtract,
    zero_map,
    zero_pyramid,
)
from .homotopy import (
    HomotopyEquivalence,
    MorphismSystem,
    is_homotopy_equivalence,
    is_null_homotopic,
    morphism_space,
    random_morphism,
    validate_equivalence,
)
from .monoidal import act, act_left, act_morphisms, act_right, tensor, tensor_morphisms, unit_pyramid
