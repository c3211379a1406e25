# %% [markdown]
# The F / G table for two small algebras
#
# F is A (x) A and G is A* (x) A.  Tensoring over A and splitting into
# indecomposables shows every product is d = dim A copies of F or G.

# %%
from pyracat.algmod.algebra import path_algebra_A, truncated_polynomial
from pyracat.algmod.modules import bimodule_F, bimodule_G, tensor_over_A
from pyracat.algmod.resolution import decompose_projective, nakayama
from pyracat.cells import adjunction_check, build_table, cell_structure, mult_vectors, verify_identities

algebras = [truncated_polynomial(2), path_algebra_A(2)]
make = {"F": bimodule_F, "G": bimodule_G}

# %%
for A in algebras:
    print(f"{A.name}: dim {A.dim}, Cartan {A.cartan()}, Nakayama {nakayama(A)}")
    for left in "FG":
        for right in "FG":
            dec = decompose_projective(tensor_over_A(make[left](A), make[right](A)).module)
            target = "F" if left == "F" else "G"
            same = dec == decompose_projective(make[target](A)).scaled(A.dim)
            print(f"  {left}{right} = {A.dim} {target}: {same}   (P={dec.P}, Q={dec.Q})")

# %%
# the symbolic table built from the Cartan matrix alone
A = algebras[1]
S = cell_structure(build_table(A.cartan(), "DA"))
print("two-sided cells:", S.to_json()["two_sided_cells"])
print("left cells:     ", S.to_json()["left_cells"])

# %%
# the integer identities behind the rank-one argument
for check in verify_identities(mult_vectors(A)):
    print(f"  {check.identity:10s} {check.lhs} = {check.rhs}: {check.holds}")
adj = adjunction_check(A)
print("[F] =", adj.F_matrix, " transpose matches G:", adj.transpose_holds)
