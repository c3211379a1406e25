# %% [markdown]
# Products up to homotopy for the A2 path algebra
#
# G is not projective here, so it is replaced by its projective resolution Q,
# a width-1 pyramid of projective bimodules.  Each product F.Q, Q.F, Q.Q is
# then compared with three copies of F or Q in the homotopy category.

# %%
import time

from pyracat.algmod.algebra import path_algebra_A
from pyracat.pyramid.homotopy import validate_equivalence
from pyracat.verify import PreconditionError, build_instance, check_product, verify_da_table

A = path_algebra_A(2)

# %%
# length 0 is too short: the kernel after the first cover is still 3-dimensional
try:
    verify_da_table(build_instance(A, 0))
except PreconditionError as e:
    print("L=0:", e)

# %%
inst = build_instance(A, 1)
print(inst.summary())

# %%
F, Q = inst.F, inst.Q
for left, right, base in ((F, Q, F), (Q, F, Q), (Q, Q, Q)):
    t0 = time.perf_counter()
    res, witness = check_product(inst, left, right, base)
    ok = witness is not None and validate_equivalence(*witness)
    print(f"{res.lhs} ~ {res.rhs}: {res.equivalent}, re-checked {ok}, {time.perf_counter() - t0:.1f} s")
