# %% [markdown]
# Pyramids over the matrix category
#
# A pyramid places matrices (objects are just ranks) on integer multi-indices,
# with one differential per coordinate direction.  Squares must anticommute.

# %%
from pyracat import exactla as la
from pyracat.catcore import MatCat
from pyracat.index import ZERO, epsilon
from pyracat.pyramid.complexes import canonical_unit, tensor_comparison, is_chain_isomorphism, totalize
from pyracat.pyramid.core import Pyramid, check_axioms, compose, identity
from pyracat.pyramid.monoidal import tensor
from pyracat.pyramid.sampling import random_pyramid
from pyracat.rng import make_rng

cat = MatCat()
one = la.mat([[1]])
minus = la.mat([[-1]])

# %%
# a unit square: 0 -> e1, 0 -> e2, and both paths meet at e1 + e2
cells = {ZERO: 1, epsilon(1): 1, epsilon(2): 1, epsilon(1) + epsilon(2): 1}
good = Pyramid(cat, 2, cells, {(ZERO, 1): one, (ZERO, 2): one, (epsilon(1), 2): one, (epsilon(2), 1): minus})
bad = Pyramid(cat, 2, cells, {(ZERO, 1): one, (ZERO, 2): one, (epsilon(1), 2): one, (epsilon(2), 1): one})
print("anticommuting square:", check_axioms(good))
print("commuting square:    ", [v.to_json() for v in check_axioms(bad)])

# %%
# totalization flattens by height; the square becomes 1 -> 2 -> 1
T = totalize(good)
print({k: T.objects[k] for k in sorted(T.objects)})

# %%
# the tensor product is strictly associative, not just up to isomorphism
rng = make_rng(0)
X, Y, Z = (random_pyramid(cat, rng) for _ in range(3))
print("widths:", X.width, Y.width, Z.width)
print("(XY)Z == X(YZ):", tensor(tensor(X, Y), Z) == tensor(X, tensor(Y, Z)))

# %%
# totalizing a tensor agrees with the usual total tensor complex, via an explicit iso
f, g = tensor_comparison(X, Y, tensor(X, Y))
print("chain isomorphism:", is_chain_isomorphism(f, g))

# %%
# and every pyramid is isomorphic to the inclusion of its totalization
u, v = canonical_unit(X)
print("v u = id:", compose(v, u) == identity(X), " u v = id:", compose(u, v) == identity(u.target))
