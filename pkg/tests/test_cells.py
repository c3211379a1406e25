import itertools
from collections import Counter, deque
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from pyracat.cells import (
    FLAVORS,
    ID,
    F,
    G,
    MultVectors,
    action_matrices,
    adjunction_check,
    apex,
    build_table,
    cell_structure,
    enumerate_quasi_idempotents,
    is_irreducible,
    is_strongly_regular,
    matrix_rank,
    mult_vectors,
    quasi_idempotent_check,
    rank_one_decompose,
    symbols,
    table_coherence,
    verify_identities,
)

A2_CARTAN = [[1, 0], [1, 1]]


# ---------------------------------------------------------------------------
# independent oracles


def reachable_cells(table, side):
    """Cells by breadth-first search on the one-step graph, no shared code with the library."""
    syms = table.symbols

    def neighbours(t):
        for u in syms:
            prod = table.products[(u, t)] if side == "left" else table.products[(t, u)]
            yield from prod

    reach = {}
    for t in syms:
        seen, queue = {t}, deque([t])
        while queue:
            x = queue.popleft()
            for y in neighbours(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        reach[t] = seen
    return {frozenset(s for s in syms if s in reach[t] and t in reach[s]) for t in syms}


def positive_quasi_idempotents(m, max_entry=3, max_d=27):
    count, bad = 0, 0
    for flat in itertools.product(range(1, max_entry + 1), repeat=m * m):
        X = [flat[r * m:(r + 1) * m] for r in range(m)]
        sq = [[sum(X[i][k] * X[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
        d = Fraction(sq[0][0], X[0][0])
        if d.denominator != 1 or not 1 <= d <= max_d:
            continue
        if all(sq[i][j] == d * X[i][j] for i in range(m) for j in range(m)):
            count += 1
            if any(X[i][j] * X[k][l] != X[i][l] * X[k][j] for i in range(m) for j in range(m) for k in range(m) for l in range(m)):
                bad += 1
    return count, bad


def non_identity(cells):
    return {c for c in cells if ID not in c}


# ---------------------------------------------------------------------------
# tables


def test_symbol_lists():
    assert len(symbols(2, "CA")) == 1 + 4
    assert len(symbols(2, "DA")) == 1 + 8
    with pytest.raises(ValueError):
        symbols(2, "XY")
    with pytest.raises(ValueError):
        F(0, 1)


def test_kx2_ca_square():
    T = build_table([[2]], "CA")
    assert T.compose(F(1, 1), F(1, 1)) == Counter({F(1, 1): 2})


def test_a2_ca_products_by_hand():
    T = build_table(A2_CARTAN, "CA")
    # F(i,j) F(k,l) = dim(e_j A e_k) F(i,l)
    assert T.compose(F(1, 1), F(1, 1)) == Counter({F(1, 1): 1})
    assert T.compose(F(1, 1), F(2, 2)) == Counter()
    assert T.compose(F(2, 2), F(1, 1)) == Counter({F(2, 1): 1})
    assert T.compose(F(1, 2), F(2, 1)) == Counter({F(1, 1): 1})


def test_a2_da_products_by_hand():
    T = build_table(A2_CARTAN, "DA")
    assert T.compose(G(1, 2), F(2, 1)) == Counter({G(1, 1): 1})
    # right factor G(k,l) picks up dim(e_k A e_j)
    assert T.compose(F(1, 1), G(2, 2)) == Counter({F(1, 2): 1})
    assert T.compose(G(1, 2), G(1, 1)) == Counter()


@pytest.mark.parametrize("flavor", FLAVORS)
@pytest.mark.parametrize("C", [[[2]], A2_CARTAN, [[1, 0], [0, 1]], [[1, 0, 0], [1, 1, 0], [1, 1, 1]]])
def test_tables_unital_and_associative(C, flavor):
    T = build_table(C, flavor)
    assert T.is_unital()
    assert T.associativity_failures() == []


@pytest.mark.parametrize("C", [[[2]], A2_CARTAN, [[1, 2], [0, 3]]])
def test_aggregate_F_squares_to_d_F(C):
    T = build_table(C, "CA")
    d = sum(map(sum, C))
    total_F = Counter({s: 1 for s in T.symbols if s.kind == "F"})
    assert T.aggregate("F", "F") == Counter({s: d * m for s, m in total_F.items()})


def test_table_json_lists_every_pair():
    T = build_table(A2_CARTAN, "DA")
    assert len(T.to_json()["products"]) == len(T.symbols) ** 2


@pytest.mark.parametrize("flavor", FLAVORS)
def test_table_matches_bimodule_tensor(kx2, a2, flavor):
    for A in (kx2, a2):
        assert table_coherence(build_table(A.cartan(), flavor), A) == []


# ---------------------------------------------------------------------------
# cells


@pytest.mark.parametrize("C", [[[2]], A2_CARTAN, [[1, 0], [0, 1]], [[1, 0, 0], [1, 1, 0], [1, 1, 1]]])
@pytest.mark.parametrize("flavor", FLAVORS)
def test_cells_match_search_oracle(C, flavor):
    T = build_table(C, flavor)
    S = cell_structure(T)
    assert set(S.left_cells) == reachable_cells(T, "left")
    assert set(S.right_cells) == reachable_cells(T, "right")


@pytest.mark.parametrize("C", [A2_CARTAN, [[1, 0], [0, 1]], [[1, 0, 0], [1, 1, 0], [1, 1, 1]]])
def test_ca_has_two_two_sided_cells(C):
    S = cell_structure(build_table(C, "CA"))
    n = len(C)
    assert len(S.two_sided_cells) == 2
    assert frozenset({ID}) in S.two_sided_cells
    J = S.cell_of(F(1, 1))
    assert J == frozenset(F(i, j) for i in range(1, n + 1) for j in range(1, n + 1))
    assert S.geq(F(1, 1), ID) and not S.geq(ID, F(1, 1))
    assert is_strongly_regular(S, J)
    assert is_strongly_regular(S, frozenset({ID}))


def test_semisimple_left_cells_fix_the_column():
    S = cell_structure(build_table([[1, 0], [0, 1]], "CA"))
    expected = {frozenset({F(1, j), F(2, j)}) for j in (1, 2)}
    assert non_identity(S.left_cells) == expected
    assert non_identity(S.right_cells) == {frozenset({F(i, 1), F(i, 2)}) for i in (1, 2)}


def test_da_cells_a2():
    S = cell_structure(build_table(A2_CARTAN, "DA"))
    assert non_identity(S.left_cells) == {
        frozenset({F(1, j), F(2, j), G(1, j), G(2, j)}) for j in (1, 2)
    }
    assert non_identity(S.right_cells) == {
        frozenset({k(i, 1), k(i, 2)}) for i in (1, 2) for k in (F, G)
    }
    assert len(S.two_sided_cells) == 2
    J = S.cell_of(G(2, 1))
    assert F(1, 1) in J
    # recorded finding: this cell is strongly regular
    assert is_strongly_regular(S, J)


def test_strong_regularity_needs_a_cell():
    S = cell_structure(build_table([[2]], "CA"))
    with pytest.raises(ValueError):
        is_strongly_regular(S, frozenset({F(1, 1), ID}))


def test_cells_json():
    data = cell_structure(build_table([[2]], "CA")).to_json()
    assert sorted(map(tuple, data["two_sided_cells"])) == [("F(1,1)",), ("Id",)]


cartans = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=n, max_size=n)
).map(lambda C: [[max(x, 1) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(C)])


@settings(max_examples=30)
@given(cartans)
def test_positive_diagonal_gives_one_nontrivial_ca_cell(C):
    S = cell_structure(build_table(C, "CA"))
    assert len(S.two_sided_cells) == 2
    J = S.cell_of(F(1, 1))
    assert is_strongly_regular(S, J)


def test_irreducibility():
    assert is_irreducible([[1, 1], [1, 1]])
    assert not is_irreducible(A2_CARTAN)
    assert is_irreducible([[2]])


# ---------------------------------------------------------------------------
# action matrices, vectors, identities


def test_kx2_ca_action(kx2):
    rep = action_matrices(kx2, "CA")
    assert rep.names == ["P1"]
    assert rep.matrices[F(1, 1)] == [[2]]
    assert rep.matrices[ID] == [[1]]


@pytest.mark.parametrize("flavor", FLAVORS)
def test_identity_acts_trivially(a2, flavor):
    rep = action_matrices(a2, flavor)
    m = len(rep.names)
    assert rep.matrices[ID] == [[int(r == c) for c in range(m)] for r in range(m)]


def test_a2_da_objects_and_apex(a2):
    rep = action_matrices(a2, "DA")
    # the injective at vertex 1 is not projective
    assert rep.names == ["P1", "P2", "I1"]
    assert rep.aggregate("F") == [[2, 1, 1], [2, 1, 1], [0, 0, 0]]
    S = cell_structure(build_table(a2.cartan(), "DA"))
    assert apex(S, rep.matrices) == S.cell_of(F(1, 1))


def test_a2_vectors(a2):
    v = mult_vectors(a2)
    assert v.a == [1, 1, 0] and v.b == [1, 1, 0] and v.b_prime == [1, 1, 0]
    assert v.a_prime == [1, 0, 1]
    assert v.C == [[1, 0, 1], [1, 1, 0], [0, 0, 1]]
    assert v.d == 3
    assert v.to_json()["a_prime"] == ["1", "0", "1"]


def test_b_solves_dimension_equation(a2):
    v = mult_vectors(a2)
    rep = action_matrices(a2, "DA")
    dims = [U.dim for U in rep.objects]
    assert [sum(v.b[r] * v.C[r][c] for r in range(3)) for c in range(3)] == dims


@pytest.mark.parametrize("name", ["kx2", "a2"])
def test_identities_hold(request, name):
    checks = verify_identities(mult_vectors(request.getfixturevalue(name)))
    assert {c.identity for c in checks} == {"d_b", "d_b_prime", "transpose", "dim_end", "d_squared"}
    assert all(c.holds for c in checks), [c.to_json() for c in checks if not c.holds]


def test_perturbed_vector_breaks_identity(a2):
    v = mult_vectors(a2)
    bad = MultVectors(v.a, [2, 1, 0], v.a_prime, v.b_prime, v.C, v.d)
    by_name = {c.identity: c for c in verify_identities(bad)}
    assert not by_name["d_b"].holds
    assert by_name["d_b"].to_json()["holds"] is False


@pytest.mark.parametrize("name", ["kx2", "a2"])
def test_adjunction(request, name):
    adj = adjunction_check(request.getfixturevalue(name))
    assert adj.transpose_holds and adj.formula_holds
    assert adj.G_matrix == [list(col) for col in zip(*adj.F_matrix)]


# ---------------------------------------------------------------------------
# rank one


def test_rank_one_examples():
    r = rank_one_decompose([[2, 4], [1, 2]])
    assert (r.v, r.w, r.degenerate) == ([2, 1], [1, 2], False)
    assert rank_one_decompose([[1, 0], [0, 1]]) is None
    assert rank_one_decompose([[0, 0], [0, 0]]).degenerate
    assert matrix_rank([[1, 2], [2, 4]]) == 1


@given(
    st.lists(st.integers(-5, 5), min_size=1, max_size=4),
    st.lists(st.integers(-5, 5), min_size=1, max_size=4),
)
def test_rank_one_recovers_outer_product(v, w):
    H = [[x * y for y in w] for x in v]
    r = rank_one_decompose(H)
    assert r is not None
    assert [[x * y for y in r.w] for x in r.v] == H
    if any(w) and any(v):
        assert not r.degenerate
        g = 0
        for y in r.w:
            g = gcd(g, y)
        assert g == 1


def test_quasi_idempotent_examples():
    out = quasi_idempotent_check([[1, 1], [1, 1]], [[1, 0], [0, 1]], 2)
    assert out["HCH_equals_dH"] and out["HC_positive"] and out["rank_one"]
    out = quasi_idempotent_check([[1, 0], [0, 1]], [[1, 0], [0, 1]], 1)
    assert out["HCH_equals_dH"] and not out["HC_positive"]
    assert "rank_one" not in out
    assert not quasi_idempotent_check([[1, 1], [1, 1]], [[1, 0], [0, 1]], 3)["HCH_equals_dH"]


def test_enumeration_against_plain_search():
    res = enumerate_quasi_idempotents(max_size=3, max_entry=3)
    assert res["exceptions"] == []
    for m in (1, 2, 3):
        count, bad = positive_quasi_idempotents(m)
        assert res["counts"][m] == count
        assert bad == 0
    assert res["counts"] == {1: 3, 2: 15, 3: 51}
