import random

import pytest

from mclusters import tableaux as tb
from mclusters.tableaux import Tableau, TableauError

P = Tableau.parse


def random_tableau(rng, n=3, m=8, kmax=4):
    cols = [tuple(sorted(rng.sample(range(1, m + 1), n))) for _ in range(rng.randint(0, kmax))]
    return tb.union_all([Tableau.column(c) for c in cols], n)


def test_parse_and_print():
    T = P("(1,3 / 2,5 / 4,6)")
    assert T.columns == [(1, 2, 4), (3, 5, 6)]
    assert str(T) == "(1,3 / 2,5 / 4,6)"
    assert str(P("346")) == "(3,4,6)" and P("(3,4,6)") == P("346")
    assert Tableau.from_json(T.to_json()) == T
    assert T.to_json() == {"rows": 3, "cols": 2, "entries": [[1, 3], [2, 5], [4, 6]]}
    with pytest.raises(TableauError):
        P("x")
    with pytest.raises(TableauError):
        Tableau(((1, 2), (3,)))


def test_row_union_examples():
    assert tb.row_union(P("124"), P("356")) == P("(1,3 / 2,5 / 4,6)")
    T = P("(1,3 / 2,5 / 4,6)")
    assert tb.row_union(T, Tableau.empty(3)) == T
    with pytest.raises(TableauError):
        tb.row_union(P("12"), P("123"))


def test_row_delete_examples():
    S, T = P("246"), P("(1,3 / 4,5 / 6,7)")
    assert tb.row_delete(T, tb.row_union(T, S)) == S
    assert tb.row_delete(T, T) == Tableau.empty(3)
    with pytest.raises(TableauError):
        tb.row_delete(P("789"), T)


def test_union_properties_random():
    rng = random.Random(11)
    for _ in range(1000):
        S, T, U = (random_tableau(rng) for _ in range(3))
        ST = tb.row_union(S, T)
        assert ST.is_ssyt()
        assert ST == tb.row_union(T, S)
        assert tb.row_union(ST, U) == tb.row_union(S, tb.row_union(T, U))
        assert tb.row_delete(S, ST) == T


def test_reduce_properties_random():
    rng = random.Random(12)
    for _ in range(1000):
        T = random_tableau(rng)
        R = tb.reduce(T)
        assert tb.reduce(R) == R
        assert tb.is_factor(R, T) and R.is_ssyt()
        # adding trivial columns does not change the reduction
        a = rng.randint(1, 6)
        assert tb.reduce(tb.row_union(T, tb.trivial_column(a, 3))) == R
        assert tb.equivalent(T, tb.row_union(T, tb.trivial_column(a, 3)))


def test_reduce_examples():
    assert tb.reduce(P("234")) == Tableau.empty(3)
    assert tb.is_trivial(P("234")) and not tb.is_trivial(P("235"))
    for typ in ("E6", "E7", "E8"):
        for T in tb.dictionary(typ).by_diag.values():
            assert tb.reduce(T) == T


def test_gap_weight():
    assert tb.gap_weight(P("356")) == 1
    assert tb.gap_weight(P("157")) == 4
    assert tb.gap_weight(P("123")) == 0


def test_small_gap_forms_of_dictionary():
    for T in tb.dictionary("E6").by_diag.values():
        k = tb.gap_weight(T)
        sg = tb.small_gap_form(T, 7)
        assert sg.tableau.k == k
        assert all(tb.column_gap(c) == 1 for c in sg.tableau.columns)
        assert tb.reduce(sg.tableau) == T
    with pytest.raises(TableauError):
        tb.small_gap_form(P("123"), 7)


def test_small_gap_data():
    sg = tb.small_gap_form(P("(1,3 / 2,5 / 4,6)"), 6)
    assert sg.i == (1, 3) and sg.j == (3, 4)
    got = sorted(tuple(x for x in range(sg.i[sg.w[a]], sg.i[sg.w[a]] + 4) if x != sg.j[a])
                 for a in range(2))
    assert got == sorted(sg.tableau.columns)


def test_dominance():
    T = P("(1,3 / 2,5 / 4,6)")
    assert tb.dominance_leq(T, T)
    S = P("(1,4 / 2,5 / 3,6)")
    assert tb.dominance_leq(S, T) and not tb.dominance_leq(T, S)
    rng = random.Random(5)
    for _ in range(300):
        A, B = random_tableau(rng, kmax=2), random_tableau(rng, kmax=2)
        if A != B and tb.dominance_leq(A, B):
            assert not tb.dominance_leq(B, A)


def test_top_example():
    exp = tb.parse_monomial_sum("P124P356 - P123P456")
    assert str(tb.top_of(exp)) == "(1,3 / 2,5 / 4,6)"
    with pytest.raises(TableauError):
        tb.top_of([])


def test_ch_expand():
    assert tb.ch_expand(P("124"), 6) == [(1, P("124"))]
    exp = tb.ch_expand(P("(1,3 / 2,5 / 4,6)"), 6)
    assert sorted(exp) == sorted(tb.parse_monomial_sum("P124P356 - P123P456"))
    with pytest.raises(TableauError, match="KL regime"):
        tb.ch_expand(P("157"), 7)


def test_ch_expand_term_bound_and_top():
    import math
    for typ, m in (("E6", 7), ("E7", 8), ("E8", 8)):
        for T in tb.dictionary(typ).by_diag.values():
            if tb.gap_weight(T) > 3:
                with pytest.raises(TableauError):
                    tb.ch_expand(T, m)
                continue
            exp = tb.ch_expand(T, m)
            sg = tb.small_gap_form(T, m).tableau
            assert 0 < len(exp) <= math.factorial(sg.k)
            if T.k <= 2:
                assert tb.top_of(exp) == sg


def test_three_column_e8_entries_are_beyond_k3():
    threes = [T for T in tb.dictionary("E8").by_diag.values() if T.k == 3]
    assert len(threes) == 24
    assert all(tb.gap_weight(T) >= 4 for T in threes)


@pytest.mark.parametrize("typ,size,ranks", [("E6", 42, {1: 28, 2: 14}),
                                            ("E7", 70, {1: 33, 2: 29, 3: 8}),
                                            ("E8", 128, {1: 48, 2: 56, 3: 24})])
def test_dictionary_sizes(typ, size, ranks):
    D = tb.dictionary(typ)
    assert len(D) == size and D.rank_distribution() == ranks
    assert len(D.by_tab) == size


def test_dictionary_examples():
    D = tb.dictionary("E6")
    assert str(D.tableau("[1,6]_R")) == "(3,4,6)"
    assert str(D.tableau("[2,4]_G")) == "(1,4,7)"
    assert tb.tableau_tau("E6", P("346")) == P("245")
    with pytest.raises(TableauError):
        D.diagonal(P("123"))
    assert {v for v in D.provenance.values()} == {"printed list", "green rule"}


def test_green_rule_matches_figure():
    fig, _ = tb.figure_dictionary("E6")
    D = tb.dictionary("E6")
    assert fig == D.by_diag


def test_tau_equivariance():
    for typ in ("E6", "E7", "E8"):
        D = tb.dictionary(typ)
        q = D.quiver
        for d, T in D.by_diag.items():
            assert tb.tableau_tau(typ, T) == D.by_diag[q.labels[q.tau[q.vertex(d)]]]


@pytest.mark.parametrize("typ", ["E6", "E7", "E8"])
def test_mesh_sums(typ):
    rep = tb.mesh_sum_check(typ)
    assert rep["ok"] and rep["passed"] == rep["meshes"] > 0


def test_mesh_example():
    D = tb.dictionary("E6")
    q = D.quiver
    y = D.diagonal(P("(1,3 / 4,5 / 6,7)"))
    v = q.vertex(y)
    assert D.by_diag[q.labels[q.tau[v]]] == P("246")
    mids = {D.by_diag[q.labels[z]] for z in q.pred(v)}
    assert mids == {P("346"), P("(1,2 / 4,5 / 6,7)")}


def test_tableau_mutation_at_initial_seed():
    from mclusters import grassmannian as gr
    mats = gr.default_matrices("E6", twisted=False)
    s = gr.initial_seed("E6", mats)
    D = tb.dictionary("E6")
    labels = {tb.reduce(t) for t in D.by_diag.values()}
    for k in s.mutable:
        t = gr.mutate_seed(s, k)
        assert tb.reduce(t.labels[k]) in labels


def test_dictionary_json_round_trip():
    import json
    D = tb.dictionary("E7")
    d = json.loads(json.dumps(D.to_json()))
    assert len(d["entries"]) == 70
    back = {e["diagonal"]: Tableau.from_json(e["tableau"]) for e in d["entries"]}
    assert back["[10,6]_R"] == D.tableau("[10,6]_R")
