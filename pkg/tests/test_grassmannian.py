import itertools
import random
from fractions import Fraction

import pytest

from mclusters import grassmannian as gr
from mclusters import tableaux as tb
from mclusters.linalg import det


def test_pluecker_basics():
    p = gr.ExactMatrix.of([[1, 0, 0, 2], [0, 1, 0, 3], [0, 0, 1, 5]])
    assert gr.pluecker(p, (1, 2, 3)) == 1
    with pytest.raises(ValueError):
        gr.pluecker(p, (2, 1, 3))
    with pytest.raises(ValueError):
        gr.pluecker(p, (1, 2, 9))


def test_three_term_relation():
    rng = random.Random(3)
    for _ in range(20):
        p = gr.ExactMatrix.of([[rng.randint(-9, 9) for _ in range(4)] for _ in range(2)])
        P = lambda *i: gr.pluecker(p, i)
        assert P(1, 2) * P(3, 4) - P(1, 3) * P(2, 4) + P(1, 4) * P(2, 3) == 0


def test_cross_product():
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert gr.cross_product(e[:2]) == (0, 0, 1)
    rng = random.Random(4)
    rv = lambda: tuple(Fraction(rng.randint(-9, 9)) for _ in range(3))
    a, b = rv(), rv()
    c = gr.cross_product([a, b])
    for _ in range(20):
        v = rv()
        assert sum(x * y for x, y in zip(c, v)) == det([[a[i], b[i], v[i]] for i in range(3)])
    a2, s = rv(), Fraction(rng.randint(-5, 5))
    lin = gr.cross_product([tuple(x + s * y for x, y in zip(a, a2)), b])
    assert lin == tuple(x + s * y for x, y in zip(c, gr.cross_product([a2, b])))
    with pytest.raises(ValueError):
        gr.cross_product([(1, 2), (3, 4)])


def test_vandermonde_is_totally_positive():
    p = gr.vandermonde(3, 8)
    assert all(gr.pluecker(p, c) > 0 for c in itertools.combinations(range(1, 9), 3))


def test_twist_of_frozen_is_frozen_monomial():
    mats = gr.default_matrices("E8", twisted=False)
    fro = {"P" + "".join(map(str, c)): [gr.pluecker(p, c) for p in mats]
           for c in gr.boundary_frozen(3, 8)}
    tw = [gr.ms_twist(p) for p in mats]
    for c in gr.boundary_frozen(3, 8):
        vals = [gr.pluecker(t, c) for t in tw]
        assert all(v != 0 for v in vals)
        e = gr.frozen_factor_match(vals, [1] * len(mats), fro)
        assert e is not None and sum(e.values()) == 2


def test_frozen_factor_match_trivial():
    fro = {"a": [2, 3], "b": [5, 7]}
    assert gr.frozen_factor_match([11, 13], [11, 13], fro) == {"a": 0, "b": 0}
    assert gr.frozen_factor_match([22, 39], [11, 13], fro) == {"a": 1, "b": 0}
    assert gr.frozen_factor_match([11 * 25, 13 * 49], [11, 13], fro) == {"a": 0, "b": 2}
    assert gr.frozen_factor_match([17, 13], [11, 13], fro) is None
    assert gr.frozen_factor_match([-22, 39], [11, 13], fro) is None


@pytest.mark.parametrize("typ,frozen,mutable", [("E6", 7, 6), ("E7", 9, 7), ("E8", 8, 8)])
def test_initial_seeds(typ, frozen, mutable):
    s = gr.initial_seed(typ, gr.default_matrices(typ, twisted=False))
    assert len(s.frozen) == frozen and len(s.mutable) == mutable
    assert all(sum(row[i] for row in s.B) == -sum(s.B[i]) for i in range(len(s.B)))
    if typ == "E7":
        assert {s.names[v] for v in s.frozen} == {
            (1, 2, 3), (1, 2, 8), (1, 7, 8), (2, 3, 4), (3, 4, 5), (4, 5, 6), (5, 6, 7),
            (6, 7, 8), (1, 6, 7)}


def test_mutation_exchange_relation():
    mats = gr.default_matrices("E6", twisted=False)
    s = gr.initial_seed("E6", mats)
    for k in s.mutable:
        t = gr.mutate_seed(s, k)
        plus = [1] * len(mats)
        minus = [1] * len(mats)
        for i in range(len(s.B)):
            if s.B[i][k] > 0:
                plus = [x * y ** s.B[i][k] for x, y in zip(plus, s.values[i])]
            if s.B[k][i] > 0:
                minus = [x * y ** s.B[k][i] for x, y in zip(minus, s.values[i])]
        assert all(a * b == c + d for a, b, c, d in zip(s.values[k], t.values[k], plus, minus))
        back = gr.mutate_seed(t, k)
        assert back.values == s.values and back.B == s.B
    with pytest.raises(gr.GrassmannianError):
        gr.mutate_seed(s, next(iter(s.frozen)))


def test_first_mutation_is_a_pluecker_coordinate():
    mats = gr.default_matrices("E6", twisted=False)
    s = gr.initial_seed("E6", mats)
    k = s.names.index((1, 3, 4))
    t = gr.mutate_seed(s, k)
    assert t.values[k] == tuple(gr.pluecker(p, (2, 4, 5)) for p in mats)
    assert t.labels[k] == tb.Tableau.parse("245")


@pytest.mark.parametrize("typ,seeds,labels", [("E6", 833, 42), ("E7", 4160, 70)])
def test_exchange_closure(typ, seeds, labels):
    c = gr.exchange_closure(typ, gr.default_matrices(typ, twisted=False))
    assert c.seeds == seeds and len(c.variables) == labels
    assert c.label_conflicts == []
    assert c.labels() == {tb.reduce(t) for t in tb.dictionary(typ).by_diag.values()}


def test_ch_value_of_gap_two_column():
    mats = gr.default_matrices("E6", twisted=False)
    v = gr.ch_values(tb.Tableau.parse("135"), mats, 7)
    assert v == tuple(gr.pluecker(p, (1, 3, 5)) * gr.pluecker(p, (2, 3, 4)) for p in mats)


def test_ch_matches_seed_values():
    rep = gr.ch_seed_consistency("E6")
    assert rep["ok"] and rep["checked"] == 31


def test_verify_tau_e6():
    rep = gr.verify_tau("E6")
    assert rep["matched"] == 42 and rep["failed"] == 0
    first = next(p for p in rep["pairs"] if p["T"] == "(3,4,6)")
    assert first["tauT"] == "(2,4,5)" and first["exponents"] == {"P123": 1}
    assert "mod m" in rep["header"]


def test_verify_tau_e7_reports_e8_translation():
    rep = gr.verify_tau("E7")
    assert rep["matched_against_E8_translation"] == 70
    assert rep["matched"] + rep["failed"] == 70
