import random

import pytest

from mclusters import ar_category as ar
from mclusters.roots import positive_roots


@pytest.mark.parametrize("typ,count", [("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24)])
def test_positive_root_counts(typ, count):
    assert len(positive_roots(typ)) == count


def test_period_and_functors():
    spec = ar.CategorySpec("E6", 2)
    assert spec.period == 13
    v = (3, 1)
    assert spec.reduce(spec.F(v)) == spec.reduce(v)
    assert spec.sigma(spec.sigma(v, 1), -1) == v
    with pytest.raises(ar.CategoryError):
        ar.CategorySpec("G2", 1)
    with pytest.raises(ar.CategoryError):
        ar.CategorySpec("E6", 0)


def test_hom_basics():
    spec = ar.CategorySpec("E7", 1)
    X = (0, 3)
    assert ar.hom_dim_cover(spec, X, X) == 1
    assert ar.hom_dim_cover(spec, X, (-1, 3)) == 0
    with pytest.raises(ar.CategoryError):
        ar.hom_dim_cover(spec, X, X, window=3)


@pytest.mark.parametrize("typ", ["E6", "E7", "E8"])
def test_knitting_matches_oracle(typ):
    spec = ar.CategorySpec(typ, 1)
    rng = random.Random(7)
    for _ in range(150):
        X = (rng.randint(-3, 3), rng.randrange(spec.n))
        Y = (X[0] + rng.randint(-2, spec.h + 3), rng.randrange(spec.n))
        assert ar.hom_dim_cover(spec, X, Y) == ar.hom_oracle_dim(spec, X, Y)


def test_ext_profile_self_vanishing():
    spec = ar.CategorySpec("E6", 2)
    for X in spec.objects:
        assert ar.ext_profile(spec, X, X).total == 0


def test_ext_profile_shape_and_cy():
    spec = ar.CategorySpec("E6", 1)
    p = ar.ext_profile(spec, spec.objects[0], spec.objects[5])
    assert len(p.dims) == 1 and p[1] == p.total
    assert ar.check_cy(spec) == []


def test_tau_neighbours_have_ext():
    # Ext^1(X, tau X) != 0 for m = 1
    spec = ar.CategorySpec("E8", 1)
    X = (4, 2)
    assert ar.compatibility_degree(spec, X, spec.reduce((3, 2))) > 0


@pytest.mark.parametrize("typ,m", [("E6", 1), ("E6", 2), ("E7", 1), ("E8", 1)])
def test_root_labels(typ, m):
    spec = ar.CategorySpec(typ, m)
    assert ar.check_root_labels(spec) == []
    labs = ar.root_labels(spec)
    assert len(labs) == len(spec.objects)
    negs = [l for l in labs.values() if l.kind == "negative"]
    assert len(negs) == spec.n


def test_anchor_objects_are_a_cluster():
    spec = ar.CategorySpec("E6", 1)
    objs = list(ar.anchor_objects(spec).values())
    assert all(ar.compatibility_degree(spec, a, b) == 0 for a in objs for b in objs)


def test_figure_position_parity():
    spec = ar.CategorySpec("E6", 1)
    with pytest.raises(ar.CategoryError):
        ar.figure_position(spec, 1, 4)  # branch node has even depth offset
    assert ar.figure_position(spec, 2, 4) == (0, 0)
