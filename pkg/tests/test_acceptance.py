"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE  # noqa: E402

from mclusters import ar_category as ar  # noqa: E402
from mclusters import diagonal_model as dm  # noqa: E402
from mclusters import grassmannian as gr  # noqa: E402
from mclusters import tableaux as tb  # noqa: E402
from mclusters import tilting  # noqa: E402
from mclusters.model import ClusterModel, witness_isomorphism  # noqa: E402
from mclusters.quiver_core import (  # noqa: E402
    TreeShape, build_quotient_quiver, check_stability, find_embedding, m_power,
    vertex_count_formula,
)


def report(num, title, checks):
    """checks: list of (ok, description). Records and prints the line, then asserts."""
    bad = [d for ok, d in checks if not ok]
    ok = not bad
    detail = "; ".join(bad) if bad else f"{len(checks)} checks"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title} ({detail})"
    ACCEPTANCE[num] = (ok, line)
    print(line)
    assert ok, line


def timed(fn):
    t = time.perf_counter()
    val = fn()
    return val, time.perf_counter() - t


# 1 ---------------------------------------------------------------------
def test_criterion_01_count_formula():
    table = {("F4", 2): 780, ("E6", 2): 16588, ("E7", 2): 144210, ("E8", 2): 15209220,
             ("F4", 1): 105, ("E6", 1): 833, ("E7", 1): 4160, ("E8", 1): 25080}
    checks = []
    for (typ, m), want in table.items():
        got, dt = timed(lambda: tilting.count_formula(typ, m))
        checks.append((got == want, f"({typ},{m}) = {got}, expected {want}"))
        checks.append((dt < 1e-3, f"({typ},{m}) took {dt * 1e3:.3f} ms"))
    report(1, "counting formula vs table", checks)


# 2 ---------------------------------------------------------------------
def test_criterion_02_enumeration():
    limits = [("F4", 1, 1), ("F4", 2, 1), ("E6", 1, 30), ("E6", 2, 30), ("E7", 1, 600),
              ("E7", 2, 600), ("E8", 1, 300)]
    checks = []
    for typ, m, lim in limits:
        def go():
            return tilting.enumerate_clusters(ClusterModel(typ, m).graph, collect=False)[0]
        n, dt = timed(go)
        want = tilting.count_formula(typ, m)
        checks.append((n == want, f"{typ} m={m}: {n} vs {want}"))
        checks.append((dt < lim, f"{typ} m={m}: {dt:.1f}s over {lim}s"))
    # E8 m=2: partition-sampled lower bound, then the full count
    M = ClusterModel("E8", 2)
    want = tilting.count_formula("E8", 2)
    r = tilting.orbit_weighted_count(M.graph, M.orbits(), sample=2, seed=0)
    checks.append((r["lower_bound"] <= want, f"E8 m=2 lower bound {r['lower_bound']} > {want}"))
    n, _ = tilting.enumerate_clusters(M.graph, collect=False)
    checks.append((n == want, f"E8 m=2: {n} vs {want}"))
    report(2, "enumeration vs formula", checks)


# 3 ---------------------------------------------------------------------
def test_criterion_03_structural_counts():
    checks = []
    for typ, n, a in (("E6", 6, 6), ("E7", 7, 9), ("E8", 8, 15)):
        for m in (1, 2, 3):
            q = ar.CategorySpec(typ, m).quiver
            ds, qd = dm.model_quiver(typ, m)
            want = n * (a * m + 1)
            checks.append((len(q) == want == vertex_count_formula(typ, m),
                           f"{typ} m={m} quotient {len(q)} vs {want}"))
            checks.append((len(qd) == want, f"{typ} m={m} diagonals {len(qd)} vs {want}"))
    spec = ar.CategorySpec("E6", 2)
    labs = ar.root_labels(spec)
    colored = sum(1 for lab in labs.values() if lab.kind == "positive")
    checks.append((len(spec.quiver) == 78 == colored + 6,
                   f"E6 m=2: {len(spec.quiver)} objects, {colored}+6 colored roots"))
    report(3, "structural counts", checks)


# 4 ---------------------------------------------------------------------
def test_criterion_04_model_equivalence(tmp_path):
    import json
    checks = []
    for typ in ("E6", "E7", "E8", "F4"):
        for m in (1, 2):
            M = ClusterModel(typ, m)
            try:
                w = witness_isomorphism(M)
            except dm.ModelError as e:
                checks.append((False, f"{typ} m={m}: {e}"))
                continue
            (tmp_path / f"witness_{typ}_{m}.json").write_text(json.dumps(w))
            anchors_ok = True
            if typ != "F4":
                aobj = ar.anchor_objects(M.spec)
                n = len(M.anchor)
                anchors_ok = all(M.bijection[d] == aobj[n - k] for k, d in enumerate(M.anchor))
            checks.append((len(w) == len(M.objects) and anchors_ok,
                           f"{typ} m={m}: witness size {len(w)}"))
    report(4, "diagonal model isomorphic to AR quotient", checks)


# 5 ---------------------------------------------------------------------
def test_criterion_05_m_power_embedding():
    m = 2
    checks = []
    bullets = [("E6", (2 * m - 1, 2 * m, 2 * m), 6 * m + 1, f"rho^{m}", "tau0"),
               ("E7", (2 * m - 1, 2 * m, 3 * m), 9 * m + 1, "none", "tau"),
               ("E8", (2 * m - 1, 2 * m, 4 * m), 15 * m + 1, "none", "tau")]
    for typ, (r, s, t), N, tw, tr in bullets:
        big = m_power(build_quotient_quiver(TreeShape(r, s, t), N, tw), m)
        f = find_embedding(ar.CategorySpec(typ, m).quiver, big)
        checks.append((f is not None, f"{typ}: no embedding into the AR-side m-power"))
        # diagonal side: the long leg carries the red offsets
        bigd = m_power(dm.build_diagonal_quiver(dm.build_P(r, t, s, N - 3), tr, 1), m)
        fd = find_embedding(dm.model_quiver(typ, m)[1], bigd)
        checks.append((fd is not None, f"{typ}: no embedding into the diagonal m-power"))
    report(5, "m-power embedding", checks)


# 6 ---------------------------------------------------------------------
def test_criterion_06_calabi_yau():
    checks = []
    for typ, m in (("E6", 1), ("E6", 2), ("E7", 1), ("E7", 2), ("E8", 1)):
        spec = ar.CategorySpec(typ, m)
        bad = ar.check_cy(spec)
        pairs = len(spec.objects) ** 2
        checks.append((not bad and len(ar.ext_table(spec)) == pairs,
                       f"{typ} m={m}: {len(bad)} violations"))
    report(6, "Calabi-Yau symmetry", checks)


# 7 ---------------------------------------------------------------------
def test_criterion_07_complements():
    checks = []
    for typ, m in (("F4", 1), ("F4", 2), ("E6", 1), ("E6", 2)):
        M = ClusterModel(typ, m)
        _, cl = tilting.enumerate_clusters(M.graph)
        rep = M.complement_report(cl)
        checks.append((rep["ok"], f"{typ} m={m}: histogram {rep['histogram']}"))
    M = ClusterModel("E7", 2)
    _, cl = tilting.enumerate_clusters(M.graph)
    rep = M.complement_report(cl, limit=10000, seed=0)
    checks.append((rep["ok"] and rep["clusters"] >= 10000,
                   f"E7 m=2 sample: {rep['clusters']} clusters, {rep['histogram']}"))
    report(7, "complement property", checks)


# 8 ---------------------------------------------------------------------
def test_criterion_08_dictionary_suite():
    want = {"E6": (42, {1: 28, 2: 14}), "E7": (70, {1: 33, 2: 29, 3: 8}),
            "E8": (128, {1: 48, 2: 56, 3: 24})}
    checks = []
    for typ, (size, ranks) in want.items():
        D = tb.dictionary(typ)
        checks.append((len(D) == size and D.rank_distribution() == ranks,
                       f"{typ}: size {len(D)}, ranks {D.rank_distribution()}"))
        mesh = tb.mesh_sum_check(typ)
        checks.append((mesh["ok"] and mesh["passed"] == mesh["meshes"],
                       f"{typ}: meshes {mesh['passed']}/{mesh['meshes']}"))
        cl = gr.exchange_closure(typ, gr.default_matrices(typ, twisted=False))
        labels = {tb.reduce(t) for t in D.by_diag.values()}
        checks.append((cl.labels() == labels and not cl.label_conflicts,
                       f"{typ}: closure gives {len(cl.labels())} labels"))
    report(8, "dictionary suite", checks)


# 9 ---------------------------------------------------------------------
def test_criterion_09_tableau_identities():
    checks = []
    top = tb.top_of(tb.parse_monomial_sum("P124P356 - P123P456"))
    checks.append((str(top) == "(1,3 / 2,5 / 4,6)", f"top gives {top}"))
    printed = tb.printed_e6_lists()
    red = {k: v for k, v in printed.items() if k.endswith("_R")}
    blue = {k: v for k, v in printed.items() if k.endswith("_B")}
    g = tb.green_rule(2, red, blue, 7)
    checks.append((str(g["[2,4]_G"]) == "(1,4,7)", f"green rule gives {g['[2,4]_G']}"))
    rng = random.Random(2024)

    def rand():
        cols = [tuple(sorted(rng.sample(range(1, 9), 3))) for _ in range(rng.randint(0, 4))]
        return tb.union_all([tb.Tableau.column(c) for c in cols], 3)

    fails = 0
    cases = 1000
    for _ in range(cases):
        S, T = rand(), rand()
        U = tb.row_union(S, T)
        R = tb.reduce(U)
        ok = (U.is_ssyt() and U == tb.row_union(T, S) and tb.row_delete(S, U) == T
              and tb.row_delete(T, U) == S and tb.reduce(R) == R
              and tb.reduce(tb.row_union(U, tb.trivial_column(rng.randint(1, 6), 3))) == R)
        fails += not ok
    checks.append((fails == 0, f"{fails}/{cases} property cases failed"))
    report(9, "tableau identities", checks)


# 10 --------------------------------------------------------------------
def test_criterion_10_twist():
    t0 = time.perf_counter()
    checks = []
    ctx6 = gr.twist_context("E6", seed=0, count=2)
    checks.append((len(ctx6.plain) - 1 >= 2, "fewer than two random integer matrices"))
    rep = gr.verify_tau("E6", ctx=ctx6)
    first = next(p for p in rep["pairs"] if p["T"] == "(3,4,6)")
    checks.append((first["tauT"] == "(2,4,5)" and first["match"], "tau(3,4,6) = (2,4,5) pair"))
    checks.append((rep["failed"] == 0 and rep["matched"] == 42,
                   f"E6: {rep['matched']}/42 pairs matched"))
    for typ in ("E7", "E8"):
        r = gr.verify_tau(typ, sample=50, seed=1)
        checks.append((r["failed"] == 0 and r["matched"] >= 50,
                       f"{typ}: {r['matched']}/{r['matched'] + r['failed']} sampled pairs matched"))
    dt = time.perf_counter() - t0
    checks.append((dt < 300, f"took {dt:.0f}s"))
    report(10, "twist verification", checks)


# 11 --------------------------------------------------------------------
def test_criterion_11_hammock_oracle():
    checks = []
    rng = random.Random(99)
    for typ in ("E6", "E7", "E8"):
        spec = ar.CategorySpec(typ, 1)
        bad = 0
        for _ in range(500):
            X = (rng.randint(-5, 5), rng.randrange(spec.n))
            Y = (X[0] + rng.randint(-3, spec.h + 4), rng.randrange(spec.n))
            bad += ar.hom_dim_cover(spec, X, Y) != ar.hom_oracle_dim(spec, X, Y)
        checks.append((bad == 0, f"{typ}: {bad}/500 disagreements"))
    report(11, "hammock oracle", checks)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
