"""m-cluster tilting objects as maximal cliques of the compatibility graph."""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .roots import COXETER, EXPONENTS


class TheoryViolation(RuntimeError):
    pass


def count_formula(typ: str, m: int) -> int:
    """prod_i (m h + e_i + 1) / (e_i + 1), exact."""
    h = COXETER[typ]
    num = den = 1
    for e in EXPONENTS[typ]:
        num *= m * h + e + 1
        den *= e + 1
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("count formula is not integral")
    return q


@dataclass
class CompatGraph:
    """Objects 0..k-1 with adjacency bitsets (bit j of adj[i]: i, j compatible)."""

    names: list
    adj: list[int]
    n: int  # cluster size

    @classmethod
    def from_degree(cls, names, degree, n):
        k = len(names)
        adj = [0] * k
        for i in range(k):
            bits = 0
            for j in range(k):
                if i != j and degree[i][j] == 0 and degree[j][i] == 0:
                    bits |= 1 << j
            adj[i] = bits
        return cls(list(names), adj, n)

    @classmethod
    def from_predicate(cls, names, ok, n):
        k = len(names)
        adj = [0] * k
        for i in range(k):
            for j in range(i + 1, k):
                if ok(i, j):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return cls(list(names), adj, n)

    def __len__(self):
        return len(self.adj)

    def compatible(self, i, j) -> bool:
        return bool(self.adj[i] >> j & 1)

    def is_symmetric(self) -> bool:
        return all(self.compatible(j, i) == self.compatible(i, j)
                   for i in range(len(self)) for j in range(len(self)))


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _bk(adj, R: list, P: int, X: int, n: int, out):
    if not P and not X:
        if len(R) != n:
            raise TheoryViolation(f"maximal compatible set of size {len(R)} != {n}: {sorted(R)}")
        out(R)
        return
    # pivot maximizing |P & N(u)|
    PX = P | X
    best, u = -1, 0
    for w in _bits(PX):
        c = bin(P & adj[w]).count("1")
        if c > best:
            best, u = c, w
    for v in _bits(P & ~adj[u]):
        R.append(v)
        _bk(adj, R, P & adj[v], X & adj[v], n, out)
        R.pop()
        P &= ~(1 << v)
        X |= 1 << v


def _partition_count(args):
    adj, n, v, collect = args
    k = len(adj)
    lower = (1 << v) - 1
    P = adj[v] & ~lower
    X = adj[v] & lower
    found = []
    cnt = [0]

    def out(R):
        cnt[0] += 1
        if collect:
            found.append(tuple(sorted(R)))

    _bk(adj, [v], P, X, n, out)
    return v, cnt[0], found


def enumerate_clusters(graph: CompatGraph, workers: int | None = None,
                       collect: bool = True, first_vertices=None):
    """All maximal cliques; each must have exactly graph.n elements.

    The search is partitioned by the smallest vertex of the clique, so
    partitions can run in parallel; results are merged in vertex order.
    Returns (count, clusters or None).
    """
    k = len(graph)
    verts = list(range(k)) if first_vertices is None else list(first_vertices)
    workers = _workers(workers)
    jobs = [(graph.adj, graph.n, v, collect) for v in verts]
    results = []
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_partition_count, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_partition_count(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    total = sum(r[1] for r in results)
    clusters = None
    if collect:
        clusters = []
        for r in results:
            clusters.extend(sorted(r[2]))
    return total, clusters


def iter_clusters(graph: CompatGraph) -> Iterator[tuple]:
    """Streaming deterministic enumeration (single process)."""
    for v in range(len(graph)):
        buf = []
        lower = (1 << v) - 1
        _bk(graph.adj, [v], graph.adj[v] & ~lower, graph.adj[v] & lower, graph.n,
            lambda R: buf.append(tuple(sorted(R))))
        yield from sorted(buf)


def count_containing(graph: CompatGraph, v: int) -> int:
    """Number of clusters containing vertex v."""
    cnt = [0]

    def out(R):
        cnt[0] += 1

    _bk(graph.adj, [v], graph.adj[v], 0, graph.n, out)
    return cnt[0]


def orbit_weighted_count(graph: CompatGraph, orbits: list[list[int]], sample=None,
                         seed: int = 0) -> dict:
    """Count clusters via sum_v #clusters containing v = n * total.

    Counts on one representative per translation orbit suffice since the
    translation permutes clusters.  With ``sample`` only that many orbits are
    evaluated exactly and the rest are reported as unevaluated; the result
    then carries a lower bound instead of a total.
    """
    rng = random.Random(seed)
    idx = list(range(len(orbits)))
    if sample is not None and sample < len(orbits):
        idx = sorted(rng.sample(idx, sample))
    s = 0
    per = {}
    for i in idx:
        c = count_containing(graph, orbits[i][0])
        per[i] = c
        s += c * len(orbits[i])
    full = len(idx) == len(orbits)
    res = {"evaluated_orbits": len(idx), "orbits": len(orbits), "per_orbit": per}
    if full:
        if s % graph.n:
            raise TheoryViolation("orbit-weighted sum not divisible by n")
        res["total"] = s // graph.n
    else:
        # each evaluated orbit contributes clusters through its members;
        # a cluster has at most n members, hence the bound
        res["lower_bound"] = -(-s // graph.n)
    return res


def _workers(w):
    if w is not None:
        return max(1, w)
    env = os.environ.get("MCLUSTERS_THREADS")
    if env:
        return max(1, int(env))
    return 1


def complements(graph: CompatGraph, partial) -> list[int]:
    """All objects completing an (n-1)-element compatible set to a cluster."""
    mask = (1 << len(graph)) - 1
    for v in partial:
        mask &= graph.adj[v]
    out = [v for v in _bits(mask)]
    # a completion must itself give a maximal set; with n-1 given that is
    # automatic when maximal cliques all have size n
    return sorted(out)


def mutate(graph: CompatGraph, cluster, k, target=None):
    """Replace object k of a cluster by a complement."""
    cl = sorted(cluster)
    if k not in cl:
        raise ValueError("object not in cluster")
    rest = [v for v in cl if v != k]
    comps = complements(graph, rest)
    if target is not None:
        if target not in comps or target == k:
            raise ValueError("target is not a complement")
        new = target
    else:
        others = [c for c in comps if c != k]
        if not others:
            raise ValueError("no other complement")
        # next in cyclic order after k
        bigger = [c for c in others if c > k]
        new = bigger[0] if bigger else others[0]
    return tuple(sorted(rest + [new]))
