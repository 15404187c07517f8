"""Exact Pluecker evaluation, Grassmannian seeds and the Marsh-Scott twist.

Values are kept per registered test matrix, so a cluster variable is a
tuple of exact rationals.  Two variables agree when their tuples agree on
every matrix; with random integer matrices this is a reliable identity test.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import tableaux as tb
from .linalg import det, rref
from .tableaux import Tableau


class GrassmannianError(RuntimeError):
    pass


class Degenerate(GrassmannianError):
    """A value that has to be nonzero vanished; resample the matrices."""


# ------------------------------------------------------------- matrices

@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple  # n tuples of Fractions

    @classmethod
    def of(cls, rows) -> "ExactMatrix":
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        return cls(rows)

    @property
    def n(self):
        return len(self.rows)

    @property
    def m(self):
        return len(self.rows[0])

    def col(self, j: int) -> tuple:
        """Column j, 1-based."""
        return tuple(r[j - 1] for r in self.rows)

    @classmethod
    def from_columns(cls, cols) -> "ExactMatrix":
        return cls.of(list(zip(*cols)))


def pluecker(p: ExactMatrix, idx) -> Fraction:
    idx = tuple(idx)
    if len(idx) != p.n or any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"Pluecker index {idx} must be strictly increasing of length {p.n}")
    if idx[0] < 1 or idx[-1] > p.m:
        raise ValueError(f"Pluecker index {idx} out of range")
    return det([[r[j - 1] for j in idx] for r in p.rows])


def random_matrix(n: int, m: int, rng: random.Random, lo: int = -9, hi: int = 9,
                  attempts: int = 50) -> ExactMatrix:
    """Integer matrix with every maximal minor nonzero."""
    for _ in range(attempts):
        p = ExactMatrix.of([[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)])
        if all(pluecker(p, c) != 0 for c in itertools.combinations(range(1, m + 1), n)):
            return p
    raise Degenerate("could not sample a generic matrix")


def vandermonde(n: int, m: int) -> ExactMatrix:
    """Totally positive: rows x^0 .. x^(n-1) at x = 1..m."""
    return ExactMatrix.of([[x ** i for x in range(1, m + 1)] for i in range(n)])


def cross_product(vs) -> tuple:
    """c with c . v = det(v_1, ..., v_{n-1}, v) for all v (vectors as columns)."""
    vs = [tuple(Fraction(x) for x in v) for v in vs]
    n = len(vs) + 1
    if any(len(v) != n for v in vs):
        raise ValueError("cross product needs n-1 vectors of length n")
    out = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols = vs + [e]
        out.append(det([[c[i] for c in cols] for i in range(n)]))
    return tuple(out)


def twist_sign(i: int, n: int) -> int:
    return (-1) ** (i * (n - i)) if i <= n - 1 else 1


def ms_twist(p: ExactMatrix) -> ExactMatrix:
    """Column i is eps_i times p_{i-n+1} x ... x p_{i-1}, indices mod m."""
    n, m = p.n, p.m
    cols = []
    for i in range(1, m + 1):
        vs = [p.col((i - s - 1) % m + 1) for s in range(n - 1, 0, -1)]
        cols.append(tuple(twist_sign(i, n) * x for x in cross_product(vs)))
    return ExactMatrix.from_columns(cols)


# ------------------------------------------------------- frozen matching

def _factor(x: int, primes: set) -> dict:
    out = {}
    d = 2
    while d * d <= x:
        while x % d == 0:
            out[d] = out.get(d, 0) + 1
            x //= d
        d += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    primes.update(out)
    return out


def _valuation(q: Fraction, p: int) -> int:
    v = 0
    a, b = abs(q.numerator), q.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def frozen_factor_match(value_a, value_b, frozen: dict, bound: int = 4):
    """Integer e with a = b * prod f^e_f on every matrix, or None.

    ``value_a``/``value_b`` are sequences over the registered matrices and
    ``frozen`` maps a name to its sequence of values.  Prime valuations give
    a linear system; free directions (if any) are searched within ``bound``.
    """
    names = sorted(frozen)
    nm = len(value_a)
    ratios = []
    for a, b in zip(value_a, value_b):
        if a == 0 or b == 0:
            raise Degenerate("zero value in frozen_factor_match")
        ratios.append(Fraction(a) / Fraction(b))
    primes: set = set()
    for f in names:
        for v in frozen[f]:
            if v == 0:
                raise Degenerate("zero frozen value")
            if Fraction(v).denominator != 1:
                _factor(Fraction(v).denominator, primes)
            _factor(abs(Fraction(v).numerator), primes)
    # the ratio must be a unit times primes from the frozen values
    for r in ratios:
        for part in (abs(r.numerator), r.denominator):
            for p in primes:
                while part % p == 0:
                    part //= p
            if part != 1:
                return None
    primes = sorted(primes)
    rows = []
    for j in range(nm):
        for p in primes:
            rows.append([_valuation(Fraction(frozen[f][j]), p) for f in names]
                        + [_valuation(ratios[j], p)])
    M, piv = rref(rows) if rows else ([], [])
    k = len(names)
    if k in piv:
        return None
    free = [c for c in range(k) if c not in piv]

    def solve(freevals):
        e = [Fraction(0)] * k
        for c, v in zip(free, freevals):
            e[c] = Fraction(v)
        for r, c in enumerate(piv):
            e[c] = M[r][k] - sum(M[r][f] * e[f] for f in free)
        if any(x.denominator != 1 for x in e):
            return None
        e = [int(x) for x in e]
        for j in range(nm):
            prod = Fraction(1)
            for f, x in zip(names, e):
                prod *= Fraction(frozen[f][j]) ** x
            if ratios[j] != prod:
                return None
        return dict(zip(names, e))

    if not free:
        return solve([])
    hits = [s for s in (solve(fv) for fv in itertools.product(range(-bound, bound + 1),
                                                            repeat=len(free))) if s]
    if len(hits) == 1:
        return hits[0]
    if not hits:
        return None
    # several solutions: the matrices do not pin the exponents
    return min(hits, key=lambda h: sum(abs(x) for x in h.values()))


# ----------------------------------------------------------------- seeds

GR_SHAPE = {"E6": (3, 7), "E7": (3, 8), "E8": (3, 8)}

_GRID = {
    (0, 0): (1, 2, 3), (1, 0): (1, 2, 4), (2, 0): (1, 2, 5), (3, 0): (1, 2, 6),
    (4, 0): (1, 2, 7), (5, 0): (1, 2, 8),
    (1, 1): (1, 3, 4), (2, 1): (1, 4, 5), (3, 1): (1, 5, 6), (4, 1): (1, 6, 7),
    (5, 1): (1, 7, 8),
    (1, 2): (2, 3, 4), (2, 2): (3, 4, 5), (3, 2): (4, 5, 6), (4, 2): (5, 6, 7),
    (5, 2): (6, 7, 8),
}
_VERT = [((r, c), (r - 1, c)) for r in range(1, 6) for c in range(3) if (r, c) in _GRID
         and (r - 1, c) in _GRID]
_HORZ = [((r, c), (r, c - 1)) for r in range(1, 5) for c in (1, 2)]
_DIAG = [((1, 0), (2, 1)), ((2, 1), (3, 2)), ((2, 0), (3, 1)), ((3, 1), (4, 2)),
         ((3, 0), (4, 1)), ((4, 1), (5, 2)), ((4, 0), (5, 1)), ((1, 1), (2, 2))]

SEED_FROZEN = {
    "E6": {(1, 2, 3), (1, 2, 7), (1, 6, 7), (2, 3, 4), (3, 4, 5), (4, 5, 6), (5, 6, 7)},
    "E7": {(1, 2, 3), (1, 2, 8), (1, 7, 8), (2, 3, 4), (3, 4, 5), (4, 5, 6), (5, 6, 7),
           (6, 7, 8), (1, 6, 7)},
    "E8": {(1, 2, 3), (1, 2, 8), (1, 7, 8), (2, 3, 4), (3, 4, 5), (4, 5, 6), (5, 6, 7),
           (6, 7, 8)},
}


def boundary_frozen(n: int, m: int) -> list[tuple]:
    """The m cyclically consecutive Pluecker indices."""
    return [tuple(sorted((i + s - 1) % m + 1 for s in range(n))) for i in range(1, m + 1)]


@dataclass
class Seed:
    typ: str
    names: list  # initial Pluecker index of each vertex (fixed vertex ids)
    B: list  # B[i][j] > 0: b_ij arrows i -> j
    frozen: frozenset  # vertex ids
    labels: list  # Tableau per vertex
    values: list  # per vertex: tuple of exact values over the matrices
    history: tuple = ()

    @property
    def mutable(self) -> list[int]:
        return [v for v in range(len(self.names)) if v not in self.frozen]

    def key(self):
        return frozenset(self.values[v] for v in self.mutable)

    def arrows(self):
        V = len(self.names)
        return [(i, j, self.B[i][j]) for i in range(V) for j in range(V) if self.B[i][j] > 0]


def _seed_rows(typ):
    rows = 6 if typ in ("E7", "E8") else 5
    return {k: v for k, v in _GRID.items() if k[0] < rows}


def initial_seed(typ: str, matrices) -> Seed:
    if typ not in GR_SHAPE:
        raise GrassmannianError(f"no Grassmannian seed for {typ}")
    n, m = GR_SHAPE[typ]
    grid = _seed_rows(typ)
    pos = sorted(grid)
    names = [grid[p] for p in pos]
    vid = {p: i for i, p in enumerate(pos)}
    V = len(names)
    B = [[0] * V for _ in range(V)]
    for a, b in _VERT + _HORZ + _DIAG:
        if a in vid and b in vid:
            B[vid[a]][vid[b]] += 1
            B[vid[b]][vid[a]] -= 1
    frozen = frozenset(i for i, nm in enumerate(names) if nm in SEED_FROZEN[typ])
    labels = [Tableau.column(nm) for nm in names]
    values = [tuple(_int(pluecker(p, nm)) for p in matrices) for nm in names]
    for v in values:
        if any(x == 0 for x in v):
            raise Degenerate("initial Pluecker value vanishes")
    return Seed(typ, names, B, frozen, labels, values)


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return Fraction(a) / b


def _int(x):
    return int(x) if Fraction(x).denominator == 1 else Fraction(x)


def mutate_seed(seed: Seed, k: int, label: bool = True) -> Seed:
    if k in seed.frozen:
        raise GrassmannianError(f"vertex {seed.names[k]} is frozen")
    B = seed.B
    V = len(B)
    nm = len(seed.values[k])
    plus = [1] * nm
    minus = [1] * nm
    for i in range(V):
        b = B[i][k]
        if b > 0:
            plus = [x * y ** b for x, y in zip(plus, seed.values[i])]
        elif b < 0:
            minus = [x * y ** (-b) for x, y in zip(minus, seed.values[i])]
    new = tuple(_exact_div(a + b, x) for a, b, x in zip(plus, minus, seed.values[k]))
    if any(x == 0 for x in new):
        raise Degenerate("mutated value vanishes")
    B2 = [row[:] for row in B]
    ins = [i for i in range(V) if B[i][k] > 0]
    outs = [j for j in range(V) if B[k][j] > 0]
    for i in ins:
        for j in outs:
            B2[i][j] += B[i][k] * B[k][j]
            B2[j][i] -= B[i][k] * B[k][j]
    for i in range(V):
        B2[i][k] = -B[i][k]
        B2[k][i] = -B[k][i]
    values = list(seed.values)
    values[k] = new
    labels = list(seed.labels)
    if label:
        labels[k] = tb.tableau_mutation(dict(enumerate(seed.labels)), seed.arrows(), k)
    return Seed(seed.typ, seed.names, B2, seed.frozen, labels, values, seed.history + (k,))


def default_matrices(typ: str, seed: int = 0, count: int = 2, twisted: bool = True):
    """Vandermonde plus ``count`` random matrices; optionally their twists too.

    The twists are appended after the plain matrices so that values on p and
    on twist(p) live in the same tuple.
    """
    n, m = GR_SHAPE[typ]
    rng = random.Random(seed)
    mats = [vandermonde(n, m)] + [random_matrix(n, m, rng) for _ in range(count)]
    if twisted:
        tw = [ms_twist(p) for p in mats]
        for t in tw:
            if any(pluecker(t, c) == 0 for c in itertools.combinations(range(1, m + 1), n)):
                raise Degenerate("twisted matrix is degenerate")
        mats += tw
    return mats


@dataclass
class Closure:
    typ: str
    matrices: list
    variables: dict = field(default_factory=dict)  # values -> Tableau
    seeds: int = 0
    label_conflicts: list = field(default_factory=list)
    frozen_values: dict = field(default_factory=dict)  # name -> values

    def labels(self) -> set:
        return {tb.reduce(t) for t in self.variables.values()}

    def value_of(self, T: Tableau):
        T = tb.reduce(T)
        for v, t in self.variables.items():
            if tb.reduce(t) == T:
                return v
        raise KeyError(str(T))


def exchange_closure(typ: str, matrices=None, max_seeds: int = 100000, check_labels=True
                     ) -> Closure:
    """Breadth-first search over the exchange graph from the initial seed.

    Seeds are deduplicated by the set of mutable values.  A new cluster
    variable gets its label from tableau_mutation; when a known variable is
    reached again with a different reduced label it is recorded as a conflict.
    """
    if matrices is None:
        matrices = default_matrices(typ)
    s0 = initial_seed(typ, matrices)
    out = Closure(typ, matrices)
    for v in s0.frozen:
        out.frozen_values[s0.names[v]] = s0.values[v]
    for v in s0.mutable:
        out.variables[s0.values[v]] = s0.labels[v]
    seen = {s0.key()}
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        out.seeds += 1
        if out.seeds > max_seeds:
            raise GrassmannianError("exchange graph larger than expected")
        for k in s.mutable:
            t = mutate_seed(s, k, label=False)
            val = t.values[k]
            known = out.variables.get(val)
            if known is None or check_labels:
                lab = tb.tableau_mutation(dict(enumerate(s.labels)), s.arrows(), k)
                if known is None:
                    out.variables[val] = lab
                elif tb.reduce(known) != tb.reduce(lab):
                    out.label_conflicts.append((str(known), str(lab)))
                    lab = known
            else:
                lab = known
            t.labels[k] = lab
            key = t.key()
            if key not in seen:
                seen.add(key)
                queue.append(t)
    return out


# ------------------------------------------------------------ ch values

def expansion_value(terms, p: ExactMatrix) -> Fraction:
    tot = Fraction(0)
    for s, mono in terms:
        x = Fraction(s)
        for c in mono.columns:
            x *= pluecker(p, c)
        tot += x
    return tot


def ch_values(T: Tableau, matrices, m: int):
    """ch(T) on every matrix, sign fixed by positivity on matrices[0].

    matrices[0] has to be totally positive (see default_matrices).
    """
    terms = tb.ch_expand(T, m)
    vals = [expansion_value(terms, p) for p in matrices]
    if vals[0] == 0:
        raise Degenerate("ch vanishes on the totally positive matrix")
    if vals[0] < 0:
        vals = [-v for v in vals]
    return tuple(vals)


def ch_applicable(T: Tableau) -> bool:
    red = tb.reduce(T)
    return red.k == 0 or tb.gap_weight(red) <= 3


@dataclass
class TwistContext:
    """Matrices p_1..p_r (p_1 totally positive), their twists, frozen values and seed values."""

    typ: str
    plain: list
    twisted: list
    closure: Closure
    frozen: dict  # Pluecker index -> values on plain matrices
    header: str = ("twist reading: column i of twist(p) = eps_i * (p_{i-n+1} x ... x p_{i-1}), "
                   "indices mod m, k read as n; tau(f)(p) = f(twist(p))")

    def value(self, T: Tableau, twisted: bool):
        """(values, source): ch expansion when defined, else the seed value."""
        r = len(self.plain)
        if ch_applicable(T):
            vals = ch_values(tb.reduce(T), self.plain + self.twisted, GR_SHAPE[self.typ][1])
            src = "ch"
        else:
            vals = self.closure.value_of(T)
            src = "seed"
        return (vals[r:] if twisted else vals[:r]), src


def twist_context(typ: str, seed: int = 0, count: int = 2) -> TwistContext:
    n, m = GR_SHAPE[typ]
    mats = default_matrices(typ, seed, count, twisted=True)
    r = len(mats) // 2
    cl = exchange_closure(typ, mats, check_labels=False)
    frozen = {c: tuple(pluecker(p, c) for p in mats[:r]) for c in boundary_frozen(n, m)}
    return TwistContext(typ, mats[:r], mats[r:], cl, frozen)


def verify_tau(typ: str, pairs=None, ctx: TwistContext | None = None, sample: int | None = None,
               seed: int = 0) -> dict:
    """Check T(twist p) = tau(T)(p) * frozen monomial for dictionary pairs."""
    D = tb.dictionary(typ)
    ctx = ctx or twist_context(typ, seed)
    if pairs is None:
        pairs = [(t, tb.tableau_tau(typ, t)) for _, t in sorted(D.by_diag.items())]
        if sample is not None and sample < len(pairs):
            pairs = random.Random(seed).sample(pairs, sample)
    rep = {"type": typ, "header": ctx.header, "matrices": len(ctx.plain), "pairs": [],
           "matched": 0, "failed": 0}
    for T, tT in pairs:
        a, sa = ctx.value(T, True)
        b, sb = ctx.value(tT, False)
        e = frozen_factor_match(a, b, {"P" + "".join(map(str, c)): v for c, v in ctx.frozen.items()})
        ok = e is not None
        rep["matched" if ok else "failed"] += 1
        rep["pairs"].append({"T": str(T), "tauT": str(tT), "source": [sa, sb], "match": ok,
                             "exponents": {k: v for k, v in (e or {}).items() if v}})
    if typ == "E7":
        # the Gr(3,8) twist realises the E8 translation; report that comparison too
        e8 = 0
        ctx8 = twist_context("E8", seed, len(ctx.plain) - 1)
        for T, _ in pairs:
            a, _s = ctx8.value(T, True)
            b, _s = ctx8.value(tb.tableau_tau("E8", T), False)
            e8 += frozen_factor_match(a, b, {"P" + "".join(map(str, c)): v
                                             for c, v in ctx.frozen.items()}) is not None
        rep["matched_against_E8_translation"] = e8
    rep["ok"] = rep["failed"] == 0 and rep["matched"] > 0
    return rep


def ch_seed_consistency(typ: str, ctx: TwistContext | None = None) -> dict:
    """ch(T) against the mutation value of T, up to a frozen monomial."""
    ctx = ctx or twist_context(typ)
    r = len(ctx.plain)
    fro = {"P" + "".join(map(str, c)): v for c, v in ctx.frozen.items()}
    out = {"checked": 0, "skipped": 0, "failures": []}
    for val, T in ctx.closure.variables.items():
        if not ch_applicable(T):
            out["skipped"] += 1
            continue
        a = ch_values(tb.reduce(T), ctx.plain, GR_SHAPE[typ][1])
        if frozen_factor_match(a, val[:r], fro) is None:
            out["failures"].append(str(T))
        out["checked"] += 1
    out["ok"] = not out["failures"]
    return out
