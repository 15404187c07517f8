"""Hom and Ext in the derived and m-cluster categories of type E.

Vertices of the universal cover ZE are pairs (col, node).  Objects of the
m-cluster category are vertices of the quotient quiver, i.e. pairs with
0 <= col < N where N = (h/2) m + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg
from .quiver_core import TreeShape, build_quotient_quiver, StableTranslationQuiver
from .roots import COXETER, EXPONENTS, positive_roots

# node id -> Bourbaki index of the simple root
BOURBAKI = {
    "E6": {0: 4, 1: 2, 2: 5, 3: 6, 4: 3, 5: 1},
    "E7": {0: 4, 1: 2, 2: 3, 3: 1, 4: 5, 5: 6, 6: 7},
    "E8": {0: 4, 1: 2, 2: 3, 3: 1, 4: 5, 5: 6, 6: 7, 7: 8},
}

ORBIT_RANGE = 3


class CategoryError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExtProfile:
    dims: tuple

    def __getitem__(self, j):
        """1-based: profile[j] = dim Ext^j."""
        return self.dims[j - 1]

    @property
    def total(self) -> int:
        return sum(self.dims)


@dataclass(frozen=True)
class RootLabel:
    kind: str  # "negative" or "positive"
    index: int = 0  # for negative simples
    color: int = 0
    coords: tuple = ()

    def __str__(self):
        if self.kind == "negative":
            return f"-a{self.index}"
        return f"{self.coords}^{self.color}"

    def to_json(self):
        if self.kind == "negative":
            return {"kind": "negative", "index": self.index}
        return {"kind": "positive", "color": self.color, "coords": list(self.coords)}


@dataclass
class CategorySpec:
    dynkin: str
    m: int = 1
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.dynkin not in BOURBAKI:
            raise CategoryError(f"unsupported type {self.dynkin}")
        if self.m < 1:
            raise CategoryError("m must be positive")

    @property
    def h(self) -> int:
        return COXETER[self.dynkin]

    @property
    def exponents(self):
        return EXPONENTS[self.dynkin]

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def shape(self) -> TreeShape:
        return TreeShape.of(self.dynkin)

    @property
    def period(self) -> int:
        return (self.h // 2) * self.m + 1

    @property
    def rho_e(self) -> list[int]:
        if self.dynkin == "E6":
            return self.shape.rho()
        return list(range(self.n))

    @property
    def phi(self) -> list[int]:
        """Node permutation of the quotient identification (c, x) ~ (c+N, phi x)."""
        if self.dynkin == "E6" and self.m % 2:
            return self.shape.rho()
        return list(range(self.n))

    @cached_property
    def quiver(self) -> StableTranslationQuiver:
        tw = f"rho^{self.m}" if self.dynkin == "E6" else "none"
        return build_quotient_quiver(self.shape, self.period, tw)

    @property
    def objects(self) -> list[tuple[int, int]]:
        return list(self.quiver.labels)

    # cover maps -------------------------------------------------------
    def sigma(self, v, k: int = 1):
        c, x = v
        rho = self.rho_e
        for _ in range(abs(k)):
            x = rho[x]
        return (c + k * (self.h // 2), x)

    def F(self, v, k: int = 1):
        """F = tau^{-1} Sigma^m on the cover."""
        c, x = v
        for _ in range(abs(k)):
            x = self.phi[x]
        return (c + k * self.period, x)

    def reduce(self, v):
        """Cover vertex -> quotient representative."""
        c, x = v
        k = c // self.period
        return self.F((c, x), -k)

    @cached_property
    def hammocks(self) -> list[dict]:
        return [knit_hammock(self.shape, x, self.h + 2) for x in range(self.n)]


# ------------------------------------------------------------- Hom on ZE

def _order(shape: TreeShape, width: int):
    return sorted(((c, y) for c in range(width) for y in range(shape.n_vertices)),
                  key=lambda v: (v[0], -shape.depth(v[1])))


def knit_hammock(shape: TreeShape, x: int, width: int) -> dict:
    """dim Hom((0,x), (c,y)) for 0 <= c < width by clipped knitting."""
    f = {}
    for c, y in _order(shape, width):
        if (c, y) == (0, x):
            f[(c, y)] = 1
            continue
        s = 0
        for a, b in shape.edges:
            if b == y:
                s += f.get((c, a), 0)
            if a == y:
                s += f.get((c - 1, b), 0)
        val = max(0, s - f.get((c - 1, y), 0))
        if val:
            f[(c, y)] = val
    return f


def hom_dim_cover(spec: CategorySpec, X, Y, window: int | None = None) -> int:
    """dim Hom(X, Y) in the mesh category of the cover ZE."""
    w = spec.h + 2 if window is None else window
    if w < spec.h + 2:
        raise CategoryError("window")
    dc = Y[0] - X[0]
    if dc < 0 or dc >= w:
        return 0
    return spec.hammocks[X[1]].get((dc, Y[1]), 0)


def hom_oracle(shape: TreeShape, x: int, width: int) -> dict:
    """Independent exact computation of the functor Hom((0,x), -).

    V(y) = coker(V(tau y) -> sum_{z -> y} V(z)) for y != (0,x), with the
    arrow maps carried along as explicit rational matrices.  Returns the
    dimensions of the nonzero spaces.
    """
    dims = {}
    maps = {}  # (z, y) -> matrix V(z) -> V(y), dims[y] x dims[z]
    for c, y in _order(shape, width):
        v = (c, y)
        if v == (0, x):
            dims[v] = 1
            # arrows into (0,x) carry zero spaces inside the window
            continue
        preds = [(c, a) for a, b in shape.edges if b == y] + \
                [(c - 1, b) for a, b in shape.edges if a == y]
        preds = [z for z in preds if dims.get(z, 0)]
        total = sum(dims[z] for z in preds)
        if total == 0:
            continue
        t = (c - 1, y)
        dt = dims.get(t, 0)
        # stacked map V(t) -> sum V(z): one block row per predecessor
        M = []
        for z in preds:
            if dt:
                A = maps.get((t, z))
                if A is None:
                    A = [[Fraction(0)] * dt for _ in range(dims[z])]
                M.extend(A)
            else:
                M.extend([[] for _ in range(dims[z])])
        if dt:
            L = linalg.left_nullspace(M, total)
        else:
            L = [[Fraction(int(i == j)) for j in range(total)] for i in range(total)]
        if not L:
            continue
        dims[v] = len(L)
        off = 0
        for z in preds:
            maps[(z, v)] = [row[off:off + dims[z]] for row in L]
            off += dims[z]
    return {k: d for k, d in dims.items() if d}


def hom_oracle_dim(spec: CategorySpec, X, Y) -> int:
    key = ("oracle", X[1])
    if key not in spec._cache:
        spec._cache[key] = hom_oracle(spec.shape, X[1], spec.h + 2)
    dc = Y[0] - X[0]
    if dc < 0 or dc >= spec.h + 2:
        return 0
    return spec._cache[key].get((dc, Y[1]), 0)


# -------------------------------------------------------- orbit category

def ext_profile(spec: CategorySpec, X, Y) -> ExtProfile:
    """dims[j-1] = dim Ext^j(X, Y) in the m-cluster category, j = 1..m."""
    dims = []
    for j in range(1, spec.m + 1):
        tot = 0
        SY = spec.sigma(Y, j)
        for i in range(-ORBIT_RANGE, ORBIT_RANGE + 1):
            d = hom_dim_cover(spec, X, spec.F(SY, i))
            if d and abs(i) == ORBIT_RANGE:
                raise CategoryError("orbit window exhausted")
            tot += d
        dims.append(tot)
    return ExtProfile(tuple(dims))


def hom_orbit(spec: CategorySpec, X, Y) -> int:
    tot = 0
    for i in range(-ORBIT_RANGE, ORBIT_RANGE + 1):
        d = hom_dim_cover(spec, X, spec.F(Y, i))
        if d and abs(i) == ORBIT_RANGE:
            raise CategoryError("orbit window exhausted")
        tot += d
    return tot


def compatibility_degree(spec: CategorySpec, X, Y) -> int:
    return ext_profile(spec, X, Y).total


def compat_matrix(spec: CategorySpec) -> list[list[int]]:
    """Pairwise compatibility degrees on the quotient objects (cached)."""
    if "compat" not in spec._cache:
        objs = spec.objects
        spec._cache["compat"] = [[compatibility_degree(spec, a, b) for b in objs] for a in objs]
    return spec._cache["compat"]


def ext_table(spec: CategorySpec) -> dict:
    if "ext" not in spec._cache:
        objs = spec.objects
        spec._cache["ext"] = {(a, b): ext_profile(spec, a, b) for a in objs for b in objs}
    return spec._cache["ext"]


def check_cy(spec: CategorySpec):
    """Return list of violations of Ext^i(X,Y) = Ext^{m+1-i}(Y,X)."""
    tab = ext_table(spec)
    bad = []
    m = spec.m
    for (a, b), prof in tab.items():
        other = tab[(b, a)]
        for i in range(1, m + 1):
            if prof[i] != other[m + 1 - i]:
                bad.append((a, b, i))
    return bad


# ----------------------------------------------------------- root labels

def anchor_columns(spec: CategorySpec) -> dict[int, int]:
    """Column of each node on the anchor slice (c0 = 0)."""
    out = {}
    for x in range(spec.n):
        d = spec.shape.depth(x)
        t = 1 if d % 2 else 2
        out[x] = (t + d - 2) // 2
    return out


def figure_position(spec: CategorySpec, t: int, root: int):
    """Cover vertex of the labelled-quiver cell at position t with root index."""
    inv = {v: k for k, v in BOURBAKI[spec.dynkin].items()}
    x = inv[root]
    d = spec.shape.depth(x)
    if (t + d) % 2:
        raise CategoryError(f"parity mismatch at t={t}, root={root}")
    return ((t + d - 2) // 2, x)


def anchor_objects(spec: CategorySpec) -> dict[int, tuple[int, int]]:
    """Bourbaki index i -> quotient object labelled -alpha_i."""
    f = anchor_columns(spec)
    b = BOURBAKI[spec.dynkin]
    return {b[x]: spec.reduce((f[x], x)) for x in range(spec.n)}


def module_region(spec: CategorySpec) -> list[tuple[int, int]]:
    f = anchor_columns(spec)
    half = spec.h // 2
    rho = spec.rho_e
    out = []
    for y in range(spec.n):
        for c in range(f[y] + 1, f[rho[y]] + half + 1):
            out.append((c, y))
    return out


def dim_vector(spec: CategorySpec, M) -> tuple[int, ...]:
    f = anchor_columns(spec)
    b = BOURBAKI[spec.dynkin]
    vec = [0] * spec.n
    for x in range(spec.n):
        P = (f[x] + 1, x)
        vec[b[x] - 1] = hom_dim_cover(spec, P, M)
    return tuple(vec)


def root_labels(spec: CategorySpec) -> dict[tuple[int, int], RootLabel]:
    """Quotient object -> colored almost positive root."""
    if "labels" in spec._cache:
        return spec._cache["labels"]
    out = {}
    for i, obj in anchor_objects(spec).items():
        out[obj] = RootLabel("negative", index=i)
    mods = module_region(spec)
    for j in range(1, spec.m + 1):
        for M in mods:
            obj = spec.reduce(spec.sigma(M, j - 1))
            if obj in out:
                raise CategoryError(f"label clash at {obj}")
            out[obj] = RootLabel("positive", color=j, coords=dim_vector(spec, M))
    if len(out) != len(spec.objects):
        raise CategoryError("root labelling is not a bijection")
    spec._cache["labels"] = out
    return out


def root_label(spec: CategorySpec, X) -> RootLabel:
    return root_labels(spec)[spec.reduce(X)]


def check_root_labels(spec: CategorySpec) -> list[str]:
    """Compare module dimension vectors with the reflection-closure roots."""
    problems = []
    roots = set(positive_roots(spec.dynkin))
    labs = root_labels(spec)
    for j in range(1, spec.m + 1):
        vecs = sorted(l.coords for l in labs.values() if l.kind == "positive" and l.color == j)
        if sorted(roots) != vecs:
            problems.append(f"color {j}: dimension vectors differ from positive roots")
    negs = sorted(l.index for l in labs.values() if l.kind == "negative")
    if negs != list(range(1, spec.n + 1)):
        problems.append("negative simples incomplete")
    return problems
