"""Tree diagrams, repetition quivers ZT and their orbit quotients.

A stable translation quiver is stored with integer vertex indices; the
human readable vertex labels live in ``q.labels``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable


DYNKIN_SHAPES = {"E6": (1, 2, 2), "E7": (1, 2, 3), "E8": (1, 2, 4)}


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class TreeShape:
    """Tree with a branch vertex 0 and three legs of r, s, t vertices.

    Leg vertices are numbered outward: 1..r, r+1..r+s, r+s+1..r+s+t.
    Every edge points toward the branch vertex.
    """

    r: int
    s: int
    t: int

    def __post_init__(self):
        if min(self.r, self.s, self.t) < 0:
            raise QuiverError("negative leg length")

    @classmethod
    def of(cls, name: str) -> "TreeShape":
        return cls(*DYNKIN_SHAPES[name])

    @property
    def n_vertices(self) -> int:
        return self.r + self.s + self.t + 1

    def legs(self) -> list[list[int]]:
        out, start = [], 1
        for ln in (self.r, self.s, self.t):
            out.append(list(range(start, start + ln)))
            start += ln
        return out

    @property
    def edges(self) -> list[tuple[int, int]]:
        es = []
        for leg in self.legs():
            prev = 0
            for v in leg:
                es.append((v, prev))
                prev = v
        return es

    def depth(self, v: int) -> int:
        for leg in self.legs():
            if v in leg:
                return leg.index(v) + 1
        return 0

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if v in (a, b))

    @property
    def symmetric(self) -> bool:
        return self.r == self.s or self.s == self.t or self.r == self.t

    def rho(self) -> list[int]:
        """Node permutation swapping the two equal legs (identity elsewhere)."""
        legs = self.legs()
        perm = list(range(self.n_vertices))
        if self.s == self.t:
            a, b = legs[1], legs[2]
        elif self.r == self.s:
            a, b = legs[0], legs[1]
        elif self.r == self.t:
            a, b = legs[0], legs[2]
        else:
            raise QuiverError("rho undefined")
        for x, y in zip(a, b):
            perm[x], perm[y] = y, x
        return perm


@dataclass
class StableTranslationQuiver:
    labels: list
    arrows: set
    tau: list
    rho: list | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise QuiverError("duplicate vertex labels")
        self._succ = [[] for _ in self.labels]
        self._pred = [[] for _ in self.labels]
        for a, b in sorted(self.arrows):
            self._succ[a].append(b)
            self._pred[b].append(a)

    def __len__(self):
        return len(self.labels)

    def succ(self, v: int) -> list[int]:
        return self._succ[v]

    def pred(self, v: int) -> list[int]:
        return self._pred[v]

    def tau_inv(self, v: int) -> int:
        if not hasattr(self, "_tinv"):
            self._tinv = [0] * len(self.tau)
            for a, b in enumerate(self.tau):
                self._tinv[b] = a
        return self._tinv[v]

    def vertex(self, label) -> int:
        return self.index[label]

    def to_json(self) -> dict:
        d = {
            "meta": {k: v for k, v in self.meta.items() if _jsonable(v)},
            "vertices": [_lab_json(lab) for lab in self.labels],
            "arrows": sorted([a, b] for a, b in self.arrows),
            "tau": [[v, t] for v, t in enumerate(self.tau)],
        }
        if "shape" in self.meta:
            r, s, t = self.meta["shape"]
            d["shape"] = {"r": r, "s": s, "t": t}
            d["period"] = self.meta.get("period")
            d["twist"] = self.meta.get("twist", "none")
        if self.rho is not None:
            d["rho"] = list(self.rho)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "StableTranslationQuiver":
        labels = [_lab_from_json(x) for x in d["vertices"]]
        tau = [0] * len(labels)
        for v, t in d["tau"]:
            tau[v] = t
        meta = dict(d.get("meta", {}))
        if "shape" in meta:
            meta["shape"] = tuple(meta["shape"])
        return cls(labels, {tuple(a) for a in d["arrows"]}, tau, d.get("rho"), meta)

    def to_dot(self) -> str:
        lines = ["digraph Q {", "  rankdir=LR;"]
        cols = {}
        for i, lab in enumerate(self.labels):
            if isinstance(lab, tuple) and isinstance(lab[0], int):
                cols.setdefault(lab[0], []).append(i)
            lines.append(f'  v{i} [label="{_lab_str(lab)}"];')
        for c in sorted(cols):
            lines.append("  { rank=same; " + " ".join(f"v{i};" for i in cols[c]) + " }")
        for a, b in sorted(self.arrows):
            lines.append(f"  v{a} -> v{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _jsonable(v) -> bool:
    return isinstance(v, (int, str, float, bool, list, tuple, type(None)))


def _lab_json(lab):
    if isinstance(lab, tuple) and len(lab) == 2 and all(isinstance(x, int) for x in lab):
        return {"col": lab[0], "node": lab[1]}
    if isinstance(lab, tuple):
        return list(_lab_json(x) if isinstance(x, tuple) else x for x in lab)
    return lab


def _lab_from_json(x):
    if isinstance(x, dict):
        return (x["col"], x["node"])
    if isinstance(x, list):
        return tuple(_lab_from_json(y) for y in x)
    return x


def _lab_str(lab) -> str:
    return str(lab).replace('"', "'")


# ---------------------------------------------------------------- building

def build_quotient_quiver(shape: TreeShape, N: int, twist: str = "none", m: int = 1
                          ) -> StableTranslationQuiver:
    """ZT modulo tau^{-N} composed with phi (identity or rho^m).

    ``twist`` is "none" or "rho^m"; in the latter case ``m`` gives the power.
    A string like "rho^3" is also accepted.
    """
    if N < 1:
        raise QuiverError("period must be positive")
    if twist.startswith("rho^") and twist != "rho^m":
        m = int(twist[4:])
        twist = "rho^m"
    if twist not in ("none", "rho^m"):
        raise QuiverError(f"unknown twist {twist!r}")
    nv = shape.n_vertices
    if twist == "rho^m":
        if not shape.symmetric:
            raise QuiverError("rho undefined")
        rp = shape.rho()
        phi = rp if m % 2 else list(range(nv))
    else:
        phi = list(range(nv))

    def norm(c, x):
        while c >= N:
            c -= N
            x = phi[x]
        while c < 0:
            c += N
            x = phi[x]  # phi is an involution
        return (c, x)

    labels = [(c, x) for c in range(N) for x in range(nv)]
    idx = {lab: i for i, lab in enumerate(labels)}
    arrows = set()
    for c in range(N):
        for a, b in shape.edges:
            arrows.add((idx[norm(c, a)], idx[norm(c, b)]))
            arrows.add((idx[norm(c, b)], idx[norm(c + 1, a)]))
    tau = [idx[norm(c - 1, x)] for c, x in labels]
    rho = None
    if shape.symmetric:
        rp = shape.rho()
        rho = [idx[(c, rp[x])] for c, x in labels]
    tw = "none" if twist == "none" else f"rho^{m}"
    q = StableTranslationQuiver(labels, arrows, tau, rho,
                                {"shape": (shape.r, shape.s, shape.t), "period": N,
                                 "twist": tw, "kind": "ZT-quotient"})
    return q


def cover_arrows(shape: TreeShape):
    """Arrows of ZT as offsets: list of ((dc, a), (dc', b))."""
    out = []
    for a, b in shape.edges:
        out.append(((0, a), (0, b)))
        out.append(((0, b), (1, a)))
    return out


def cover_predecessors(shape: TreeShape, c: int, y: int) -> list[tuple[int, int]]:
    """Direct predecessors of (c, y) in ZT."""
    res = []
    for a, b in shape.edges:
        if b == y:
            res.append((c, a))
        if a == y:
            res.append((c - 1, b))
    return res


def check_stability(q: StableTranslationQuiver):
    """Return (True, None) or (False, first broken vertex index)."""
    if sorted(q.tau) != list(range(len(q))):
        return False, None
    for a, b in q.arrows:
        if a == b:
            return False, a
    for x in range(len(q)):
        if sorted(q.pred(x)) != sorted(q.succ(q.tau[x])):
            return False, x
    return True, None


def m_power(q: StableTranslationQuiver, m: int) -> StableTranslationQuiver:
    """Same vertices, arrows = sectional paths of length m, translation tau^m."""
    if m < 1:
        raise QuiverError("m must be positive")
    if m == 1:
        return StableTranslationQuiver(list(q.labels), set(q.arrows), list(q.tau), q.rho, dict(q.meta))
    arrows = set()
    mult = 0
    for x0 in range(len(q)):
        # paths as tuples; sectional: tau(x_{i+1}) != x_{i-1}
        stack = [(x0,)]
        ends = {}
        while stack:
            p = stack.pop()
            if len(p) == m + 1:
                ends[p[-1]] = ends.get(p[-1], 0) + 1
                continue
            for y in q.succ(p[-1]):
                if len(p) >= 2 and q.tau[y] == p[-2]:
                    continue
                stack.append(p + (y,))
        for y, k in ends.items():
            arrows.add((x0, y))
            mult = max(mult, k)
    tau = list(range(len(q)))
    for _ in range(m):
        tau = [q.tau[v] for v in tau]
    meta = dict(q.meta)
    meta["m_power"] = m * meta.get("m_power", 1)
    meta["max_path_multiplicity"] = mult
    return StableTranslationQuiver(list(q.labels), arrows, tau, None, meta)


def components(q: StableTranslationQuiver) -> list[list[int]]:
    """Connected components (arrows taken undirected, tau-orbits joined)."""
    seen = [False] * len(q)
    out = []
    for s in range(len(q)):
        if seen[s]:
            continue
        comp, dq = [], deque([s])
        seen[s] = True
        while dq:
            v = dq.popleft()
            comp.append(v)
            for w in q.succ(v) + q.pred(v) + [q.tau[v], q.tau_inv(v)]:
                if not seen[w]:
                    seen[w] = True
                    dq.append(w)
        out.append(sorted(comp))
    return out


def subquiver(q: StableTranslationQuiver, verts: Iterable[int]) -> StableTranslationQuiver:
    vs = sorted(verts)
    pos = {v: i for i, v in enumerate(vs)}
    arrows = {(pos[a], pos[b]) for a, b in q.arrows if a in pos and b in pos}
    tau = [pos[q.tau[v]] for v in vs]
    return StableTranslationQuiver([q.labels[v] for v in vs], arrows, tau, None, dict(q.meta))


def _invariant(q: StableTranslationQuiver, v: int) -> tuple:
    # tau-orbit size plus in/out degree profile along the orbit
    orbit = [v]
    w = q.tau[v]
    while w != v:
        orbit.append(w)
        w = q.tau[w]
    return (len(orbit), len(q.succ(v)), len(q.pred(v)))


def _bfs_order(q: StableTranslationQuiver, start: int, verts: set[int]):
    """BFS order of ``verts`` from ``start`` with (parent, relation) records."""
    order = [(start, None, None)]
    seen = {start}
    dq = deque([start])
    while dq:
        v = dq.popleft()
        rel = [("tau", q.tau[v]), ("tinv", q.tau_inv(v))]
        rel += [("succ", w) for w in q.succ(v)] + [("pred", w) for w in q.pred(v)]
        for kind, w in rel:
            if w in verts and w not in seen:
                seen.add(w)
                order.append((w, v, kind))
                dq.append(w)
    return order


def _related(q, v, kind):
    if kind == "tau":
        return [q.tau[v]]
    if kind == "tinv":
        return [q.tau_inv(v)]
    if kind == "succ":
        return q.succ(v)
    return q.pred(v)


def find_isomorphism_seeded(small: StableTranslationQuiver, big: StableTranslationQuiver,
                            seed: dict[int, int]) -> dict[int, int] | None:
    """Backtracking search for an injective map small -> big extending ``seed``.

    The map must preserve translation and induce a bijection between the
    arrows of ``small`` and the arrows of ``big`` among image vertices.
    ``small`` is assumed connected.
    """
    if not seed:
        return None
    start = next(iter(seed))
    order = _bfs_order(small, start, set(range(len(small))))
    if len(order) != len(small):
        return None
    small_arrows = small.arrows
    big_arrows = big.arrows
    f: dict[int, int] = {}
    used: set[int] = set()

    def ok(w, x):
        if x in used:
            return False
        if w in seed and seed[w] != x:
            return False
        if _invariant(small, w) != _invariant(big, x):
            return False
        for u in small.succ(w) + small.pred(w) + [small.tau[w], small.tau_inv(w)]:
            if u in f:
                fu = f[u]
                if ((w, u) in small_arrows) != ((x, fu) in big_arrows):
                    return False
                if ((u, w) in small_arrows) != ((fu, x) in big_arrows):
                    return False
                if small.tau[w] == u and big.tau[x] != fu:
                    return False
                if small.tau[u] == w and big.tau[fu] != x:
                    return False
        # image neighbours already used must come from neighbours of w
        for y in big.succ(x):
            if y in used and (w, _preimage[y]) not in small_arrows:
                return False
        for y in big.pred(x):
            if y in used and (_preimage[y], w) not in small_arrows:
                return False
        return True

    _preimage: dict[int, int] = {}
    stack = []
    i = 0
    cands0 = [seed[start]]
    stack.append(iter(cands0))
    while stack:
        it = stack[-1]
        w, parent, kind = order[i]
        nxt = None
        for x in it:
            if ok(w, x):
                nxt = x
                break
        if nxt is None:
            stack.pop()
            i -= 1
            if i >= 0:
                wprev = order[i][0]
                used.discard(f[wprev])
                del _preimage[f[wprev]]
                del f[wprev]
            continue
        f[w] = nxt
        used.add(nxt)
        _preimage[nxt] = w
        i += 1
        if i == len(order):
            return dict(f)
        w2, p2, k2 = order[i]
        stack.append(iter(list(_related(big, f[p2], k2))))
    return None


def find_embedding(small: StableTranslationQuiver, big: StableTranslationQuiver,
                   anchor: tuple[int, int] | None = None) -> dict[int, int] | None:
    """An isomorphism of ``small`` onto a connected component of ``big``.

    ``small`` must be connected. If ``anchor`` = (v, w) is given only maps
    with v -> w are tried.
    """
    if len(small) == 0:
        return {}
    comps = components(big)
    comp_of = {}
    for ci, c in enumerate(comps):
        for v in c:
            comp_of[v] = ci
    # choose a start vertex of small with a rare invariant
    inv_s = [_invariant(small, v) for v in range(len(small))]
    if anchor is not None:
        starts = [anchor]
    else:
        counts = {}
        for x in inv_s:
            counts[x] = counts.get(x, 0) + 1
        v0 = min(range(len(small)), key=lambda v: (counts[inv_s[v]], v))
        starts = [(v0, w) for w in range(len(big)) if _invariant(big, w) == inv_s[v0]]
    for v0, w in starts:
        if len(comps[comp_of[w]]) != len(small):
            continue
        f = find_isomorphism_seeded(small, big, {v0: w})
        if f is not None:
            return f
    return None


def degree_profile(q: StableTranslationQuiver) -> list[tuple]:
    return sorted(_invariant(q, v) for v in range(len(q)))


def vertex_count_formula(name: str, m: int) -> int:
    n = {"E6": 6, "E7": 7, "E8": 8}[name]
    half_h = {"E6": 6, "E7": 9, "E8": 15}[name]
    return n * (half_h * m + 1)
