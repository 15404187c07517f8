"""One object tying a category, its diagonal model and its compatibility graph.

F4 is handled through the E6 model: objects are rho-orbits of E6 objects and
two orbits are compatible when all their lifts are pairwise compatible.
"""
from __future__ import annotations

import random
from functools import cached_property

from . import ar_category as ar
from . import diagonal_model as dm
from . import tilting
from .quiver_core import build_quotient_quiver, TreeShape


SUPPORTED = ("E6", "E7", "E8", "F4")


class ConfigError(ValueError):
    pass


class ClusterModel:
    def __init__(self, typ: str, m: int = 1, convention: str = "sec3"):
        if typ not in SUPPORTED:
            raise ConfigError(f"unsupported type {typ!r}; choose one of {', '.join(SUPPORTED)}")
        if not isinstance(m, int) or m < 1:
            raise ConfigError("m must be a positive integer")
        if convention not in ("sec3", "sec4"):
            raise ConfigError(f"unknown offset convention {convention!r}")
        self.typ = typ
        self.m = m
        self.convention = convention
        self.base = "E6" if typ == "F4" else typ
        self.spec = ar.CategorySpec(self.base, m)
        self.ds, self.qdiag = dm.model_quiver(self.base, m, convention)
        self.anchor = dm.scaled_anchor(self.base, m, convention)

    @property
    def n(self) -> int:
        return 4 if self.typ == "F4" else self.spec.n

    @property
    def N(self) -> int:
        return self.ds.N

    @cached_property
    def bijection(self) -> dict:
        """diagonal label -> AR object"""
        return dm.anchor_bijection(self.spec, self.qdiag, self.spec.quiver, self.anchor)

    @cached_property
    def folded(self):
        return dm.fold_f4(self.qdiag)

    # objects are listed in diagonal-quiver order (orbits for F4)
    @cached_property
    def objects(self) -> list:
        if self.typ == "F4":
            return list(self.folded.labels)
        return list(self.qdiag.labels)

    def lifts(self, i: int) -> tuple:
        return self.objects[i] if self.typ == "F4" else (self.objects[i],)

    def name(self, i: int) -> str:
        return "+".join(dm.fmt_diagonal(d, self.N) for d in self.lifts(i))

    def index(self, text: str) -> int:
        """Object index from a diagonal like "[1,6]_R" (either lift for F4).

        For F4 a red/blue pair may be written "[a,b]_P"; it is unordered.
        """
        t = text.strip()
        if t.endswith("_P") and self.typ == "F4":
            a, b = t[1:t.index("]")].split(",")
            for cand in (f"[{a},{b}]_R", f"[{b},{a}]_R"):
                try:
                    return self.index(cand)
                except (dm.ModelError, ConfigError):
                    pass
            raise ConfigError(f"{text} is not an object")
        d = dm.parse_diagonal(t, self.N, self.ds)
        for i in range(len(self.objects)):
            if d in self.lifts(i):
                return i
        raise ConfigError(f"{text} is not an object")

    @cached_property
    def degree(self) -> list[list[int]]:
        """Compatibility degrees between diagonal-model objects (E-type lifts)."""
        mat = ar.compat_matrix(self.spec)
        pos = {o: k for k, o in enumerate(self.spec.objects)}
        idx = [pos[self.bijection[d]] for d in self.qdiag.labels]
        return [[mat[a][b] for b in idx] for a in idx]

    @cached_property
    def graph(self) -> tilting.CompatGraph:
        deg = self.degree
        if self.typ != "F4":
            return tilting.CompatGraph.from_degree([self.name(i) for i in range(len(self.objects))],
                                                   deg, self.n)
        vid = {d: k for k, d in enumerate(self.qdiag.labels)}
        lifts = [[vid[d] for d in self.lifts(i)] for i in range(len(self.objects))]

        def ok(i, j):
            vs = lifts[i] + lifts[j]
            return all(deg[a][b] == 0 for a in vs for b in vs if a != b)

        self_ok = [ok(i, i) for i in range(len(lifts))]
        return tilting.CompatGraph.from_predicate(
            [self.name(i) for i in range(len(self.objects))],
            lambda i, j: self_ok[i] and self_ok[j] and ok(i, j), self.n)

    def translation(self, i: int) -> int:
        q = self.folded if self.typ == "F4" else self.qdiag
        return q.tau[i]

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for i in range(len(self.objects)):
            if i in seen:
                continue
            orb, j = [], i
            while j not in orb:
                orb.append(j)
                j = self.translation(j)
            seen.update(orb)
            out.append(orb)
        return out

    def ar_object(self, i: int):
        return tuple(self.bijection[d] for d in self.lifts(i))

    def root_label(self, i: int) -> str:
        return "+".join(str(ar.root_label(self.spec, o)) for o in self.ar_object(i))

    def tableau(self, i: int):
        if self.m != 1 or self.typ == "F4":
            return None
        from .tableaux import dictionary
        return dictionary(self.typ).by_diag[self.objects[i]]

    def anchor_cluster(self) -> tuple:
        """The anchored cluster (negative simples), as object indices."""
        if self.typ == "F4":
            return tuple(sorted({self.index(dm.fmt_diagonal(d, self.N)) for d in self.anchor}))
        return tuple(sorted(self.qdiag.vertex(d) for d in self.anchor))

    def cluster_json(self, cluster) -> dict:
        out = {"type": self.typ, "m": self.m, "objects": list(cluster),
               "diagonals": [self.name(i) for i in cluster]}
        if self.m == 1 and self.typ != "F4":
            out["tableaux"] = [str(self.tableau(i)) for i in cluster]
        return out

    def cluster_from_json(self, d: dict) -> tuple:
        if d.get("type") != self.typ or d.get("m") != self.m:
            raise ConfigError("cluster file is for a different type or m")
        if "diagonals" in d:
            cl = tuple(sorted(self.index(s.split("+")[0]) for s in d["diagonals"]))
            if "objects" in d and list(cl) != sorted(d["objects"]):
                raise ConfigError("objects and diagonals disagree")
            return cl
        return tuple(sorted(d["objects"]))

    def is_cluster(self, cluster) -> bool:
        g = self.graph
        cl = list(cluster)
        if len(cl) != self.n:
            return False
        return all(g.compatible(a, b) for a in cl for b in cl if a != b)

    # ------------------------------------------------------------- reports
    def color(self, i: int) -> str:
        cols = {d[0] for d in self.lifts(i)}
        if cols == {"G"}:
            return "G"
        if len(cols) == 2:
            return "RB"
        return cols.pop()

    def _rot(self, i: int, k: int) -> int:
        for _ in range(k):
            i = self.translation(i)
        return i

    def _coord(self, i: int):
        return tuple(sorted(self.lifts(i)))

    def pair_report(self, colors: tuple[str, str] | None = None, up_to_rotation: bool = True) -> dict:
        """Compatible unordered pairs, optionally modulo the translation."""
        g = self.graph
        k = len(self.objects)
        period = max(len(o) for o in self.orbits())
        reps = set()
        for a in range(k):
            for b in range(a + 1, k):
                if not g.compatible(a, b):
                    continue
                if colors is not None and sorted((self.color(a), self.color(b))) != sorted(colors):
                    continue
                if up_to_rotation:
                    best = None
                    for s in range(period):
                        x, y = self._rot(a, s), self._rot(b, s)
                        # the E6 translation can swap red and blue; keep the filter's colours
                        if colors is not None and \
                                sorted((self.color(x), self.color(y))) != sorted(colors):
                            continue
                        key = tuple(sorted((self._coord(x), self._coord(y))))
                        if best is None or key < best[0]:
                            best = (key, x, y)
                    reps.add((best[0], ) + tuple(sorted((best[1], best[2]),
                                                       key=lambda i: self._coord(i))))
                else:
                    reps.add(((self._coord(a), self._coord(b)), a, b))
        pairs = [[self.name(x), self.name(y)] for _, x, y in sorted(reps)]
        return {"type": self.typ, "m": self.m, "colors": list(colors) if colors else None,
                "up_to_rotation": up_to_rotation, "count": len(pairs), "pairs": pairs}

    def complement_report(self, clusters, limit: int | None = None, seed: int = 0) -> dict:
        """For each (sampled) cluster and object, the number of completions."""
        cl = list(clusters)
        if limit is not None and limit < len(cl):
            cl = random.Random(seed).sample(cl, limit)
        bad = []
        hist = {}
        for c in cl:
            for k in c:
                rest = [v for v in c if v != k]
                comps = tilting.complements(self.graph, rest)
                hist[len(comps)] = hist.get(len(comps), 0) + 1
                if len(comps) != self.m + 1:
                    bad.append((c, k, len(comps)))
        return {"clusters": len(cl), "histogram": hist, "violations": bad[:20],
                "ok": not bad, "expected": self.m + 1}


def quotient_for(typ: str, m: int):
    """AR quotient quiver (F4: folded from E6)."""
    if typ == "F4":
        return dm.fold_f4(build_quotient_quiver(TreeShape.of("E6"), 6 * m + 1, f"rho^{m}"))
    return ar.CategorySpec(typ, m).quiver


def witness_isomorphism(model: ClusterModel) -> dict:
    """Anchor-respecting isomorphism diagonal quiver -> AR quotient, as labels.

    For F4 the E6 bijection is pushed to rho-orbits; that it is well defined
    and an isomorphism of the folded quivers is checked here.
    """
    bij = model.bijection
    if model.typ != "F4":
        return {dm.fmt_diagonal(d, model.N): list(o) for d, o in bij.items()}
    qa = quotient_for("F4", model.m)
    qd = model.folded
    where = {}
    for k, lab in enumerate(qa.labels):
        for o in lab:
            where[o] = k
    f = {}
    for i, lab in enumerate(qd.labels):
        imgs = {where[bij[d]] for d in lab}
        if len(imgs) != 1:
            raise dm.ModelError("E6 bijection does not commute with rho")
        f[i] = imgs.pop()
    if sorted(f.values()) != list(range(len(qa))):
        raise dm.ModelError("folded map is not bijective")
    if {(f[a], f[b]) for a, b in qd.arrows} != set(qa.arrows):
        raise dm.ModelError("folded map does not preserve arrows")
    if any(f[qd.tau[i]] != qa.tau[f[i]] for i in range(len(qd))):
        raise dm.ModelError("folded map does not commute with tau")
    return {model.name(i): [list(o) for o in qa.labels[f[i]]] for i in range(len(qd))}
