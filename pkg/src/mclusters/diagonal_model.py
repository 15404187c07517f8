"""Colored diagonals in a polygon and their translation quivers.

A colored diagonal is stored as (color, i, o): its base point i in 1..N and
offset o, with N the number of polygon vertices.

    (R, i, o) = [i, i+o]_R      (B, i, o) = [i+o, i]_B      (G, i, o) = [i, i+o]_G

so that rho swaps R and B keeping (i, o), and the rotation tau subtracts one
from the base point.  With the twisted translation tau0 every crossing of a
base point between N and 1 is composed with rho.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .quiver_core import StableTranslationQuiver, check_stability, find_isomorphism_seeded


class ModelError(ValueError):
    pass


TYPE_PARAMS = {
    # type: (k1 reds, k2 blues, N = a m + 1, translation)
    "E6": (2, 2, 6, "tau0"),
    "E7": (3, 2, 9, "tau"),
    "E8": (4, 2, 15, "tau"),
}

ANCHORS = {
    "E6": ["[1,6]_R", "[1,5]_R", "[2,5]_G", "[5,1]_B", "[2,4]_G", "[6,1]_B"],
    "E7": ["[10,6]_R", "[1,6]_R", "[1,5]_R", "[2,5]_G", "[5,1]_B", "[2,4]_G", "[6,1]_B"],
    "E8": ["[16,7]_R", "[16,6]_R", "[1,6]_R", "[1,5]_R", "[2,5]_G", "[5,1]_B", "[2,4]_G",
           "[6,1]_B"],
}
# anchors in the order above correspond to -alpha_n, ..., -alpha_1


@dataclass(frozen=True)
class DiagonalSet:
    N: int
    green: tuple
    red: tuple
    blue: tuple
    params: tuple = ()
    convention: str = "m1"

    @property
    def members(self) -> list[tuple]:
        out = []
        for col, offs in (("G", self.green), ("R", self.red), ("B", self.blue)):
            for o in offs:
                for i in range(1, self.N + 1):
                    out.append((col, i, o))
        return out

    def offsets(self, color):
        return {"G": self.green, "R": self.red, "B": self.blue}[color]

    def __contains__(self, d) -> bool:
        c, i, o = d
        return 1 <= i <= self.N and o in self.offsets(c)

    @property
    def symmetric(self) -> bool:
        return self.red == self.blue

    def counts(self) -> dict:
        return {"G": len(self.green) * self.N, "R": len(self.red) * self.N,
                "B": len(self.blue) * self.N}


def _check(N, offs):
    for o in offs:
        if o < 2 or o > N - 2:
            raise ModelError(f"offset {o} is a boundary segment or out of range in a {N}-gon")


def build_P(r: int, s: int, t: int, n: int) -> DiagonalSet:
    """P_{r,s,t} in the (n+3)-gon."""
    if n < max(r + s + 1, r + t + 1):
        raise ModelError("n too small for the tree")
    N = n + 3
    green = tuple(range(2, r + 3))
    red = tuple(range(r + 3, r + s + 3))
    blue = tuple(range(r + 3, r + t + 3))
    _check(N, green + red + blue)
    return DiagonalSet(N, green, red, blue, (r, s, t), "m1")


def build_P_m(n: int, m: int, k1: int, k2: int, convention: str = "sec3") -> DiagonalSet:
    """m-diagonal set with two greens, k1 reds and k2 blues in the (n+3)-gon."""
    N = n + 3
    if convention == "sec3":
        green = (m + 1, 2 * m + 1)
        red = tuple((j + 2) * m + 1 for j in range(1, k1 + 1))
        blue = tuple((j + 2) * m + 1 for j in range(1, k2 + 1))
    elif convention == "sec4":
        green = (2 * m, 3 * m)
        red = tuple((j + 3) * m for j in range(1, k1 + 1))
        blue = tuple((j + 3) * m for j in range(1, k2 + 1))
    else:
        raise ModelError(f"unknown convention {convention}")
    _check(N, green + red + blue)
    if m == 1:
        convention = "m1"
    return DiagonalSet(N, green, red, blue, (m, k1, k2), convention)


def model_set(typ: str, m: int, convention: str = "sec3") -> DiagonalSet:
    k1, k2, a, _ = TYPE_PARAMS[typ]
    N = a * m + 1
    return build_P_m(N - 3, m, k1, k2, convention)


# ------------------------------------------------------- notation helpers

_DIAG = re.compile(r"^\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]_?\{?([RBG])\}?\s*$")


def parse_diagonal(text: str, N: int, ds: DiagonalSet | None = None) -> tuple:
    mo = _DIAG.match(text)
    if not mo:
        raise ModelError(f"cannot parse diagonal {text!r}")
    a, b, c = int(mo.group(1)), int(mo.group(2)), mo.group(3)
    a = (a - 1) % N + 1
    b = (b - 1) % N + 1
    if c == "R":
        d = ("R", a, (b - a) % N)
    elif c == "B":
        d = ("B", b, (a - b) % N)
    else:
        d = ("G", a, (b - a) % N)
        if ds is not None and d not in ds:
            d = ("G", b, (a - b) % N)
    if ds is not None and d not in ds:
        raise ModelError(f"{text} is not in the diagonal set")
    return d


def fmt_diagonal(d: tuple, N: int) -> str:
    c, i, o = d
    j = (i + o - 1) % N + 1
    if c == "B":
        return f"[{j},{i}]_B"
    return f"[{i},{j}]_{c}"


def endpoints(d: tuple, N: int) -> tuple[int, int]:
    """(start, end) of the oriented diagonal; for G the pair (i, i+o)."""
    c, i, o = d
    j = (i + o - 1) % N + 1
    return (j, i) if c == "B" else (i, j)


# ------------------------------------------------------- automorphisms

def rho(d):
    c, i, o = d
    return ({"R": "B", "B": "R"}.get(c, c), i, o)


def _shift(d, k: int, N: int, twisted: bool):
    """Move the base point by k single steps; rho at every 1 <-> N crossing."""
    c, i, o = d
    step = 1 if k > 0 else -1
    for _ in range(abs(k)):
        j = i + step
        if j > N:
            j = 1
            if twisted:
                c = {"R": "B", "B": "R"}.get(c, c)
        elif j < 1:
            j = N
            if twisted:
                c = {"R": "B", "B": "R"}.get(c, c)
        i = j
    return (c, i, o)


def apply_auto(which: str, d: tuple, ds: DiagonalSet, k: int = 1):
    if which == "rho":
        if not ds.symmetric:
            raise ModelError("rho needs a symmetric set")
        return rho(d)
    if which == "tau":
        return _shift(d, -k, ds.N, False)
    if which == "tau0":
        if not ds.symmetric:
            raise ModelError("tau0 needs a symmetric set")
        return _shift(d, -k, ds.N, True)
    raise ModelError(f"unknown automorphism {which}")


def rotation_successors(d: tuple, ds: DiagonalSet, translation: str = "tau", step: int = 1):
    """Minimal clockwise rotations of d (with step m in the m-diagonal sets)."""
    twisted = translation == "tau0"
    c, i, o = d
    out = []
    cands = [(c, i, o + step), _shift((c, i, o - step), step, ds.N, twisted)]
    gb = max(ds.green)
    nxt = gb + step
    if c == "G" and o == gb:
        cands += [("R", i, nxt), ("B", i, nxt)]
    if c in "RB" and o == nxt:
        cands.append(_shift(("G", i, gb), step, ds.N, twisted))
    for e in cands:
        if e not in ds:
            continue
        if e not in out:
            out.append(e)
    return out


def build_diagonal_quiver(ds: DiagonalSet, translation: str = "tau", step: int | None = None
                          ) -> StableTranslationQuiver:
    if translation == "tau0" and not ds.symmetric:
        raise ModelError("tau0 needs a symmetric set")
    if step is None:
        step = ds.params[0] if ds.convention in ("sec3", "sec4") else 1
    labels = ds.members
    idx = {d: k for k, d in enumerate(labels)}
    arrows = set()
    for d in labels:
        for e in rotation_successors(d, ds, translation, step):
            arrows.add((idx[d], idx[e]))
    twisted = translation == "tau0"
    tau = [idx[_shift(d, -step, ds.N, twisted)] for d in labels]
    rh = [idx[rho(d)] for d in labels] if ds.symmetric else None
    q = StableTranslationQuiver(labels, arrows, tau, rh,
                                {"kind": "diagonals", "N": ds.N, "translation": translation,
                                 "step": step, "convention": ds.convention,
                                 "topology": "moebius" if twisted and step % 2 else "cylinder"})
    ok, bad = check_stability(q)
    if not ok:
        raise ModelError(f"diagonal quiver not stable at {labels[bad] if bad is not None else '?'}")
    return q


def model_quiver(typ: str, m: int, convention: str = "sec3"):
    ds = model_set(typ, m, convention)
    return ds, build_diagonal_quiver(ds, TYPE_PARAMS[typ][3], m)


def scaled_anchor(typ: str, m: int, convention: str = "sec3") -> list[tuple]:
    """Anchor diagonals (ordered -alpha_n .. -alpha_1) for the m-model."""
    ds1 = model_set(typ, 1)
    ds = model_set(typ, m, convention)
    out = []
    for s in ANCHORS[typ]:
        c, i, o = parse_diagonal(s, ds1.N, ds1)
        if m == 1:
            out.append((c, i, o))
            continue
        # base point measured from vertex 1 with the nearest signed offset
        di = (i - 1) % ds1.N
        if di > ds1.N // 2:
            di -= ds1.N
        i2 = 1 + m * di
        o2 = m * (o - 1) + 1 if convention == "sec3" else m * o
        d = (c, (i2 - 1) % ds.N + 1, o2)
        if d not in ds:
            raise ModelError(f"scaled anchor {d} not in set")
        out.append(d)
    return out


# ------------------------------------------------------------- folding

def fold_f4(q: StableTranslationQuiver) -> StableTranslationQuiver:
    """Quotient by rho: vertices are rho-orbits, arrows induced and single."""
    if q.rho is None:
        raise ModelError("folding needs rho")
    orbit_of = {}
    labels = []
    for v in range(len(q)):
        key = tuple(sorted({v, q.rho[v]}))
        if key not in orbit_of:
            orbit_of[key] = len(labels)
            labels.append(key)
    vmap = {v: orbit_of[tuple(sorted({v, q.rho[v]}))] for v in range(len(q))}
    arrows = {(vmap[a], vmap[b]) for a, b in q.arrows}
    tau = [vmap[q.tau[k[0]]] for k in labels]
    names = [tuple(q.labels[v] for v in k) for k in labels]
    meta = dict(q.meta)
    meta["kind"] = "folded"
    return StableTranslationQuiver(names, arrows, tau, None, meta)


# ----------------------------------------------------- anchored bijection

def anchor_bijection(spec, q_diag: StableTranslationQuiver, q_ar: StableTranslationQuiver,
                     anchors: list[tuple]) -> dict:
    """Translation-quiver isomorphism diagonal -> AR object fixing the anchors.

    ``anchors`` lists the anchor diagonals for -alpha_n, ..., -alpha_1.
    Returns a dict diagonal label -> AR object label.
    """
    from .ar_category import anchor_objects

    aobj = anchor_objects(spec)
    n = len(anchors)
    seed = {}
    for k, d in enumerate(anchors):
        root = n - k
        seed[q_diag.vertex(d)] = q_ar.vertex(aobj[root])
    f = find_isomorphism_seeded(q_diag, q_ar, seed)
    if f is None:
        raise ModelError("no isomorphism respecting the anchor")
    return {q_diag.labels[a]: q_ar.labels[b] for a, b in f.items()}
