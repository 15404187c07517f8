"""Rectangular semi-standard tableaux and the E-type dictionaries.

A tableau is stored by rows.  ``Tableau.parse`` accepts the compact forms
"346" (one column), "13/45/67" (rows) and the parenthesised forms
"(3,4,6)" and "(1,3 / 2,5 / 4,6)".
"""
from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources


class TableauError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Tableau:
    rows: tuple

    def __post_init__(self):
        lens = {len(r) for r in self.rows}
        if len(lens) > 1:
            raise TableauError("tableau is not rectangular")

    # construction ------------------------------------------------------
    @classmethod
    def from_rows(cls, rows) -> "Tableau":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def from_columns(cls, cols, n: int | None = None) -> "Tableau":
        cols = [tuple(c) for c in cols]
        if not cols:
            return cls.empty(n or 0)
        n = len(cols[0])
        return cls(tuple(tuple(c[i] for c in cols) for i in range(n)))

    @classmethod
    def column(cls, entries) -> "Tableau":
        return cls.from_columns([tuple(entries)])

    @classmethod
    def empty(cls, n: int) -> "Tableau":
        return cls(tuple(() for _ in range(n)))

    @classmethod
    def parse(cls, text: str) -> "Tableau":
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
            if "/" in s:
                return cls.from_rows([[int(x) for x in part.split(",")] for part in s.split("/")])
            return cls.column([int(x) for x in s.split(",")])
        if "/" in s:
            return cls.from_rows([[int(ch) for ch in part.strip()] for part in s.split("/")])
        if re.fullmatch(r"\d+", s):
            return cls.column([int(ch) for ch in s])
        raise TableauError(f"cannot parse tableau {text!r}")

    # views -------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def columns(self) -> list[tuple]:
        return [tuple(r[a] for r in self.rows) for a in range(self.k)]

    def content(self) -> Counter:
        return Counter(x for r in self.rows for x in r)

    def is_ssyt(self) -> bool:
        for r in self.rows:
            if any(a > b for a, b in zip(r, r[1:])):
                return False
        for c in self.columns:
            if any(a >= b for a, b in zip(c, c[1:])):
                return False
        return True

    def __str__(self):
        if self.k == 1:
            return "(" + ",".join(map(str, self.columns[0])) + ")"
        return "(" + " / ".join(",".join(map(str, r)) for r in self.rows) + ")"

    def compact(self) -> str:
        if self.k == 1:
            return "".join(map(str, self.columns[0]))
        return "/".join("".join(map(str, r)) for r in self.rows)

    def to_json(self) -> dict:
        return {"rows": self.n, "cols": self.k, "entries": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, d) -> "Tableau":
        return cls.from_rows(d["entries"])


# ----------------------------------------------------------- operations

def row_union(S: Tableau, T: Tableau) -> Tableau:
    if S.n != T.n:
        raise TableauError("row counts differ")
    U = Tableau(tuple(tuple(sorted(a + b)) for a, b in zip(S.rows, T.rows)))
    if not U.is_ssyt():
        raise TableauError("row union is not semi-standard")
    return U


def union_all(ts, n: int) -> Tableau:
    out = Tableau.empty(n)
    for t in ts:
        out = row_union(out, t)
    return out


def is_factor(A: Tableau, B: Tableau) -> bool:
    return all(not (Counter(a) - Counter(b)) for a, b in zip(A.rows, B.rows))


def row_delete(A: Tableau, B: Tableau) -> Tableau:
    """A^{-1} B: delete the entries of each row of A from that row of B."""
    if A.n != B.n or not is_factor(A, B):
        raise TableauError("not a factor")
    rows = []
    for a, b in zip(A.rows, B.rows):
        rest = Counter(b) - Counter(a)
        rows.append(tuple(sorted(rest.elements())))
    return Tableau(tuple(rows))


def is_trivial_column(col) -> bool:
    return all(b == a + 1 for a, b in zip(col, col[1:]))


def is_trivial(T: Tableau) -> bool:
    return all(is_trivial_column(c) for c in T.columns)


def trivial_column(a: int, n: int) -> Tableau:
    return Tableau.column(range(a, a + n))


def reduce(T: Tableau) -> Tableau:
    """T_red: strip trivial-column factors, smallest first, while the rest stays SSYT."""
    cur = T
    n = T.n
    changed = True
    while changed and cur.k:
        changed = False
        lo = min(cur.rows[0])
        hi = max(cur.rows[-1])
        for a in range(lo, hi - n + 2):
            triv = trivial_column(a, n)
            if is_factor(triv, cur):
                rest = row_delete(triv, cur)
                if rest.is_ssyt():
                    cur = rest
                    changed = True
                    break
    return cur


def equivalent(S: Tableau, T: Tableau) -> bool:
    return reduce(S) == reduce(T)


def column_gap(col) -> int:
    return sum(b - a - 1 for a, b in zip(col, col[1:]))


def gap_weight(T: Tableau) -> int:
    return sum(column_gap(c) for c in T.columns)


# ------------------------------------------------------------ small gap

@dataclass(frozen=True)
class SmallGapData:
    tableau: Tableau
    i: tuple
    j: tuple
    w: tuple | None  # w[a] = index (0-based) into i for column a; None when k > 3


def _perm_length(p) -> int:
    return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


def _compose(u, v):
    """(u v)(a) = u(v(a))."""
    return tuple(u[v[a]] for a in range(len(v)))


def bruhat_leq(x, y) -> bool:
    """Tableau criterion for the Bruhat order on permutations (0-based images)."""
    k = len(x)
    for i in range(1, k):
        a = sorted(x[:i])
        b = sorted(y[:i])
        if any(p > q for p, q in zip(a, b)):
            return False
    return True


def small_gap_form(T: Tableau, max_entry: int | None = None) -> SmallGapData:
    n = T.n
    R = reduce(T)
    k = gap_weight(R)
    if k < 1:
        raise TableauError("tableau is trivial; no small-gap form")
    need = k - R.k
    if need < 0:
        raise TableauError("no small-gap representative found within bound")
    hi = max_entry if max_entry is not None else max(max(r) for r in R.rows if r)
    hi = max(hi, max(max(r) for r in R.rows if r))
    starts = range(1, hi - n + 2)
    found = []
    for combo in itertools.combinations_with_replacement(starts, need):
        U = R
        try:
            for a in combo:
                U = row_union(U, trivial_column(a, n))
        except TableauError:
            continue
        if all(column_gap(c) == 1 for c in U.columns) and U not in found:
            found.append(U)
    if not found:
        raise TableauError("no small-gap representative found within bound")
    if len(found) > 1:
        raise TableauError("small-gap representative not unique")
    Tp = found[0]
    cols = Tp.columns
    i_seq = tuple(c[0] for c in cols)
    r = []
    for c in cols:
        full = set(range(c[0], c[0] + n + 1))
        miss = full - set(c)
        (x,) = miss
        r.append(x)
    j_seq = tuple(sorted(r))
    if k > 3:
        # w_T only feeds ch_expand, which is limited to k <= 3
        return SmallGapData(Tp, i_seq, j_seq, None)
    target = Counter(cols)
    best = None
    for w in itertools.permutations(range(k)):
        got = []
        for a in range(k):
            lo = i_seq[w[a]]
            if not (lo <= j_seq[a] <= lo + n):
                break
            got.append(tuple(x for x in range(lo, lo + n + 1) if x != j_seq[a]))
        else:
            if Counter(got) == target:
                if best is None or _perm_length(w) > _perm_length(best):
                    best = w
                elif _perm_length(w) == _perm_length(best):
                    raise TableauError("w_T not unique")
    if best is None:
        raise TableauError("no valid w_T")
    return SmallGapData(Tp, i_seq, j_seq, best)


def ch_expand(T: Tableau, max_entry: int | None = None) -> list[tuple[int, Tableau]]:
    """Signed standard monomial expansion of ch(T), for at most 3 columns
    in the small-gap form.  Each term is (sign, tableau of the monomial)."""
    n = T.n
    if T.k == 0 or is_trivial(T):
        return [(1, Tableau.empty(n))] if T.k == 0 else [(1, T)]
    gw = gap_weight(reduce(T))
    if gw == 0:
        return [(1, T)]
    if gw >= 4:
        raise TableauError("KL regime not implemented")
    data = small_gap_form(T, max_entry)
    k = len(data.i)
    if k >= 4:
        raise TableauError("KL regime not implemented")
    w0 = tuple(range(k - 1, -1, -1))
    wT = data.w
    y = _compose(wT, w0)
    terms = []
    for u in itertools.permutations(range(k)):
        if not bruhat_leq(_compose(u, w0), y):
            continue  # Kazhdan-Lusztig polynomial vanishes
        cols = []
        for a in range(k):
            lo = data.i[u[a]]
            ja = data.j[a]
            if not (lo <= ja <= lo + n):
                break
            cols.append(tuple(x for x in range(lo, lo + n + 1) if x != ja))
        else:
            if any(len(c) != n for c in cols):
                continue
            sign = -1 if _perm_length(_compose(u, wT)) % 2 else 1
            mono = union_all([Tableau.column(c) for c in cols], n)
            terms.append((sign, mono))
    # combine equal monomials
    acc = {}
    for s, t in terms:
        acc[t] = acc.get(t, 0) + s
    return [(s, t) for t, s in sorted(acc.items()) if s]


# ---------------------------------------------------------- dominance

def restricted_shape(T: Tableau, i: int) -> tuple:
    return tuple(sum(1 for x in r if x <= i) for r in T.rows)


def _dominates(lam, mu) -> bool:
    s1 = s2 = 0
    for a, b in itertools.zip_longest(lam, mu, fillvalue=0):
        s1 += a
        s2 += b
        if s1 < s2:
            return False
    return True


def dominance_leq(S: Tableau, T: Tableau) -> bool:
    """S <= T: sh(T[i]) dominates sh(S[i]) for every i."""
    top = max([x for r in S.rows + T.rows for x in r] or [0])
    return all(_dominates(restricted_shape(T, i), restricted_shape(S, i)) for i in range(1, top + 1))


def tableau_max(ts) -> Tableau:
    ts = list(ts)
    if not ts:
        raise TableauError("empty expansion")
    for t in ts:
        if all(dominance_leq(s, t) for s in ts):
            return t
    raise TableauError("no maximum in dominance order")


def top_of(expansion) -> Tableau:
    """Largest tableau among the terms (sign, tableau) of an expansion."""
    return tableau_max(t for c, t in expansion if c)


def parse_monomial_sum(text: str) -> list[tuple[int, Tableau]]:
    """'P124P356 - P123P456' -> [(1, ...), (-1, ...)]."""
    s = text.replace(" ", "")
    terms = []
    for mo in re.finditer(r"([+-]?)((?:P\d+)+)", s):
        sign = -1 if mo.group(1) == "-" else 1
        cols = [tuple(int(ch) for ch in p) for p in re.findall(r"P(\d+)", mo.group(2))]
        terms.append((sign, union_all([Tableau.column(c) for c in cols], len(cols[0]))))
    return terms


# ----------------------------------------------------------- mutation

def tableau_mutation(labels: dict, arrows, k) -> Tableau:
    """T'_k = T_k^{-1} max(union of in-neighbours, union of out-neighbours).

    ``arrows`` is an iterable of (source, target, multiplicity) or pairs.
    Trivial columns are added to the maximum when T_k is not yet a factor.
    """
    Tk = labels[k]
    n = Tk.n
    ins, outs = [], []
    for arr in arrows:
        a, b = arr[0], arr[1]
        mult = arr[2] if len(arr) > 2 else 1
        if b == k:
            ins += [labels[a]] * mult
        elif a == k:
            outs += [labels[b]] * mult
    U_in = union_all(ins, n)
    U_out = union_all(outs, n)
    M = tableau_max([U_in, U_out])
    if not is_factor(Tk, M):
        hi = max([x for r in M.rows + Tk.rows for x in r])
        added = 0
        while not is_factor(Tk, M):
            for a in range(1, hi - n + 2):
                cand = row_union(M, trivial_column(a, n))
                if _factor_defect(Tk, cand) < _factor_defect(Tk, M):
                    M = cand
                    break
            else:
                raise TableauError("cannot make T_k a factor")
            added += 1
            if added > 3 * (Tk.k + 1):
                raise TableauError("cannot make T_k a factor")
    return reduce(row_delete(Tk, M))


def _factor_defect(A: Tableau, B: Tableau) -> int:
    return sum(sum((Counter(a) - Counter(b)).values()) for a, b in zip(A.rows, B.rows))


# ------------------------------------------------------- dictionaries

def _data(name: str):
    with resources.files("mclusters.data").joinpath(name).open() as fh:
        return json.load(fh)


def printed_e6_lists() -> dict[str, Tableau]:
    d = _data("dict_E6_printed.json")
    return {e["diagonal"]: Tableau.from_rows(e["tableau"]) for e in d["entries"]}


def is_cyclic_interval(col, N: int) -> bool:
    """True if the entries are cyclically consecutive in 1..N."""
    sset = set(col)
    return any(all((a + d - 1) % N + 1 in sset for d in range(len(col))) for a in range(1, N + 1))


def _succ(seq, a):
    s = sorted(seq)
    return s[(s.index(a) + 1) % len(s)]


def _pred(seq, a):
    s = sorted(seq)
    return s[(s.index(a) - 1) % len(s)]


def green_rule(i: int, red: dict, blue: dict, N: int = 7) -> dict[str, Tableau]:
    """Tableaux of [i,i+2]_G and [i,i+3]_G from the red and blue lists."""
    def lab(a):
        return (a - 1) % N + 1

    R2 = red[f"[{lab(i + 2)},{lab(i)}]_R"]
    B2 = blue[f"[{lab(i)},{lab(i + 2)}]_B"]
    common = set(R2.content()) & set(B2.content())
    if len(common) != 1:
        raise TableauError(f"green rule: common entries {sorted(common)} for i={i}")
    (a,) = common
    b = _succ(R2.content().elements(), a)
    c = _pred(B2.content().elements(), a)
    g2 = Tableau.column(sorted({a, b, c}))
    if is_cyclic_interval(g2.columns[0], N):
        # the literal reading lands on a frozen Pluecker coordinate; the
        # mirrored reading (predecessor in R, successor in B) is used instead
        b = _pred(R2.content().elements(), a)
        c = _succ(B2.content().elements(), a)
        g2 = Tableau.column(sorted({a, b, c}))
    R3 = red[f"[{lab(i + 3)},{lab(i)}]_R"]
    B3 = blue[f"[{lab(i)},{lab(i + 3)}]_B"]
    two = [t for t in (R3, B3) if t.k == 2]
    if len(two) != 1:
        raise TableauError(f"green rule: expected one two-column tableau for i={i}")
    (i1, j1), (i2, j2), (i3, j3) = two[0].rows
    g3 = Tableau.from_rows([[i1, i2], [j1, i3], [j2, j3]])
    return {f"[{lab(i)},{lab(i + 2)}]_G": g2, f"[{lab(i)},{lab(i + 3)}]_G": g3}


@dataclass
class Dictionary:
    """Bijection between the objects of C_E (as m=1 colored diagonals) and tableaux."""

    typ: str
    by_diag: dict  # diagonal label -> Tableau
    provenance: dict
    quiver: object  # diagonal translation quiver
    bij: dict  # diagonal label -> AR object
    N: int

    def __post_init__(self):
        self.by_tab = {}
        for d, t in self.by_diag.items():
            key = reduce(t)
            if key in self.by_tab:
                raise TableauError(f"dictionary not injective at {t}")
            self.by_tab[key] = d

    def __len__(self):
        return len(self.by_diag)

    def tableau(self, d) -> Tableau:
        if isinstance(d, str):
            from .diagonal_model import parse_diagonal, model_set
            d = parse_diagonal(d, self.N, model_set(self.typ, 1))
        try:
            return self.by_diag[d]
        except KeyError:
            raise TableauError(f"dictionary entry missing for {d}") from None

    def diagonal(self, T: Tableau):
        try:
            return self.by_tab[reduce(T)]
        except KeyError:
            raise TableauError(f"no object with tableau {T}") from None

    def rank_distribution(self) -> dict:
        return dict(sorted(Counter(t.k for t in self.by_diag.values()).items()))

    def to_json(self) -> dict:
        from .diagonal_model import fmt_diagonal
        return {"type": self.typ, "format_version": 1, "entries": [
            {"diagonal": fmt_diagonal(d, self.N), "tableau": t.to_json(),
             "provenance": self.provenance[d]} for d, t in sorted(self.by_diag.items())]}


_DICT_CACHE: dict = {}


def _model(typ):
    from .ar_category import CategorySpec
    from .diagonal_model import model_quiver, scaled_anchor, anchor_bijection
    spec = CategorySpec(typ, 1)
    ds, q = model_quiver(typ, 1)
    bij = anchor_bijection(spec, q, spec.quiver, scaled_anchor(typ, 1))
    return spec, ds, q, bij


def figure_dictionary(typ: str) -> dict:
    """Diagonal -> tableau from the transcribed labelled AR quiver."""
    from .ar_category import figure_position
    spec, ds, q, bij = _model(typ)
    inv = {v: k for k, v in bij.items()}
    name = "dict_E6_figure.json" if typ == "E6" else f"dict_{typ}.json"
    out, prov = {}, {}
    for e in _data(name)["entries"]:
        obj = spec.reduce(figure_position(spec, e["t"], e["root"]))
        d = inv[obj]
        T = Tableau.from_rows(e["tableau"])
        if d in out and out[d] != T:
            raise TableauError(f"inconsistent transcription at {d}: {out[d]} vs {T}")
        out[d] = T
        prov.setdefault(d, "figure transcription: " + e["provenance"])
    return out, prov


def dictionary(typ: str) -> Dictionary:
    if typ in _DICT_CACHE:
        return _DICT_CACHE[typ]
    from .diagonal_model import parse_diagonal
    spec, ds, q, bij = _model(typ)
    if typ == "E6":
        printed = printed_e6_lists()
        red = {k: v for k, v in printed.items() if k.endswith("_R")}
        blue = {k: v for k, v in printed.items() if k.endswith("_B")}
        out, prov = {}, {}
        for k, v in printed.items():
            d = parse_diagonal(k, ds.N, ds)
            out[d] = v
            prov[d] = "printed list"
        for i in range(1, ds.N + 1):
            for k, v in green_rule(i, red, blue, ds.N).items():
                d = parse_diagonal(k, ds.N, ds)
                out[d] = v
                prov[d] = "green rule"
    else:
        out, prov = figure_dictionary(typ)
    if len(out) != len(q):
        raise TableauError(f"dictionary has {len(out)} entries, expected {len(q)}")
    D = Dictionary(typ, out, prov, q, bij, ds.N)
    _DICT_CACHE[typ] = D
    return D


def tableau_tau(typ: str, T: Tableau) -> Tableau:
    D = dictionary(typ)
    d = D.diagonal(T)
    v = D.quiver.vertex(d)
    return D.by_diag[D.quiver.labels[D.quiver.tau[v]]]


def mesh_sum_check(typ: str) -> dict:
    """Check S1 u S2 = T1 u ... u Tk (entry multisets) on every mesh."""
    D = dictionary(typ)
    q = D.quiver
    rep = {"type": typ, "meshes": 0, "passed": 0, "failures": [], "rowwise_failures": [],
           "leaf_meshes": 0, "leaf_content_equal": 0}
    for y in range(len(q)):
        mids = q.pred(y)
        S1 = D.by_diag[q.labels[q.tau[y]]]
        S2 = D.by_diag[q.labels[y]]
        Ts = [D.by_diag[q.labels[z]] for z in mids]
        lhs = S1.content() + S2.content()
        rhs = Counter()
        for t in Ts:
            rhs += t.content()
        if len(mids) < 2:
            rep["leaf_meshes"] += 1
            rep["leaf_content_equal"] += int(lhs == rhs)
            continue
        rep["meshes"] += 1
        if lhs == rhs:
            rep["passed"] += 1
        else:
            rep["failures"].append((str(S1), str(S2), [str(t) for t in Ts]))
        rows_l = [Counter(a) + Counter(b) for a, b in zip(S1.rows, S2.rows)]
        rows_r = [sum((Counter(t.rows[i]) for t in Ts), Counter()) for i in range(S1.n)]
        if rows_l != rows_r:
            rep["rowwise_failures"].append((str(S1), str(S2)))
    rep["ok"] = not rep["failures"]
    return rep
