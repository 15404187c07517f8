"""Command line interface: ``mclusters <command> [options]``.

Exit codes: 0 ok, 1 invariant failure, 2 bad configuration, 3 long-run guard.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import ar_category as ar
from . import diagonal_model as dm
from . import grassmannian as gr
from . import render as rd
from . import tableaux as tb
from . import tilting
from .model import ClusterModel, ConfigError, quotient_for, witness_isomorphism
from .quiver_core import check_stability, vertex_count_formula

log = logging.getLogger("mclusters")

OK, INVARIANT, BAD_CONFIG, LONG_GUARD = 0, 1, 2, 3
DEFAULT_SEED = 0

# (type, m) pairs whose enumeration needs --long
LONG_RUNS = {("E8", 2), ("E7", 3), ("E8", 3)}


@dataclass
class RunConfig:
    command: str
    type: str = "E6"
    m: int = 1
    seed: int = DEFAULT_SEED
    out: str | None = None
    long: bool = False
    convention: str = "sec3"
    threads: int | None = None
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.type not in ("E6", "E7", "E8", "F4"):
            raise ConfigError(f"unsupported type {self.type!r}")
        if self.command in ("build", "compat", "pair-report", "render", "mutate", "enumerate") \
                and self.m not in (1, 2, 3):
            raise ConfigError("m must be 1, 2 or 3")
        if self.command in ("dict", "mesh-check", "twist-check") and self.type == "F4":
            raise ConfigError("tableau dictionaries exist for E6, E7 and E8 only")


class InvariantFailure(RuntimeError):
    pass


def _emit(cfg: RunConfig, payload, name: str = "out.json"):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=1, sort_keys=False)
    if cfg.out:
        p = Path(cfg.out)
        if p.suffix == "" or p.is_dir():
            p.mkdir(parents=True, exist_ok=True)
            p = p / name
        p.write_text(text if text.endswith("\n") else text + "\n")
        print(f"wrote {p}")
    else:
        print(text)


def _load_cluster(model: ClusterModel, spec: str) -> tuple:
    if spec == "anchor":
        return model.anchor_cluster()
    if spec.startswith("["):
        return tuple(sorted(model.index(s.strip()) for s in spec.split(";") if s.strip()))
    try:
        d = json.loads(Path(spec).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read cluster file {spec}: {e}") from None
    return model.cluster_from_json(d)


# ------------------------------------------------------------ commands

def cmd_build(cfg: RunConfig) -> int:
    model = ClusterModel(cfg.type, cfg.m, cfg.convention)
    qa = quotient_for(cfg.type, cfg.m)
    qd = model.folded if cfg.type == "F4" else model.qdiag
    okA, _ = check_stability(qa)
    okD, _ = check_stability(qd)
    wit = witness_isomorphism(model)
    summary = {"type": cfg.type, "m": cfg.m, "convention": cfg.convention,
               "ar_vertices": len(qa), "diagonal_vertices": len(qd),
               "stable": okA and okD, "isomorphism": "anchor-respecting witness found"}
    if cfg.type != "F4":
        summary["expected_vertices"] = vertex_count_formula(cfg.type, cfg.m)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "ar_quiver.json").write_text(json.dumps(qa.to_json()) + "\n")
        (out / "diagonal_quiver.json").write_text(json.dumps(qd.to_json()) + "\n")
        (out / "witness.json").write_text(json.dumps(wit, indent=1) + "\n")
        (out / "ar_quiver.dot").write_text(qa.to_dot())
        summary["files"] = sorted(p.name for p in out.iterdir())
    print(json.dumps(summary, indent=1))
    if not (okA and okD) or summary.get("expected_vertices", len(qa)) != len(qa):
        return INVARIANT
    return OK


def cmd_compat(cfg: RunConfig) -> int:
    model = ClusterModel(cfg.type, cfg.m, cfg.convention)
    k = len(model.objects)
    if cfg.type == "F4":
        g = model.graph
        degree = [[0 if i == j or g.compatible(i, j) else 1 for j in range(k)] for i in range(k)]
    else:
        degree = model.degree
    payload = {"type": cfg.type, "m": cfg.m, "objects": [model.name(i) for i in range(k)],
               "degree": degree, "root_labels": [model.root_label(i) for i in range(k)]}
    if cfg.type == "F4":
        payload["note"] = "F4 entries are 0 (compatible) or 1 (not compatible)"
    _emit(cfg, payload, "compat.json")
    return OK


def cmd_enumerate(cfg: RunConfig) -> int:
    model = ClusterModel(cfg.type, cfg.m, cfg.convention)
    expected = tilting.count_formula(cfg.type, cfg.m)
    g = model.graph
    if (cfg.type, cfg.m) in LONG_RUNS and not cfg.long:
        r = tilting.orbit_weighted_count(g, model.orbits(), sample=1, seed=cfg.seed)
        print(json.dumps({"type": cfg.type, "m": cfg.m, "expected": expected,
                          "sampled_lower_bound": r["lower_bound"],
                          "consistent": r["lower_bound"] <= expected}, indent=1))
        print(f"full enumeration of {cfg.type} m={cfg.m} needs --long", file=sys.stderr)
        return LONG_GUARD
    if cfg.extra.get("count_only"):
        t0 = time.time()
        count, _ = tilting.enumerate_clusters(g, workers=cfg.threads, collect=False)
        log.info("enumerated in %.1fs", time.time() - t0)
        print(count)
    else:
        count = 0
        sink = open(cfg.out, "w") if cfg.out else sys.stdout
        try:
            for c in tilting.iter_clusters(g):
                count += 1
                sink.write(json.dumps(model.cluster_json(c)) + "\n")
                if count % 100000 == 0:
                    log.info("%d clusters", count)
        finally:
            if cfg.out:
                sink.close()
        print(f"total {count}", file=sys.stderr)
    if count != expected:
        print(f"count {count} differs from formula {expected}", file=sys.stderr)
        return INVARIANT
    return OK


def cmd_mutate(cfg: RunConfig) -> int:
    model = ClusterModel(cfg.type, cfg.m, cfg.convention)
    cl = _load_cluster(model, cfg.extra["cluster"])
    if not model.is_cluster(cl):
        raise ConfigError("input is not a cluster")
    k = model.index(cfg.extra["object"])
    target = model.index(cfg.extra["target"]) if cfg.extra.get("target") else None
    rest = [v for v in cl if v != k]
    comps = tilting.complements(model.graph, rest)
    try:
        new = tilting.mutate(model.graph, cl, k, target)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    payload = model.cluster_json(new)
    payload["replaced"] = model.name(k)
    payload["complements"] = [model.name(c) for c in comps]
    _emit(cfg, payload, "cluster.json")
    return OK if len(comps) == cfg.m + 1 and model.is_cluster(new) else INVARIANT


def cmd_dict(cfg: RunConfig) -> int:
    D = tb.dictionary(cfg.type)
    if cfg.extra.get("object"):
        print(D.tableau(cfg.extra["object"]))
        return OK
    if cfg.extra.get("tableau"):
        print(dm.fmt_diagonal(D.diagonal(tb.Tableau.parse(cfg.extra["tableau"])), D.N))
        return OK
    if cfg.extra.get("validate"):
        mesh = tb.mesh_sum_check(cfg.type)
        eq = all(tb.tableau_tau(cfg.type, t) == D.by_diag[D.quiver.labels[D.quiver.tau[
            D.quiver.vertex(d)]]] for d, t in D.by_diag.items())
        rep = {"type": cfg.type, "size": len(D), "rank_distribution": D.rank_distribution(),
               "bijective": len(D.by_tab) == len(D), "tau_equivariant": eq,
               "meshes_passed": f"{mesh['passed']}/{mesh['meshes']}"}
        print(json.dumps(rep, indent=1))
        return OK if mesh["ok"] and eq else INVARIANT
    _emit(cfg, D.to_json(), f"dict_{cfg.type}.json")
    return OK


def cmd_mesh(cfg: RunConfig) -> int:
    rep = tb.mesh_sum_check(cfg.type)
    _emit(cfg, rep, f"mesh_{cfg.type}.json")
    return OK if rep["ok"] else INVARIANT


def cmd_twist(cfg: RunConfig) -> int:
    pairs = cfg.extra.get("pairs", "all")
    sample = None if pairs == "all" else int(pairs)
    rep = gr.verify_tau(cfg.type, sample=sample, seed=cfg.seed)
    _emit(cfg, rep, f"twist_{cfg.type}.json")
    print(f"{rep['matched']} matched, {rep['failed']} failed", file=sys.stderr)
    return OK if rep["ok"] else INVARIANT


def cmd_pairs(cfg: RunConfig) -> int:
    model = ClusterModel(cfg.type, cfg.m, cfg.convention)
    colors = None
    if cfg.extra.get("colors"):
        colors = tuple(c.strip().upper() for c in cfg.extra["colors"].split(","))
        if len(colors) != 2:
            raise ConfigError("--colors takes two colours, e.g. R,B")
    rep = model.pair_report(colors, not cfg.extra.get("all_rotations"))
    _emit(cfg, rep, "pairs.json")
    return OK


def cmd_render(cfg: RunConfig) -> int:
    model = ClusterModel(cfg.type, cfg.m, cfg.convention)
    cl = _load_cluster(model, cfg.extra.get("cluster", "anchor"))
    diags = [d for i in cl for d in model.lifts(i)]
    title = f"{cfg.type} m={cfg.m}"
    fmt = cfg.extra.get("format", "svg")
    text = rd.svg(diags, model.N, title) if fmt == "svg" else rd.tikz(diags, model.N)
    _emit(cfg, text, f"cluster.{'svg' if fmt == 'svg' else 'tex'}")
    return OK


def selfcheck(quick: bool = False) -> list[tuple[str, bool]]:
    res = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception as e:  # report, keep going
            log.error("%s: %s", name, e)
            ok = False
        res.append((name, ok))
        print(f"{'ok  ' if ok else 'FAIL'} {name}", flush=True)

    ms = (1, 2) if quick else (1, 2, 3)
    for typ in ("E6", "E7", "E8"):
        for m in ms:
            check(f"quotient {typ} m={m} size and stability",
                  lambda: len(ar.CategorySpec(typ, m).quiver) == vertex_count_formula(typ, m)
                  and check_stability(ar.CategorySpec(typ, m).quiver)[0])
    for typ in ("E6", "E7", "E8", "F4"):
        for m in (1, 2):
            check(f"anchored isomorphism {typ} m={m}",
                  lambda: len(witness_isomorphism(ClusterModel(typ, m))) > 0)
    for typ, m in [("F4", 1), ("F4", 2), ("E6", 1), ("E6", 2), ("E7", 1)]:
        check(f"cluster count {typ} m={m}",
              lambda: tilting.enumerate_clusters(ClusterModel(typ, m).graph, collect=False)[0]
              == tilting.count_formula(typ, m))
    check("Calabi-Yau E6 m=2", lambda: not ar.check_cy(ar.CategorySpec("E6", 2)))
    check("root labels E7 m=1", lambda: not ar.check_root_labels(ar.CategorySpec("E7", 1)))
    for typ in ("E6", "E7", "E8"):
        check(f"dictionary {typ} meshes", lambda: tb.mesh_sum_check(typ)["ok"])
    check("exchange closure E6", lambda: gr.exchange_closure("E6").labels()
          == {tb.reduce(t) for t in tb.dictionary("E6").by_diag.values()})
    check("twist E6", lambda: gr.verify_tau("E6")["ok"])
    return res


def cmd_selfcheck(cfg: RunConfig) -> int:
    res = selfcheck(cfg.extra.get("quick", False))
    return OK if all(ok for _, ok in res) else INVARIANT


COMMANDS = {
    "build": cmd_build, "compat": cmd_compat, "enumerate": cmd_enumerate, "mutate": cmd_mutate,
    "dict": cmd_dict, "mesh-check": cmd_mesh, "twist-check": cmd_twist,
    "pair-report": cmd_pairs, "render": cmd_render, "selfcheck": cmd_selfcheck,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mclusters",
                                description="m-cluster categories of exceptional type")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, m=True):
        sp.add_argument("--type", default="E6", help="E6, E7, E8 or F4")
        if m:
            sp.add_argument("--m", type=int, default=1)
            sp.add_argument("--convention", default="sec3", choices=["sec3", "sec4"],
                            help="offset convention of the m-diagonal model")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--out", default=None, help="output file or directory")
        sp.add_argument("--threads", type=int, default=None)
        return sp

    common(sub.add_parser("build", help="quivers, witness isomorphism, JSON/DOT"))
    common(sub.add_parser("compat", help="compatibility degree matrix"))
    sp = common(sub.add_parser("enumerate", help="m-cluster tilting objects"))
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--long", action="store_true", help="allow long enumerations")
    sp = common(sub.add_parser("mutate", help="replace one object of a cluster"))
    sp.add_argument("--cluster", default="anchor", help="'anchor', a JSON file or '[a,b]_R;...'")
    sp.add_argument("--object", required=True)
    sp.add_argument("--target", default=None)
    sp = common(sub.add_parser("dict", help="diagonal <-> tableau dictionary"), m=False)
    sp.add_argument("--object", default=None, help='diagonal, e.g. "[1,6]_R"')
    sp.add_argument("--tableau", default=None, help='tableau, e.g. "(3,4,6)"')
    sp.add_argument("--validate", action="store_true")
    common(sub.add_parser("mesh-check", help="mesh sums of a labelled quiver"), m=False)
    sp = common(sub.add_parser("twist-check", help="twist versus translation"), m=False)
    sp.add_argument("--pairs", default="all", help="'all' or a sample size")
    sp = common(sub.add_parser("pair-report", help="compatible pairs up to rotation"))
    sp.add_argument("--colors", default=None, help="e.g. R,R or G,B")
    sp.add_argument("--all-rotations", action="store_true")
    sp = common(sub.add_parser("render", help="SVG/TikZ of a cluster"))
    sp.add_argument("--cluster", default="anchor")
    sp.add_argument("--format", default="svg", choices=["svg", "tikz"])
    sp = sub.add_parser("selfcheck", help="run the invariant suite")
    sp.add_argument("--quick", action="store_true")
    return p


def config_from_args(ns) -> RunConfig:
    base = {"command", "type", "m", "seed", "out", "long", "convention", "threads", "verbose"}
    extra = {k: v for k, v in vars(ns).items() if k not in base}
    return RunConfig(command=ns.command, type=getattr(ns, "type", "E6"), m=getattr(ns, "m", 1),
                     seed=getattr(ns, "seed", DEFAULT_SEED), out=getattr(ns, "out", None),
                     long=getattr(ns, "long", False),
                     convention=getattr(ns, "convention", "sec3"),
                     threads=getattr(ns, "threads", None), extra=extra)


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        if cfg.threads:
            os.environ["MCLUSTERS_THREADS"] = str(cfg.threads)
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, dm.ModelError, tb.TableauError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_CONFIG
    except (tilting.TheoryViolation, ar.CategoryError, InvariantFailure) as e:
        print(f"invariant failure: {e}", file=sys.stderr)
        return INVARIANT


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
