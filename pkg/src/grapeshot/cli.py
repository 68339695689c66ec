"""Command-line front end: ``grapeshot {homology,verify,primitives}``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .coalgebra import HomologyCoalgebra, d_squared_zero, verify_coalgebra_axioms
from .errors import GrapeshotError, GraphError, NoEssentialVertex, NotAGrape
from .graph_core import (decompose_grapes, graph_from_dict, has_bivalent_vertex, load_graph,
                         smooth_bivalent)
from .grapes_theory import (predicted_primitives, primitive_span_matches, sl_basis,
                            sl_external_product, verify_formality, verify_sl_isomorphism)
from .linalg import rank_q, solve_q
from .oracle import cross_check
from .swiatkowski import SwiatkowskiComplex

SUITES = ("coalgebra", "sl", "primitivity", "formality", "oracle")
GRAPE_SUITES = {"sl", "primitivity", "formality"}
ORACLE_MAX_WEIGHT = 3


@dataclass
class RunConfig:
    command: str
    graph: str
    max_weight: int = 4
    max_degree: int = None
    ring: str = "int"
    root: tuple = None
    suites: tuple = SUITES
    fmt: str = "json"
    jobs: int = 1


class InputError(Exception):
    pass


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def _root(text):
    if ":" not in text:
        raise argparse.ArgumentTypeError("expected V:E")
    v, e = text.split(":", 1)
    return (v, e)


def _suites(text):
    names = [s.strip() for s in text.split(",") if s.strip()]
    if names == ["all"]:
        return SUITES
    bad = [s for s in names if s not in SUITES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown suite(s): {', '.join(bad)}")
    return tuple(names)


def build_parser():
    p = argparse.ArgumentParser(prog="grapeshot",
                                description="Homology of graph configuration spaces "
                                            "with the coshuffle comultiplication.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("homology", "verify", "primitives"):
        s = sub.add_parser(name)
        s.add_argument("--graph", required=True, help="graph JSON file")
        s.add_argument("--max-weight", type=_nonneg, default=4)
        s.add_argument("--max-degree", type=_nonneg, default=None,
                       help="defaults to the number of essential vertices")
        s.add_argument("--ring", choices=("int", "rat"), default="int")
        s.add_argument("--root", type=_root, default=None, metavar="V:E")
        s.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        s.add_argument("--jobs", type=int, default=None)
        if name == "verify":
            s.add_argument("--suites", type=_suites, default=SUITES,
                           help="comma list of %s, or all" % ",".join(SUITES))
    return p


def config_from_args(args):
    jobs = args.jobs
    if jobs is None:
        env = os.environ.get("GRAPESHOT_JOBS")
        try:
            jobs = int(env) if env else 1
        except ValueError:
            raise InputError(f"GRAPESHOT_JOBS must be an integer, got {env!r}") from None
    return RunConfig(args.command, args.graph, args.max_weight, args.max_degree, args.ring,
                     args.root, getattr(args, "suites", SUITES), args.fmt, max(1, jobs))


def _load(cfg):
    try:
        g, root = load_graph(cfg.graph)
    except OSError as exc:
        raise InputError(f"{cfg.graph}: {exc.strerror}") from None
    except GraphError as exc:
        raise InputError(str(exc)) from None
    if has_bivalent_vertex(g):
        g = smooth_bivalent(g)
    return g, (cfg.root or root)


def _grapes(g, root):
    try:
        return decompose_grapes(g, root)
    except GraphError as exc:
        raise InputError(str(exc)) from None


def _max_degree(cfg, cx):
    return cx.max_degree if cfg.max_degree is None else cfg.max_degree


def _map(cfg, fn, items):
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# ------------------------------------------------------------------ homology

def cmd_homology(cfg):
    g, _ = _load(cfg)
    cx = SwiatkowskiComplex(g, ring=cfg.ring)
    rows = [{"degree": i, "weight": k, "betti": b, "torsion": t}
            for i, k, b, t in cx.table(_max_degree(cfg, cx), cfg.max_weight)]
    return {"graph": cfg.graph, "ring": cfg.ring, "rows": rows}, 0


# ------------------------------------------------------------------ verify

def _entry(theorem, graph, slc, predicted, computed, ok):
    return {"theorem": theorem, "graph": graph, "slice": slc, "predicted": predicted,
            "computed": computed, "status": "pass" if ok else "fail"}


def _suite_coalgebra(g, gs, cfg, name):
    cx = SwiatkowskiComplex(g)
    deg = _max_degree(cfg, cx)
    rep = verify_coalgebra_axioms(cx, cfg.max_weight, deg)
    out = [_entry(f"coalgebra:{a}", name, [deg, cfg.max_weight], "pass", r["status"],
                  r["status"] == "pass") for a, r in sorted(rep.items())]
    ok = d_squared_zero(cx, deg, cfg.max_weight)
    out.append(_entry("d_squared_zero", name, [deg, cfg.max_weight], True, ok, ok))
    return out


def _sl_one(args):
    data, root, k, name = args
    gs = decompose_grapes(graph_from_dict(data)[0], root)
    out = []
    for r in verify_sl_isomorphism(gs, k):
        out.append(_entry("star_loop_basis", name, [r.degree, r.weight],
                          r.sl_count, {"betti": r.betti, "invertible": r.invertible},
                          r.status == "pass"))
    return out


def _suite_sl(g, gs, cfg, name):
    items = [(g.to_dict(), gs.root, k, name) for k in range(cfg.max_weight + 1)]
    return [e for part in _map(cfg, _sl_one, items) for e in part]


def _suite_primitivity(g, gs, cfg, name):
    hc = HomologyCoalgebra(g, "rat")
    cx = hc.cx
    out = []
    for k in range(cfg.max_weight + 1):
        for i in range(_max_degree(cfg, cx) + 1):
            n = cx.betti(i, k)
            pred = [cx.coords(c, i, k) for _, c in predicted_primitives(gs, i, k, cx)]
            ker = hc.primitive_kernel(i, k)
            pdim = rank_q(pred, n) if pred else 0
            ok = primitive_span_matches(pred, ker, n)
            out.append(_entry("primitivity", name, [i, k], pdim, len(ker), ok))
    return out


def _suite_formality(g, gs, cfg, name):
    rep = verify_formality(gs, cfg.max_weight)
    return [_entry(f"formality:{check}", name, [None, cfg.max_weight], "pass", r["status"],
                   r["status"] == "pass") for check, r in sorted(rep.items())]


def _oracle_one(args):
    data, k, name = args
    rep = cross_check(graph_from_dict(data)[0], k)
    return [_entry("oracle", name, [d["degree"], k], d["swiatkowski"], d["oracle"], d["match"])
            for d in rep["degrees"]]


def _suite_oracle(g, gs, cfg, name):
    items = [(g.to_dict(), k, name) for k in range(min(cfg.max_weight, ORACLE_MAX_WEIGHT) + 1)]
    return [e for part in _map(cfg, _oracle_one, items) for e in part]


def cmd_verify(cfg):
    g, root = _load(cfg)
    gs, why = None, None
    try:
        gs = _grapes(g, root)
    except (NotAGrape, NoEssentialVertex) as exc:
        why = str(exc)
    suites = {}
    failed = False
    for s in SUITES:
        if s not in cfg.suites:
            continue
        if s in GRAPE_SUITES and gs is None:
            suites[s] = {"status": "skipped", "reason": why, "reports": []}
            continue
        reports = globals()[f"_suite_{s}"](g, gs, cfg, cfg.graph)
        ok = all(r["status"] == "pass" for r in reports)
        failed = failed or not ok
        suites[s] = {"status": "pass" if ok else "fail", "reports": reports}
    return {"graph": cfg.graph, "max_weight": cfg.max_weight,
            "status": "fail" if failed else "pass", "suites": suites}, (1 if failed else 0)


# ------------------------------------------------------------------ primitives

def _frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_primitives(cfg):
    g, root = _load(cfg)
    try:
        gs = _grapes(g, root)
    except (NotAGrape, NoEssentialVertex) as exc:
        raise InputError(str(exc)) from None
    cx = SwiatkowskiComplex(g, ring="rat")
    hc = HomologyCoalgebra(cx, "rat")
    e0 = gs.root[1]
    slices = []
    for k in range(cfg.max_weight + 1):
        for i in range(_max_degree(cfg, cx) + 1):
            n = cx.betti(i, k)
            gens = sl_basis(gs, i, k)
            sl_cols = [cx.coords(sl_external_product(gs, s, cx), i, k) for s in gens]
            names = [s.describe(e0) for s in gens]
            basis, kept = [], []
            for label, chain in predicted_primitives(gs, i, k, cx):
                vec = cx.coords(chain, i, k)
                if rank_q(kept + [vec], n) > len(kept):
                    kept.append(vec)
                    x = solve_q(sl_cols, vec, n) if n else []
                    sl = {names[j]: _frac(c) for j, c in enumerate(x or []) if c}
                    basis.append({"r0_combination": label, "sl_coordinates": sl})
            slices.append({"degree": i, "weight": k, "dimension": len(basis),
                           "kernel_dimension": len(hc.primitive_kernel(i, k)),
                           "basis": basis})
    return {"graph": cfg.graph, "root": list(gs.root), "slices": slices}, 0


# ------------------------------------------------------------------ output

def _csv(command, report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if command == "homology":
        w.writerow(["degree", "weight", "betti", "torsion"])
        for r in report["rows"]:
            w.writerow([r["degree"], r["weight"], r["betti"], ";".join(map(str, r["torsion"]))])
    elif command == "verify":
        w.writerow(["suite", "theorem", "slice", "predicted", "computed", "status"])
        for s, body in sorted(report["suites"].items()):
            if not body["reports"]:
                w.writerow([s, "", "", "", "", body["status"]])
            for r in body["reports"]:
                w.writerow([s, r["theorem"], json.dumps(r["slice"]),
                            json.dumps(r["predicted"], sort_keys=True),
                            json.dumps(r["computed"], sort_keys=True), r["status"]])
    else:
        w.writerow(["degree", "weight", "dimension", "kernel_dimension", "basis"])
        for s in report["slices"]:
            w.writerow([s["degree"], s["weight"], s["dimension"], s["kernel_dimension"],
                        "; ".join(b["r0_combination"] for b in s["basis"])])
    return buf.getvalue()


COMMANDS = {"homology": cmd_homology, "verify": cmd_verify, "primitives": cmd_primitives}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        report, code = COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"grapeshot: error: {exc}", file=sys.stderr)
        return 2
    except GrapeshotError as exc:
        print(f"grapeshot: error: {exc}", file=sys.stderr)
        return 2
    if cfg.fmt == "csv":
        sys.stdout.write(_csv(cfg.command, report))
    else:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
