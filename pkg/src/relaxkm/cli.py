"""relaxkm command line: roots | weyl | strata | module | p1 | verify.

Settings are layered defaults < KMR_DEPTH < --config JSON < flags. Exit codes:
0 success, 1 a verification failed (or multiplicities unavailable), 2 bad usage.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction as Q
from typing import Any, Dict, List, Optional

from . import cartan, characters, induced, p1, suites, weyl
from .errors import MultiplicityUnavailable, RelaxKMError

DEFAULTS: Dict[str, Any] = {
    "type": "A1^1",
    "gcm": None,
    "i": 1,
    "depth": 4,
    "window": [-6, 6],
    "format": "tsv",
    "lam": "-2rho",
    "alpha": None,
    "family": None,
    "height": 3,
    "max_length": 4,
    "max_dim": 4,
    "n_twist": [-3, 5],
    "p1_family": "M",
    "suite": "all",
    "jobs": 1,
}

# named P^1 families -> (source, extension)
P1_FAMILIES = {
    "M": ("a1_cell", "shriek"),
    "M_star": ("a1_cell", "star"),
    "R_star": ("c_times", "star"),
    "R_shriek": ("c_times", "shriek"),
    "R_mid": ("c_times", "intermediate"),
    "B": ("skyscraper", "star"),
}


class UsageError(Exception):
    pass


# config --------------------------------------------------------------------------

def _env_layer() -> Dict[str, Any]:
    raw = os.environ.get("KMR_DEPTH")
    if raw is None:
        return {}
    try:
        return {"depth": int(raw)}
    except ValueError:
        raise UsageError(f"KMR_DEPTH must be an integer, got {raw!r}")


def _file_layer(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    if not isinstance(doc, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(doc) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return doc


def resolve_config(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = dict(DEFAULTS)
    cfg.update(_env_layer())
    cfg.update(_file_layer(getattr(args, "config", None)))
    cfg.update({k: v for k, v in vars(args).items() if v is not None and k in DEFAULTS})
    cfg["explicit_depth"] = getattr(args, "depth", None) is not None
    _validate(cfg)
    return cfg


def _validate(cfg: Dict[str, Any]) -> None:
    if int(cfg["depth"]) < 0:
        raise UsageError("depth must be >= 0")
    for key in ("height", "max_length", "max_dim", "jobs"):
        if int(cfg[key]) < (1 if key == "jobs" else 0):
            raise UsageError(f"{key} must be nonnegative")
    w = cfg["window"]
    if len(w) != 2 or int(w[0]) > int(w[1]):
        raise UsageError(f"bad window {w}")
    if cfg["alpha"] is not None and cfg["family"] is not None:
        raise UsageError("--alpha and --family are mutually exclusive")
    if cfg["format"] not in ("json", "tsv", "dot"):
        raise UsageError(f"unknown format {cfg['format']!r}")


def _gcm(cfg) -> cartan.GCM:
    if cfg["gcm"]:
        return cartan.load_gcm_json(cfg["gcm"])
    return cartan.parse_type(cfg["type"])


def parse_lam(gcm: cartan.GCM, text: str) -> cartan.WeightVector:
    """'-2rho', '3*rho', or comma separated fundamental coordinates with optional ';d=<delta>'."""
    s = str(text).replace(" ", "")
    m = re.fullmatch(r"([+-]?\d*(?:/\d+)?)\*?rho", s)
    if m:
        k = m.group(1)
        k = Q(k + "1") if k in ("", "+", "-") else Q(k)
        return gcm.rho.scale(k)
    delta = Q(0)
    if ";d=" in s:
        s, d = s.split(";d=")
        delta = Q(d)
    try:
        return gcm.weight([Q(x) for x in s.split(",")], delta)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse weight {text!r}")


def _emit(obj) -> None:
    print(obj if isinstance(obj, str) else json.dumps(obj, indent=2))


def _no_dot(cfg) -> None:
    if cfg["format"] == "dot":
        raise UsageError("dot output is only available for strata")


# commands ------------------------------------------------------------------------

def cmd_roots(cfg) -> int:
    _no_dot(cfg)
    g = _gcm(cfg)
    roots = cartan.positive_roots_up_to_height(g, int(cfg["height"]))
    if cfg["format"] == "json":
        _emit([r.to_json() for r in roots])
    else:
        lines = ["coords\theight\tmult\treal"]
        lines += [f"{','.join(map(str, r.coords))}\t{r.height}\t{r.multiplicity}\t{int(r.is_real)}" for r in roots]
        _emit("\n".join(lines))
    return 0


def cmd_weyl(cfg) -> int:
    _no_dot(cfg)
    g = _gcm(cfg)
    elems = weyl.elements_up_to_length(g, int(cfg["max_length"]))
    rows = [{"word": list(w.word), "length": w.length, "rho_image": w.rho_image.to_json(),
             "descends_i": weyl.descends(int(cfg["i"]), w)} for w in elems]
    if cfg["format"] == "json":
        _emit(rows)
    else:
        lines = ["word\tlength\trho_image\tdescends_i"]
        lines += [f"{w!r}\t{w.length}\t{w.rho_image!r}\t{int(r['descends_i'])}" for w, r in zip(elems, rows)]
        _emit("\n".join(lines))
    return 0


def cmd_strata(cfg) -> int:
    g = _gcm(cfg)
    sp = weyl.strata(g, int(cfg["i"]), int(cfg["max_dim"]))
    if cfg["format"] == "dot":
        _emit(sp.to_dot())
    elif cfg["format"] == "json":
        _emit(sp.to_json())
    else:
        lines = ["dim\tcount"] + [f"{d}\t{c}" for d, c in enumerate(sp.counts_by_dim())]
        lines += ["source\ttarget"] + sorted(f"{a.name}\t{b.name}" for a, b in sp.arrows)
        _emit("\n".join(lines))
    return 0


def _build_module(cfg, g):
    lam = parse_lam(g, cfg["lam"])
    i, depth = int(cfg["i"]), int(cfg["depth"])
    window = tuple(int(x) for x in cfg["window"])
    fam = cfg["family"]
    if fam == "verma":
        return induced.verma_module(g, lam, i, depth, window)
    if fam is not None:
        return induced.relaxed_module(g, lam, 0, i, depth, window, family=fam)
    return induced.relaxed_module(g, lam, Q(cfg["alpha"] or 0), i, depth, window)


def cmd_module(cfg, verify_loop: bool = False, probe: Optional[int] = None) -> int:
    _no_dot(cfg)
    g = _gcm(cfg)
    m = _build_module(cfg, g)
    window = tuple(int(x) for x in cfg["window"])
    region = characters.Region.box(g, m.base, m.i, window, m.depth)
    ch = m.character(region)
    out: Dict[str, Any] = {"module": m.describe(), "character": ch.to_json()}
    status = 0
    report_lines: List[str] = []
    if verify_loop:
        if m.kind != "relaxed":
            raise UsageError("loop relations are stated for relaxed modules")
        rep = induced.loop_relations(m)
        out["loop_relations"] = rep.to_json()
        for name, ok in rep.checks:
            report_lines.append(f"{'PASS' if ok else 'FAIL'}: {name}")
        report_lines.append(f"mu={rep.mu} j={rep.j} k={rep.k} delta={rep.delta} fe_eigenvalue={rep.fe_top}")
        status = 0 if rep.ok else 1
    if probe is not None:
        v = m.generator(0)
        e_dim, f_dim = induced.chain_dims(m, v, probe)
        got = max(e_dim, f_dim)
        out["gprime_probe"] = {"K": probe, "e_chain": e_dim, "f_chain": f_dim, "reported": got}
        report_lines.append(f"gprime probe K={probe}: e-chain {e_dim}, f-chain {f_dim}, reported {got}")
    if cfg["format"] == "json":
        _emit(out)
    else:
        _emit(ch.to_tsv())
        for line in report_lines:
            print(line)
    return status


def cmd_p1(cfg, source: Optional[str] = None, extension: Optional[str] = None) -> int:
    _no_dot(cfg)
    fam = cfg["p1_family"]
    if fam not in P1_FAMILIES:
        raise UsageError(f"unknown P1 family {fam!r}; choose from {sorted(P1_FAMILIES)}")
    src, ext = P1_FAMILIES[fam]
    src, ext = source or src, extension or ext
    alpha = Q(cfg["alpha"] or 0)
    lo, hi = (int(x) for x in cfg["n_twist"])
    results = []
    status = 0
    for nt in range(lo, hi + 1):
        r = p1.cohomology(p1.TwistedP1Module(nt, src, ext, alpha))
        bad = r.h0.relation_defects() + r.h1.relation_defects()
        if bad:
            status = 1
        results.append((nt, r, bad))
    if cfg["format"] == "json":
        _emit([{"n_twist": nt, **r.to_json(), "relation_defects": [repr(b) for b in bad]} for nt, r, bad in results])
    else:
        lines = ["n_twist\tweight\tdimH0\tdimH1"]
        for nt, r, _ in results:
            lines += [f"{nt}\t{row['weight']}\t{row['dimH0']}\t{row['dimH1']}" for row in r.table()]
        lines.append("n_twist\tH1_nonzero\trelations")
        lines += [f"{nt}\t{int(r.h1_nonzero())}\t{'ok' if not bad else 'FAIL'}" for nt, r, bad in results]
        _emit("\n".join(lines))
    return status


def _suite_params(cfg) -> Dict[str, Any]:
    params: Dict[str, Any] = {"max_length": int(cfg["max_length"])}
    # each suite keeps its own depth unless one was asked for on the command line
    if cfg["explicit_depth"]:
        params["depth"] = int(cfg["depth"])
    return params


def _run_one(name: str, params: Dict[str, Any]):
    return name, list(suites.SUITES[name](**params))


def cmd_verify(cfg) -> int:
    _no_dot(cfg)
    name = cfg["suite"]
    if name != "all" and name not in suites.SUITES:
        raise UsageError(f"unknown suite {name!r}")
    names = list(suites.SUITES) if name == "all" else [name]
    params = _suite_params(cfg)
    jobs = int(cfg["jobs"])
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = dict(pool.map(_run_one, names, [params] * len(names)))
    else:
        done = dict(_run_one(n, params) for n in names)
    total = fails = 0
    first = None
    rows = []
    for n in names:
        for check, ok, detail in done[n]:
            total += 1
            rows.append({"suite": n, "check": check, "pass": ok, "detail": detail})
            if not ok:
                fails += 1
                first = first or (n, check, detail)
    if cfg["format"] == "json":
        _emit({"checks": rows, "total": total, "failures": fails})
    else:
        for r in rows:
            print(f"{'ok  ' if r['pass'] else 'FAIL'}\t{r['suite']}\t{r['check']}")
        if first:
            print(f"FAIL: {fails}/{total} checks failed; first counterexample: {first[0]}: {first[1]} {first[2]}")
        else:
            print(f"PASS: {total} checks")
    return 1 if fails else 0


# parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with settings (see README)")
    common.add_argument("--type", help="Cartan type label, e.g. A1^1 (default)")
    common.add_argument("--gcm", help="JSON file with a 'matrix' entry")
    common.add_argument("--i", type=int, help="simple index i (default 1)")
    common.add_argument("--depth", type=int, help="truncation depth (default 4, env KMR_DEPTH)")
    common.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"), help="alpha_i window (default -6 6)")
    common.add_argument("--format", choices=("json", "tsv", "dot"))

    p = argparse.ArgumentParser(prog="relaxkm", description="Relaxed Verma modules over affine Kac-Moody algebras.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("roots", parents=[common], help="positive roots up to a height")
    s.add_argument("--height", type=int)

    s = sub.add_parser("weyl", parents=[common], help="Weyl group elements up to a length")
    s.add_argument("--max-length", dest="max_length", type=int)

    s = sub.add_parser("strata", parents=[common], help="refined Schubert strata poset")
    s.add_argument("--max-dim", dest="max_dim", type=int)

    s = sub.add_parser("module", parents=[common], help="build R(lam, alpha) or M(lam) and print its character")
    s.add_argument("--lam", help="weight: '-2rho' or fundamental coords 'a,b[;d=delta]' (use --lam=...)")
    s.add_argument("--alpha", help="monodromy parameter, rational")
    s.add_argument("--family", choices=("eq", "lt", "gt", "verma"), help="integral top family or verma")
    s.add_argument("--verify-loop-relations", action="store_true")
    s.add_argument("--probe-gprime", type=int, metavar="K")

    s = sub.add_parser("p1", parents=[common], help="cohomology tables on the projective line")
    s.add_argument("--n-twist", dest="n_twist", type=int, nargs=2, metavar=("LO", "HI"))
    s.add_argument("--family", dest="p1_family", choices=sorted(P1_FAMILIES))
    s.add_argument("--source", choices=p1.SOURCES)
    s.add_argument("--extension", choices=p1.EXTENSIONS)
    s.add_argument("--alpha", help="monodromy parameter on C^x, rational")

    s = sub.add_parser("verify", parents=[common], help="run invariant suites")
    s.add_argument("--suite", choices=sorted(suites.SUITES) + ["all"])
    s.add_argument("--max-length", dest="max_length", type=int)
    s.add_argument("--jobs", type=int, help="run suites in parallel processes")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        if args.cmd == "roots":
            return cmd_roots(cfg)
        if args.cmd == "weyl":
            return cmd_weyl(cfg)
        if args.cmd == "strata":
            return cmd_strata(cfg)
        if args.cmd == "module":
            return cmd_module(cfg, args.verify_loop_relations, args.probe_gprime)
        if args.cmd == "p1":
            return cmd_p1(cfg, args.source, args.extension)
        return cmd_verify(cfg)
    except MultiplicityUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, RelaxKMError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
