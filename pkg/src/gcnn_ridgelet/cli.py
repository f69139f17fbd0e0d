"""Command-line front end: ``gcnn-ridgelet --preset NAME --out DIR``.

Exit codes: 0 success, 2 invalid input or unmet precondition, 3 numeric
failure, 4 degenerate activation/ridgelet pair.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import config as C
from .calculus import a3_check, make_activation
from .core import (discretize, random_network, reconstruct, ridgelet_transform,
                   universality_sweep)
from .exceptions import DegeneratePairError, InvalidArgument, NumericFailure, RidgeletError
from .export import network_from_dict, network_to_dict
from .groups import exhaustive_defect
from .presets import get_preset, list_presets

__all__ = ["main", "run", "run_config"]

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_DEGENERATE = 0, 2, 3, 4


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _common(cfg):
    T = C.build_representation(cfg["group"], cfg["feature_space"]["metric"])
    return T, T.param_space.dim


def _reconstruct(cfg, h, threads):
    T, m = _common(cfg)
    pair = C.build_pair(cfg, m)
    target = C.build_target(cfg["target"], T)
    x_grid, ab_grid = C.build_grids(cfg, m)
    X = C.build_test_set(cfg["test_set"], T)
    elements = T.group.evaluation_elements()
    res = reconstruct(target, pair, x_grid, ab_grid, X, elements, threads=threads)
    n = cfg["ab_grid"]["points"] if cfg["mode"] == "midpoint" else cfg["samples"]["ab"]
    rows = [(n, ab_grid.size, res["sup_error"], res["rel_error"], h)]
    summary = {"sup_error": res["sup_error"], "rel_error": res["rel_error"],
               "scalar_product": pair.product, "c_norm": pair.c_norm,
               "test_points": int(X.shape[0]), "elements": len(elements)}
    return _csv(["n", "units", "sup_error", "rel_error", "config_hash"], rows), summary, None


def _sweep_rows(rows, h):
    return [(r["n"], r["units"], r["sup_error"], r["rel_error"], h) for r in rows]


def _sweep(cfg, h, threads):
    T, m = _common(cfg)
    if cfg["mode"] != "midpoint":
        raise InvalidArgument("sweep needs the midpoint grid")
    pair = C.build_pair(cfg, m)
    target = C.build_target(cfg["target"], T)
    x_grid, ab_grid = C.build_grids(cfg, m)
    X = C.build_test_set(cfg["test_set"], T)
    elements = T.group.evaluation_elements()
    out = universality_sweep(target, pair, x_grid, ab_grid, cfg["n_list"], X, elements,
                             threads=threads)
    errs = [r["sup_error"] for r in out["rows"]]
    ratios = [b / a for a, b in zip(errs, errs[1:]) if a > 0]
    summary = {"sup_error": errs[-1], "rel_error": out["rows"][-1]["rel_error"],
               "errors": errs, "strictly_decreasing": all(b < a for a, b in zip(errs, errs[1:])),
               "geometric_mean_ratio": float(np.exp(np.mean(np.log(ratios)))) if ratios else None,
               "scalar_product": pair.product, "c_norm": pair.c_norm}
    weights = network_to_dict(out["networks"][-1], cfg["group"], pair.c_norm, h)
    return (_csv(["n", "units", "sup_error", "rel_error", "config_hash"],
                 _sweep_rows(out["rows"], h)), summary, weights)


def _export(cfg, h, threads):
    T, m = _common(cfg)
    pair = C.build_pair(cfg, m)
    target = C.build_target(cfg["target"], T)
    x_grid, ab_grid = C.build_grids(cfg, m)
    gamma = ridgelet_transform(target, pair, x_grid, ab_grid, threads)
    net = discretize(gamma, pair, T, cfg["export"]["n_per_axis"])
    X = C.build_test_set(cfg["test_set"], T)
    elements = T.group.evaluation_elements()
    weights = network_to_dict(net, cfg["group"], pair.c_norm, h)
    again = network_from_dict(json.loads(json.dumps(weights)))
    vals = net.values(X, elements, threads)
    diff = float(np.max(np.abs(again.values(X, elements, threads) - vals)))
    ref = target.values(X, elements)
    sup = float(np.max(np.abs(vals - ref)))
    rel = sup / float(np.max(np.abs(ref)))
    rows = [(cfg["export"]["n_per_axis"], net.size, sup, rel, diff, h)]
    summary = {"sup_error": sup, "rel_error": rel, "roundtrip_max_diff": diff,
               "units": net.size, "scalar_product": pair.product, "c_norm": pair.c_norm}
    return (_csv(["n", "units", "sup_error", "rel_error", "roundtrip_max_diff", "config_hash"],
                 rows), summary, weights)


def _equivariance(cfg, h, threads):
    T, m = _common(cfg)
    spec = cfg["equivariance"]
    rng = np.random.default_rng(cfg["seed"])
    sigma = make_activation(cfg["activation"])
    X = T.space.check(rng.normal(size=(spec["inputs"], T.space.dim)))
    rows = []
    for trial in range(spec["networks"]):
        net = random_network(T, spec["units"], sigma, rng)
        d = exhaustive_defect(lambda Z, el: net.values(Z, el, threads), T, X)
        rows.append(("network", trial, net.size, d, h))
    if "target" in cfg:
        target = C.build_target(cfg["target"], T)
        rows.append(("target", 0, 0, exhaustive_defect(target.values, T, X), h))
    worst = max(r[3] for r in rows)
    summary = {"max_defect": worst, "group_order": T.group.order,
               "pairs": len(T.group.evaluation_elements()) ** 2, "inputs": int(X.shape[0])}
    return _csv(["kind", "trial", "units", "defect", "config_hash"], rows), summary, None


def _a3(cfg, h, threads):
    sigma = make_activation(cfg["activation"])
    a = cfg["a3"]
    res = a3_check(sigma, a["n"], a["theta"], a["radius"], a["spacing"], a["refinements"])
    rows = [(i, a["spacing"] / 2**i, res["sup"], est, h)
            for i, est in enumerate(res["lipschitz_history"])]
    summary = {k: res[k] for k in ("bounded", "sup", "lipschitz_est", "lipschitz",
                                   "lipschitz_history")}
    return _csv(["level", "spacing", "sup", "lipschitz_est", "config_hash"], rows), summary, None


_RUNNERS = {"reconstruct": _reconstruct, "sweep": _sweep, "export": _export,
            "equivariance": _equivariance, "a3check": _a3}


def _passed(cfg, summary):
    tol = cfg.get("tolerance")
    if tol is None:
        return None
    key = "max_defect" if cfg["experiment"] == "equivariance" else "rel_error"
    return bool(summary[key] <= tol)


def run_config(raw_cfg: dict, threads=None, seed=None):
    """Validate and run; returns (files, summary) without touching disk."""
    C.validate(raw_cfg)
    cfg = C.with_defaults(raw_cfg)
    if seed is not None:
        cfg["seed"] = int(seed)
        cfg["test_set"]["seed"] = int(seed)
    h = C.config_hash(cfg)
    t0 = time.perf_counter()
    results, summary, weights = _RUNNERS[cfg["experiment"]](cfg, h, threads)
    wall_ms = (time.perf_counter() - t0) * 1e3
    summary = {"experiment": cfg["experiment"], "description": cfg.get("description", ""),
               "config_hash": h, **summary, "tolerance": cfg.get("tolerance"),
               "passed": _passed(cfg, summary), "wall_ms": wall_ms,
               "threads": threads or 1, "config": cfg}
    outs = cfg["outputs"]
    files = {outs["results"]: results,
             outs["summary"]: json.dumps(_jsonable(summary), indent=1, sort_keys=True) + "\n"}
    if weights is not None:
        files[outs["weights"]] = json.dumps(weights, indent=1) + "\n"
    return files, summary


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj) if math.isfinite(obj) else str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def run(config_path=None, out_dir=".", preset=None, threads=None, seed=None, stderr=None) -> int:
    """Run one experiment and write its outputs; returns the exit code."""
    stderr = sys.stderr if stderr is None else stderr
    try:
        if preset is not None:
            cfg = get_preset(preset)
        else:
            try:
                with open(config_path) as fh:
                    cfg = json.load(fh)
            except (OSError, TypeError) as exc:
                raise InvalidArgument(f"cannot read config {config_path!r}: {exc}") from None
            except json.JSONDecodeError as exc:
                raise InvalidArgument(f"config is not valid JSON: {exc}") from None
        if threads is not None and int(threads) < 1:
            raise InvalidArgument("--threads must be >= 1")
        files, summary = run_config(cfg, threads, seed)
    except DegeneratePairError as exc:
        print(f"error: degenerate pair: {exc}", file=stderr)
        return EXIT_DEGENERATE
    except NumericFailure as exc:
        print(f"error: numeric failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    except (RidgeletError, ValueError, MemoryError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    try:
        os.makedirs(out_dir, exist_ok=True)
        for name, text in files.items():
            with open(os.path.join(out_dir, name), "w", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=stderr)
        return EXIT_INVALID
    line = {k: summary[k] for k in ("experiment", "sup_error", "rel_error", "max_defect",
                                    "bounded", "passed") if k in summary}
    print(json.dumps(_jsonable(line)))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="gcnn-ridgelet",
                                description="Ridgelet construction of group-convolutional networks")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="JSON experiment config")
    src.add_argument("--preset", metavar="NAME", help="shipped experiment config")
    src.add_argument("--list-presets", action="store_true", help="print shipped presets")
    p.add_argument("--out", metavar="DIR", default=".", help="output directory")
    p.add_argument("--threads", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=None, metavar="S")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    if args.list_presets:
        print(list_presets())
        return EXIT_OK
    if args.config is None and args.preset is None:
        print("error: one of --config or --preset is required", file=sys.stderr)
        return EXIT_INVALID
    return run(args.config, args.out, args.preset, args.threads, args.seed)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
