"""Experiment configuration: JSON schema, hashing and object builders."""

from __future__ import annotations

import copy
import hashlib
import json

import jsonschema
import numpy as np

from .calculus import RidgeletPair, make_activation
from .exceptions import InvalidArgument
from .groups import (PermutationGroup, SymmetricGroup, TorusRepresentation, cyclic_regular,
                     image_regular, permutation_representation)
from .quadrature import BoxGrid, monte_carlo
from .targets import (deepsets_target, difference_filter, gaussian_orbit, make_cutoff,
                      torus_differential, torus_moment)

__all__ = ["SCHEMA", "validate", "config_hash", "build_representation", "build_pair",
           "build_grids", "build_target", "build_test_set", "with_defaults"]

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_INT = {"type": "integer", "minimum": 1}


def _obj(props, required=()):
    return {"type": "object", "properties": props, "required": list(required),
            "additionalProperties": False}


_GROUP = {"oneOf": [
    _obj({"type": {"const": "cyclic"}, "m": _INT}, ["type", "m"]),
    _obj({"type": {"const": "product_cyclic"}, "m1": _INT, "m2": _INT, "channels": _INT},
         ["type", "m1", "m2"]),
    _obj({"type": {"const": "symmetric"}, "n": _INT,
          "generators": {"type": "array", "items": {"type": "array",
                                                    "items": {"type": "integer"}}}},
         ["type", "n"]),
    _obj({"type": {"const": "torus"}, "band": _INT, "angles": _INT}, ["type", "band"]),
]}

_ACT = {"oneOf": [
    {"enum": ["relu", "tanh", "step", "gaussian", "truncated_power"]},
    _obj({"type": {"enum": ["relu", "tanh", "step"]}}, ["type"]),
    _obj({"type": {"const": "gaussian"}, "width": _POS}, ["type"]),
    _obj({"type": {"const": "truncated_power"}, "k": {"type": "integer", "minimum": 0}},
         ["type"]),
]}

_RHO0 = {"oneOf": [
    _obj({"type": {"const": "gaussian"}, "width": _POS, "amplitude": _NUM}, ["type"]),
    _obj({"type": {"const": "hermite_gaussian"}, "order": {"type": "integer", "minimum": 0},
          "width": _POS, "amplitude": _NUM}, ["type"]),
]}

_CUTOFF = {"oneOf": [
    {"type": "null"},
    _obj({"type": {"const": "gaussian"}, "t": _POS}, ["type", "t"]),
    _obj({"type": {"const": "box"}, "radius": {"oneOf": [_POS, {"type": "array", "items": _POS}]}},
         ["type", "radius"]),
    _obj({"type": {"const": "smooth_bump"}, "radius": _POS, "width": _POS},
         ["type", "radius", "width"]),
]}

SCHEMA = _obj({
    "description": {"type": "string"},
    "experiment": {"enum": ["reconstruct", "sweep", "equivariance", "a3check", "export"]},
    "group": _GROUP,
    "feature_space": _obj({"metric": {"oneOf": [{"const": "uniform"}, {"const": "unit"},
                                                {"type": "array", "items": _POS}]}}),
    "activation": _ACT,
    "rho0": _RHO0,
    "x_grid": _obj({"radius": _POS, "points": _INT}),
    "ab_grid": _obj({"a_radius": _POS, "b_radius": _POS, "points": _INT}),
    "mode": {"enum": ["midpoint", "monte_carlo"]},
    "samples": _obj({"x": _INT, "ab": _INT}),
    "seed": {"type": "integer", "minimum": 0},
    "target": _obj({"type": {"enum": ["gaussian_orbit", "difference", "torus_diff",
                                      "torus_moment", "deepsets"]},
                    "params": {"type": "object"}, "cutoff": _CUTOFF}, ["type"]),
    "n_list": {"type": "array", "items": _INT, "minItems": 1},
    "test_set": _obj({"samples": _INT, "radius": _POS, "seed": {"type": "integer", "minimum": 0},
                      "region": {"enum": ["box", "ball"]}}),
    "tolerance": _POS,
    "a3": _obj({"n": {"type": "integer", "minimum": 0}, "theta": _POS, "radius": _POS,
                "spacing": _POS, "refinements": {"type": "integer", "minimum": 0}}),
    "equivariance": _obj({"inputs": _INT, "networks": _INT, "units": _INT}),
    "export": _obj({"n_per_axis": _INT}),
    "outputs": _obj({"results": {"type": "string"}, "summary": {"type": "string"},
                     "weights": {"type": "string"}}),
}, ["experiment"])

DEFAULTS = {
    "feature_space": {"metric": "uniform"},
    "activation": "gaussian",
    "rho0": {"type": "hermite_gaussian", "order": 2, "width": 1.0},
    "x_grid": {"radius": 6.0, "points": 64},
    "ab_grid": {"a_radius": 4.0, "b_radius": 8.0, "points": 32},
    "mode": "midpoint",
    "samples": {"x": 4096, "ab": 32768},
    "seed": 0,
    "n_list": [2, 4, 8, 16],
    "test_set": {"samples": 50, "radius": 1.5, "seed": 0, "region": "box"},
    "a3": {"n": 1, "theta": 1.0, "radius": 100.0, "spacing": 0.01, "refinements": 2},
    "equivariance": {"inputs": 20, "networks": 3, "units": 16},
    "export": {"n_per_axis": 4},
    "outputs": {"results": "results.csv", "summary": "summary.json", "weights": "weights.json"},
}


def validate(cfg: dict) -> dict:
    """Schema check; raises InvalidArgument with the first violation."""
    try:
        jsonschema.validate(cfg, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InvalidArgument(f"config invalid at {where}: {exc.message}") from None
    exp = cfg["experiment"]
    if exp != "a3check" and "group" not in cfg:
        raise InvalidArgument(f"experiment {exp!r} needs a group")
    if exp in ("reconstruct", "sweep", "export") and "target" not in cfg:
        raise InvalidArgument(f"experiment {exp!r} needs a target")
    return cfg


def with_defaults(cfg: dict) -> dict:
    out = copy.deepcopy(DEFAULTS)
    for key, val in cfg.items():
        # tagged specs (with a "type") replace the default wholesale
        if isinstance(val, dict) and isinstance(out.get(key), dict) and "type" not in val:
            out[key] = {**out[key], **val}
        else:
            out[key] = copy.deepcopy(val)
    return out


def config_hash(cfg: dict) -> str:
    """sha256 of the canonical JSON encoding."""
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _metric(spec, dim):
    if spec == "uniform":
        return None
    if spec == "unit":
        return np.ones(dim)
    if len(spec) != dim:
        raise InvalidArgument(f"metric has {len(spec)} weights, space has dimension {dim}")
    return np.asarray(spec, dtype=float)


def build_representation(group: dict, metric="uniform"):
    kind = group["type"]
    if kind == "cyclic":
        return cyclic_regular(group["m"], _metric(metric, group["m"]))
    if kind == "product_cyclic":
        ch = group.get("channels", 1)
        return image_regular(group["m1"], group["m2"], ch,
                             _metric(metric, group["m1"] * group["m2"] * ch))
    if kind == "symmetric":
        n = group["n"]
        G = PermutationGroup(n, group["generators"]) if "generators" in group else SymmetricGroup(n)
        w = _metric(metric, n)
        return permutation_representation(G, np.ones(n) if w is None else w)
    if kind == "torus":
        if metric not in ("uniform", None):
            raise InvalidArgument("the torus fixes its own metric")
        return TorusRepresentation(group["band"], group.get("angles", 64))
    raise InvalidArgument(f"unknown group type {kind!r}")  # pragma: no cover


def build_pair(cfg, m) -> RidgeletPair:
    return RidgeletPair(make_activation(cfg["activation"]), cfg["rho0"], m)


def build_grids(cfg, m):
    xg, ab = cfg["x_grid"], cfg["ab_grid"]
    if cfg["mode"] == "monte_carlo":
        seed = cfg["seed"]
        x_grid = monte_carlo([xg["radius"]] * m, cfg["samples"]["x"], seed)
        ab_grid = monte_carlo([ab["a_radius"]] * m + [ab["b_radius"]], cfg["samples"]["ab"],
                              seed + 1)
        return x_grid, ab_grid
    return (BoxGrid.cube(m, xg["radius"], xg["points"]),
            BoxGrid([ab["a_radius"]] * m + [ab["b_radius"]], ab["points"]))


def build_target(spec: dict, T):
    params = dict(spec.get("params", {}))
    cutoff = make_cutoff(spec.get("cutoff"))
    kind = spec["type"]
    try:
        if kind == "gaussian_orbit":
            return gaussian_orbit(T, **params)
        if kind == "difference":
            return difference_filter(T.space.dim, cutoff, T=T)
        if kind == "torus_diff":
            return torus_differential(T.band, T=T, **params)
        if kind == "torus_moment":
            return torus_moment(T.band, T=T, **params)
        if kind == "deepsets":
            return deepsets_target(T.space.dim, T.group)
    except (TypeError, AttributeError) as exc:
        raise InvalidArgument(f"target {kind!r} does not fit this group: {exc}") from None
    raise InvalidArgument(f"unknown target {kind!r}")  # pragma: no cover


def build_test_set(spec, T, seed=None):
    """Points in the orthonormal filter-space box or ball, embedded in the full space."""
    rng = np.random.default_rng(spec["seed"] if seed is None else seed)
    m = T.param_space.dim
    n, r = spec["samples"], spec["radius"]
    if spec.get("region", "box") == "ball":
        c = rng.normal(size=(n, m))
        c /= np.linalg.norm(c, axis=1, keepdims=True)
        c *= r * rng.uniform(0, 1, (n, 1)) ** (1.0 / m)
    else:
        c = rng.uniform(-r, r, size=(n, m))
    return T.embed(T.param_space.from_orthonormal(c))

