"""Shipped experiment configurations, one or more per worked example."""

from __future__ import annotations

import copy

from .exceptions import InvalidArgument

__all__ = ["PRESETS", "get_preset", "list_presets"]

_CYCLIC2 = {"type": "cyclic", "m": 2}
_GAUSS_TARGET = {"type": "gaussian_orbit", "params": {"length": 1.0}}

PRESETS = {
    "cyclic2_gaussian_reconstruct": {
        "description": "Z_2 regular representation, Gaussian target and activation, "
                       "Hermite-Gaussian mother (order 2)",
        "experiment": "reconstruct",
        "group": _CYCLIC2,
        "activation": {"type": "gaussian", "width": 1.0},
        "rho0": {"type": "hermite_gaussian", "order": 2, "width": 1.0},
        "x_grid": {"radius": 6.0, "points": 64},
        "ab_grid": {"a_radius": 4.0, "b_radius": 8.0, "points": 32},
        "target": _GAUSS_TARGET,
        "test_set": {"samples": 50, "radius": 1.5, "seed": 0},
        "tolerance": 0.05,
    },
    "cyclic2_gaussian_plain_mother": {
        "description": "As cyclic2_gaussian_reconstruct with a plain Gaussian mother; "
                       "a-box truncation keeps the error near 30%",
        "experiment": "reconstruct",
        "group": _CYCLIC2,
        "activation": {"type": "gaussian", "width": 1.0},
        "rho0": {"type": "gaussian", "width": 1.0},
        "x_grid": {"radius": 6.0, "points": 64},
        "ab_grid": {"a_radius": 4.0, "b_radius": 8.0, "points": 32},
        "target": _GAUSS_TARGET,
        "test_set": {"samples": 50, "radius": 1.5, "seed": 0},
        "tolerance": 0.05,
    },
    "cyclic2_relu_reconstruct": {
        "description": "Z_2 with ReLU through rho = Lap rho0, Hermite-Gaussian mother (order 4)",
        "experiment": "reconstruct",
        "group": _CYCLIC2,
        "activation": "relu",
        "rho0": {"type": "hermite_gaussian", "order": 4, "width": 1.0},
        "x_grid": {"radius": 6.0, "points": 64},
        "ab_grid": {"a_radius": 4.0, "b_radius": 8.0, "points": 32},
        "target": _GAUSS_TARGET,
        "test_set": {"samples": 50, "radius": 1.5, "seed": 0},
        "tolerance": 0.10,
    },
    "cyclic2_gaussian_sweep": {
        "description": "Width sweep of the discretized Z_2 network, n = 2..16 cells per axis",
        "experiment": "sweep",
        "group": _CYCLIC2,
        "activation": {"type": "gaussian", "width": 1.0},
        "rho0": {"type": "hermite_gaussian", "order": 2, "width": 1.0},
        "x_grid": {"radius": 6.0, "points": 64},
        "ab_grid": {"a_radius": 4.0, "b_radius": 4.0, "points": 32},
        "target": _GAUSS_TARGET,
        "n_list": [2, 4, 8, 16],
        "test_set": {"samples": 50, "radius": 1.5, "seed": 0},
    },
    "cyclic4_equivariance": {
        "description": "Random finite GCNNs on the Z_4 regular representation",
        "experiment": "equivariance",
        "group": {"type": "cyclic", "m": 4},
        "activation": "relu",
        "equivariance": {"inputs": 20, "networks": 3, "units": 16},
        "tolerance": 1e-10,
    },
    "image2x3_equivariance": {
        "description": "Z_2 x Z_3 translating a 2x3 single-channel image",
        "experiment": "equivariance",
        "group": {"type": "product_cyclic", "m1": 2, "m2": 3, "channels": 1},
        "activation": "relu",
        "equivariance": {"inputs": 20, "networks": 3, "units": 16},
        "tolerance": 1e-10,
    },
    "difference3_reconstruct": {
        "description": "Difference filter x_{i+1} - x_i on Z_3 with a smooth bump cutoff; "
                       "errors on the plateau",
        "experiment": "reconstruct",
        "group": {"type": "cyclic", "m": 3},
        "activation": {"type": "gaussian", "width": 1.0},
        "rho0": {"type": "hermite_gaussian", "order": 2, "width": 1.0},
        "x_grid": {"radius": 3.0, "points": 24},
        "ab_grid": {"a_radius": 4.0, "b_radius": 6.0, "points": 16},
        "target": {"type": "difference",
                   "cutoff": {"type": "smooth_bump", "radius": 1.0, "width": 1.5}},
        "test_set": {"samples": 50, "radius": 1.0, "seed": 0, "region": "ball"},
        "tolerance": 0.07,
    },
    "s3_deepsets_equivariance": {
        "description": "S_3 permuting a 3-element set; Deep Sets target and random GCNNs",
        "experiment": "equivariance",
        "group": {"type": "symmetric", "n": 3, "generators": [[1, 0, 2], [1, 2, 0]]},
        "activation": "relu",
        "target": {"type": "deepsets"},
        "equivariance": {"inputs": 20, "networks": 3, "units": 16},
        "tolerance": 1e-12,
    },
    "torus3_reconstruct": {
        "description": "Rotations of band-3 signals on the circle, Gaussian-factored "
                       "spectral moment target, 64 angles",
        "experiment": "reconstruct",
        "group": {"type": "torus", "band": 3, "angles": 64},
        "activation": {"type": "gaussian", "width": 1.0},
        "rho0": {"type": "hermite_gaussian", "order": 2, "width": 1.0},
        "x_grid": {"radius": 6.0, "points": 28},
        "ab_grid": {"a_radius": 4.0, "b_radius": 6.0, "points": 16},
        "target": {"type": "torus_moment", "params": {"t": 0.5}},
        "test_set": {"samples": 50, "radius": 1.5, "seed": 0},
        "tolerance": 0.10,
    },
    "relu_a3check": {
        "description": "Forward difference of ReLU (n = 1, theta = 1) is bounded and Lipschitz",
        "experiment": "a3check",
        "activation": "relu",
        "a3": {"n": 1, "theta": 1.0, "radius": 100.0, "spacing": 0.01, "refinements": 2},
    },
    "step_a3check": {
        "description": "Forward difference of the step: bounded, Lipschitz estimate diverges",
        "experiment": "a3check",
        "activation": "step",
        "a3": {"n": 1, "theta": 1.0, "radius": 100.0, "spacing": 0.01, "refinements": 2},
    },
    "cyclic2_export": {
        "description": "Export the n = 8 discretized Z_2 network as weights.json",
        "experiment": "export",
        "group": _CYCLIC2,
        "activation": {"type": "gaussian", "width": 1.0},
        "rho0": {"type": "hermite_gaussian", "order": 2, "width": 1.0},
        "x_grid": {"radius": 6.0, "points": 64},
        "ab_grid": {"a_radius": 4.0, "b_radius": 4.0, "points": 32},
        "target": _GAUSS_TARGET,
        "export": {"n_per_axis": 8},
        "test_set": {"samples": 50, "radius": 1.5, "seed": 0},
    },
}


def get_preset(name: str) -> dict:
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise InvalidArgument(f"unknown preset {name!r}; see --list-presets") from None


def list_presets() -> str:
    width = max(map(len, PRESETS))
    return "\n".join(f"{name:<{width}}  {cfg['description']}" for name, cfg in PRESETS.items())
