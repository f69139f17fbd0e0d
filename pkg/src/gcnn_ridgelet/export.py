"""JSON serialization of finite networks."""

from __future__ import annotations

import json

import numpy as np

from .calculus import make_activation
from .config import build_representation
from .core import FiniteNetwork
from .exceptions import InvalidArgument

__all__ = ["network_to_dict", "network_from_dict", "save_network", "load_network"]


def network_to_dict(net: FiniteNetwork, group_spec: dict, c_norm=None, config_hash=None) -> dict:
    if np.iscomplexobj(net.c):
        raise InvalidArgument("complex coefficients cannot be exported")
    return {
        "group": group_spec,
        "metric_weights": net.representation.space.metric_weights.tolist(),
        "activation": net.sigma.spec(),
        "units": [{"a": net.a[i].tolist(), "b": float(net.b[i]), "c": float(net.c[i])}
                  for i in range(net.size)],
        "c_norm": c_norm,
        "provenance": {"config_hash": config_hash},
    }


def network_from_dict(d: dict) -> FiniteNetwork:
    try:
        group = d["group"]
        metric = "uniform" if group.get("type") == "torus" else d["metric_weights"]
        T = build_representation(group, metric)
        units = d["units"]
        a = np.array([u["a"] for u in units], dtype=float)
        b = np.array([u["b"] for u in units], dtype=float)
        c = np.array([u["c"] for u in units], dtype=float)
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"malformed network file: {exc}") from None
    return FiniteNetwork(a, b, c, make_activation(d["activation"]), T)


def save_network(path, net, group_spec, c_norm=None, config_hash=None):
    with open(path, "w") as fh:
        json.dump(network_to_dict(net, group_spec, c_norm, config_hash), fh, indent=1)
        fh.write("\n")


def load_network(path) -> FiniteNetwork:
    with open(path) as fh:
        return network_from_dict(json.load(fh))
