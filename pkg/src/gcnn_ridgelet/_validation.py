"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import InvalidArgument


def check_points(X, representation):
    """2-D float array of full-space points for ``representation``."""
    try:
        X = check_array(X, ensure_2d=False, dtype=float)
    except ValueError as exc:
        raise InvalidArgument(str(exc)) from exc
    X = np.atleast_2d(X)
    return representation.space.check(X, "X")


def check_elements(elements, group):
    if elements is None:
        return tuple(group.evaluation_elements())
    elements = tuple(elements)
    if not elements:
        raise InvalidArgument("need at least one group element")
    return tuple(group.validate(g) for g in elements)


def check_positive_int(value, name):
    if isinstance(value, bool) or int(value) != value or int(value) < 1:
        raise InvalidArgument(f"{name} must be a positive integer, got {value!r}")
    return int(value)
