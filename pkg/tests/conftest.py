import numpy as np
import pytest

from gcnn_ridgelet.groups import (SymmetricGroup, TorusRepresentation, cyclic_regular,
                                  image_regular, permutation_representation)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def shipped_representations():
    """Every representation family the toolkit ships, small instances."""
    return {
        "cyclic2": cyclic_regular(2),
        "cyclic4": cyclic_regular(4),
        "cyclic5_weighted": cyclic_regular(5, [0.3, 0.3, 0.3, 0.3, 0.3]),
        "image2x3": image_regular(2, 3),
        "image2x2x2ch": image_regular(2, 2, channels=2),
        "s3": permutation_representation(SymmetricGroup(3)),
        "s4": permutation_representation(SymmetricGroup(4)),
        "torus3": TorusRepresentation(3, angles=12),
    }


@pytest.fixture(params=sorted(shipped_representations()))
def representation(request):
    return shipped_representations()[request.param]


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one acceptance line; printed in the terminal summary."""

    def record(label, passed, detail):
        ACCEPTANCE_LINES.append(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
