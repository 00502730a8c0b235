import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from halg.ring import GradedRing  # noqa: E402

CORPUS = {
    "node": (["x", "y"], [1, 1], ["x*y"]),
    "dual_numbers": (["x"], [1], ["x^2"]),
    "fat_point": (["x", "y"], [1, 1], ["x^2", "x*y", "y^2"]),
    "embedded": (["x", "y"], [1, 1], ["x^2", "x*y"]),
    "semigroup_345": (["x", "y", "z"], [3, 4, 5], ["y^2 - x*z", "z^2 - x^2*y", "x^3 - y*z"]),
    "axes": (["x", "y", "z"], [1, 1, 1], ["x*y", "y*z", "z*x"]),
}
CM_NAMES = ["node", "dual_numbers", "fat_point", "semigroup_345", "axes"]
GORENSTEIN = {"node", "dual_numbers"}

_rings = {}


def make_ring(name, fresh=False):
    """Corpus ring; cached unless ``fresh`` (fresh objects carry no caches)."""
    if fresh or name not in _rings:
        names, weights, ideal = CORPUS[name]
        ring = GradedRing(names, weights, ideal, 32003, name=name)
        if fresh:
            return ring
        _rings[name] = ring
    return _rings[name]


@pytest.fixture
def corpus_ring():
    return make_ring


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[k]
        terminalreporter.write_line("criterion %2d: %s  %s" % (k, "PASS" if ok else "FAIL", line))
