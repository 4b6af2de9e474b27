import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from aspaths import build_graph


def fig1_graph():
    """The 7-node worked example: unit edges, shortest s-t distance 2,
    exactly five s-t walks of length <= 3."""
    labels = ["s", "c", "d", "e", "a", "b", "t"]
    ix = {lab: i for i, lab in enumerate(labels)}
    edges = [
        ("s", "c"), ("s", "d"), ("s", "e"), ("c", "d"), ("c", "e"),
        ("a", "c"), ("b", "c"), ("a", "t"), ("b", "t"), ("c", "t"),
    ]
    g = build_graph(
        [(ix[u], ix[v], 1.0) for u, v in edges], directed=False, labels=labels
    )
    return g, ix


@pytest.fixture
def fig1():
    return fig1_graph()


@pytest.fixture
def triangle():
    """s=0, u=1, t=2, unit weights."""
    return build_graph([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], directed=False)
