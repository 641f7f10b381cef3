import pytest

from confspace.graph import (Graph, complete_graph, lollipop_graph, path_graph, star_graph,
                             subdivide)


@pytest.fixture
def Y():
    return star_graph(3, "Y")


@pytest.fixture
def X():
    return star_graph(4, "X")


@pytest.fixture
def lollipop():
    return lollipop_graph()


def theta_graph():
    return Graph(("a", "b"), (("t1", "a", "b"), ("t2", "a", "b"), ("t3", "a", "b")), name="theta")


def corpus():
    """Small graphs with n = 2 models cheap enough for every property test."""
    return {
        "edge": path_graph(1),
        "path3": path_graph(3),
        "Y": star_graph(3, "Y"),
        "X": star_graph(4, "X"),
        "star5": star_graph(5),
        "lollipop": lollipop_graph(),
        "lollipop3": subdivide(lollipop_graph(), 3)[0],
        "K4": complete_graph(4),
        "theta3": subdivide(theta_graph(), 3)[0],
    }
