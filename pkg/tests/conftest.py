import pytest

from grapeshot import build_graph

ACCEPTANCE_LINES = []


def two_grapes():
    """Path a-u-w-b with one loop at u and one at w."""
    return build_graph(["a", "u", "w", "b"],
                       [("s1", "a", "u"), ("s2", "u", "w"), ("s3", "w", "b"),
                        ("lu", "u", "u"), ("lw", "w", "w")])


def double_loop_grapes():
    """u carries two loops and one stem edge; w has two leaves."""
    return build_graph(["u", "w", "b", "c"],
                       [("s1", "u", "w"), ("s2", "w", "b"), ("s3", "w", "c"),
                        ("l1", "u", "u"), ("l2", "u", "u")])


def three_grapes():
    """Path x-y-z with a loop at each end and a leaf c at y."""
    return build_graph(["x", "y", "z", "c"],
                       [("s1", "x", "y"), ("s2", "y", "z"), ("s3", "y", "c"),
                        ("lx", "x", "x"), ("lz", "z", "z")])


def whiskered_bigon():
    """A double edge a=b with a leaf at each end: circumference 2, two essential vertices."""
    return build_graph(["a", "b", "c", "d"],
                       [("x1", "a", "b"), ("x2", "a", "b"), ("t1", "a", "c"), ("t2", "b", "d")])


def k33():
    a, b = ["a1", "a2", "a3"], ["b1", "b2", "b3"]
    return build_graph(a + b, [(f"x{i}{j}", f"a{i}", f"b{j}")
                               for i in (1, 2, 3) for j in (1, 2, 3)])


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
