import pytest

from arbcover.graph import Digraph

R, A, B = 0, 1, 2
V3 = frozenset({R, A, B})


@pytest.fixture
def I1():
    # r->a, r->b, a->b, b->a
    return Digraph(3, [("e0", R, A), ("e1", R, B), ("e2", A, B), ("e3", B, A)])


@pytest.fixture
def I2():
    return Digraph(3, [("e0", R, A), ("e1", A, B), ("e2", B, A)])


@pytest.fixture
def I3():
    # path a->b->c
    return Digraph(3, [("ab", 0, 1), ("bc", 1, 2)])


@pytest.fixture
def I5():
    return Digraph(3, [("ra", R, A), ("rb", R, B), ("ab", A, B), ("ba", B, A)])


@pytest.fixture
def I5_costs():
    return {"ra": 1, "rb": 5, "ab": 1, "ba": 1}


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
