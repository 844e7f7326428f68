import itertools

import pytest

from gridkh import parse_grid

U2 = "n=2; X=2,1; O=1,2"
T5 = "n=5; X=3,4,5,1,2; O=1,2,3,4,5"
HOPF = "n=4; X=1,2,3,4; O=3,4,1,2"
FIG8 = "n=6; X=3,6,1,5,4,2; O=1,2,4,3,6,5"
TWO_UNKNOTS = "n=4; X=2,1,4,3; O=1,2,3,4"

NAMED = {"U2": U2, "T5": T5, "Hopf": HOPF, "figure-eight": FIG8}


def small_grids(max_size=4):
    """Every grid diagram of size 2..max_size."""
    from gridkh import GridDiagram

    out = []
    for n in range(2, max_size + 1):
        for xs in itertools.permutations(range(1, n + 1)):
            for os_ in itertools.permutations(range(1, n + 1)):
                if all(a != b for a, b in zip(xs, os_)):
                    out.append(GridDiagram(n, xs, os_))
    return out


@pytest.fixture(scope="session")
def u2():
    return parse_grid(U2)


@pytest.fixture(scope="session")
def t5():
    return parse_grid(T5)


@pytest.fixture(scope="session")
def hopf():
    return parse_grid(HOPF)


@pytest.fixture(scope="session")
def fig8():
    return parse_grid(FIG8)


@pytest.fixture(scope="session")
def grids_up_to_4():
    return small_grids(4)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def record_acceptance(criterion, passed, detail=""):
    line = f"{criterion} {'PASS' if passed else 'FAIL'}" + (f"  {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][1:])):
            terminalreporter.write_line(line)
