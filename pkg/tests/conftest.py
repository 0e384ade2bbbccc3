import pytest

from simplicial_garland.complex import build_complex, full_simplex, simplex_boundary, skeleton_of_simplex
from simplicial_garland.generators import corpus


@pytest.fixture
def sphere():
    """Boundary of the tetrahedron."""
    return simplex_boundary(4)


@pytest.fixture
def hollow_triangle():
    return build_complex([(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def k4():
    return skeleton_of_simplex(4, 1)


@pytest.fixture
def two_triangles():
    return build_complex([(0, 1, 2), (0, 1, 3)])


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(20)


@pytest.fixture(scope="session")
def named_complexes():
    return {
        "sphere": simplex_boundary(4),
        "simplex4": full_simplex(4),
        "simplex5": full_simplex(5),
        "two_triangles": build_complex([(0, 1, 2), (0, 1, 3)]),
        "mixed": build_complex([(0, 1, 2), (2, 3), (3, 4), (4, 5, 6, 7)]),
        "bowtie": build_complex([(0, 1, 2), (0, 3, 4)]),
    }


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def log(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
