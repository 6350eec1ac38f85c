import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sumpi import check_sum_decomposition, full_space  # noqa: E402
from sumpi import zoo  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def u2():
    return zoo.upper_triangular(2, 2)


@pytest.fixture
def u2f3():
    return zoo.upper_triangular(2, 3)


@pytest.fixture
def u3():
    return zoo.upper_triangular(3, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


def zoo_files():
    """The small corpus most property tests sweep over."""
    return [
        zoo.upper_triangular(2, 2),
        zoo.upper_triangular(2, 3),
        zoo.upper_triangular(3, 2),
        zoo.upper_triangular(3, 3),
        zoo.strictly_upper(3, 2),
        zoo.strictly_upper(4, 3),
        zoo.diagonal(2, 3),
        zoo.full_matrix(2, 2),
        zoo.full_matrix(2, 3),
        zoo.truncated_poly(4, 5),
        zoo.truncated_poly(3, 2),
        zoo.direct_sum(zoo.diagonal(2, 2), zoo.strictly_upper(2, 2)),
    ]


def decomposition(f, a1="D", a2="N"):
    return check_sum_decomposition(f.algebra, f.subspaces[a1], f.subspaces[a2])


def whole(f):
    return full_space(f.algebra)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
