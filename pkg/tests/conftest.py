import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

SAMPLE_LEDGER = """\
# borrower lender amount
5 7
1 3 4
3 4 7
4 2 2
2 1 2
1 5 1
3 5 1
5 4 2
"""


@st.composite
def debt_vectors(draw, min_size=1, max_size=10, bound=20):
    head = draw(st.lists(st.integers(-bound, bound), min_size=min_size - 1, max_size=max_size - 1))
    return head + [-sum(head)]


@pytest.fixture
def sample_path(tmp_path):
    p = tmp_path / "sample.txt"
    p.write_text(SAMPLE_LEDGER)
    return p


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
