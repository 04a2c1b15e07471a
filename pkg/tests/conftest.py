from pathlib import Path

import pytest

from zukcheck.groups import GroupDescriptor, make_generating_set

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

SL2 = GroupDescriptor.integer_matrix(2, det=1)
A = [[1, 1], [0, 1]]
B = [[0, -1], [1, 0]]
NEG_I = [[-1, 0], [0, -1]]
A_INV = [[1, -1], [0, 1]]
B_INV = [[0, 1], [-1, 0]]


def neg(m):
    return [[-v for v in row] for row in m]


# the nine listed symbols, in order: -I, A, B, -A, -B, A^-1, B^-1, -A^-1, -B^-1
SL2_LISTED = [NEG_I, A, B, neg(A), neg(B), A_INV, B_INV, neg(A_INV), neg(B_INV)]
SL2_NAMES = ["-I", "A", "B", "-A", "-B", "A^-1", "B^-1", "-A^-1", "-B^-1"]

DRAWN_LABELS = ["-I", "A", "A^-1", "B", "B^-1", "-A", "-A^-1", "-B", "-B^-1"]
DRAWN_EDGES = [("-I", v) for v in DRAWN_LABELS[1:]] + [
    ("A", "-A"),
    ("A^-1", "-A^-1"),
    ("B", "-B"),
    ("B^-1", "-B^-1"),
]


@pytest.fixture
def z_example():
    Z = GroupDescriptor.free_abelian(1)
    return make_generating_set(Z, [Z.element(v) for v in (1, -1, 2, -2)])


@pytest.fixture
def sl2_set():
    return make_generating_set(SL2, [SL2.element(m) for m in SL2_LISTED])


_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = (report.outcome.upper(), report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        outcome, duration = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{outcome:7s} {name}  ({duration:.2f}s)")
