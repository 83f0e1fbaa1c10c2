from fractions import Fraction as F

import pytest

from circleconf.forest import parse_tree
from circleconf.geometry import Circle, LabeledConfiguration

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def seven_circles() -> LabeledConfiguration:
    return LabeledConfiguration([
        Circle(-2, F(-1, 2), F(3, 10)),
        Circle(0, 0, 1),
        Circle(F(-1, 5), F(3, 10), F(1, 5)),
        Circle(F(-1, 5), F(-3, 10), F(3, 10)),
        Circle(F(3, 5), 0, 2),
        Circle(1, 1, F(3, 20)),
        Circle(F(6, 5), F(6, 5), F(1, 2)),
    ])


# root with two isomorphic children, each with children [chain of 1, chain of 1, leaf]
BIG_TREE = ((((),), ((),), ()), (((),), ((),), ()))
BIG_TREE_TEXT = "(1(2(3),4(5),6),7(8(9),10(11),12))"

# two 11-vertex trees that are isomorphic but not equal
_Z = ((), (), ())
ISO_A = ((), (((), _Z), ((),)))
ISO_B = (((_Z, ()), ((),)), ())


@pytest.fixture
def seven_config():
    return seven_circles()


@pytest.fixture
def three_labeled_trees():
    return (parse_tree("(1,2(3(5,6),4))"), parse_tree("(2(3(6,5),4),1)"), parse_tree("(3(4(2,1),6),5)"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
