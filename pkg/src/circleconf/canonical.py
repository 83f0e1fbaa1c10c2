"""The fixed configuration of a labeled tree: circles strung along the x-axis."""

from __future__ import annotations

from fractions import Fraction

from .forest import LabeledTree
from .geometry import Circle, LabeledConfiguration


def kappa_of_tree(t: LabeledTree) -> LabeledConfiguration:
    circles: dict[int, Circle] = {}

    def place(nodes, x_p: Fraction, r_p: Fraction, is_root: bool):
        k = len(nodes)
        for j, node in enumerate(nodes):
            if is_root:
                c = Circle(Fraction(j, k), 0, Fraction(1, 3 * k))
            else:
                c = Circle(x_p + j * r_p / k, 0, r_p / (3 * k))
            circles[node.label] = c
            place(node.children, c.cx, c.r, False)

    place(t.children, Fraction(0), Fraction(1), True)
    return LabeledConfiguration([circles[i] for i in range(1, len(circles) + 1)], check=False)
