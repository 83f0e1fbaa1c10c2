"""Exact predicates on circles and labeled configurations of circles in the plane.

All coordinates are :class:`fractions.Fraction`; every predicate is an exact sign
evaluation of a polynomial in those coordinates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import DuplicatePointError, InvalidConfigurationError, NotDisjointError

Rational = Union[Fraction, int, str]

ROOT = None  # parent of an outermost circle


def as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coordinates are not accepted; use Fraction or 'p/q'")
    return Fraction(value)


@dataclass(frozen=True)
class Circle:
    cx: Fraction
    cy: Fraction
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cx", as_fraction(self.cx))
        object.__setattr__(self, "cy", as_fraction(self.cy))
        object.__setattr__(self, "r", as_fraction(self.r))
        if self.r <= 0:
            raise InvalidConfigurationError(f"radius must be positive, got {self.r}")

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return (self.cx, self.cy)

    def translated(self, dx: Fraction, dy: Fraction) -> Circle:
        return Circle(self.cx + dx, self.cy + dy, self.r)

    def scaled_about(self, px: Fraction, py: Fraction, factor: Fraction) -> Circle:
        return Circle(px + (self.cx - px) * factor, py + (self.cy - py) * factor, self.r * factor)

    def normalized_in(self, frame: Circle) -> Circle:
        """Coordinates relative to ``frame``: translate its center to the origin, unit radius."""
        return Circle((self.cx - frame.cx) / frame.r, (self.cy - frame.cy) / frame.r, self.r / frame.r)

    def placed_in(self, frame: Circle) -> Circle:
        """Inverse of :meth:`normalized_in`."""
        return Circle(frame.cx + self.cx * frame.r, frame.cy + self.cy * frame.r, self.r * frame.r)

    def __repr__(self) -> str:
        return f"Circle({self.cx}, {self.cy}; {self.r})"


def _dist2(a: Circle, b: Circle) -> Fraction:
    dx = a.cx - b.cx
    dy = a.cy - b.cy
    return dx * dx + dy * dy


def circles_disjoint(a: Circle, b: Circle) -> bool:
    d2 = _dist2(a, b)
    return (a.r - b.r) ** 2 - d2 > 0 or (a.r + b.r) ** 2 - d2 < 0


class Nesting(enum.Enum):
    A_INSIDE_B = "A_INSIDE_B"
    B_INSIDE_A = "B_INSIDE_A"
    UNNESTED = "UNNESTED"


def nesting_relation(a: Circle, b: Circle) -> Nesting:
    d2 = _dist2(a, b)
    if (a.r - b.r) ** 2 > d2:
        return Nesting.A_INSIDE_B if a.r < b.r else Nesting.B_INSIDE_A
    if (a.r + b.r) ** 2 < d2:
        return Nesting.UNNESTED
    raise NotDisjointError(f"{a!r} and {b!r} intersect")


def is_nested_in(a: Circle, b: Circle) -> bool:
    """True iff ``a`` lies in the bounded complementary component of ``b`` (never reflexive)."""
    return a.r < b.r and (a.r - b.r) ** 2 > _dist2(a, b)


class LabeledConfiguration:
    """An ordered tuple of pairwise disjoint circles; the circle at index ``i - 1`` carries label ``i``."""

    __slots__ = ("circles", "_tree_cache")

    def __init__(self, circles: Iterable[Circle] = (), *, check: bool = True):
        self.circles: tuple[Circle, ...] = tuple(circles)
        self._tree_cache = None
        if check:
            violations = validate_configuration(self.circles)
            if violations:
                raise InvalidConfigurationError("; ".join(str(v) for v in violations),
                                                violations=violations)

    def __len__(self) -> int:
        return len(self.circles)

    @property
    def n(self) -> int:
        return len(self.circles)

    @property
    def labels(self) -> range:
        return range(1, len(self.circles) + 1)

    def __getitem__(self, label: int) -> Circle:
        if not 1 <= label <= len(self.circles):
            raise KeyError(label)
        return self.circles[label - 1]

    def __iter__(self):
        return iter(self.circles)

    def items(self):
        return zip(self.labels, self.circles)

    def __eq__(self, other) -> bool:
        return isinstance(other, LabeledConfiguration) and self.circles == other.circles

    def __hash__(self) -> int:
        return hash(self.circles)

    def same_set(self, other: LabeledConfiguration) -> bool:
        """Equality of the underlying unlabeled sets of circles."""
        return len(self) == len(other) and set(self.circles) == set(other.circles)

    def relabeled(self, new_label_of: dict[int, int]) -> LabeledConfiguration:
        """Move the circle labeled ``i`` to label ``new_label_of[i]``."""
        out: list[Circle | None] = [None] * len(self.circles)
        for i, c in self.items():
            out[new_label_of[i] - 1] = c
        return LabeledConfiguration(out, check=False)

    def __repr__(self) -> str:
        body = ", ".join(f"{i}:({c.cx},{c.cy};{c.r})" for i, c in self.items())
        return f"LabeledConfiguration[{body}]"


@dataclass(frozen=True)
class Violation:
    kind: str  # "radius" or "intersect"
    labels: tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == "radius":
            return f"circle {self.labels[0]} has non-positive radius"
        return f"circles {self.labels[0]} and {self.labels[1]} intersect"


def validate_configuration(circles: Sequence) -> list[Violation]:
    """Empty list iff every radius is positive and every pair is disjoint."""
    violations = []
    ok = []
    for i, c in enumerate(circles, start=1):
        r = c.r if isinstance(c, Circle) else as_fraction(c[2])
        if r <= 0:
            violations.append(Violation("radius", (i,)))
        else:
            ok.append(i)
    good = {i: (circles[i - 1] if isinstance(circles[i - 1], Circle) else Circle(*circles[i - 1]))
            for i in ok}
    for i, j in combinations(ok, 2):
        if not circles_disjoint(good[i], good[j]):
            violations.append(Violation("intersect", (i, j)))
    return violations


def immediate_parent(config: LabeledConfiguration, i: int) -> int | None:
    """Label of the smallest circle containing circle ``i``, or ``ROOT`` (None)."""
    c = config[i]
    best = ROOT
    best_r = None
    for j, other in config.items():
        if j != i and is_nested_in(c, other) and (best_r is None or other.r < best_r):
            best, best_r = j, other.r
    return best


def parent_map(config: LabeledConfiguration) -> dict[int, int | None]:
    return {i: immediate_parent(config, i) for i in config.labels}


def _sqrt_if_square(q: Fraction) -> Fraction | None:
    p, d = q.numerator, q.denominator
    sp, sd = math.isqrt(p), math.isqrt(d)
    if sp * sp == p and sd * sd == d:
        return Fraction(sp, sd)
    return None


def third_of_sqrt(d2: Fraction) -> Fraction:
    """Largest-ish rational r with (3r)^2 <= d2: exact d/3 when d2 is a square, else a
    floor approximation with power-of-two denominator (at least 2^32)."""
    root = _sqrt_if_square(d2)
    if root is not None:
        return root / 3
    bits = 32
    while True:
        scale = 1 << (2 * bits)
        k = math.isqrt(d2.numerator * scale // (9 * d2.denominator))
        if k > 0:
            r = Fraction(k, 1 << bits)
            assert (3 * r) ** 2 <= d2
            return r
        bits *= 2


def disks_from_points(points: Sequence[tuple[Rational, Rational]]) -> LabeledConfiguration:
    pts = [(as_fraction(x), as_fraction(y)) for x, y in points]
    if len(pts) <= 1:
        return LabeledConfiguration([Circle(x, y, 1) for x, y in pts])
    d2 = None
    for (i, a), (j, b) in combinations(enumerate(pts, start=1), 2):
        q = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
        if q == 0:
            raise DuplicatePointError(f"points {i} and {j} coincide", labels=(i, j))
        if d2 is None or q < d2:
            d2 = q
    r = third_of_sqrt(d2)
    return LabeledConfiguration([Circle(x, y, r) for x, y in pts])
