"""Piecewise-linear motions of configurations.

A :class:`MotionPath` is a list of keyframes with strictly increasing rational times;
between keyframes every center coordinate and radius moves linearly. Validity is
decided exactly: for each pair of circles the quantity that certifies disjointness at
the start of a segment is a quadratic in the segment parameter and must stay positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .baut import BautElement
from .braid import BraidWord
from .canonical import kappa_of_tree
from .errors import (
    BasepointMismatchError, InvalidPathError, NonGenericError, NotALoopError, SizeMismatchError,
)
from .forest import LabeledTree, Path, Shape, tree_of_configuration
from .geometry import Circle, LabeledConfiguration, as_fraction, immediate_parent, validate_configuration


class MotionPath:
    __slots__ = ("keyframes", "_events")

    def __init__(self, keyframes: Sequence[tuple]):
        kfs = tuple((as_fraction(t), c) for t, c in keyframes)
        if not kfs:
            raise InvalidPathError("a path needs at least one keyframe")
        n = kfs[0][1].n
        for (t0, _), (t1, _) in zip(kfs, kfs[1:]):
            if not t0 < t1:
                raise InvalidPathError(f"keyframe times must increase strictly ({t0} then {t1})")
        for _, c in kfs:
            if c.n != n:
                raise SizeMismatchError("keyframes have different numbers of circles")
        self.keyframes: tuple[tuple[Fraction, LabeledConfiguration], ...] = kfs
        self._events = None

    @classmethod
    def constant(cls, config: LabeledConfiguration, t: Fraction = Fraction(0)) -> MotionPath:
        return cls([(t, config)])

    @property
    def start(self) -> LabeledConfiguration:
        return self.keyframes[0][1]

    @property
    def end(self) -> LabeledConfiguration:
        return self.keyframes[-1][1]

    @property
    def t_start(self) -> Fraction:
        return self.keyframes[0][0]

    @property
    def t_end(self) -> Fraction:
        return self.keyframes[-1][0]

    @property
    def n(self) -> int:
        return self.start.n

    def __len__(self) -> int:
        return len(self.keyframes)

    def segments(self) -> Iterator[tuple[Fraction, LabeledConfiguration, Fraction, LabeledConfiguration]]:
        for (t0, c0), (t1, c1) in zip(self.keyframes, self.keyframes[1:]):
            yield t0, c0, t1, c1

    def at(self, t) -> LabeledConfiguration:
        t = as_fraction(t)
        if not self.t_start <= t <= self.t_end:
            raise ValueError(f"time {t} outside the path")
        for t0, c0, t1, c1 in self.segments():
            if t0 <= t <= t1:
                return _interpolate(c0, c1, (t - t0) / (t1 - t0))
        return self.start

    def is_loop(self) -> bool:
        return self.start.same_set(self.end)

    def __eq__(self, other) -> bool:
        return isinstance(other, MotionPath) and self.keyframes == other.keyframes

    def __hash__(self) -> int:
        return hash(self.keyframes)

    def __repr__(self) -> str:
        return f"MotionPath({len(self.keyframes)} keyframes, t={self.t_start}..{self.t_end})"


def _lerp(a: Fraction, b: Fraction, s: Fraction) -> Fraction:
    return a + (b - a) * s


def _interpolate(c0: LabeledConfiguration, c1: LabeledConfiguration, s: Fraction) -> LabeledConfiguration:
    if s == 0:
        return c0
    if s == 1:
        return c1
    return LabeledConfiguration(
        [Circle(_lerp(a.cx, b.cx, s), _lerp(a.cy, b.cy, s), _lerp(a.r, b.r, s)) for a, b in zip(c0, c1)],
        check=False)


def concat(p: MotionPath, q: MotionPath) -> MotionPath:
    """``p`` then ``q``; ``q`` is relabeled so that it starts exactly where ``p`` ends."""
    if not p.end.same_set(q.start):
        raise InvalidPathError("second path does not start where the first ends")
    where = {c: i for i, c in p.end.items()}
    relabel = {k: where[c] for k, c in q.start.items()}
    shift = p.t_end - q.t_start
    tail = [(t + shift, c.relabeled(relabel)) for t, c in q.keyframes[1:]]
    return MotionPath(list(p.keyframes) + tail)


def concat_all(paths: Sequence[MotionPath]) -> MotionPath:
    out = paths[0]
    for q in paths[1:]:
        out = concat(out, q)
    return out


def reverse(p: MotionPath) -> MotionPath:
    total = p.t_end + p.t_start
    return MotionPath([(total - t, c) for t, c in reversed(p.keyframes)])


def mirror(p: MotionPath) -> MotionPath:
    """Reflect every keyframe through the x-axis."""
    return MotionPath([(t, mirror_config(c)) for t, c in p.keyframes])


def mirror_config(c: LabeledConfiguration) -> LabeledConfiguration:
    return LabeledConfiguration([Circle(x.cx, -x.cy, x.r) for x in c], check=False)


# -- exact validity -------------------------------------------------------------

@dataclass(frozen=True)
class PathViolation:
    """First failure found. ``pair`` is empty for an invalid keyframe.

    ``coefficients`` ``(A, B, C)`` give the certifying quadratic ``A s^2 + B s + C`` in the
    segment parameter ``s`` (``t = t0 + s (t1 - t0)``); contact happens at its first
    root in ``(0, 1]``, which lies in ``[time_low, time_high]`` (equal when rational).
    """

    segment: int
    pair: tuple[int, ...]
    kind: str  # "keyframe", "external" (circles meet from outside) or "internal"
    coefficients: tuple[Fraction, Fraction, Fraction] | None
    time_low: Fraction
    time_high: Fraction
    time: float

    def __str__(self) -> str:
        if self.kind == "keyframe":
            return f"keyframe {self.segment} is not a valid configuration"
        return (f"circles {self.pair[0]} and {self.pair[1]} touch ({self.kind}) in segment "
                f"{self.segment} at t ~ {self.time:.12g} in [{self.time_low}, {self.time_high}]")


@dataclass(frozen=True)
class PathReport:
    violation: PathViolation | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def __bool__(self) -> bool:
        return self.ok


def _quad(c0a: Circle, c0b: Circle, c1a: Circle, c1b: Circle, external: bool):
    """Coefficients of f (external) or g (internal) as a polynomial in s."""
    dx0, dy0 = c0a.cx - c0b.cx, c0a.cy - c0b.cy
    vx, vy = (c1a.cx - c1b.cx) - dx0, (c1a.cy - c1b.cy) - dy0
    if external:
        r0, rv = c0a.r + c0b.r, (c1a.r + c1b.r) - (c0a.r + c0b.r)
        sign = 1
    else:
        r0, rv = c0a.r - c0b.r, (c1a.r - c1b.r) - (c0a.r - c0b.r)
        sign = -1
    a = vx * vx + vy * vy - rv * rv
    b = 2 * (dx0 * vx + dy0 * vy) - 2 * r0 * rv
    c = dx0 * dx0 + dy0 * dy0 - r0 * r0
    return sign * a, sign * b, sign * c


def _qval(q, s):
    a, b, c = q
    return (a * s + b) * s + c


def _first_root(q) -> tuple[Fraction, Fraction] | None:
    """Isolating interval for the first root of ``q`` in ``(0, 1]`` given ``q(0) > 0``."""
    a, b, c = q
    hi = None
    if a > 0:
        v = -b / (2 * a)
        if 0 < v < 1 and _qval(q, v) <= 0:
            hi = v
    if hi is None:
        if _qval(q, Fraction(1)) > 0:
            return None
        hi = Fraction(1)
    lo = Fraction(0)
    # q is strictly decreasing on [lo, hi] with q(lo) > 0 >= q(hi)
    if a != 0:
        disc = b * b - 4 * a * c
        root = _rational_sqrt(disc)
        if root is not None:
            for s in ((-b - root) / (2 * a), (-b + root) / (2 * a)):
                if lo < s <= hi and _qval(q, s) == 0:
                    return s, s
    elif b != 0:
        s = -c / b
        return s, s
    if _qval(q, hi) == 0:
        return hi, hi
    while hi - lo > Fraction(1, 1 << 48):
        mid = (lo + hi) / 2
        if _qval(q, mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    p, d = q.numerator, q.denominator
    sp, sd = math.isqrt(p), math.isqrt(d)
    return Fraction(sp, sd) if sp * sp == p and sd * sd == d else None


def _float_root(q, lo: Fraction, hi: Fraction) -> float:
    if lo == hi:
        return float(lo)
    a, b, c = (float(x) for x in q)
    cands = []
    if a != 0:
        disc = max(b * b - 4 * a * c, 0.0)
        cands = [(-b - math.sqrt(disc)) / (2 * a), (-b + math.sqrt(disc)) / (2 * a)]
    elif b != 0:
        cands = [-c / b]
    inside = [s for s in cands if float(lo) - 1e-9 <= s <= float(hi) + 1e-9]
    return inside[0] if inside else float((lo + hi) / 2)


def _moving_labels(c0: LabeledConfiguration, c1: LabeledConfiguration):
    deltas = {}
    for i, (a, b) in enumerate(zip(c0, c1), start=1):
        deltas[i] = (b.cx - a.cx, b.cy - a.cy, b.r - a.r)
    return deltas


def validate_path(p: MotionPath) -> PathReport:
    for k, (t, c) in enumerate(p.keyframes):
        if validate_configuration(c.circles):
            return PathReport(PathViolation(k, (), "keyframe", None, t, t, float(t)))
    zero = (0, 0, 0)
    for k, (t0, c0, t1, c1) in enumerate(p.segments()):
        deltas = _moving_labels(c0, c1)
        moving = [i for i, d in deltas.items() if d != zero]
        if not moving:
            continue
        moving_set = set(moving)
        pairs = set()
        for i in moving:
            for j in c0.labels:
                if j != i and (j not in moving_set or i < j) and deltas[i] != deltas[j]:
                    pairs.add((min(i, j), max(i, j)))
        best = None
        for i, j in sorted(pairs):
            a0, b0, a1, b1 = c0[i], c0[j], c1[i], c1[j]
            d2 = (a0.cx - b0.cx) ** 2 + (a0.cy - b0.cy) ** 2
            external = (a0.r + b0.r) ** 2 < d2
            q = _quad(a0, b0, a1, b1, external)
            found = _first_root(q)
            if found is None:
                continue
            lo, hi = found
            if best is None or lo < best[0]:
                best = (lo, hi, (i, j), "external" if external else "internal", q)
        if best is not None:
            lo, hi, pair, kind, q = best
            dt = t1 - t0
            return PathReport(PathViolation(k, pair, kind, q, t0 + lo * dt, t0 + hi * dt,
                                            float(t0) + _float_root(q, lo, hi) * float(dt)))
    return PathReport()


def require_valid(p: MotionPath) -> None:
    report = validate_path(p)
    if not report.ok:
        raise InvalidPathError(str(report.violation), violation=report.violation)


# -- crossing events ------------------------------------------------------------

@dataclass(frozen=True)
class CrossingEvent:
    time: Fraction
    vertex: Path  # parent vertex, addressed in the tree of the starting configuration
    parent: int | None
    slot: int
    sign: int
    left: int  # label of the circle on the left just before the crossing
    right: int

    @property
    def letter(self) -> int:
        return self.sign * self.slot


def _lex_sign(c: LabeledConfiguration, i: int, j: int) -> int:
    """-1 if circle ``i`` precedes ``j`` in (cx, cy) order, +1 if it follows."""
    a, b = c[i], c[j]
    if (a.cx, a.cy) == (b.cx, b.cy):
        raise NonGenericError(f"circles {i} and {j} share a center")
    return -1 if (a.cx, a.cy) < (b.cx, b.cy) else 1


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _pair_events(p: MotionPath, i: int, j: int) -> list[tuple[Fraction, int, int, int]]:
    """Order changes of the pair as ``(time, left, right, sign)``."""
    out = []
    kfs = p.keyframes
    segs = []
    for t0, c0, t1, c1 in p.segments():
        a = c0[i].cx - c0[j].cx
        b = (c1[i].cx - c1[j].cx) - a
        if a == 0 and b == 0:
            raise NonGenericError(f"circles {i} and {j} keep equal x between t={t0} and t={t1}")
        segs.append((a, b))

    def record(t, before, cfg):
        left, right = (i, j) if before < 0 else (j, i)
        dy = cfg[left].cy - cfg[right].cy
        if dy == 0:
            raise NonGenericError(f"circles {i} and {j} share a center at t={t}")
        out.append((t, left, right, 1 if dy < 0 else -1))

    for k, (t, c) in enumerate(kfs):
        if c[i].cx != c[j].cx:
            pass
        else:
            before = _lex_sign(c, i, j) if k == 0 else _sgn(-segs[k - 1][1])
            after = _lex_sign(c, i, j) if k == len(kfs) - 1 else _sgn(segs[k][1])
            if before != after:
                record(t, before, c)
        if k < len(segs):
            a, b = segs[k]
            if b != 0:
                s = -a / b
                if 0 < s < 1:
                    t1 = kfs[k + 1][0]
                    record(t + s * (t1 - t), _sgn(a), _interpolate(c, kfs[k + 1][1], s))
    return out


def _sibling_groups(config: LabeledConfiguration, tree: LabeledTree) -> dict:
    return {p: kids for p, kids in tree.children_of().items() if len(kids) > 1}


def crossing_events(p: MotionPath) -> list[CrossingEvent]:
    if p._events is not None:
        return list(p._events)
    tree = tree_of_configuration(p.start)
    paths = tree.paths()
    raw: dict = {}
    for parent, kids in _sibling_groups(p.start, tree).items():
        evs = []
        for i, j in combinations(kids, 2):
            evs.extend(_pair_events(p, i, j))
        raw[parent] = sorted(evs, key=lambda e: e[0])
    events = []
    end_orders = tree_of_configuration(p.end).children_of() if len(p.keyframes) > 1 else None
    for parent, evs in raw.items():
        order = list(tree.children_of()[parent])
        vertex = () if parent is None else paths[parent]
        k = 0
        while k < len(evs):
            t = evs[k][0]
            batch = []
            while k < len(evs) and evs[k][0] == t:
                batch.append(evs[k])
                k += 1
            touched = [x for e in batch for x in e[1:3]]
            if len(set(touched)) != len(touched):
                raise NonGenericError(f"simultaneous crossings sharing a circle at t={t}")
            slots = []
            for _, left, right, sign in batch:
                pos = order.index(left)
                if pos + 1 >= len(order) or order[pos + 1] != right:
                    raise NonGenericError(f"circles {left} and {right} are not adjacent when they cross at t={t}")
                slots.append(pos + 1)
            for (_, left, right, sign), slot in zip(batch, slots):
                order[slot - 1], order[slot] = right, left
                events.append(CrossingEvent(t, vertex, parent, slot, sign, left, right))
        if end_orders is not None and tuple(order) != end_orders.get(parent, ()):
            raise NonGenericError(f"sibling order under {parent} is inconsistent with the endpoint")
    events.sort(key=lambda e: (e.time, e.vertex, e.slot))
    p._events = tuple(events)
    return events


# -- monodromy ------------------------------------------------------------------

def _streams(events) -> dict:
    out: dict = {}
    for e in events:
        out.setdefault(e.parent, []).append((e.left, e.right, e.sign))
    return out


def _apply(order: list, stream) -> list[int]:
    letters = []
    for left, right, sign in stream:
        pos = order.index(left)
        if pos + 1 >= len(order) or order[pos + 1] != right:
            raise NonGenericError(f"crossing of {left} and {right} at non-adjacent positions")
        order[pos], order[pos + 1] = right, left
        letters.append(sign * (pos + 1))
    return letters


def _final_preorder(label, kids_of, streams) -> list[int]:
    """Preorder labels (excluding ``label``) of the subtree after applying the streams."""
    out = []

    def walk(u):
        order = list(kids_of.get(u, ()))
        _apply(order, streams.get(u, ()))
        for v in order:
            out.append(v)
            walk(v)

    walk(label)
    return out


def reference_streams(a: Shape, b: Shape) -> dict:
    """Event streams, keyed by parent label (``None`` for the root), of the reference path
    between the fixed configurations of ``a`` and ``b``, labeled in preorder of ``a``."""
    from .planner import reference_events
    return reference_events(a, b)


def monodromy(p: MotionPath) -> BautElement:
    start = p.start
    tree = tree_of_configuration(start)
    if kappa_of_tree(tree) != start:
        raise BasepointMismatchError("the path must start at the fixed configuration of its tree")
    if not p.is_loop():
        raise NotALoopError("the path does not return to its starting set of circles")
    require_valid(p)
    streams = _streams(crossing_events(p))
    streams = {k: list(v) for k, v in streams.items()}
    kids_of = tree.children_of()
    shapes = {None: tree.shape}
    for lab, path in tree.paths().items():
        node = tree.node_at(path)
        shapes[lab] = tuple(_node_shape(c) for c in node.children)
    return _assemble(None, kids_of, shapes, streams)


def _node_shape(node) -> Shape:
    return tuple(_node_shape(c) for c in node.children)


def _assemble(u, kids_of, shapes, streams) -> BautElement:
    start_order = list(kids_of.get(u, ()))
    order = list(start_order)
    letters = _apply(order, streams.get(u, ()))
    shape_u = shapes[u]
    end_slot = {lab: i for i, lab in enumerate(order)}
    children = []
    for a, x in enumerate(start_order):
        b = end_slot[x]
        if shape_u[b] != shape_u[a]:
            names = _final_preorder(x, kids_of, streams)
            for parent, evs in reference_streams(shape_u[b], shape_u[a]).items():
                real_parent = x if parent is None else names[parent - 1]
                streams.setdefault(real_parent, []).extend(
                    (names[left - 1], names[right - 1], sign) for left, right, sign in evs)
        children.append(_assemble(x, kids_of, shapes, streams))
    return BautElement(shape_u, BraidWord(len(shape_u), tuple(letters)), tuple(children))


def end_automorphism_images(p: MotionPath) -> dict[int, int]:
    """For a loop, the label whose starting circle each circle occupies at the end."""
    where = {c: i for i, c in p.start.items()}
    return {i: where[c] for i, c in p.end.items()}

