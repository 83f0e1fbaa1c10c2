"""Explicit valid motions between configurations.

Every path built here has integer keyframe times. Inside a vertex's circle (the
"frame") its children move by similarities (translation plus positive scaling), and
their contents follow rigidly, so only sibling pairs and the frame boundary can ever
come into contact.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable

from .braid import permutation_braid
from .canonical import kappa_of_tree
from .errors import DifferentComponentError, InvalidPathError, NotIsomorphicError, TypeMismatchError
from .forest import (
    LabeledTree, Path, Shape, canonical_shape, labeled_from_shape, labeled_trees_isomorphic,
    ordered_code, reference_map, subtree, to_canonical_map, tree_of_configuration, trees_isomorphic,
    unordered_canonical_code,
)
from .geometry import Circle, LabeledConfiguration
from .motion import MotionPath, concat, crossing_events, reverse, validate_path

MAX_HALVINGS = 60


class _Builder:
    """Accumulates keyframes at consecutive integer times."""

    def __init__(self, config: LabeledConfiguration, kids_of: dict):
        self.state: list[Circle] = list(config.circles)
        self.frames: list[tuple[int, LabeledConfiguration]] = [(0, config)]
        self.kids_of = kids_of

    def circle(self, label: int) -> Circle:
        return self.state[label - 1]

    def descendants(self, label: int) -> list[int]:
        out = [label]
        stack = list(self.kids_of.get(label, ()))
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(self.kids_of.get(v, ()))
        return out

    def move(self, targets: dict[int, Circle]) -> None:
        """Move each listed circle to its target; its descendants follow by the same similarity."""
        new = list(self.state)
        changed = False
        for label, dst in targets.items():
            src = self.state[label - 1]
            if src == dst:
                continue
            changed = True
            f = dst.r / src.r
            for v in self.descendants(label):
                c = self.state[v - 1]
                new[v - 1] = Circle(dst.cx + f * (c.cx - src.cx), dst.cy + f * (c.cy - src.cy), f * c.r)
        if changed:
            self.push(new)

    def push(self, new: list[Circle]) -> None:
        self.state = list(new)
        t = self.frames[-1][0] + 1
        self.frames.append((t, LabeledConfiguration(self.state, check=False)))

    def mark(self) -> int:
        return len(self.frames)

    def rollback(self, mark: int) -> None:
        del self.frames[mark:]
        self.state = list(self.frames[-1][1].circles)

    def segment_path(self, mark: int) -> MotionPath:
        return MotionPath(self.frames[mark - 1:])

    def path(self) -> MotionPath:
        return MotionPath(self.frames)


def _retry(builder: _Builder, attempt: Callable[[Fraction], None], eps: Fraction) -> None:
    """Run ``attempt(eps)``, halving ``eps`` until the produced segments are valid."""
    mark = builder.mark()
    for _ in range(MAX_HALVINGS):
        attempt(eps)
        if builder.mark() == mark or validate_path(builder.segment_path(mark)).ok:
            return
        builder.rollback(mark)
        eps /= 2
    raise InvalidPathError("could not build a valid motion")  # pragma: no cover


# -- to the fixed configuration -----------------------------------------------

def _frame_of(builder: _Builder, u: int | None) -> tuple[Fraction, Fraction, Fraction]:
    if u is None:
        return Fraction(0), Fraction(0), Fraction(1)
    c = builder.circle(u)
    return c.cx, c.cy, c.r


def _nudge(builder: _Builder) -> None:
    """Separate siblings that share an x-coordinate, keeping the (cx, cy) order."""
    groups = [kids for kids in builder.kids_of.values() if len(kids) > 1]
    tied = any(builder.circle(a).cx == builder.circle(b).cx
               for kids in groups for a, b in zip(kids, kids[1:]))
    if not tied:
        return
    gaps = [abs(builder.circle(a).cx - builder.circle(b).cx)
            for kids in groups for a, b in zip(kids, kids[1:])]
    gaps = [g for g in gaps if g > 0]
    m = max(len(k) for k in groups)
    radii = min(c.r for c in builder.state)
    eps = min(gaps + [radii]) / (2 * m)

    def attempt(e: Fraction):
        offsets = {v: Fraction(0) for v in range(1, len(builder.state) + 1)}
        for kids in groups:
            for rank, v in enumerate(kids):
                if rank:
                    for w in builder.descendants(v):
                        offsets[w] += rank * e
        builder.push([Circle(c.cx + offsets[i], c.cy, c.r) for i, c in enumerate(builder.state, start=1)])

    _retry(builder, attempt, eps)


def _arrange_frame(builder: _Builder, u: int | None) -> None:
    kids = builder.kids_of.get(u, ())
    k = len(kids)
    if k:
        px, py, pr = _frame_of(builder, u)

        def place(x: Fraction, y: Fraction, r: Fraction) -> Circle:
            return Circle(px + pr * x, py + pr * y, pr * r)

        targets = {v: place(Fraction(j, k), Fraction(0), Fraction(1, 3 * k)) for j, v in enumerate(kids)}
        if any(builder.circle(v) != targets[v] for v in kids):
            _route_children(builder, u, kids, targets, px, py, pr)
    for v in kids:
        _arrange_frame(builder, v)


def _route_children(builder, u, kids, targets, px, py, pr) -> None:
    k = len(kids)
    if u is not None:
        lam = Fraction(1, 4 * k)
        builder.move({v: builder.circle(v).scaled_about(px, py, lam) for v in kids})
        row = py - pr * Fraction(1, 2 * k)
    else:
        row = min(builder.circle(v).cy for v in kids) - 1
    xs = [builder.circle(v).cx for v in kids]
    gaps = [b - a for a, b in zip(xs, xs[1:])]
    eps = min([builder.circle(v).r for v in kids] + [g / 4 for g in gaps] + [pr / (16 * k * k)])

    def attempt(e: Fraction):
        builder.move({v: Circle(builder.circle(v).cx, builder.circle(v).cy, e) for v in kids})
        builder.move({v: Circle(builder.circle(v).cx, row, e) for v in kids})
        left = [v for v in kids if targets[v].cx < builder.circle(v).cx]
        right = [v for v in kids if targets[v].cx > builder.circle(v).cx]
        for v in left + right[::-1]:
            builder.move({v: Circle(targets[v].cx, row, e)})
        builder.move({v: Circle(targets[v].cx, targets[v].cy, e) for v in kids})
        builder.move(targets)

    _retry(builder, attempt, eps)


def plan_to_canonical(config: LabeledConfiguration) -> MotionPath:
    tree = tree_of_configuration(config)
    builder = _Builder(config, tree.children_of())
    if kappa_of_tree(tree) == config:
        return builder.path()
    _nudge(builder)
    _arrange_frame(builder, None)
    path = builder.path()
    assert path.end == kappa_of_tree(tree)
    return path


# -- swaps between fixed-configuration slots -----------------------------------

def _swap(builder: _Builder, u: int | None, i: int, sign: int) -> None:
    """Exchange the children at slots ``i`` and ``i + 1`` of ``u`` (1-based), contents rigid.

    For ``sign = +1`` the left circle passes below the right one.
    """
    kids = builder.kids_of[u]
    k = len(kids)
    _, py, pr = _frame_of(builder, u)
    a, b = kids[i - 1], kids[i]
    ca, cb = builder.circle(a), builder.circle(b)
    h = pr / (2 * k) * sign
    builder.move({a: Circle(ca.cx, py - h, ca.r), b: Circle(cb.cx, py + h, cb.r)})
    builder.move({a: Circle(cb.cx, py - h, ca.r), b: Circle(ca.cx, py + h, cb.r)})
    builder.move({a: Circle(cb.cx, py, ca.r), b: Circle(ca.cx, py, cb.r)})
    kids = list(kids)
    kids[i - 1], kids[i] = b, a
    builder.kids_of[u] = tuple(kids)


def _preorder(kids_of: dict, u: int | None) -> list[int]:
    out = []

    def walk(v):
        for w in kids_of.get(v, ()):
            out.append(w)
            walk(w)

    walk(u)
    return out


def _run_normalized(builder: _Builder, u: int, path: MotionPath) -> None:
    """Play ``path`` (given in the normalized coordinates of ``u``'s circle) inside ``u``.

    The path's labels are matched to ``u``'s descendants in preorder; afterwards the
    builder's child lists under ``u`` are updated to the path's final order.
    """
    names = _preorder(builder.kids_of, u)
    frame = builder.circle(u)
    for _, cfg in path.keyframes[1:]:
        new = list(builder.state)
        for k, c in cfg.items():
            new[names[k - 1] - 1] = c.placed_in(frame)
        builder.push(new)
    end_tree = tree_of_configuration(path.end)
    for parent, kids in end_tree.children_of().items():
        owner = u if parent is None else names[parent - 1]
        builder.kids_of[owner] = tuple(names[x - 1] for x in kids)


# -- reference identifications -------------------------------------------------

_cache_lock = threading.Lock()
_reference_cache: dict[tuple[Shape, Shape], MotionPath] = {}
_events_cache: dict[tuple[Shape, Shape], dict] = {}


def _fixed(shape: Shape) -> LabeledConfiguration:
    return kappa_of_tree(labeled_from_shape(shape))


def _to_canonical_path(shape: Shape) -> MotionPath:
    """Positive swaps spelling the sorting braid of the root, then the same in every slot."""
    config = _fixed(shape)
    builder = _Builder(config, labeled_from_shape(shape).children_of())
    _sort_into(builder, None, shape)
    path = builder.path()
    assert path.end.same_set(_fixed(canonical_shape(shape)))
    return path


def _sort_into(builder: _Builder, u: int | None, shape: Shape) -> None:
    if shape == canonical_shape(shape):
        return
    rho = to_canonical_map(shape).perm
    for letter in permutation_braid(rho).letters:
        _swap(builder, u, letter, 1)
    sorted_shape: list = [None] * len(shape)
    for i, c in enumerate(shape, start=1):
        sorted_shape[rho(i) - 1] = c
    for v, sub in zip(builder.kids_of[u], sorted_shape):
        _sort_into(builder, v, sub)


def reference_identification(a: Shape, b: Shape) -> MotionPath:
    """A fixed path from the fixed configuration of ``a`` to that of ``b`` (as sets).

    Coordinates are those of a frame normalized to the unit circle at the origin; the
    path's labels start in preorder of ``a``.
    """
    a, b = _as_shape(a), _as_shape(b)
    if not trees_isomorphic(a, b):
        raise NotIsomorphicError(f"{ordered_code(a)} and {ordered_code(b)} are not isomorphic")
    key = (a, b)
    with _cache_lock:
        hit = _reference_cache.get(key)
    if hit is not None:
        return hit
    if a == b:
        path = MotionPath.constant(_fixed(a))
    else:
        path = concat(_to_canonical_path(a), reverse(_to_canonical_path(b)))
    with _cache_lock:
        return _reference_cache.setdefault(key, path)


def reference_events(a: Shape, b: Shape) -> dict:
    key = (a, b)
    with _cache_lock:
        hit = _events_cache.get(key)
    if hit is not None:
        return hit
    streams: dict = {}
    for e in crossing_events(reference_identification(a, b)):
        streams.setdefault(e.parent, []).append((e.left, e.right, e.sign))
    frozen = {k: tuple(v) for k, v in streams.items()}
    with _cache_lock:
        return _events_cache.setdefault(key, frozen)


def _as_shape(t) -> Shape:
    return t.shape if isinstance(t, LabeledTree) else t


# -- generator loops ------------------------------------------------------------

def _label_at(tree: LabeledTree, path: Path) -> int | None:
    node = tree.node_at(path)
    return None if node is None else node.label


def make_generator_loop(t: LabeledTree, vertex: Path, slot: int, sign: int = 1) -> MotionPath:
    """A loop at the fixed configuration of ``t`` exchanging children ``slot`` and ``slot + 1``
    of ``vertex`` (their contents riding along)."""
    shape = t.shape
    sub = subtree(shape, vertex)
    if not 1 <= slot < len(sub):
        raise ValueError(f"vertex has {len(sub)} children; no slot pair starting at {slot}")
    left, right = sub[slot - 1], sub[slot]
    if unordered_canonical_code(left) != unordered_canonical_code(right):
        raise TypeMismatchError(f"children {slot} and {slot + 1} have different types")
    builder = _Builder(kappa_of_tree(t), t.children_of())
    u = _label_at(t, vertex)
    _swap(builder, u, slot, sign)
    if left != right:
        kids = builder.kids_of[u]
        _run_normalized(builder, kids[slot], reference_identification(left, right))
        _run_normalized(builder, kids[slot - 1], reference_identification(right, left))
    path = builder.path()
    assert path.is_loop()
    return path


def swap_loop_sequence(t: LabeledTree, moves) -> MotionPath:
    """Concatenate generator loops given as ``(vertex, slot, sign)`` triples."""
    out = MotionPath.constant(kappa_of_tree(t))
    for vertex, slot, sign in moves:
        out = concat(out, make_generator_loop(tree_of_configuration(out.end), vertex, slot, sign))
    return out


# -- between two configurations --------------------------------------------------

def _bridge(builder: _Builder, u: int | None, target_kids: dict) -> None:
    """Bubble-sort every vertex's children into ``target_kids`` order with positive swaps."""
    goal = target_kids.get(u, ())
    rank = {v: j for j, v in enumerate(goal)}
    kids = list(builder.kids_of.get(u, ()))
    for end in range(len(kids) - 1, 0, -1):
        for pos in range(end):
            kids = builder.kids_of[u]
            if rank[kids[pos]] > rank[kids[pos + 1]]:
                _swap(builder, u, pos + 1, 1)
    for v in builder.kids_of.get(u, ()):
        _bridge(builder, v, target_kids)


def plan_between(a: LabeledConfiguration, b: LabeledConfiguration, labeled: bool = True) -> MotionPath:
    ta, tb = tree_of_configuration(a), tree_of_configuration(b)
    if a.n != b.n:
        raise DifferentComponentError(f"configurations have {a.n} and {b.n} circles")
    if not labeled:
        if not trees_isomorphic(ta, tb):
            raise DifferentComponentError("the trees of the two configurations are not isomorphic")
        if a.same_set(b):
            return MotionPath.constant(a)
        iso = reference_map(tb.shape, ta.shape).vertex_map()
        a_label = {p: lab for lab, p in ta.paths().items()}
        new_label = {lab: a_label[iso[p]] for lab, p in tb.paths().items()}
        b = b.relabeled(new_label)
        tb = tree_of_configuration(b)
    if not labeled_trees_isomorphic(ta, tb):
        raise DifferentComponentError("the labeled trees of the two configurations are not isomorphic")
    if a == b:
        return MotionPath.constant(a)
    first = plan_to_canonical(a)
    builder = _Builder(first.end, ta.children_of())
    _bridge(builder, None, tb.children_of())
    last = reverse(plan_to_canonical(b))
    path = concat(concat(first, builder.path()), last)
    assert path.end == b
    return path
