"""Seeded random test data: trees, configurations, braid words, group elements, loops."""

from __future__ import annotations

import random
from fractions import Fraction

from .baut import BautElement
from .braid import BraidWord, permutation_braid, permutation_of
from .canonical import kappa_of_tree
from .forest import LabeledTree, Node, Shape, labeled_from_shape, type_partition
from .geometry import Circle, LabeledConfiguration
from .motion import MotionPath, concat, reverse
from .perm import Permutation


def random_shape(n: int, rng: random.Random) -> Shape:
    """A random rooted ordered tree with ``n`` non-root vertices (random recursive tree)."""
    kids: list[list[int]] = [[]]
    for v in range(1, n + 1):
        parent = rng.randrange(v)
        kids[parent].insert(rng.randint(0, len(kids[parent])), v)
        kids.append([])

    def build(v):
        return tuple(build(c) for c in kids[v])

    return build(0)


def random_labeled_tree(n: int, rng: random.Random) -> LabeledTree:
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    t = labeled_from_shape(random_shape(n, rng))
    return t.relabeled({i: labels[i - 1] for i in range(1, n + 1)})


def all_shapes(n: int) -> list[Shape]:
    """Every rooted ordered tree with ``n`` non-root vertices."""
    if n == 0:
        return [()]
    out = []
    # first child subtree has k non-root vertices below it, the rest is a forest
    for k in range(n):
        for first in all_shapes(k):
            for rest in all_shapes(n - 1 - k):
                out.append((first,) + rest)
    return out


def _rand_frac(rng: random.Random, lo: float, hi: float, den: int) -> Fraction:
    return Fraction(rng.randint(int(lo * den), int(hi * den)), den)


def _apart(a: Circle, b: Circle) -> bool:
    return (a.r + b.r) ** 2 < (a.cx - b.cx) ** 2 + (a.cy - b.cy) ** 2


def _place_children(k: int, rng: random.Random, ties: bool) -> list[Circle]:
    """``k`` disjoint circles inside the unit circle at the origin."""
    scale = 1
    while True:
        placed: list[Circle] = []
        for _ in range(k):
            for _ in range(200):
                r = _rand_frac(rng, 0.04, 0.3, 100) / scale
                if ties and placed and rng.random() < 0.3:
                    cx = placed[-1].cx
                else:
                    cx = _rand_frac(rng, -0.8, 0.8, 40)
                cy = _rand_frac(rng, -0.8, 0.8, 40)
                c = Circle(cx, cy, r)
                inside = r < 1 and (1 - r) ** 2 > cx * cx + cy * cy
                if inside and all(_apart(c, o) for o in placed):
                    placed.append(c)
                    break
            else:
                break
        if len(placed) == k:
            return placed
        scale *= 2


def realize(t: LabeledTree, rng: random.Random, ties: bool = True, spread: int = 6) -> LabeledConfiguration:
    """A random configuration whose circles nest as in ``t`` (child order is whatever
    the random geometry gives)."""
    circles: dict[int, Circle] = {}
    root = Circle(0, 0, spread)

    def walk(frame: Circle, nodes):
        for node, c in zip(nodes, _place_children(len(nodes), rng, ties)):
            circles[node.label] = c.placed_in(frame)
            walk(circles[node.label], node.children)

    walk(root, t.children)
    return LabeledConfiguration([circles[i] for i in range(1, len(circles) + 1)])


def random_config(n: int, rng: random.Random, ties: bool = True) -> LabeledConfiguration:
    return realize(random_labeled_tree(n, rng), rng, ties)


def random_word(n: int, length: int, rng: random.Random) -> BraidWord:
    if n < 2:
        return BraidWord.identity(n)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


def random_block_perm(blocks, m: int, rng: random.Random) -> Permutation:
    images = [0] * m
    for b in blocks:
        targets = list(b)
        rng.shuffle(targets)
        for i, j in zip(b, targets):
            images[i - 1] = j
    return Permutation(tuple(images))


def random_element(shape: Shape, rng: random.Random, max_letters: int = 4) -> BautElement:
    m = len(shape)
    w = random_word(m, rng.randint(0, max_letters), rng)
    p = permutation_of(w)
    goal = random_block_perm(type_partition(shape).blocks, m, rng)
    w = w * permutation_braid(p.inverse().then(goal))
    return BautElement(shape, w, tuple(random_element(c, rng, max_letters) for c in shape))


def random_generator_moves(t: LabeledTree, count: int, rng: random.Random):
    """Random ``(vertex, slot, sign)`` triples whose two slots have the same type."""
    from .forest import unordered_canonical_code, vertex_paths, subtree

    shape = t.shape
    options = []
    for v in vertex_paths(shape):
        sub = subtree(shape, v)
        for i in range(1, len(sub)):
            if unordered_canonical_code(sub[i - 1]) == unordered_canonical_code(sub[i]):
                options.append((v, i))
    if not options:
        return []
    return [rng.choice(options) + (rng.choice((1, -1)),) for _ in range(count)]


def random_loop(t: LabeledTree, rng: random.Random, moves: int = 3, detours: bool = True) -> MotionPath:
    """A loop at the fixed configuration of ``t`` built from planner pieces: generator
    loops, and possibly a round trip to a random realization of the current tree."""
    from .forest import tree_of_configuration
    from .planner import plan_between, swap_loop_sequence

    loop = swap_loop_sequence(t, random_generator_moves(t, moves, rng))
    if detours and t.n and rng.random() < 0.5:
        here = loop.end
        c = realize(tree_of_configuration(here), rng, ties=True)
        loop = concat(loop, concat(plan_between(here, c), plan_between(c, here)))
    return loop


def fixed_star(n: int) -> LabeledTree:
    return LabeledTree(tuple(Node(i, ()) for i in range(1, n + 1)))


def kappa_star(n: int) -> LabeledConfiguration:
    return kappa_of_tree(fixed_star(n))
