"""Rooted ordered trees, labeled trees, and their canonical forms.

An (unlabeled) rooted ordered tree is a nested tuple: a vertex is the tuple of its
children, left to right, and a leaf is ``()``. Vertices are addressed by paths, the
tuple of 0-based child indices from the root.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .errors import LabelError, NotIsomorphicError, ParseError, SizeMismatchError
from .geometry import LabeledConfiguration, parent_map
from .perm import Permutation

Shape = tuple
Path = tuple

LEAF: Shape = ()


class Node(NamedTuple):
    label: int
    children: tuple  # tuple[Node, ...]


@dataclass(frozen=True)
class LabeledTree:
    """A rooted ordered tree whose non-root vertices carry the labels ``1..n``."""

    children: tuple[Node, ...] = ()

    @property
    def shape(self) -> Shape:
        return _shape_of_nodes(self.children)

    @property
    def n(self) -> int:
        return sum(1 for _ in self.labels_preorder())

    def labels_preorder(self) -> Iterator[int]:
        stack = list(reversed(self.children))
        while stack:
            node = stack.pop()
            yield node.label
            stack.extend(reversed(node.children))

    def children_of(self) -> dict[int | None, tuple[int, ...]]:
        """Map from a label (``None`` for the root) to its ordered child labels."""
        out: dict[int | None, tuple[int, ...]] = {None: tuple(c.label for c in self.children)}
        stack = list(self.children)
        while stack:
            node = stack.pop()
            out[node.label] = tuple(c.label for c in node.children)
            stack.extend(node.children)
        return out

    def parent_of(self) -> dict[int, int | None]:
        return {c: p for p, kids in self.children_of().items() for c in kids}

    def paths(self) -> dict[int, Path]:
        out = {}

        def walk(nodes, prefix):
            for i, node in enumerate(nodes):
                out[node.label] = prefix + (i,)
                walk(node.children, prefix + (i,))

        walk(self.children, ())
        return out

    def node_at(self, path: Path) -> Node | None:
        """The node at ``path``; ``None`` for the root."""
        nodes, node = self.children, None
        for i in path:
            node = nodes[i]
            nodes = node.children
        return node

    def subtree_nodes(self, path: Path) -> tuple[Node, ...]:
        node = self.node_at(path)
        return self.children if node is None else node.children

    def relabeled(self, new_label_of: dict[int, int]) -> LabeledTree:
        def walk(nodes):
            return tuple(Node(new_label_of[n.label], walk(n.children)) for n in nodes)

        return LabeledTree(walk(self.children))

    def __str__(self) -> str:
        return format_tree(self)


def _shape_of_nodes(nodes) -> Shape:
    return tuple(_shape_of_nodes(n.children) for n in nodes)


def labeled_from_shape(shape: Shape) -> LabeledTree:
    """Label the non-root vertices of ``shape`` 1..n in preorder."""
    counter = iter(range(1, 1 << 62))

    def walk(s):
        out = []
        for child in s:
            label = next(counter)
            out.append(Node(label, walk(child)))
        return tuple(out)

    return LabeledTree(walk(shape))


# -- shapes ---------------------------------------------------------------

def size(shape: Shape) -> int:
    """Number of non-root vertices."""
    return sum(1 + size(c) for c in shape)


def subtree(shape: Shape, path: Path) -> Shape:
    for i in path:
        shape = shape[i]
    return shape


def vertex_paths(shape: Shape, prefix: Path = ()) -> Iterator[Path]:
    """All vertex paths in preorder, the root first."""
    yield prefix
    for i, child in enumerate(shape):
        yield from vertex_paths(child, prefix + (i,))


@functools.lru_cache(maxsize=None)
def ordered_code(shape: Shape) -> str:
    return "(" + "".join(ordered_code(c) for c in shape) + ")"


@functools.lru_cache(maxsize=None)
def unordered_canonical_code(shape: Shape) -> str:
    return "(" + "".join(sorted(unordered_canonical_code(c) for c in shape)) + ")"


@functools.lru_cache(maxsize=None)
def canonical_shape(shape: Shape) -> Shape:
    """The representative of ``shape``'s isomorphism class with children sorted by code."""
    return tuple(sorted((canonical_shape(c) for c in shape), key=unordered_canonical_code))


def shape_from_code(code: str) -> Shape:
    """Inverse of :func:`ordered_code`."""
    stack: list[list] = []
    result = None
    for pos, ch in enumerate(code):
        if ch == "(":
            if result is not None:
                raise ParseError("trailing characters after tree", pos)
            stack.append([])
        elif ch == ")":
            if not stack:
                raise ParseError("unbalanced ')'", pos)
            done = tuple(stack.pop())
            if stack:
                stack[-1].append(done)
            else:
                result = done
        elif not ch.isspace():
            raise ParseError(f"unexpected character {ch!r}", pos)
    if stack or result is None:
        raise ParseError("unbalanced '('", len(code))
    return result


def _as_shape(t) -> Shape:
    return t.shape if isinstance(t, LabeledTree) else t


def trees_isomorphic(t, u) -> bool:
    return unordered_canonical_code(_as_shape(t)) == unordered_canonical_code(_as_shape(u))


def labeled_trees_isomorphic(t: LabeledTree, u: LabeledTree) -> bool:
    if t.n != u.n:
        raise SizeMismatchError(f"trees have {t.n} and {u.n} non-root vertices")
    ct, cu = t.children_of(), u.children_of()
    return all(set(ct[k]) == set(cu.get(k, ())) for k in ct)


# -- type partitions ------------------------------------------------------

@dataclass(frozen=True)
class TypePartition:
    """A partition of ``{1..m}`` into blocks, each block a sorted tuple."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        flat = [i for b in blocks for i in b]
        if any(not b for b in blocks) or sorted(flat) != list(range(1, len(flat) + 1)):
            raise ValueError(f"not a partition of 1..m: {self.blocks}")

    @property
    def m(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def trivial(cls, m: int) -> TypePartition:
        return cls((tuple(range(1, m + 1)),) if m else ())

    def __str__(self) -> str:
        return "|".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def type_partition(shape: Shape, v: Path = ()) -> TypePartition:
    kids = subtree(_as_shape(shape), v)
    groups: dict[str, list[int]] = {}
    for i, child in enumerate(kids, start=1):
        groups.setdefault(unordered_canonical_code(child), []).append(i)
    return TypePartition(tuple(tuple(g) for g in groups.values()))


def aut_order(shape: Shape) -> int:
    """|Aut(T)|: product over vertices of the factorials of the child type multiplicities."""
    shape = _as_shape(shape)
    total = 1
    for count in Counter(unordered_canonical_code(c) for c in shape).values():
        total *= math.factorial(count)
    for c in shape:
        total *= aut_order(c)
    return total


# -- isomorphisms between ordered trees -----------------------------------

@dataclass(frozen=True)
class TreeMap:
    """An isomorphism from ordered tree ``source`` to an isomorphic ordered tree.

    ``perm`` sends child slot ``i`` of the source root to slot ``perm(i)`` of the target
    root, and ``children[i - 1]`` maps the source subtree at slot ``i`` onto the target
    subtree at slot ``perm(i)``.
    """

    source: Shape
    perm: Permutation
    children: tuple  # tuple[TreeMap, ...]

    @property
    def target(self) -> Shape:
        out: list = [None] * len(self.source)
        for i, child in enumerate(self.children, start=1):
            out[self.perm(i) - 1] = child.target
        return tuple(out)

    @classmethod
    def identity(cls, shape: Shape) -> TreeMap:
        return cls(shape, Permutation.identity(len(shape)), tuple(cls.identity(c) for c in shape))

    def then(self, other: TreeMap) -> TreeMap:
        """First ``self``, then ``other``."""
        if self.target != other.source:
            raise ValueError("tree maps are not composable")
        kids = tuple(c.then(other.children[self.perm(i) - 1])
                     for i, c in enumerate(self.children, start=1))
        return TreeMap(self.source, self.perm.then(other.perm), kids)

    def inverse(self) -> TreeMap:
        inv = self.perm.inverse()
        kids = tuple(self.children[inv(j) - 1].inverse() for j in range(1, len(self.source) + 1))
        return TreeMap(self.target, inv, kids)

    def is_identity(self) -> bool:
        return self.perm.is_identity() and all(c.is_identity() for c in self.children)

    def vertex_map(self) -> dict[Path, Path]:
        out = {(): ()}
        for i, child in enumerate(self.children):
            j = self.perm(i + 1) - 1
            for src, dst in child.vertex_map().items():
                out[(i,) + src] = (j,) + dst
        return out


@functools.lru_cache(maxsize=None)
def canonical_slot_order(shape: Shape) -> tuple[int, ...]:
    """0-based source slots listed in the order they occupy in :func:`canonical_shape`
    (stable: equal-type children keep their relative order)."""
    return tuple(sorted(range(len(shape)), key=lambda i: unordered_canonical_code(shape[i])))


@functools.lru_cache(maxsize=None)
def to_canonical_map(shape: Shape) -> TreeMap:
    """The fixed identification of ``shape`` with :func:`canonical_shape` of it."""
    order = canonical_slot_order(shape)
    images = [0] * len(shape)
    for q, i in enumerate(order):
        images[i] = q
    return TreeMap(shape, Permutation.from_zero_based(images),
                   tuple(to_canonical_map(c) for c in shape))


def reference_map(a: Shape, b: Shape) -> TreeMap:
    """The fixed isomorphism ``a -> b`` routed through the canonical representative."""
    if not trees_isomorphic(a, b):
        raise NotIsomorphicError(f"{ordered_code(a)} and {ordered_code(b)} are not isomorphic")
    return to_canonical_map(a).then(to_canonical_map(b).inverse())


# -- tree of a configuration ----------------------------------------------

def tree_of_configuration(config: LabeledConfiguration) -> LabeledTree:
    cached = getattr(config, "_tree_cache", None)
    if cached is not None:
        return cached
    parents = parent_map(config)
    kids: dict[int | None, list[int]] = {}
    for i, p in parents.items():
        kids.setdefault(p, []).append(i)
    for p, labels in kids.items():
        labels.sort(key=lambda i: (config[i].cx, config[i].cy))
        for a, b in zip(labels, labels[1:]):
            # siblings never share a center
            assert config[a].center != config[b].center

    def build(p):
        return tuple(Node(i, build(i)) for i in kids.get(p, ()))

    tree = LabeledTree(build(None))
    config._tree_cache = tree
    return tree


# -- text and JSON formats ------------------------------------------------

def format_tree(t: LabeledTree) -> str:
    def fmt_nodes(nodes):
        return "(" + ",".join(fmt_node(n) for n in nodes) + ")"

    def fmt_node(node):
        return str(node.label) + (fmt_nodes(node.children) if node.children else "")

    return fmt_nodes(t.children)


def parse_tree(text: str) -> LabeledTree:
    """Parse ``TREE := "(" ITEMS? ")"``, ``ITEMS := NODE ("," NODE)*``, ``NODE := label TREE?``."""
    s = text
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def expect(ch):
        nonlocal pos
        skip_ws()
        if pos >= len(s) or s[pos] != ch:
            found = repr(s[pos]) if pos < len(s) else "end of input"
            raise ParseError(f"expected {ch!r}, found {found}", pos)
        pos += 1

    def parse_items():
        nonlocal pos
        expect("(")
        skip_ws()
        nodes = []
        if pos < len(s) and s[pos] == ")":
            pos += 1
            return tuple(nodes)
        while True:
            nodes.append(parse_node())
            skip_ws()
            if pos < len(s) and s[pos] == ",":
                pos += 1
                continue
            expect(")")
            return tuple(nodes)

    def parse_node():
        nonlocal pos
        skip_ws()
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError("expected a label", start)
        label = int(s[start:pos])
        skip_ws()
        kids = parse_items() if pos < len(s) and s[pos] == "(" else ()
        return Node(label, kids)

    nodes = parse_items()
    skip_ws()
    if pos != len(s):
        raise ParseError("trailing characters after tree", pos)
    tree = LabeledTree(nodes)
    _check_labels(tree)
    return tree


def _check_labels(tree: LabeledTree) -> None:
    labels = list(tree.labels_preorder())
    dupes = sorted(k for k, c in Counter(labels).items() if c > 1)
    if dupes:
        raise LabelError(f"duplicate labels {dupes}")
    expected = set(range(1, len(labels) + 1))
    if set(labels) != expected:
        raise LabelError(f"labels must be exactly 1..{len(labels)}; "
                         f"missing {sorted(expected - set(labels))}, "
                         f"unexpected {sorted(set(labels) - expected)}")


def tree_to_json(t: LabeledTree) -> dict:
    def node_json(node):
        return {"children": [node_json(c) for c in node.children], "label": node.label}

    return {"children": [node_json(c) for c in t.children]}


def tree_from_json(data: dict) -> LabeledTree:
    def node(d):
        return Node(int(d["label"]), tuple(node(c) for c in d.get("children", ())))

    tree = LabeledTree(tuple(node(c) for c in data.get("children", ())))
    _check_labels(tree)
    return tree


def parse_shape(text: str) -> Shape:
    """Accept either a labeled tree (``"(4(1,3),2)"``) or a bare ordered code (``"(()())"``)."""
    try:
        return parse_tree(text).shape
    except ParseError:
        return shape_from_code(text.strip())


def find_isomorphism(a: Shape, b: Shape) -> TreeMap:
    """Some isomorphism ``a -> b`` (raises :class:`NotIsomorphicError`)."""
    return reference_map(a, b)


def check_same_size(t: LabeledTree, u: LabeledTree) -> None:
    if t.n != u.n:
        raise SizeMismatchError(f"trees have {t.n} and {u.n} non-root vertices")


def partition_blocks(p: TypePartition | Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return p.blocks if isinstance(p, TypePartition) else TypePartition(tuple(map(tuple, p))).blocks
