"""Braided tree automorphisms.

An element on an ordered tree ``A`` with children ``c_1..c_m`` is a pair ``(n, h)``:
``h`` is a braid on ``m`` strands whose permutation preserves the child types, and
``n = (n_1..n_m)`` with ``n_i`` an element on ``c_i``. The product is

    (n, h)(n', h') = (n * (h . n'), h h'),   (h . n')_i = psi(n'_{s(i)})

where ``s`` is the permutation of ``h`` (start slot to end slot) and ``psi`` carries an
element on ``c_{s(i)}`` to one on the isomorphic tree ``c_i``. Isomorphic but differently
ordered subtrees are identified through their canonical representative (children
sorted by type, equal types kept in their original relative order).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .braid import BraidWord, braids_equal, in_block_subgroup, is_pure, permutation_braid, permutation_of
from .errors import ParseError, ShapeMismatchError, TypeMismatchError
from .forest import (
    Path, Shape, TreeMap, aut_order as _aut_order, canonical_shape, ordered_code, reference_map,
    shape_from_code, subtree, to_canonical_map, type_partition, unordered_canonical_code,
)

TreeAutomorphism = TreeMap


@dataclass(frozen=True)
class BautElement:
    shape: Shape
    braid: BraidWord
    children: tuple  # tuple[BautElement, ...]

    def __post_init__(self):
        m = len(self.shape)
        if self.braid.n != m or len(self.children) != m:
            raise ShapeMismatchError(f"element does not fit a vertex with {m} children")
        for c, s in zip(self.children, self.shape):
            if c.shape != s:
                raise ShapeMismatchError("child element acts on a different subtree")
        if not in_block_subgroup(self.braid, type_partition(self.shape)):
            raise TypeMismatchError(f"braid {self.braid} permutes children of different types")

    @property
    def perm(self):
        return permutation_of(self.braid)

    def braid_at(self, path: Path) -> BraidWord:
        e = self
        for i in path:
            e = e.children[i]
        return e.braid

    def vertex_braids(self, prefix: Path = ()):
        yield prefix, self.braid
        for i, c in enumerate(self.children):
            yield from c.vertex_braids(prefix + (i,))

    def __mul__(self, other: BautElement) -> BautElement:
        return baut_multiply(self, other)


def baut_identity(shape: Shape) -> BautElement:
    return _identity(shape)


@functools.lru_cache(maxsize=None)
def _identity(shape: Shape) -> BautElement:
    return BautElement(shape, BraidWord.identity(len(shape)), tuple(_identity(c) for c in shape))


def _check_same_shape(a: BautElement, b: BautElement) -> None:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"elements act on {ordered_code(a.shape)} and {ordered_code(b.shape)}")


# -- identifications between isomorphic ordered trees -----------------------

def to_canonical(x: BautElement) -> BautElement:
    """Transport ``x`` to the canonical representative of its tree."""
    a = x.shape
    k = canonical_shape(a)
    if a == k:
        return x
    rho = to_canonical_map(a).perm
    beta = permutation_braid(rho)
    kids: list = [None] * len(a)
    for i, c in enumerate(x.children, start=1):
        kids[rho(i) - 1] = to_canonical(c)
    return BautElement(k, beta.inverse() * x.braid * beta, tuple(kids))


def from_canonical(y: BautElement, a: Shape) -> BautElement:
    """Inverse of :func:`to_canonical` for the ordered tree ``a``."""
    if y.shape == a:
        return y
    rho = to_canonical_map(a).perm
    beta = permutation_braid(rho)
    kids = tuple(from_canonical(y.children[rho(i) - 1], a[i - 1]) for i in range(1, len(a) + 1))
    return BautElement(a, beta * y.braid * beta.inverse(), kids)


def transport(x: BautElement, target: Shape) -> BautElement:
    """Carry ``x`` to the isomorphic ordered tree ``target``."""
    if x.shape == target:
        return x
    if unordered_canonical_code(x.shape) != unordered_canonical_code(target):
        raise TypeMismatchError("trees are not isomorphic")
    return from_canonical(to_canonical(x), target)


# -- group law --------------------------------------------------------------

def act(h: BraidWord, shape: Shape, n: tuple) -> tuple:
    s = permutation_of(h)
    return tuple(transport(n[s(i) - 1], shape[i - 1]) for i in range(1, len(shape) + 1))


def baut_multiply(a: BautElement, b: BautElement) -> BautElement:
    _check_same_shape(a, b)
    moved = act(a.braid, a.shape, b.children)
    kids = tuple(baut_multiply(x, y) for x, y in zip(a.children, moved))
    return BautElement(a.shape, a.braid * b.braid, kids)


def baut_inverse(a: BautElement) -> BautElement:
    h_inv = a.braid.inverse()
    n_inv = tuple(baut_inverse(c) for c in a.children)
    return BautElement(a.shape, h_inv, act(h_inv, a.shape, n_inv))


def baut_equal(a: BautElement, b: BautElement) -> bool:
    _check_same_shape(a, b)
    if a.perm != b.perm:
        return False
    if not braids_equal(a.braid, b.braid):
        return False
    return all(baut_equal(x, y) for x, y in zip(a.children, b.children))


def baut_power(a: BautElement, k: int) -> BautElement:
    base = a if k >= 0 else baut_inverse(a)
    out = baut_identity(a.shape)
    for _ in range(abs(k)):
        out = baut_multiply(out, base)
    return out


# -- projection to Aut ------------------------------------------------------

def pi_to_aut(a: BautElement) -> TreeAutomorphism:
    s = a.perm
    kids = tuple(pi_to_aut(c).then(reference_map(a.shape[i - 1], a.shape[s(i) - 1]))
                 for i, c in enumerate(a.children, start=1))
    return TreeMap(a.shape, s, kids)


def is_pure_element(a: BautElement) -> bool:
    return is_pure(a.braid) and all(is_pure_element(c) for c in a.children)


# -- structure ---------------------------------------------------------------

def pbaut_factors(shape: Shape, reduced: bool = False) -> list[int]:
    """Child counts of all vertices in postorder (the root last)."""
    out: list[int] = []

    def walk(s):
        for c in s:
            walk(c)
        out.append(len(s))

    walk(shape)
    return [d for d in out if d > 1] if reduced else out


def aut_order(shape: Shape) -> int:
    return _aut_order(shape)


def level_group_order_index(shape: Shape) -> int:
    """Index of the block subgroup at the root in the full braid group, ``m! / prod(|b|!)``."""
    p = type_partition(shape)
    return math.factorial(len(shape)) // math.prod(math.factorial(len(b)) for b in p.blocks)


def structure_description(shape: Shape) -> str:
    m = len(shape)
    pi = type_partition(shape)
    if m <= 1:
        top = ""
    elif len(pi.blocks) == 1:
        top = f"B_{m}"
    else:
        top = f"B_{m}^{{{pi}}}"
    factors = [d for d in (structure_description(c) for c in shape) if d != "1"]
    factors = [f"({f})" if " " in f else f for f in factors]
    if not factors:
        return top or "1"
    prod = " × ".join(factors)
    if not top:
        return prod
    if len(factors) > 1:
        prod = f"({prod})"
    return f"{prod} ⋊ {top}"


# -- constructors -------------------------------------------------------------

def star_shape(n: int) -> Shape:
    return ((),) * n


def star_embed(w: BraidWord) -> BautElement:
    shape = star_shape(w.n)
    return BautElement(shape, w, tuple(_identity(()) for _ in range(w.n)))


def with_root_braid(shape: Shape, w: BraidWord) -> BautElement:
    return BautElement(shape, w, tuple(_identity(c) for c in shape))


def embed_at(shape: Shape, path: Path, x: BautElement) -> BautElement:
    """The element acting as ``x`` on the subtree at ``path`` and trivially elsewhere."""
    if not path:
        if x.shape != shape:
            raise ShapeMismatchError("element does not act on this subtree")
        return x
    i = path[0]
    kids = tuple(embed_at(c, path[1:], x) if j == i else _identity(c) for j, c in enumerate(shape))
    return BautElement(shape, BraidWord.identity(len(shape)), kids)


def generator(shape: Shape, path: Path, i: int, sign: int = 1) -> BautElement:
    """``s_i^sign`` at vertex ``path``: swaps child slots ``i`` and ``i + 1`` there."""
    sub = subtree(shape, path)
    if not 1 <= i < len(sub):
        raise ValueError(f"vertex has {len(sub)} children; no generator {i}")
    if unordered_canonical_code(sub[i - 1]) != unordered_canonical_code(sub[i]):
        raise TypeMismatchError(f"children {i} and {i + 1} have different types")
    return embed_at(shape, path, with_root_braid(sub, BraidWord(len(sub), (sign * i,))))


def from_vertex_braids(shape: Shape, braids: dict[Path, BraidWord]) -> BautElement:
    def build(s, prefix):
        w = braids.get(prefix, BraidWord.identity(len(s)))
        return BautElement(s, w, tuple(build(c, prefix + (i,)) for i, c in enumerate(s)))

    return build(shape, ())


# -- JSON -----------------------------------------------------------------------

def path_key(path: Path) -> str:
    return ".".join(map(str, path))


def parse_path_key(key: str) -> Path:
    return tuple(int(p) for p in key.split(".")) if key else ()


def element_to_json(a: BautElement) -> dict:
    return {"tree": ordered_code(a.shape),
            "braids": {path_key(p): str(w) for p, w in a.vertex_braids()}}


def element_from_json(data: dict) -> BautElement:
    shape = shape_from_code(data["tree"])
    braids = {}
    for key, text in data.get("braids", {}).items():
        try:
            path = parse_path_key(key)
            m = len(subtree(shape, path))
        except (ValueError, IndexError):
            raise ParseError(f"bad vertex path {key!r}") from None
        braids[path] = BraidWord.parse(m, text)
    return from_vertex_braids(shape, braids)

