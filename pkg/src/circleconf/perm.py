from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..n}``; position ``i`` maps to ``images[i - 1]``.

    For a braid, ``i`` is the starting position of a strand and the image its end position.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int) -> Permutation:
        """Swap of adjacent positions ``i`` and ``i + 1``."""
        im = list(range(1, n + 1))
        im[i - 1], im[i] = im[i], im[i - 1]
        return cls(tuple(im))

    @classmethod
    def from_zero_based(cls, images: Iterable[int]) -> Permutation:
        return cls(tuple(x + 1 for x in images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: Permutation) -> Permutation:
        """First ``self``, then ``other``."""
        if other.n != self.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other(self(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def preserves(self, blocks: Sequence[Iterable[int]]) -> bool:
        return all({self(i) for i in block} == set(block) for block in blocks)

    def __repr__(self) -> str:
        return f"Permutation{self.images}"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation obtained by applying ``p`` and then ``q``."""
    return p.then(q)
