"""Braid words on ``n`` strands and the word problem.

Letters are nonzero integers: ``i`` is the generator ``s_i`` and ``-i`` its inverse.
Words act left to right, so the permutation of ``w1 * w2`` is that of ``w1`` followed
by that of ``w2``. Equality is decided with the classical Garside left normal form;
Dehornoy handle reduction is kept as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError, PartitionMismatchError, StrandMismatchError
from .forest import TypePartition, partition_blocks
from .perm import Permutation


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.n < 0:
            raise ValueError("strand count must be nonnegative")
        for x in self.letters:
            if x == 0 or abs(x) > self.n - 1:
                raise ValueError(f"letter {x} is not a generator of B_{self.n}")

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())

    @classmethod
    def parse(cls, n: int, text: str) -> BraidWord:
        """Comma-separated signed generator indices, e.g. ``"1,2,-1"``; blank means identity."""
        text = text.strip()
        if not text:
            return cls(n, ())
        letters = []
        pos = 0
        for part in text.split(","):
            token = part.strip()
            try:
                letters.append(int(token))
            except ValueError:
                raise ParseError(f"bad braid letter {token!r}", pos) from None
            pos += len(part) + 1
        try:
            return cls(n, tuple(letters))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self) -> str:
        return ",".join(map(str, self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        _same_strands(self, other)
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def conjugated_by(self, g: BraidWord) -> BraidWord:
        """``g^-1 * self * g``."""
        return g.inverse() * self * g


def _same_strands(a: BraidWord, b: BraidWord) -> None:
    if a.n != b.n:
        raise StrandMismatchError(f"braids on {a.n} and {b.n} strands")


def permutation_of(w: BraidWord) -> Permutation:
    # track where the strand starting at each position currently sits
    where = list(range(1, w.n + 1))
    at = list(range(1, w.n + 1))  # at[pos-1] = strand currently at pos
    for x in w.letters:
        i = abs(x)
        a, b = at[i - 1], at[i]
        at[i - 1], at[i] = b, a
        where[a - 1], where[b - 1] = i + 1, i
    return Permutation(tuple(where))


def is_pure(w: BraidWord) -> bool:
    return permutation_of(w).is_identity()


def in_block_subgroup(w: BraidWord, pi: TypePartition | Sequence[Sequence[int]]) -> bool:
    blocks = partition_blocks(pi)
    m = sum(len(b) for b in blocks)
    if m != w.n:
        raise PartitionMismatchError(f"partition of {{1..{m}}} used with B_{w.n}")
    return permutation_of(w).preserves(blocks)


def permutation_braid(p: Permutation) -> BraidWord:
    """The positive braid in which every pair of strands crosses at most once, with image ``p``."""
    arr = list(p.images)
    letters = []
    n = len(arr)
    for end in range(n - 1, 0, -1):
        for pos in range(end):
            if arr[pos] > arr[pos + 1]:
                arr[pos], arr[pos + 1] = arr[pos + 1], arr[pos]
                letters.append(pos + 1)
    return BraidWord(n, tuple(letters))


def half_twist(n: int) -> BraidWord:
    return permutation_braid(Permutation(tuple(range(n, 0, -1))) if n else Permutation(()))


# -- Garside normal form ----------------------------------------------------

@dataclass(frozen=True)
class GarsideNormalForm:
    n: int
    infimum: int
    factors: tuple[Permutation, ...]

    def to_word(self) -> BraidWord:
        delta = half_twist(self.n)
        word = BraidWord.identity(self.n)
        for _ in range(abs(self.infimum)):
            word = word * (delta if self.infimum > 0 else delta.inverse())
        for f in self.factors:
            word = word * permutation_braid(f)
        return word

    def __str__(self) -> str:
        body = " ".join(str(list(f.images)) for f in self.factors)
        return f"D^{self.infimum}" + (f" {body}" if body else "")


def _starting_set(b: tuple[int, ...]) -> set[int]:
    return {k for k in range(1, len(b)) if b[k - 1] > b[k]}


def _finishing_set(a: tuple[int, ...]) -> set[int]:
    inv = [0] * len(a)
    for i, j in enumerate(a, start=1):
        inv[j - 1] = i
    return {k for k in range(1, len(a)) if inv[k - 1] > inv[k]}


def _swap_values(a: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Perm of ``A * s_k``: strands ending at ``k`` and ``k + 1`` exchange their ends."""
    return tuple(k + 1 if x == k else k if x == k + 1 else x for x in a)


def _swap_positions(b: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Perm of ``s_k^-1 * B``."""
    out = list(b)
    out[k - 1], out[k] = out[k], out[k - 1]
    return tuple(out)


def _make_left_weighted(a, b):
    while True:
        bad = _starting_set(b) - _finishing_set(a)
        if not bad:
            return a, b
        k = min(bad)
        a, b = _swap_values(a, k), _swap_positions(b, k)


def _tau(p: tuple[int, ...]) -> tuple[int, ...]:
    n = len(p)
    return tuple(n + 1 - p[n - i] for i in range(1, n + 1))


def normal_form(w: BraidWord) -> GarsideNormalForm:
    n = w.n
    if n <= 1:
        return GarsideNormalForm(n, 0, ())
    ident = tuple(range(1, n + 1))
    w0 = tuple(range(n, 0, -1))
    p = 0
    factors: list[tuple[int, ...]] = []

    def append(s):
        factors.append(s)
        j = len(factors) - 1
        while j > 0:
            a, b = _make_left_weighted(factors[j - 1], factors[j])
            if (a, b) == (factors[j - 1], factors[j]):
                break
            factors[j - 1], factors[j] = a, b
            j -= 1

    for x in w.letters:
        i = abs(x)
        if x > 0:
            append(_swap_positions(ident, i))
        else:
            # s_i^-1 = y * D^-1 with y = s_i^-1 * D simple
            p -= 1
            factors[:] = [_tau(f) for f in factors]
            append(_tau(_swap_positions(w0, i)))
        while factors and factors[0] == w0:
            factors.pop(0)
            p += 1
        while factors and factors[-1] == ident:
            factors.pop()
    return GarsideNormalForm(n, p, tuple(Permutation(f) for f in factors))


def braids_equal(w1: BraidWord, w2: BraidWord) -> bool:
    _same_strands(w1, w2)
    if w1.exponent_sum() != w2.exponent_sum():
        return False
    if permutation_of(w1) != permutation_of(w2):
        return False
    return normal_form(w1) == normal_form(w2)


def is_trivial(w: BraidWord) -> bool:
    return braids_equal(w, BraidWord.identity(w.n))


# -- handle reduction -------------------------------------------------------

def _find_leftmost_handle(letters: Sequence[int]) -> tuple[int, int] | None:
    for q, x in enumerate(letters):
        i = abs(x)
        p = q - 1
        while p >= 0 and abs(letters[p]) > i:
            p -= 1
        if p >= 0 and letters[p] == -x:
            return p, q
    return None


def handle_reduce(w: BraidWord) -> BraidWord:
    """Dehornoy handle reduction; the result is empty iff ``w`` is trivial."""
    letters = list(w.letters)
    while True:
        h = _find_leftmost_handle(letters)
        if h is None:
            return BraidWord(w.n, tuple(letters))
        p, q = h
        i = abs(letters[p])
        e = 1 if letters[p] > 0 else -1
        middle: list[int] = []
        for x in letters[p + 1:q]:
            if abs(x) == i + 1:
                d = 1 if x > 0 else -1
                middle.extend((-e * (i + 1), d * i, e * (i + 1)))
            else:
                middle.append(x)
        letters = letters[:p] + middle + letters[q + 1:]


def words_from(n: int, seqs: Iterable[Sequence[int]]) -> list[BraidWord]:
    return [BraidWord(n, tuple(s)) for s in seqs]
