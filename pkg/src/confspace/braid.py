"""Braid words on n strands: reduction, Artin relation moves, permutation image.

The braid word problem is not solved here.  Words are compared only through
invariants (permutation image, exponent sum) and explicit relation moves.
Permutations compose left to right in letter order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """Letters are signed generator indices: ``2`` is sigma_2, ``-2`` its inverse."""

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.n < 1:
            raise BraidError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) > self.n - 1:
                raise BraidError(f"generator {x} out of range for {self.n} strands")

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.n != self.n:
            raise BraidError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"s{x}" if x > 0 else f"S{-x}" for x in self.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))


_TOKEN = re.compile(r"^([sS])(\d+)$")


def parse_word(text: str, n: int | None = None) -> BraidWord:
    """``"s1 s2 S1"`` -> sigma_1 sigma_2 sigma_1^-1.  ``n`` defaults to the smallest that fits."""
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise BraidError(f"bad braid token {tok!r}")
        i = int(m.group(2))
        letters.append(i if m.group(1) == "s" else -i)
    if n is None:
        n = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(n, tuple(letters))


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent ``x x^-1`` pairs until none remain."""
    out: list[int] = []
    for x in w.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return BraidWord(w.n, tuple(out))


Permutation = tuple[int, ...]


def identity_permutation(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``: as position arrangements, apply the swaps of ``p`` first."""
    return tuple(p[q[i] - 1] for i in range(len(p)))


def permutation_image(w: BraidWord) -> Permutation:
    """Arrangement of the strand starting labels after the braid, one swap per letter.

    Entry ``i`` is the label of the strand ending in position ``i + 1``.
    """
    perm = list(range(1, w.n + 1))
    for x in w.letters:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


def is_pure(w: BraidWord) -> bool:
    return permutation_image(w) == identity_permutation(w.n)


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


def cycle_notation(p: Permutation) -> str:
    seen, cycles = set(), []
    for start in range(1, len(p) + 1):
        if start in seen or p[start - 1] == start:
            seen.add(start)
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = p[i - 1]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


RELATIONS = ("commute", "braid", "braid-inverse")


def apply_relation(w: BraidWord, position: int, kind: str) -> BraidWord:
    """Rewrite the letters at ``position`` with one Artin relation.

    ``commute``: ``s_i s_k -> s_k s_i`` for ``|i - k| >= 2``.
    ``braid``: ``s_i s_{i+1} s_i -> s_{i+1} s_i s_{i+1}``.
    ``braid-inverse``: the same relation read right to left.
    Signs must be uniform across the matched letters; inverse letters use the
    inverted relation, which holds as well.
    """
    L = w.letters
    if kind == "commute":
        seg = L[position:position + 2]
        if len(seg) < 2 or position < 0:
            raise BraidError("commute needs two letters")
        a, b = seg
        if abs(abs(a) - abs(b)) < 2:
            raise BraidError(f"generators {abs(a)} and {abs(b)} are adjacent; they do not commute")
        new = (b, a)
        width = 2
    elif kind in ("braid", "braid-inverse"):
        seg = L[position:position + 3]
        if len(seg) < 3 or position < 0:
            raise BraidError("braid relation needs three letters")
        a, b, c = seg
        sign = 1 if a > 0 else -1
        if not (b * sign > 0 and c * sign > 0 and a == c):
            raise BraidError("letters do not match a braid relation")
        i, j = abs(a), abs(b)
        step = 1 if kind == "braid" else -1
        if j - i != step:
            raise BraidError(f"expected s{i} s{i + step} s{i}, got s{i} s{j} s{i}")
        new = (b, a, b)
        width = 3
    else:
        raise BraidError(f"unknown relation {kind!r}")
    out = BraidWord(w.n, L[:position] + new + L[position + width:])
    assert permutation_image(out) == permutation_image(w)
    return out
