"""Exact symmetric-group calculus on the letters {1, ..., n}.

Permutations act on the *left* of lists:

    sigma.(x_1, ..., x_n) = (x_{sigma^-1(1)}, ..., x_{sigma^-1(n)}),

so position j of the result holds the entry whose index maps to j.  On top
of the group law this module provides the two constructions needed for
operad work: block permutations sigma{j_1, ..., j_k} (move contiguous
blocks of the given sizes according to sigma) and direct sums
tau_1 (+) ... (+) tau_k (each summand acts inside its own block).

The degree-0 permutation (empty image tuple) is legal and is the unit of
the direct sum.  All values are immutable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    """One-line form: ``images[i-1]`` is the image of the letter ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"letter {i} out of range 1..{self.n}")
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        return _unsafe_perm(_inverse_images(self.images))

    def sign(self) -> int:
        """Parity: +1 for even, -1 for odd (product of inversion signs)."""
        inv = 0
        img = self.images
        for a, b in itertools.combinations(range(self.n), 2):
            if img[a] > img[b]:
                inv += 1
        return -1 if inv % 2 else 1

    def order(self) -> int:
        k, p = 1, self
        while p.images != identity(self.n).images:
            p = compose(p, self)
            k += 1
        return k

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, fixed points omitted, each rooted at its minimum."""
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        """Cycle-notation text form, ``"()"`` for any identity.

        >>> Permutation((2, 3, 1, 5, 4)).cycle_string()
        '(1 2 3)(4 5)'
        """
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __str__(self) -> str:
        return self.cycle_string()


def _unsafe_perm(images: tuple[int, ...]) -> Permutation:
    # internal constructor skipping bijection validation (inputs already valid)
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


@lru_cache(maxsize=None)
def _inverse_images(images: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(images)
    for i, j in enumerate(images, start=1):
        inv[j - 1] = i
    return tuple(inv)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product p∘q: apply q first, then p, so (p∘q)(i) = p(q(i))."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")
    pi = p.images
    return _unsafe_perm(tuple(pi[j - 1] for j in q.images))


def act_on_list(p: Permutation, xs: Sequence) -> tuple:
    """Left action on lists: position j of the result holds xs[p^-1(j)]."""
    if len(xs) != p.n:
        raise ValueError(f"length mismatch: list of {len(xs)} vs degree {p.n}")
    pinv = _inverse_images(p.images)
    return tuple(xs[j - 1] for j in pinv)


def from_cycles(cycles: Iterable[Sequence[int]], n: int | None = None) -> Permutation:
    """Build a permutation from disjoint cycles on letters 1..n.

    ``n`` defaults to the largest letter mentioned; pass it explicitly to
    keep trailing fixed points.
    """
    cycles = [tuple(c) for c in cycles]
    letters = [x for c in cycles for x in c]
    if len(set(letters)) != len(letters):
        raise ValueError(f"cycles are not disjoint: {cycles}")
    if n is None:
        n = max(letters, default=0)
    images = list(range(1, n + 1))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            if not 1 <= a <= n:
                raise ValueError(f"letter {a} out of range 1..{n}")
            images[a - 1] = b
    return Permutation(tuple(images))


def parse_cycles(text: str, n: int | None = None) -> Permutation:
    """Parse cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity.

    >>> parse_cycles("(1 2 3)(4 5)").images
    (2, 3, 1, 5, 4)
    """
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s*[,\s]\s*\d+)*)?\s*\))*", text):
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", text):
        letters = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if letters:
            cycles.append(letters)
    return from_cycles(cycles, n=n)


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(images) for images in itertools.permutations(range(1, n + 1))]


@lru_cache(maxsize=None)
def _block_permutation(images: tuple[int, ...], sizes: tuple[int, ...]) -> Permutation:
    k = len(images)
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    # offset of the target slot t = total size of the blocks placed before it,
    # which are B_{sigma^-1(1)}, ..., B_{sigma^-1(t-1)}
    sigma = Permutation(images)
    sizes_moved = act_on_list(sigma, sizes)
    target_offsets = [0]
    for s in sizes_moved:
        target_offsets.append(target_offsets[-1] + s)
    out = [0] * offsets[k]
    for s in range(1, k + 1):
        t = sigma(s)
        for i in range(1, sizes[s - 1] + 1):
            out[offsets[s - 1] + i - 1] = target_offsets[t - 1] + i
    return _unsafe_perm(tuple(out))


def block_permutation(sigma: Permutation, sizes: Sequence[int]) -> Permutation:
    """The permutation sigma{j_1, ..., j_k} of sum(sizes) letters.

    Acting on a list split into consecutive blocks B_1..B_k of the given
    sizes, it reorders the blocks exactly as ``act_on_list(sigma, blocks)``
    and concatenates.  Zero-size blocks are allowed.

    >>> act_on_list(block_permutation(parse_cycles("(1 2)"), (2, 1)), "xyz")
    ('z', 'x', 'y')
    """
    sizes = tuple(sizes)
    if len(sizes) != sigma.n:
        raise ValueError(f"{len(sizes)} block sizes for a degree-{sigma.n} permutation")
    if any(s < 0 for s in sizes):
        raise ValueError(f"negative block size in {sizes}")
    return _block_permutation(sigma.images, sizes)


def direct_sum(taus: Sequence[Permutation]) -> Permutation:
    """tau_1 (+) ... (+) tau_k: each summand permutes its own block of letters.

    The empty sum is the degree-0 identity.
    """
    images: list[int] = []
    offset = 0
    for tau in taus:
        images.extend(offset + j for j in tau.images)
        offset += tau.n
    return _unsafe_perm(tuple(images))
