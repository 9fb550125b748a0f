"""The category of non-commutative sets: finite sets with morphisms that
carry a total order on every preimage.

A morphism n -> m is stored as its ordered fiber partition: ``fibers[t-1]``
lists, in order, the source letters sent to the target letter ``t``.  The
fibers jointly partition {1, ..., n}; empty fibers are allowed, and the
empty set (n = 0) is a legal initial object.  A morphism is an isomorphism
exactly when every fiber is a singleton, in which case it encodes a
permutation.

Composition concatenates fibers: the fiber of g∘f over t is the
concatenation, in the order of g's fiber over t, of the fibers of f.  The
monoidal product ⊙ juxtaposes morphisms disjointly and is strictly
associative with the empty morphism as unit.  Every morphism factors
uniquely as (order-preserving map) ∘ (isomorphism); see :func:`decompose`.

Text form ("tensor words"): fibers are separated by ``⊗`` (ASCII ``|``
also accepted), letters are written either as ``z<k>`` with k 0-indexed or
as single latin letters a, b, c, ... and ``1`` denotes an empty fiber.
So ``"z2z1z0"`` is the 3 -> 1 morphism that reverses the order of the
source, and ``"a⊗bcd⊗1"`` sends letter 1 to target 1 and letters 2, 3, 4,
in that order, to target 2, with target 3 empty.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .perm import Permutation, _inverse_images

_LATIN = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class NCMorphism:
    source_size: int
    fibers: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = [x for fiber in self.fibers for x in fiber]
        if sorted(seen) != list(range(1, self.source_size + 1)):
            raise ValueError(
                f"fibers {self.fibers} do not partition 1..{self.source_size}"
            )

    @property
    def target_size(self) -> int:
        return len(self.fibers)

    def is_isomorphism(self) -> bool:
        return all(len(f) == 1 for f in self.fibers)

    def word(self) -> tuple[int, ...]:
        """All source letters in fiber order (the one-line word of the morphism)."""
        return tuple(x for fiber in self.fibers for x in fiber)

    def fiber_sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.fibers)

    def to_permutation(self) -> Permutation:
        if not self.is_isomorphism():
            raise ValueError(f"{self} is not an isomorphism")
        inv = [f[0] for f in self.fibers]
        return Permutation(tuple(inv)).inverse()

    def __str__(self) -> str:
        return print_tensor_word(self)


@dataclass(frozen=True)
class DeltaPlusMap:
    """The unique order-preserving map with the given fiber sizes."""

    source_size: int
    fiber_sizes: tuple[int, ...]

    def __post_init__(self):
        if any(s < 0 for s in self.fiber_sizes):
            raise ValueError(f"negative fiber size in {self.fiber_sizes}")
        if sum(self.fiber_sizes) != self.source_size:
            raise ValueError(
                f"fiber sizes {self.fiber_sizes} do not sum to {self.source_size}"
            )

    @property
    def target_size(self) -> int:
        return len(self.fiber_sizes)

    def as_ncmorphism(self) -> NCMorphism:
        fibers = []
        next_letter = 1
        for s in self.fiber_sizes:
            fibers.append(tuple(range(next_letter, next_letter + s)))
            next_letter += s
        return NCMorphism(self.source_size, tuple(fibers))


def _unsafe_ncm(source_size: int, fibers: tuple[tuple[int, ...], ...]) -> NCMorphism:
    # internal constructor skipping partition validation (inputs already valid)
    m = object.__new__(NCMorphism)
    object.__setattr__(m, "source_size", source_size)
    object.__setattr__(m, "fibers", fibers)
    return m


def nc_identity(n: int) -> NCMorphism:
    return NCMorphism(n, tuple((i,) for i in range(1, n + 1)))


@lru_cache(maxsize=None)
def _iso_fibers(images: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple((j,) for j in _inverse_images(images))


def from_permutation(p: Permutation) -> NCMorphism:
    """The isomorphism whose fiber over t is (p^-1(t),)."""
    return _unsafe_ncm(p.n, _iso_fibers(p.images))


def initial_map(n: int) -> NCMorphism:
    """The unique morphism 0 -> n out of the empty set."""
    return NCMorphism(0, ((),) * n)


def collapse(n: int) -> NCMorphism:
    """The n -> 1 morphism with the single fiber (1, ..., n)."""
    return NCMorphism(n, (tuple(range(1, n + 1)),))


def compose(g: NCMorphism, f: NCMorphism) -> NCMorphism:
    """g∘f: the fiber over t concatenates f's fibers along g's fiber over t."""
    if f.target_size != g.source_size:
        raise ValueError(
            f"cannot compose: target {f.target_size} != source {g.source_size}"
        )
    ff = f.fibers
    fibers = tuple(tuple(x for s in gf for x in ff[s - 1]) for gf in g.fibers)
    return _unsafe_ncm(f.source_size, fibers)


def monoidal_product(f: NCMorphism, g: NCMorphism) -> NCMorphism:
    """f ⊙ g: disjoint juxtaposition, g's letters shifted past f's source."""
    shift = f.source_size
    shifted = tuple(tuple(x + shift for x in fiber) for fiber in g.fibers)
    return _unsafe_ncm(f.source_size + g.source_size, f.fibers + shifted)


def monoidal_product_all(fs: Sequence[NCMorphism]) -> NCMorphism:
    out = NCMorphism(0, ())
    for f in fs:
        out = monoidal_product(out, f)
    return out


def decompose(f: NCMorphism) -> tuple[DeltaPlusMap, Permutation]:
    """The unique factorization f = beta ∘ h with beta order-preserving, h iso.

    ``h`` is the permutation carrying the canonical enumeration (1, ..., n)
    to the word of f: ``act_on_list(h, (1, ..., n)) == f.word()``.
    """
    beta = DeltaPlusMap(f.source_size, f.fiber_sizes())
    word = f.word()
    if not word:
        return beta, Permutation(())
    h = Permutation(word).inverse()
    return beta, h


def right_action(f: NCMorphism, rho: Permutation) -> NCMorphism:
    """Precomposition f.rho := f ∘ rho, a right action of the symmetric group."""
    if rho.n != f.source_size:
        raise ValueError(f"degree mismatch: {rho.n} != {f.source_size}")
    # composing with an iso on the right just relabels letters by rho^-1
    rinv = _inverse_images(rho.images)
    return _unsafe_ncm(
        f.source_size, tuple(tuple(rinv[x - 1] for x in fib) for fib in f.fibers)
    )


def parse_tensor_word(text: str) -> NCMorphism:
    """Parse a tensor word; see the module docstring for the format.

    >>> parse_tensor_word("z2z1z0").fibers
    ((3, 2, 1),)
    >>> parse_tensor_word("a⊗bcd⊗1").fibers
    ((1,), (2, 3, 4), ())
    """
    text = text.strip()
    if not text:
        # the empty word is the 0 -> 0 morphism ("1" is 0 -> 1 instead)
        return NCMorphism(0, ())
    chunks = re.split(r"[⊗|]", text)
    fibers = []
    for chunk in chunks:
        chunk = chunk.strip()
        if chunk == "1" or chunk == "":
            fibers.append(())
            continue
        if "z" in chunk:
            toks = re.findall(r"z(\d+)|(\S)", chunk.replace(" ", ""))
            letters = []
            for zidx, other in toks:
                if other:
                    raise ValueError(f"unexpected token {other!r} in {text!r}")
                letters.append(int(zidx) + 1)
        else:
            letters = []
            for ch in chunk.replace(" ", ""):
                if ch not in _LATIN:
                    raise ValueError(f"unexpected letter {ch!r} in {text!r}")
                letters.append(_LATIN.index(ch) + 1)
        fibers.append(tuple(letters))
    seen = sorted(x for fiber in fibers for x in fiber)
    n = len(seen)
    if seen != list(range(1, n + 1)):
        raise ValueError(f"word {text!r} does not use each letter exactly once")
    return NCMorphism(n, tuple(fibers))


def print_tensor_word(f: NCMorphism, style: str = "z", ascii_sep: bool = False) -> str:
    """Inverse of :func:`parse_tensor_word` (style "z" or latin "abc")."""
    if style == "z":
        def letter(x: int) -> str:
            return f"z{x - 1}"
    elif style == "abc":
        if f.source_size > len(_LATIN):
            raise ValueError("too many letters for latin style")
        def letter(x: int) -> str:
            return _LATIN[x - 1]
    else:
        raise ValueError(f"unknown style {style!r}")
    sep = "|" if ascii_sep else "⊗"
    return sep.join(
        "".join(letter(x) for x in fiber) if fiber else "1" for fiber in f.fibers
    )
