"""Degree-0 and degree-1 symmetric homology of a finite-rank algebra, with
the Pontryagin product and the module structure connecting them.

The computation runs over the partial chain complex

    0 <-- A <--d1-- A⊗A⊗A <--d2-- (A⊗A⊗A⊗A) (+) A,

    d1: a⊗b⊗c |-> abc - cba,
    d2: a⊗b⊗c⊗d |-> ab⊗c⊗d + d⊗ca⊗b + bca⊗1⊗d + d⊗bc⊗a,
        a |-> 1⊗a⊗1,

whose degree-0 and degree-1 homology are HS_0(A) = A/([A,A]) and HS_1(A).
Tensor bases are ordered row-major on 0-based basis indices
(e_i⊗e_j⊗e_k at index i*n^2 + j*n + k); in degree 2 the A^(⊗4) columns
come first, then the extra A summand.  All arithmetic is exact.

Degree-0 classes multiply through the algebra product, and HS_0 acts on
HS_1 by

    [a]·[x⊗y⊗z] = [ax⊗y⊗z] - [x⊗ya⊗z] + [x⊗y⊗az]

(left form; the right form puts a on the other side of each slot, and the
two agree in homology).  The merge graph on words of n+1 letters, whose
edges reverse a 3-block decomposition and are labeled by the morphism
with those blocks as fibers, supplies the path sums used to compare
degree-1 chains written against different word orders.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .algebra import FinRankAlgebra, multiply
from .homalg import AbelianGroup, IntMatrix, homology, matmul, matvec, smith_normal_form
from .ncset import NCMorphism
from .perm import Permutation, act_on_list


def _idx3(n: int, i: int, j: int, k: int) -> int:
    return (i * n + j) * n + k


def _tensor3(A: FinRankAlgebra, u, v, w) -> list[int]:
    n = A.rank
    out = [0] * (n * n * n)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    c = ui * vj
                    base = (i * n + j) * n
                    for k, wk in enumerate(w):
                        if wk:
                            out[base + k] += c * wk
    return out


@dataclass(frozen=True)
class PartialComplex:
    algebra: FinRankAlgebra
    d1: IntMatrix
    d2: IntMatrix
    basis_order: str = "row-major e_i⊗e_j⊗e_k at i*n^2+j*n+k; A^⊗4 columns first"


@lru_cache(maxsize=32)
def build_partial_complex(A: FinRankAlgebra) -> PartialComplex:
    """Assemble d1 and d2 on the tensor basis; checks d1 @ d2 == 0."""
    n = A.rank
    basis = [A.basis_vector(i) for i in range(n)]

    d1_cols = []
    for i, j, k in itertools.product(range(n), repeat=3):
        abc = multiply(A, multiply(A, basis[i], basis[j]), basis[k])
        cba = multiply(A, multiply(A, basis[k], basis[j]), basis[i])
        d1_cols.append(tuple(p - q for p, q in zip(abc, cba)))
    d1 = IntMatrix.from_rows(list(zip(*d1_cols)), n * n * n)

    d2_cols = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        col = [0] * (n * n * n)
        ab = multiply(A, basis[a], basis[b])
        ca = multiply(A, basis[c], basis[a])
        bc = multiply(A, basis[b], basis[c])
        bca = multiply(A, bc, basis[a])
        for r, x in enumerate(ab):  # ab ⊗ c ⊗ d
            if x:
                col[_idx3(n, r, c, d)] += x
        for r, x in enumerate(ca):  # d ⊗ ca ⊗ b
            if x:
                col[_idx3(n, d, r, b)] += x
        for r, x in enumerate(bca):  # bca ⊗ 1 ⊗ d
            if x:
                for s, y in enumerate(A.unit):
                    if y:
                        col[_idx3(n, r, s, d)] += x * y
        for r, x in enumerate(bc):  # d ⊗ bc ⊗ a
            if x:
                col[_idx3(n, d, r, a)] += x
        d2_cols.append(col)
    for a in range(n):  # the extra A summand: a |-> 1 ⊗ a ⊗ 1
        col = [0] * (n * n * n)
        for r, x in enumerate(A.unit):
            if x:
                for s, y in enumerate(A.unit):
                    if y:
                        col[_idx3(n, r, a, s)] += x * y
        d2_cols.append(col)
    d2 = IntMatrix.from_rows(list(zip(*d2_cols)), n ** 4 + n)

    if not matmul(d1, d2).is_zero():
        raise AssertionError("d1 @ d2 != 0: partial complex construction is broken")
    return PartialComplex(A, d1, d2)


@lru_cache(maxsize=32)
def hs0(A: FinRankAlgebra) -> AbelianGroup:
    """HS_0(A) = A/([A,A]), as the cokernel of d1."""
    pc = build_partial_complex(A)
    return homology(pc.d1, IntMatrix.zero(0, A.rank))


@lru_cache(maxsize=32)
def hs1(A: FinRankAlgebra) -> AbelianGroup:
    """HS_1(A) = ker(d1)/im(d2) on the partial complex."""
    pc = build_partial_complex(A)
    return homology(pc.d2, pc.d1)


@dataclass(frozen=True)
class HsClass:
    """A homology class with a chosen representative chain.

    degree 0: representative in A (length n); degree 1: representative in
    A⊗A⊗A (length n^3).  Classes compare by degree and coordinates.
    """

    algebra: FinRankAlgebra
    degree: int
    coordinates: tuple[int, ...]
    representative: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, HsClass):
            return NotImplemented
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("classes over different algebras")
        return self.degree == other.degree and self.coordinates == other.coordinates

    def __hash__(self):
        return hash((self.degree, self.coordinates))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)


def hs0_class(A: FinRankAlgebra, vector: Sequence[int]) -> HsClass:
    vec = tuple(int(x) for x in vector)
    return HsClass(A, 0, hs0(A).coordinates_of_cycle(vec), vec)


def hs1_class(A: FinRankAlgebra, vector: Sequence[int]) -> HsClass:
    vec = tuple(int(x) for x in vector)
    return HsClass(A, 1, hs1(A).coordinates_of_cycle(vec), vec)


def unit_class(A: FinRankAlgebra) -> HsClass:
    return hs0_class(A, A.unit)


def pontryagin_hs0(A: FinRankAlgebra, u: HsClass, v: HsClass) -> HsClass:
    """Degree-0 Pontryagin product: the algebra multiplication on A/([A,A])."""
    if u.algebra != A or v.algebra != A:
        raise ValueError("classes do not belong to this algebra")
    if u.degree != 0 or v.degree != 0:
        raise ValueError("degree-0 classes required")
    return hs0_class(A, multiply(A, u.representative, v.representative))


def _action_chain(A, a_vec, z_vec, side) -> list[int]:
    """The degree-1 chain of the module action, before passing to homology.

    side "left":  ax⊗y⊗z - x⊗ya⊗z + x⊗y⊗az
    side "right": xa⊗y⊗z - x⊗ay⊗z + x⊗y⊗za
    """
    n = A.rank
    basis = [A.basis_vector(i) for i in range(n)]
    out = [0] * (n * n * n)
    for idx, c in enumerate(z_vec):
        if not c:
            continue
        k = idx % n
        j = (idx // n) % n
        i = idx // (n * n)
        if side == "left":
            t0 = multiply(A, a_vec, basis[i])
            t1 = multiply(A, basis[j], a_vec)
            t2 = multiply(A, a_vec, basis[k])
        elif side == "right":
            t0 = multiply(A, basis[i], a_vec)
            t1 = multiply(A, a_vec, basis[j])
            t2 = multiply(A, basis[k], a_vec)
        else:
            raise ValueError(f"unknown side {side!r}")
        for r, x in enumerate(t0):
            if x:
                out[_idx3(n, r, j, k)] += c * x
        for r, x in enumerate(t1):
            if x:
                out[_idx3(n, i, r, k)] -= c * x
        for r, x in enumerate(t2):
            if x:
                out[_idx3(n, i, j, r)] += c * x
    return out


def module_action(
    A: FinRankAlgebra, a: HsClass, z: HsClass, side: str = "left"
) -> HsClass:
    """The HS_0-action on HS_1; bilinear, and independent of representatives."""
    if a.degree != 0 or z.degree != 1:
        raise ValueError("need a degree-0 class acting on a degree-1 class")
    if a.algebra != A or z.algebra != A:
        raise ValueError("classes do not belong to this algebra")
    group = hs1(A)
    if not group.is_cycle(z.representative):
        raise ValueError("degree-1 representative is not a cycle")
    chain = _action_chain(A, a.representative, z.representative, side)
    return hs1_class(A, chain)


@dataclass(frozen=True)
class LaststepCheck:
    lhs_is_cycle: bool
    rhs_is_cycle: bool
    equal: bool | None  # None when the comparison is vacuous

    @property
    def holds(self) -> bool:
        return self.equal is not False

    def __bool__(self) -> bool:
        return self.holds


def laststep_equivalence(
    A: FinRankAlgebra,
    a: Sequence[int],
    x: Sequence[int],
    y: Sequence[int],
    z: Sequence[int],
) -> LaststepCheck:
    """Compare [axy⊗z⊗1] + [za⊗x⊗y] + [yx⊗z⊗a] with the action formula.

    The right-hand side is [xa⊗y⊗z] - [x⊗ya⊗z] + [x⊗y⊗az].  Whenever both
    chains are cycles their classes must agree; the check is vacuous
    otherwise.
    """
    n = A.rank
    axy = multiply(A, multiply(A, a, x), y)
    za = multiply(A, z, a)
    yx = multiply(A, y, x)
    lhs = [
        p + q + r
        for p, q, r in zip(
            _tensor3(A, axy, z, A.unit),
            _tensor3(A, za, x, y),
            _tensor3(A, yx, z, a),
        )
    ]
    xa = multiply(A, x, a)
    ya = multiply(A, y, a)
    az = multiply(A, a, z)
    rhs = [
        p - q + r
        for p, q, r in zip(
            _tensor3(A, xa, y, z),
            _tensor3(A, x, ya, z),
            _tensor3(A, x, y, az),
        )
    ]
    group = hs1(A)
    lc = group.is_cycle(lhs)
    rc = group.is_cycle(rhs)
    if not (lc and rc):
        return LaststepCheck(lc, rc, None)
    equal = group.coordinates_of_cycle(lhs) == group.coordinates_of_cycle(rhs)
    return LaststepCheck(True, True, equal)


# ---------------------------------------------------------------------------
# Commutator ideal and the vanishing criterion.


@lru_cache(maxsize=32)
def commutator_ideal_quotient(A: FinRankAlgebra) -> AbelianGroup:
    """A / (two-sided ideal generated by commutators), by lattice closure."""
    n = A.rank
    basis = [A.basis_vector(i) for i in range(n)]
    gens: list[tuple[int, ...]] = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = multiply(A, basis[i], basis[j])
            rhs = multiply(A, basis[j], basis[i])
            v = tuple(p - q for p, q in zip(lhs, rhs))
            if any(v):
                gens.append(v)
    while True:
        mat = (
            IntMatrix.from_rows(list(zip(*gens)), len(gens))
            if gens
            else IntMatrix.zero(n, 0)
        )
        contains = _column_span_membership(mat)
        new = []
        for v in gens:
            for b in basis:
                for w in (multiply(A, b, v), multiply(A, v, b)):
                    if any(w) and not contains(w):
                        new.append(w)
        if not new:
            return homology(mat, IntMatrix.zero(0, n))
        gens.extend(new)


def _column_span_membership(m: IntMatrix):
    """Membership test for the integer column span of ``m``, via one SNF."""
    if m.cols == 0:
        return lambda vec: not any(vec)
    res = smith_normal_form(m, need_u=True, need_v=False)
    diag = res.diagonal()

    def contains(vec: Sequence[int]) -> bool:
        y = matvec(res.u, vec)
        for i, val in enumerate(y):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if val != 0:
                    return False
            elif val % d != 0:
                return False
        return True

    return contains


def triviality_check(A: FinRankAlgebra, verify_homology: bool = True) -> bool:
    """Whether the commutator ideal is all of A (then HS_* vanishes).

    With ``verify_homology`` the degrees this package computes are checked
    to vanish too; a mismatch would mean a genuine bug, so it raises.
    """
    trivial = commutator_ideal_quotient(A).is_trivial()
    if trivial and verify_homology:
        if not hs0(A).is_trivial():
            raise AssertionError("commutator ideal is full but HS_0 is nonzero")
        if not hs1(A).is_trivial():
            raise AssertionError("commutator ideal is full but HS_1 is nonzero")
    return trivial


# ---------------------------------------------------------------------------
# Merge graph and its spanning tree.


@dataclass(frozen=True)
class MergeEdge:
    tail: tuple[int, ...]
    head: tuple[int, ...]
    label: NCMorphism  # fibers are the three blocks of the tail word


@dataclass(frozen=True)
class MergeTree:
    letters: int
    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[MergeEdge, ...]  # the full merge graph, deduplicated
    parent: dict = field(hash=False, compare=False, default_factory=dict)
    root: tuple[int, ...] = ()

    def tree_edges(self) -> list[MergeEdge]:
        return [e for (e, _sign) in self.parent.values()]

    def depth(self, word) -> int:
        d = 0
        while word != self.root:
            word = self._up(word)
            d += 1
        return d

    def _up(self, word):
        edge, sign = self.parent[word]
        return edge.tail if sign > 0 else edge.head


def max_merge_letters() -> int:
    return int(os.environ.get("SYMHOM_MAX_DEGREE", "5"))


def merge_tree(n: int) -> MergeTree:
    """The merge graph on words of n+1 letters with a BFS spanning tree.

    Vertices are the (n+1)! words; each 3-block decomposition of a word
    gives an edge to the block-reversed word, labeled by the morphism with
    those blocks as fibers.  The tree is grown from the identity word with
    lexicographic neighbor order, so the construction is deterministic.
    """
    letters = n + 1
    limit = max_merge_letters()
    if letters > limit:
        raise ValueError(
            f"merge tree on {letters} letters exceeds the guard ({limit}); "
            "raise SYMHOM_MAX_DEGREE explicitly to go further"
        )
    if letters < 1:
        raise ValueError("need at least one letter")
    vertices = tuple(itertools.permutations(range(1, letters + 1)))
    edges = []
    seen = set()
    for w in vertices:
        for i in range(letters + 1):
            for j in range(i, letters + 1):
                b0, b1, b2 = w[:i], w[i:j], w[j:]
                head = b2 + b1 + b0
                if head == w:
                    continue
                key = (w, head, b0, b1, b2)
                if key in seen:
                    continue
                seen.add(key)
                edges.append(MergeEdge(w, head, NCMorphism(letters, (b0, b1, b2))))
    edges.sort(key=lambda e: (e.tail, e.head, e.label.fibers))

    adjacency: dict = {w: [] for w in vertices}
    for e in edges:
        adjacency[e.tail].append((e.head, e, +1))
        adjacency[e.head].append((e.tail, e, -1))
    for w in adjacency:
        adjacency[w].sort(key=lambda item: (item[0], item[1].label.fibers, -item[2]))

    root = tuple(range(1, letters + 1))
    parent: dict = {}
    visited = {root}
    queue = [root]
    while queue:
        w = queue.pop(0)
        for other, edge, sign in adjacency[w]:
            if other not in visited:
                visited.add(other)
                # sign as stored is for traversal w -> other; the parent
                # hop other -> w goes the opposite way
                parent[other] = (edge, sign)
                queue.append(other)
    if len(visited) != len(vertices):
        raise AssertionError("merge graph is not connected; tree construction failed")
    return MergeTree(letters, vertices, tuple(edges), parent, root)


def word_of_permutation(h: Permutation) -> tuple[int, ...]:
    """The word listing where each position came from: h applied to 1..n."""
    return act_on_list(h, tuple(range(1, h.n + 1)))


def path_sum(
    tree: MergeTree, h: Permutation, h_target: Permutation
) -> list[tuple[int, NCMorphism]]:
    """Signed edge labels along the unique tree path from h to h_target.

    Traversing an edge against its orientation contributes sign -1; the
    path from a word to itself is empty.
    """
    w1 = word_of_permutation(h)
    w2 = word_of_permutation(h_target)
    if len(w1) != tree.letters or len(w2) != tree.letters:
        raise ValueError("permutation degree does not match the tree")

    def climb(w):
        # (word, steps to root as (sign, edge) in climb order)
        out = []
        while w != tree.root:
            edge, sign = tree.parent[w]
            # stored sign orients parent -> w; climbing goes w -> parent
            out.append((w, edge, sign))
            w = edge.tail if sign > 0 else edge.head
        return out

    up1 = climb(w1)
    up2 = climb(w2)
    path1 = [w for w, _e, _s in up1] + [tree.root]
    set1 = {w: k for k, w in enumerate(path1)}
    meet = None
    for k2, w in enumerate([w for w, _e, _s in up2] + [tree.root]):
        if w in set1:
            meet = w
            k1 = set1[w]
            break
    out: list[tuple[int, NCMorphism]] = []
    # from w1 down to the meeting word: each climb step w -> parent crosses
    # the edge against the parent->w orientation
    for w, edge, sign in up1[:k1]:
        out.append((-sign, edge.label))
    # from the meeting word up to w2: reverse of w2's climb, forward signs
    for w, edge, sign in reversed(up2[:k2]):
        out.append((sign, edge.label))
    return out


def boundary_of_label(label: NCMorphism) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two words of the label's boundary: (in-order, reversed-blocks)."""
    fibers = label.fibers
    if len(fibers) != 3:
        raise ValueError("merge labels have exactly three fibers")
    b0, b1, b2 = fibers
    return b0 + b1 + b2, b2 + b1 + b0
