"""Truncated nerves of finite categories, their linearizations, Dold-Kan
normalization, and the Eilenberg-Zilber shuffle map.

Everything is truncated at a configurable top degree (nerves of the
categories used here are infinite-dimensional otherwise); the downstream
uses all live in degrees <= 2.  Simplices of the nerve in degree n are
composable chains of n morphism names, with faces composing or dropping
at a vertex and degeneracies inserting identities.  Linearization turns a
simplicial set into free modules with face/degeneracy matrices over Z or
Z/m; normalization quotients by the degenerate simplices (a direct
summand spanned by basis elements), leaving the alternating face sum as
the differential.

The shuffle map follows the standard convention: on x of degree p and y
of degree q it is the sum over (p, q)-shuffles (alpha, beta) of

    sign(alpha, beta) * (s_{beta_q} ... s_{beta_1} x, s_{alpha_p} ... s_{alpha_1} y)

with the sign counting inversions between alpha and beta.  Its defining
property, d∘Sh = Sh∘d on the tensor product, is what the tests pin down;
the sign convention itself is a choice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .homalg import IntMatrix

DEFAULT_MAX_DEGREE = 4


# ---------------------------------------------------------------------------
# Finite categories.


@dataclass(frozen=True)
class FinCategory:
    """A finite category presentation with a total composition table.

    ``morphisms`` maps a name to its (source, target) pair;
    ``composition`` maps every composable pair (g, f) to the name of g∘f.
    """

    objects: tuple[Hashable, ...]
    morphisms: dict = field(hash=False)
    identities: dict = field(hash=False)
    composition: dict = field(hash=False)

    def __post_init__(self):
        problems = self.check()
        if problems:
            raise ValueError("bad category presentation: " + "; ".join(problems[:3]))

    def src(self, f):
        return self.morphisms[f][0]

    def dst(self, f):
        return self.morphisms[f][1]

    def compose(self, g, f):
        return self.composition[(g, f)]

    def check(self) -> list[str]:
        out = []
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.morphisms.get(i) != (x, x):
                out.append(f"missing identity at {x!r}")
        for f, (a, b) in self.morphisms.items():
            if a not in self.objects or b not in self.objects:
                out.append(f"morphism {f!r} has unknown endpoints")
        for f, (a, b) in self.morphisms.items():
            for g, (c, d) in self.morphisms.items():
                if b == c and (g, f) not in self.composition:
                    out.append(f"missing composite of {g!r} after {f!r}")
        for (g, f), h in self.composition.items():
            if self.morphisms.get(h) != (self.src(f), self.dst(g)):
                out.append(f"composite {h!r} of ({g!r}, {f!r}) has wrong endpoints")
        if out:
            return out  # endpoint problems make the later lookups meaningless
        # identity laws and associativity on all composable pairs/triples
        for f, (a, b) in self.morphisms.items():
            if self.composition.get((f, self.identities[a])) != f:
                out.append(f"right identity law fails at {f!r}")
            if self.composition.get((self.identities[b], f)) != f:
                out.append(f"left identity law fails at {f!r}")
        for f, (a, b) in self.morphisms.items():
            for g in self.morphisms:
                if self.src(g) != b:
                    continue
                gf = self.composition[(g, f)]
                for h in self.morphisms:
                    if self.src(h) != self.dst(g):
                        continue
                    if self.composition[(h, gf)] != self.composition[
                        (self.composition[(h, g)], f)
                    ]:
                        out.append(
                            f"associativity fails at ({h!r}, {g!r}, {f!r})"
                        )
        return out


def point_category() -> FinCategory:
    return FinCategory(("*",), {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"})


def poset_category(elements: Sequence, le: Callable) -> FinCategory:
    """The category of a finite preorder: at most one morphism x -> y."""
    objects = tuple(elements)
    morphisms = {}
    for x in objects:
        for y in objects:
            if le(x, y):
                morphisms[(x, y)] = (x, y)
    identities = {x: (x, x) for x in objects}
    composition = {}
    for (x, y) in morphisms:
        for (y2, z) in morphisms:
            if y == y2:
                composition[((y, z), (x, y))] = (x, z)
    return FinCategory(objects, morphisms, identities, composition)


def es_category(perms: Sequence[Hashable]) -> FinCategory:
    """The contractible groupoid on the given objects (one morphism per
    ordered pair); applied to a symmetric group this is its translation
    groupoid."""
    objects = tuple(perms)
    morphisms = {(a, b): (a, b) for a in objects for b in objects}
    identities = {a: (a, a) for a in objects}
    composition = {}
    for (a, b) in morphisms:
        for (b2, c) in morphisms:
            if b == b2:
                composition[((b, c), (a, b))] = (a, c)
    return FinCategory(objects, morphisms, identities, composition)


def es_symmetric_group(m: int) -> FinCategory:
    from .perm import all_permutations

    return es_category([p.images for p in all_permutations(m)])


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    objects = tuple(itertools.product(c.objects, d.objects))
    morphisms = {
        (f, g): ((c.src(f), d.src(g)), (c.dst(f), d.dst(g)))
        for f in c.morphisms
        for g in d.morphisms
    }
    identities = {
        (x, y): (c.identities[x], d.identities[y]) for x, y in objects
    }
    composition = {}
    for (f1, g1) in morphisms:
        for (f2, g2) in morphisms:
            if c.dst(f1) == c.src(f2) and d.dst(g1) == d.src(g2):
                composition[((f2, g2), (f1, g1))] = (
                    c.compose(f2, f1),
                    d.compose(g2, g1),
                )
    return FinCategory(objects, morphisms, identities, composition)


# ---------------------------------------------------------------------------
# Simplicial sets (truncated).


@dataclass(frozen=True)
class SimplicialSet:
    """Degrees 0..max_degree; faces[n][i] and degens[n][i] are index maps."""

    max_degree: int
    simplices: tuple[tuple, ...]  # per degree, a tuple of simplex labels
    faces: tuple[tuple[tuple[int, ...], ...], ...]  # [n-1][i][k] for n >= 1
    degens: tuple[tuple[tuple[int, ...], ...], ...]  # [n][i][k] for n < top

    def dim(self, n: int) -> int:
        return len(self.simplices[n])

    def index(self, n: int, label) -> int:
        return self.simplices[n].index(label)

    def face(self, n: int, i: int, k: int) -> int:
        return self.faces[n - 1][i][k]

    def degeneracy(self, n: int, i: int, k: int) -> int:
        return self.degens[n][i][k]

    def degenerate_indices(self, n: int) -> set[int]:
        if n == 0:
            return set()
        return {k for row in self.degens[n - 1] for k in row}

    def degeneracy_sources(self, n: int, k: int) -> set[int]:
        """Which s_i have the n-simplex k in their image."""
        if n == 0:
            return set()
        return {i for i, row in enumerate(self.degens[n - 1]) if k in row}


def nerve_truncated(cat: FinCategory, max_degree: int = DEFAULT_MAX_DEGREE) -> SimplicialSet:
    """n-simplices are composable n-chains of morphism names."""
    if max_degree < 1:
        raise ValueError("truncation degree must be at least 1")
    simplices: list[tuple] = [tuple(cat.objects)]
    for n in range(1, max_degree + 1):
        if n == 1:
            nxt = [(f,) for f in sorted(cat.morphisms, key=repr)]
        else:
            nxt = [
                chain + (f,)
                for chain in simplices[n - 1]
                for f in sorted(cat.morphisms, key=repr)
                if cat.src(f) == cat.dst(chain[-1])
            ]
        simplices.append(tuple(nxt))

    index = [
        {s: k for k, s in enumerate(level)} for level in simplices
    ]

    faces = []
    for n in range(1, max_degree + 1):
        rows = []
        for i in range(n + 1):
            row = []
            for chain in simplices[n]:
                if n == 1:
                    f = chain[0]
                    target = cat.dst(f) if i == 0 else cat.src(f)
                elif i == 0:
                    target = chain[1:]
                elif i == n:
                    target = chain[:-1]
                else:
                    target = (
                        chain[: i - 1]
                        + (cat.compose(chain[i], chain[i - 1]),)
                        + chain[i + 1 :]
                    )
                row.append(index[n - 1][target])
            rows.append(tuple(row))
        faces.append(tuple(rows))

    degens = []
    for n in range(0, max_degree):
        rows = []
        for i in range(n + 1):
            row = []
            for chain in simplices[n]:
                if n == 0:
                    target = (cat.identities[chain],)
                else:
                    vertex = cat.src(chain[i]) if i < n else cat.dst(chain[-1])
                    target = chain[:i] + (cat.identities[vertex],) + chain[i:]
                row.append(index[n + 1][target])
            rows.append(tuple(row))
        degens.append(tuple(rows))
    return SimplicialSet(max_degree, tuple(simplices), tuple(faces), tuple(degens))


def product_sset(x: SimplicialSet, y: SimplicialSet) -> SimplicialSet:
    """Degree-wise product; faces and degeneracies act componentwise."""
    n_top = min(x.max_degree, y.max_degree)
    simplices = []
    index = []
    for n in range(n_top + 1):
        level = tuple(itertools.product(range(x.dim(n)), range(y.dim(n))))
        simplices.append(level)
        index.append({s: k for k, s in enumerate(level)})
    faces = tuple(
        tuple(
            tuple(
                index[n - 1][(x.face(n, i, a), y.face(n, i, b))]
                for (a, b) in simplices[n]
            )
            for i in range(n + 1)
        )
        for n in range(1, n_top + 1)
    )
    degens = tuple(
        tuple(
            tuple(
                index[n + 1][(x.degeneracy(n, i, a), y.degeneracy(n, i, b))]
                for (a, b) in simplices[n]
            )
            for i in range(n + 1)
        )
        for n in range(0, n_top)
    )
    return SimplicialSet(n_top, tuple(simplices), faces, degens)


def check_simplicial_identities(x: SimplicialSet) -> list[str]:
    """All five identity families, verified pointwise within truncation."""
    bad = []
    for n in range(2, x.max_degree + 1):
        for j in range(n + 1):
            for i in range(j):
                for k in range(x.dim(n)):
                    if x.face(n - 1, i, x.face(n, j, k)) != x.face(
                        n - 1, j - 1, x.face(n, i, k)
                    ):
                        bad.append(f"d_{i} d_{j} != d_{j-1} d_{i} at degree {n}")
    for n in range(0, x.max_degree - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for k in range(x.dim(n)):
                    if x.degeneracy(n + 1, i, x.degeneracy(n, j, k)) != x.degeneracy(
                        n + 1, j + 1, x.degeneracy(n, i, k)
                    ):
                        bad.append(f"s_{i} s_{j} != s_{j+1} s_{i} at degree {n}")
    for n in range(1, x.max_degree):
        for j in range(n + 1):
            for k in range(x.dim(n)):
                sk = x.degeneracy(n, j, k)
                for i in range(n + 2):
                    got = x.face(n + 1, i, sk)
                    if i < j:
                        want = x.degeneracy(n - 1, j - 1, x.face(n, i, k))
                    elif i in (j, j + 1):
                        want = k
                    else:
                        want = x.degeneracy(n - 1, j, x.face(n, i - 1, k))
                    if got != want:
                        bad.append(f"d_{i} s_{j} identity fails at degree {n}")
    return bad


# ---------------------------------------------------------------------------
# Linearization and normalization.


@dataclass(frozen=True)
class SimplicialModule:
    """Free modules on the simplices with face/degeneracy matrices.

    ``modulus`` 0 means integer coefficients; otherwise entries live in
    Z/modulus.  The underlying simplicial set is kept for basis metadata
    (normalization needs to know which basis elements are degenerate).
    """

    modulus: int
    sset: SimplicialSet

    @property
    def max_degree(self) -> int:
        return self.sset.max_degree

    def dim(self, n: int) -> int:
        return self.sset.dim(n)

    def face_matrix(self, n: int, i: int) -> IntMatrix:
        rows = self.sset.dim(n - 1)
        cols = self.sset.dim(n)
        mat = [[0] * cols for _ in range(rows)]
        for k in range(cols):
            mat[self.sset.face(n, i, k)][k] += 1
        return IntMatrix.from_rows(mat, cols)

    def degeneracy_matrix(self, n: int, i: int) -> IntMatrix:
        rows = self.sset.dim(n + 1)
        cols = self.sset.dim(n)
        mat = [[0] * cols for _ in range(rows)]
        for k in range(cols):
            mat[self.sset.degeneracy(n, i, k)][k] += 1
        return IntMatrix.from_rows(mat, cols)


def linearize(sset: SimplicialSet, modulus: int = 0) -> SimplicialModule:
    if modulus < 0:
        raise ValueError("modulus must be 0 (integers) or positive")
    return SimplicialModule(modulus, sset)


def hat_tensor(m1: SimplicialModule, m2: SimplicialModule) -> SimplicialModule:
    """Degree-wise tensor product; for linearized sets this is the
    linearization of the product simplicial set."""
    if m1.modulus != m2.modulus:
        raise ValueError("coefficient mismatch")
    return SimplicialModule(m1.modulus, product_sset(m1.sset, m2.sset))


@dataclass(frozen=True)
class NormalizedComplex:
    """Quotient by degenerate simplices, with the alternating face sum."""

    modulus: int
    max_degree: int
    basis: tuple[tuple[int, ...], ...]  # per degree, the nondegenerate indices
    differentials: tuple[IntMatrix, ...]  # [n-1]: degree n -> n-1

    def dim(self, n: int) -> int:
        return len(self.basis[n])

    def differential(self, n: int) -> IntMatrix:
        if not 1 <= n <= self.max_degree:
            raise ValueError(f"no differential out of degree {n}")
        return self.differentials[n - 1]


def normalize(module: SimplicialModule) -> NormalizedComplex:
    sset = module.sset
    mod = module.modulus
    basis = []
    for n in range(sset.max_degree + 1):
        degenerate = sset.degenerate_indices(n)
        basis.append(tuple(k for k in range(sset.dim(n)) if k not in degenerate))
    position = [
        {k: pos for pos, k in enumerate(level)} for level in basis
    ]
    diffs = []
    for n in range(1, sset.max_degree + 1):
        rows = len(basis[n - 1])
        mat = [[0] * len(basis[n]) for _ in range(rows)]
        for col, k in enumerate(basis[n]):
            for i in range(n + 1):
                target = sset.face(n, i, k)
                pos = position[n - 1].get(target)
                if pos is None:
                    continue  # degenerate faces die in the quotient
                mat[pos][col] += (-1) ** i
        if mod:
            mat = [[x % mod for x in row] for row in mat]
        diffs.append(IntMatrix.from_rows(mat, len(basis[n])))
    return NormalizedComplex(mod, sset.max_degree, tuple(basis), tuple(diffs))


# ---------------------------------------------------------------------------
# The shuffle map.


def shuffles(p: int, q: int):
    """(alpha, beta, sign) triples partitioning {0, ..., p+q-1}."""
    universe = range(p + q)
    for alpha in itertools.combinations(universe, p):
        beta = tuple(sorted(set(universe) - set(alpha)))
        inversions = sum(1 for a in alpha for b in beta if a > b)
        yield alpha, beta, -1 if inversions % 2 else 1


def shuffle_image(
    x: SimplicialSet, y: SimplicialSet, p: int, xi: int, q: int, yi: int
) -> dict[tuple[int, int], int]:
    """Shuffle of a pair of simplices, as coefficients on product pairs.

    The result lives in degree p+q of the product of the two sets; jointly
    degenerate pairs cannot occur among shuffle terms.
    """
    out: dict[tuple[int, int], int] = {}
    for alpha, beta, sign in shuffles(p, q):
        a = xi
        deg = p
        for i in beta:  # ascending; each application raises the degree
            a = x.degeneracy(deg, i, a)
            deg += 1
        b = yi
        deg = q
        for i in alpha:
            b = y.degeneracy(deg, i, b)
            deg += 1
        key = (a, b)
        out[key] = out.get(key, 0) + sign
    return {k: c for k, c in out.items() if c}


def shuffle_matrix(
    mx: SimplicialModule, my: SimplicialModule, p: int, q: int
) -> IntMatrix:
    """Matrix of the shuffle map N(X)_p ⊗ N(Y)_q -> N(X ⊗̂ Y)_{p+q}.

    Columns run over pairs of nondegenerate basis simplices in row-major
    (x, y) order; rows over the nondegenerate basis of the product.
    """
    x, y = mx.sset, my.sset
    if p + q > min(x.max_degree, y.max_degree):
        raise ValueError("shuffle target degree exceeds the truncation")
    prod = normalize(hat_tensor(mx, my))
    nx = normalize(mx)
    ny = normalize(my)
    pairs = [(a, b) for a in nx.basis[p] for b in ny.basis[q]]
    ydim = y.dim(p + q)
    position = {k: pos for pos, k in enumerate(prod.basis[p + q])}
    mat = [[0] * len(pairs) for _ in range(len(prod.basis[p + q]))]
    for col, (a, b) in enumerate(pairs):
        for (ia, ib), coeff in shuffle_image(x, y, p, a, q, b).items():
            flat = ia * ydim + ib
            pos = position.get(flat)
            if pos is None:
                raise AssertionError("shuffle produced a degenerate pair")
            mat[pos][col] += coeff
    if mx.modulus:
        mat = [[v % mx.modulus for v in row] for row in mat]
    return IntMatrix.from_rows(mat, len(pairs))
