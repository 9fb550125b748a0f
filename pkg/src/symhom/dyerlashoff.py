"""Mod-p homology operations: the periodic cyclic-group resolution, the
standard embedding of the cyclic group into the symmetric group, and the
degree/vanishing/coefficient calculus of the operations P_s, beta P_s and
the underlying D_i maps.

The resolution (W_*, d) over Z/p[C_p] is free of rank one in every degree
with alternating differentials tau - 1 and N = 1 + tau + ... + tau^(p-1);
expanded over Z/p via the regular representation (tau cycles the basis
e, tau, ..., tau^(p-1)) each differential is a p x p matrix and d^2 = 0.

Operations are realized as descriptors carrying the target degree, the
vanishing case split, and the scalar nu(q), not as chain-level maps:

    p = 2:  P_s: q -> q+s,          0 when s < q, else D_{s-q}
    p odd:  P_s: q -> q+2s(p-1),    0 when 2s < q, else nu(q) D_{(2s-q)(p-1)}
            bP_s: q -> q+2s(p-1)-1, 0 when 2s <= q, else nu(q) D_{(2s-q)(p-1)-1}
    D_i: q -> pq + i

with nu(q) = (-1)^(s + q(q-1)(p-1)/4) * (((p-1)/2)!)^q mod p, the sign
(-1)^s folded in so that every constant lives in nu.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial

from .homalg import IntMatrix
from .perm import Permutation


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class WComplex:
    """Truncation of the periodic resolution, expanded over Z/p.

    ``differentials[i]`` is the p x p matrix of d: W_{i+1} -> W_i with
    entries reduced mod p.
    """

    p: int
    top_degree: int
    differentials: tuple[IntMatrix, ...]

    def differential(self, degree: int) -> IntMatrix:
        if not 1 <= degree <= self.top_degree:
            raise ValueError(f"no differential out of degree {degree}")
        return self.differentials[degree - 1]


def _tau_matrix(p: int) -> list[list[int]]:
    # regular representation: tau sends basis element tau^j to tau^(j+1)
    return [[int(i == (j + 1) % p) for j in range(p)] for i in range(p)]


def w_complex(p: int, top_degree: int) -> WComplex:
    """The resolution truncated at ``top_degree``; d^2 == 0 mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if top_degree < 1:
        raise ValueError("top degree must be at least 1")
    tau = _tau_matrix(p)
    tau_minus_1 = [
        [(tau[i][j] - int(i == j)) % p for j in range(p)] for i in range(p)
    ]
    norm = [[1 % p for _ in range(p)] for _ in range(p)]
    # column j of N is sum_k tau^k applied to tau^j, which hits every basis
    # element exactly once, so N is the all-ones matrix
    diffs = []
    for degree in range(1, top_degree + 1):
        mat = tau_minus_1 if degree % 2 == 1 else norm
        diffs.append(IntMatrix.from_rows(mat, p))
    return WComplex(p, top_degree, tuple(diffs))


def pi_embedding(p: int) -> Permutation:
    """The generator's image under the embedding sending tau to the cycle
    (1, p, p-1, ..., 2)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    # 1 -> p, and k -> k-1 for k >= 2
    images = [p] + list(range(1, p))
    return Permutation(tuple(images))


def nu(q: int, s: int, p: int) -> int:
    """The coefficient nu(q) mod p for odd p (with the (-1)^s folded in)."""
    if p == 2:
        raise ValueError("nu is not used at p = 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q < 0 or s < 0:
        raise ValueError("q and s must be non-negative")
    num = q * (q - 1) * (p - 1)
    if num % 4 != 0:
        raise AssertionError("q(q-1)(p-1)/4 failed to be integral")
    exponent = s + num // 4
    sign = -1 if exponent % 2 else 1
    half_fact = factorial((p - 1) // 2)
    return (sign * pow(half_fact, q, p)) % p


_KINDS = ("P", "betaP", "D")


@dataclass(frozen=True)
class OperationDescriptor:
    p: int
    kind: str
    index: int  # s for P/betaP, i for D
    source_degree: int
    target_degree: int
    vanishes: bool
    coefficient: int  # mod p; zero exactly when the operation vanishes
    d_index: int | None = None  # index of the underlying D map, when any

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.vanishes != (self.coefficient == 0):
            raise ValueError("coefficient must vanish exactly with the operation")

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "kind": self.kind,
            "s": self.index,
            "q": self.source_degree,
            "target_degree": self.target_degree,
            "vanishes": self.vanishes,
            "coefficient": self.coefficient,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def operation_descriptor(p: int, kind: str, s: int, q: int) -> OperationDescriptor:
    """Degree bookkeeping and case splits for one operation on degree q."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if kind not in _KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {_KINDS}")
    if s < 0 or q < 0:
        raise ValueError("indices must be non-negative")
    if kind == "D":
        return OperationDescriptor(
            p, "D", s, q, p * q + s, vanishes=False, coefficient=1, d_index=s
        )
    if p == 2:
        if kind == "betaP":
            raise ValueError("betaP is defined only for odd primes")
        vanishes = s < q
        return OperationDescriptor(
            p,
            "P",
            s,
            q,
            q + s,
            vanishes=vanishes,
            coefficient=0 if vanishes else 1,
            d_index=None if vanishes else s - q,
        )
    if kind == "P":
        vanishes = 2 * s < q
        return OperationDescriptor(
            p,
            "P",
            s,
            q,
            q + 2 * s * (p - 1),
            vanishes=vanishes,
            coefficient=0 if vanishes else nu(q, s, p),
            d_index=None if vanishes else (2 * s - q) * (p - 1),
        )
    vanishes = 2 * s <= q
    return OperationDescriptor(
        p,
        "betaP",
        s,
        q,
        q + 2 * s * (p - 1) - 1,
        vanishes=vanishes,
        coefficient=0 if vanishes else nu(q, s, p),
        d_index=None if vanishes else (2 * s - q) * (p - 1) - 1,
    )
