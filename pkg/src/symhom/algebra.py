"""Finite-rank unital associative algebras over the integers, presented by
structure constants.

An algebra of rank n is a basis label list, a unit vector, and an
n x n x n table: ``mul[i][j]`` holds the coordinates of the product of
basis elements i and j.  Associativity and the unit law are checked at
construction (``validate`` reports every violated triple instead of
stopping at the first).

Builders cover the families used throughout: truncated polynomial rings
Z[t]/(t^n), cyclic group algebras Z[C_n], and matrix algebras M_n(Z).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class FinRankAlgebra:
    rank: int
    basis_labels: tuple[str, ...]
    unit: tuple[int, ...]
    mul_table: tuple[tuple[tuple[int, ...], ...], ...]
    label: str = ""

    def __post_init__(self):
        n = self.rank
        if len(self.basis_labels) != n or len(self.unit) != n:
            raise ValueError("basis or unit length does not match rank")
        if len(self.mul_table) != n or any(
            len(row) != n or any(len(v) != n for v in row) for row in self.mul_table
        ):
            raise ValueError("multiplication table shape does not match rank")
        issues = validate(self)
        if issues:
            raise ValueError("invalid algebra: " + "; ".join(issues[:3]))

    def basis_vector(self, i: int) -> tuple[int, ...]:
        return tuple(int(j == i) for j in range(self.rank))

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        return multiply(self, u, v)

    def is_commutative(self) -> bool:
        t = self.mul_table
        n = self.rank
        return all(t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n))

    def describe(self) -> str:
        return self.label or f"rank-{self.rank} algebra"


def multiply(A: FinRankAlgebra, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Bilinear extension of the structure constants."""
    n = A.rank
    if len(u) != n or len(v) != n:
        raise ValueError(f"vector length mismatch against rank {n}")
    out = [0] * n
    t = A.mul_table
    for i, ui in enumerate(u):
        if not ui:
            continue
        ti = t[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            row = ti[j]
            for k in range(n):
                if row[k]:
                    out[k] += c * row[k]
    return tuple(out)


def _validate_raw(rank, unit, mul) -> list[str]:
    issues = []
    for i in range(rank):
        # unit axiom, checked on basis vectors
        e = tuple(int(j == i) for j in range(rank))
        left = _raw_multiply(rank, mul, unit, e)
        right = _raw_multiply(rank, mul, e, unit)
        if left != e:
            issues.append(f"unit axiom fails on the left at basis {i}")
        if right != e:
            issues.append(f"unit axiom fails on the right at basis {i}")

    bound = max((abs(x) for row in mul for v in row for x in v), default=0)
    if bound * bound * rank < 2**60:
        # (e_i e_j) e_k vs e_i (e_j e_k) for all triples at once
        t = np.array(mul, dtype=np.int64)
        lhs = np.einsum("ijs,skr->ijkr", t, t)
        rhs = np.einsum("jks,isr->ijkr", t, t)
        bad = np.argwhere(np.any(lhs != rhs, axis=3))
        for i, j, k in bad:
            issues.append(f"associativity fails at triple ({i},{j},{k})")
        return issues

    for i in range(rank):
        for j in range(rank):
            for k in range(rank):
                ij = mul[i][j]
                jk = mul[j][k]
                lhs = [0] * rank
                for s, c in enumerate(ij):
                    if c:
                        for r, w in enumerate(mul[s][k]):
                            lhs[r] += c * w
                rhs = [0] * rank
                for s, c in enumerate(jk):
                    if c:
                        for r, w in enumerate(mul[i][s]):
                            rhs[r] += c * w
                if lhs != rhs:
                    issues.append(f"associativity fails at triple ({i},{j},{k})")
    return issues


def _raw_multiply(rank, mul, u, v):
    out = [0] * rank
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    c = ui * vj
                    for k, w in enumerate(mul[i][j]):
                        out[k] += c * w
    return tuple(out)


def validate(A: FinRankAlgebra) -> list[str]:
    """Every violated axiom, as human-readable strings (empty when valid)."""
    return _validate_raw(A.rank, A.unit, A.mul_table)


# ---------------------------------------------------------------------------
# Builders.


def truncated_polynomial(n: int) -> FinRankAlgebra:
    """Z[t]/(t^n): basis 1, t, ..., t^(n-1) with t^a t^b = t^(a+b) or 0."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    labels = tuple("1" if a == 0 else ("t" if a == 1 else f"t^{a}") for a in range(n))
    mul = tuple(
        tuple(
            tuple(int(k == a + b) for k in range(n))
            for b in range(n)
        )
        for a in range(n)
    )
    unit = tuple(int(k == 0) for k in range(n))
    return FinRankAlgebra(n, labels, unit, mul, label=f"Z[t]/(t^{n})")


def cyclic_group_algebra(n: int) -> FinRankAlgebra:
    """Z[C_n]: basis e, g, ..., g^(n-1) with g^a g^b = g^(a+b mod n)."""
    if n < 1:
        raise ValueError("group order must be at least 1")
    labels = tuple("e" if a == 0 else ("g" if a == 1 else f"g^{a}") for a in range(n))
    mul = tuple(
        tuple(
            tuple(int(k == (a + b) % n) for k in range(n))
            for b in range(n)
        )
        for a in range(n)
    )
    unit = tuple(int(k == 0) for k in range(n))
    return FinRankAlgebra(n, labels, unit, mul, label=f"Z[C_{n}]")


def matrix_algebra(n: int) -> FinRankAlgebra:
    """M_n(Z): basis E_ij with E_ij E_kl = delta_jk E_il."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    idx = [(i, j) for i in range(n) for j in range(n)]
    rank = n * n
    labels = tuple(f"E{i + 1}{j + 1}" for i, j in idx)
    pos = {p: k for k, p in enumerate(idx)}
    mul = tuple(
        tuple(
            tuple(
                int(j == k and pos[(i, l)] == r) for r in range(rank)
            )
            for (k, l) in idx
        )
        for (i, j) in idx
    )
    unit = tuple(int(i == j) for i, j in idx)
    return FinRankAlgebra(rank, labels, unit, mul, label=f"M_{n}(Z)")


_BUILTIN_PATTERNS = {
    "trunc-poly": truncated_polynomial,
    "cyclic": cyclic_group_algebra,
    "matrix": matrix_algebra,
}


def builtin_algebra(name: str) -> FinRankAlgebra:
    """Resolve names like ``trunc-poly-2``, ``cyclic-5``, ``matrix-2``."""
    m = re.fullmatch(r"([a-z-]+)-(\d+)", name.strip())
    if m and m.group(1) in _BUILTIN_PATTERNS:
        return _BUILTIN_PATTERNS[m.group(1)](int(m.group(2)))
    raise ValueError(
        f"unknown builtin algebra {name!r}; expected trunc-poly-N, cyclic-N or matrix-N"
    )


def builtin_names() -> list[str]:
    return sorted(f"{stem}-N" for stem in _BUILTIN_PATTERNS)


# ---------------------------------------------------------------------------
# File format and basis changes.


def _encode_int(x: int):
    # decimal strings keep arbitrary precision survivable in strict JSON readers
    return x if abs(x) < 2**53 else str(x)


def _decode_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ValueError(f"expected integer or decimal string, got {x!r}")
    return int(x)


def dump_algebra(A: FinRankAlgebra) -> str:
    doc = {
        "rank": A.rank,
        "basis": list(A.basis_labels),
        "unit": [_encode_int(x) for x in A.unit],
        "mul": [
            [[_encode_int(x) for x in vec] for vec in row] for row in A.mul_table
        ],
    }
    if A.label:
        doc["label"] = A.label
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_algebra(text: str) -> FinRankAlgebra:
    """Parse and fully validate the JSON algebra format.

    Raises ValueError with the offending triple/axiom on bad input.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"not valid JSON: {e}") from None
    for key in ("rank", "basis", "unit", "mul"):
        if key not in doc:
            raise ValueError(f"missing field {key!r}")
    rank = doc["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise ValueError("rank must be a positive integer")
    basis = tuple(str(x) for x in doc["basis"])
    unit = tuple(_decode_int(x) for x in doc["unit"])
    mul = tuple(
        tuple(tuple(_decode_int(x) for x in vec) for vec in row)
        for row in doc["mul"]
    )
    if len(basis) != rank or len(unit) != rank:
        raise ValueError("basis or unit length does not match rank")
    if len(mul) != rank or any(
        len(row) != rank or any(len(v) != rank for v in row) for row in mul
    ):
        raise ValueError("mul table shape does not match rank")
    issues = _validate_raw(rank, unit, mul)
    if issues:
        raise ValueError("; ".join(issues))
    return FinRankAlgebra(rank, basis, unit, mul, label=str(doc.get("label", "")))


def load_algebra_file(path) -> FinRankAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return load_algebra(fh.read())


def change_basis(A: FinRankAlgebra, s_cols: Sequence[Sequence[int]]) -> FinRankAlgebra:
    """Transport the algebra along the basis f_j = sum_i s_cols[j][i] e_i.

    ``s_cols`` must be unimodular (its columns are the new basis in old
    coordinates).  Useful for generating many valid algebras from one.
    """
    from .homalg import IntMatrix, matmul, matvec, unimodular_inverse

    n = A.rank
    s = IntMatrix.from_rows(
        [[int(s_cols[j][i]) for j in range(n)] for i in range(n)], n
    )
    sinv = unimodular_inverse(s)
    new_mul = []
    for i in range(n):
        row = []
        fi = s.column(i)
        for j in range(n):
            fj = s.column(j)
            prod = A.multiply(fi, fj)
            row.append(matvec(sinv, prod))
        new_mul.append(tuple(row))
    new_unit = matvec(sinv, A.unit)
    labels = tuple(f"f{j}" for j in range(n))
    return FinRankAlgebra(
        n, labels, new_unit, tuple(new_mul), label=A.label and A.label + "~"
    )
