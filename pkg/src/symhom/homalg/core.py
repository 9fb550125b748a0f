"""Exact integer linear algebra: Smith normal form with transform
tracking, homology of integer chain complexes with torsion, and
cycle-to-class coordinate maps.

Everything here is exact.  The reduction runs on the int64 kernel
(numba-compiled or plain numpy, see ``_kernels``) whenever the input and
its growth fit; otherwise it falls back to the unbounded-integer engine
in ``_exact``.  Both follow the same pivot rules, so results agree across
engines.  Force an engine with the ``SYMHOM_KERNEL`` environment variable
(``auto`` | ``numba`` | ``numpy`` | ``exact``) or per call.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from ._exact import snf_exact

# inputs beyond this go straight to the exact engine
_INT64_INPUT_LIMIT = 1 << 56


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix of arbitrary-precision integers."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise ValueError("entry storage does not match declared dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def max_abs(self) -> int:
        return max((abs(x) for row in self.entries for x in row), default=0)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ((),) * self.cols
        )

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return matmul(self, other)


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    # int64 path when products cannot overflow
    bound = a.max_abs() * b.max_abs() * max(a.cols, 1)
    if bound < _INT64_INPUT_LIMIT:
        c = a.to_numpy() @ b.to_numpy()
        return IntMatrix(a.rows, b.cols, tuple(tuple(int(x) for x in row) for row in c))
    bt = list(zip(*b.entries)) if b.rows else [()] * b.cols
    out = tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
        for row in a.entries
    )
    return IntMatrix(a.rows, b.cols, out)


def matvec(a: IntMatrix, x: Sequence[int]) -> tuple[int, ...]:
    if len(x) != a.cols:
        raise ValueError(f"length {len(x)} vector against {a.rows}x{a.cols}")
    return tuple(sum(r * v for r, v in zip(row, x)) for row in a.entries)


def write_matrix(m: IntMatrix) -> str:
    """Plain text form: "rows cols" header, then row-major integers."""
    body = "\n".join(" ".join(str(x) for x in row) for row in m.entries)
    return f"{m.rows} {m.cols}\n{body}\n" if body else f"{m.rows} {m.cols}\n"


def read_matrix(text: str) -> IntMatrix:
    toks = text.split()
    if len(toks) < 2:
        raise ValueError("missing matrix header")
    rows, cols = int(toks[0]), int(toks[1])
    vals = [int(t) for t in toks[2:]]
    if len(vals) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(vals)}")
    it = iter(vals)
    return IntMatrix(rows, cols, tuple(tuple(next(it) for _ in range(cols)) for _ in range(rows)))


@dataclass(frozen=True)
class SnfResult:
    """U @ M @ V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.

    ``vinv``/``uinv`` are carried only when requested from
    :func:`smith_normal_form`.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    vinv: IntMatrix | None = None
    uinv: IntMatrix | None = None

    def diagonal(self) -> tuple[int, ...]:
        return tuple(
            self.d.entries[i][i] for i in range(min(self.d.rows, self.d.cols))
        )

    def rank(self) -> int:
        return sum(1 for x in self.diagonal() if x != 0)

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(x for x in self.diagonal() if x != 0)


def _resolve_engine(engine: str | None) -> str:
    engine = engine or os.environ.get("SYMHOM_KERNEL", "auto")
    if engine not in ("auto", "numba", "numpy", "exact"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "auto":
        return _kernels.default_backend()
    if engine == "numba" and "numba" not in _kernels.available_backends():
        raise RuntimeError("numba requested but not importable")
    return engine


def smith_normal_form(
    m: IntMatrix,
    need_u: bool = True,
    need_v: bool = True,
    need_vinv: bool = False,
    need_uinv: bool = False,
    engine: str | None = None,
) -> SnfResult:
    """Diagonalize by unimodular transforms; deterministic for fixed input.

    The diagonal is non-negative with each entry dividing the next.
    Inverse transforms come from running the same reduction with the roles
    of the tracked matrices extended, not from a separate inversion.
    """
    resolved = _resolve_engine(engine)
    rows = m.entries
    res = None
    if resolved in ("numba", "numpy") and m.max_abs() < _INT64_INPUT_LIMIT:
        packed = _kernels.snf_int64(
            np.array(rows, dtype=np.int64).reshape(m.rows, m.cols),
            need_u,
            need_v,
            need_vinv,
            need_uinv,
            backend=resolved,
        )
        if packed is not None:
            res = tuple(
                [[int(x) for x in r] for r in a] if a is not None else None
                for a in packed
            )
    if res is None:
        res = snf_exact(rows, m.rows, m.cols, need_u, need_v, need_vinv, need_uinv)
    d, u, v, vinv, uinv = res

    def pack(entries, dim, wanted):
        if not wanted:
            return None
        if entries and dim:
            return IntMatrix.from_rows(entries, dim)
        return IntMatrix.zero(dim, dim)

    dm = IntMatrix.from_rows(d, m.cols) if d else IntMatrix.zero(0, m.cols)
    return SnfResult(
        u=pack(u, m.rows, need_u),
        d=dm,
        v=pack(v, m.cols, need_v),
        vinv=pack(vinv, m.cols, need_vinv),
        uinv=pack(uinv, m.rows, need_uinv),
    )


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1 (via its own SNF)."""
    if m.rows != m.cols:
        raise ValueError("only square matrices can be unimodular")
    if m.rows == 0:
        return IntMatrix.zero(0, 0)
    res = smith_normal_form(m, need_u=True, need_v=True)
    diag = res.diagonal()
    if any(x != 1 for x in diag):
        raise ValueError(f"matrix is not unimodular (invariants {diag})")
    # U m V = I  =>  m^-1 = V U
    return matmul(res.v, res.u)


def bareiss_determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Homology of integer chain complexes.


@dataclass(frozen=True, eq=False)
class AbelianGroup:
    """Invariants of a finitely generated abelian group plus a coordinate map.

    ``torsion`` lists the invariant factors > 1 in divisibility order, so
    the group is Z^free_rank (+) Z/t_1 (+) ... (+) Z/t_k.  Coordinates of a
    cycle come out as (free coordinates..., torsion coordinates...) with
    torsion entries reduced to [0, t_i).  Two groups compare equal when
    their invariants agree; the coordinate maps are a choice of basis.
    """

    free_rank: int
    torsion: tuple[int, ...]
    ambient_dim: int
    _cycle_test: IntMatrix | None = field(repr=False, default=None)
    _proj: IntMatrix | None = field(repr=False, default=None)
    _ub: IntMatrix | None = field(repr=False, default=None)
    _ubinv: IntMatrix | None = field(repr=False, default=None)
    _kernel_basis: IntMatrix | None = field(repr=False, default=None)
    _positions: tuple[int, ...] = field(repr=False, default=())
    _invariants: tuple[int, ...] = field(repr=False, default=())

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_cycle(self, z: Sequence[int]) -> bool:
        if len(z) != self.ambient_dim:
            raise ValueError(f"vector length {len(z)} != ambient {self.ambient_dim}")
        if self._cycle_test is None:
            return True
        return all(x == 0 for x in matvec(self._cycle_test, z))

    def coordinates_of_cycle(self, z: Sequence[int]) -> tuple[int, ...]:
        """Class coordinates of a cycle; boundaries map to all zeros."""
        if not self.is_cycle(z):
            raise ValueError("vector is not a cycle")
        if self._proj is None:
            raise ValueError("this group carries no coordinate map")
        y = matvec(self._ub, matvec(self._proj, z))
        out = []
        for pos in self._positions:
            d = self._invariants[pos]
            out.append(y[pos] if d == 0 else y[pos] % d)
        return tuple(out)

    def representative(self, coords: Sequence[int]) -> tuple[int, ...]:
        """A cycle whose class has the given coordinates (section of the map)."""
        if len(coords) != len(self._positions):
            raise ValueError(
                f"expected {len(self._positions)} coordinates, got {len(coords)}"
            )
        y = [0] * self._ub.rows
        for pos, c in zip(self._positions, coords):
            y[pos] = int(c)
        return matvec(self._kernel_basis, matvec(self._ubinv, y))

    def to_json_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(d_in: IntMatrix, d_out: IntMatrix, engine: str | None = None) -> AbelianGroup:
    """ker(d_out)/im(d_in) over Z, with a coordinate map for cycles.

    ``d_out`` maps the middle chain group down, ``d_in`` maps into it;
    requires d_out @ d_in == 0.
    """
    ambient = d_out.cols
    if d_in.rows != ambient:
        raise ValueError(
            f"dimension mismatch: d_in has {d_in.rows} rows, d_out {ambient} cols"
        )
    if not matmul(d_out, d_in).is_zero():
        raise ValueError("d_out @ d_in != 0: not a chain complex")

    # kernel of d_out: columns of V past the rank
    out_snf = smith_normal_form(d_out, need_u=False, need_v=True, need_vinv=True, engine=engine)
    r = out_snf.rank()
    kdim = ambient - r
    kernel_basis = IntMatrix.from_rows(
        [row[r:] for row in out_snf.v.entries], kdim
    )
    proj = IntMatrix.from_rows(out_snf.vinv.entries[r:], ambient) if kdim else IntMatrix.zero(0, ambient)

    # image of d_in in kernel coordinates
    b = matmul(proj, d_in)
    b_snf = smith_normal_form(b, need_u=True, need_v=False, need_uinv=True, engine=engine)
    diag = b_snf.diagonal()
    rb = b_snf.rank()
    invariants = tuple(diag[i] if i < len(diag) else 0 for i in range(kdim))
    free_positions = [i for i in range(kdim) if invariants[i] == 0]
    torsion_positions = [i for i in range(kdim) if invariants[i] > 1]
    return AbelianGroup(
        free_rank=len(free_positions),
        torsion=tuple(invariants[i] for i in torsion_positions),
        ambient_dim=ambient,
        _cycle_test=d_out,
        _proj=proj,
        _ub=b_snf.u,
        _ubinv=b_snf.uinv,
        _kernel_basis=kernel_basis,
        _positions=tuple(free_positions + torsion_positions),
        _invariants=invariants,
    )


def cokernel(m: IntMatrix, engine: str | None = None) -> AbelianGroup:
    """Z^rows / (column span of m), with coordinates for every vector."""
    return homology(m, IntMatrix.zero(0, m.rows), engine=engine)


def coordinates_of_cycle(group: AbelianGroup, z: Sequence[int]) -> tuple[int, ...]:
    return group.coordinates_of_cycle(z)


# ---------------------------------------------------------------------------
# Z/p companion engine (Gaussian elimination with rank bookkeeping).


def rank_mod_p(m: IntMatrix | np.ndarray, p: int) -> int:
    a = (m.to_numpy() if isinstance(m, IntMatrix) else np.array(m, dtype=np.int64)) % p
    a = a.copy()
    rows, cols = a.shape
    rank = 0
    for j in range(cols):
        piv = None
        for i in range(rank, rows):
            if a[i, j] % p:
                piv = i
                break
        if piv is None:
            continue
        a[[rank, piv], :] = a[[piv, rank], :]
        inv = pow(int(a[rank, j]), p - 2, p)
        a[rank, :] = (a[rank, :] * inv) % p
        for i in range(rows):
            if i != rank and a[i, j]:
                a[i, :] = (a[i, :] - a[i, j] * a[rank, :]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def homology_mod_p(d_in: IntMatrix, d_out: IntMatrix, p: int) -> AbelianGroup:
    """Homology with Z/p coefficients, as (Z/p)^dim without coordinate maps.

    p must be prime (the elimination inverts pivots by Fermat).
    """
    ambient = d_out.cols
    if d_in.rows != ambient:
        raise ValueError("dimension mismatch")
    if any(x % p for row in matmul(d_out, d_in).entries for x in row):
        raise ValueError("d_out @ d_in != 0 mod p: not a chain complex")
    dim = ambient - rank_mod_p(d_out, p) - rank_mod_p(d_in, p)
    if dim < 0:
        raise ValueError("ranks exceed ambient dimension: not a complex mod p")
    return AbelianGroup(free_rank=0, torsion=(p,) * dim, ambient_dim=ambient)
