"""int64 Smith-reduction kernel, the package's hot numeric loop.

One self-contained vectorized routine runs in two modes: compiled by
numba's @njit when available (the default), or as plain numpy when numba
is missing or the ``SYMHOM_NO_NUMBA`` environment flag is set.  Both
modes execute the same source, so pivot choices and transform matrices
agree bit for bit, and ``benchmarks/bench_snf.py`` can time them against
each other in one process.

Entry growth is guarded: before every elimination sweep the kernel bounds
the worst entry it could produce (including in the transform matrices,
which outgrow the matrix being reduced) and reports failure instead of
letting int64 wrap.  The caller then retries with the exact big-integer
engine in ``_exact.py``.
"""

from __future__ import annotations

import os

import numpy as np

_HUGE = np.int64(1) << np.int64(62)
_GUARD = float(1 << 58)


def numba_disabled_by_env() -> bool:
    return os.environ.get("SYMHOM_NO_NUMBA", "") not in ("", "0")


def _snf_int64_impl(d, u, v, vinv, uinv, track_u, track_v, track_vinv, track_uinv):
    """Smith normal form of ``d`` in place by unimodular row/column ops.

    Pivot rule: smallest nonzero absolute value, row-major tie-break.
    Quotients are balanced (remainders at most half the pivot), so pivots
    shrink strictly and each position terminates.  After diagonalization
    the divisibility chain d_1 | d_2 | ... is repaired by folding each
    offending row into its predecessor and re-reducing from that spot.

    The inverse transforms are maintained alongside (row op on u = column
    op on uinv with opposite sign, and dually), never by inverting after
    the fact.  Returns 0 on success, 1 when an update could overflow int64.
    """
    m, n = d.shape
    mn = min(m, n)
    restart_from = 0
    while True:
        # --- reduction sweep starting at restart_from ---------------------
        t = restart_from
        while t < mn:
            w = n - t
            sub = np.abs(d[t:, t:])
            masked = np.where(sub == 0, _HUGE, sub)
            flat = np.argmin(masked)
            pi = t + flat // w
            pj = t + flat % w
            if masked[pi - t, pj - t] == _HUGE:
                break
            if pi != t:
                tmp = d[t, :].copy()
                d[t, :] = d[pi, :]
                d[pi, :] = tmp
                if track_u:
                    tmp = u[t, :].copy()
                    u[t, :] = u[pi, :]
                    u[pi, :] = tmp
                if track_uinv:
                    tmp = uinv[:, t].copy()
                    uinv[:, t] = uinv[:, pi]
                    uinv[:, pi] = tmp
            if pj != t:
                tmp = d[:, t].copy()
                d[:, t] = d[:, pj]
                d[:, pj] = tmp
                if track_v:
                    tmp = v[:, t].copy()
                    v[:, t] = v[:, pj]
                    v[:, pj] = tmp
                if track_vinv:
                    tmp = vinv[t, :].copy()
                    vinv[t, :] = vinv[pj, :]
                    vinv[pj, :] = tmp
            if d[t, t] < 0:
                d[t, :] = -d[t, :]
                if track_u:
                    u[t, :] = -u[t, :]
                if track_uinv:
                    uinv[:, t] = -uinv[:, t]

            p = d[t, t]
            half = p // 2

            if t + 1 < m:
                qs = (d[t + 1 :, t] + half) // p
                if np.any(qs != 0):
                    mq = float(np.max(np.abs(qs)))
                    sq = float(np.sum(np.abs(qs).astype(np.float64)))
                    if _line_blowup(mq, d[t, :], d[t + 1 :, :]):
                        return 1
                    if track_u and _line_blowup(mq, u[t, :], u[t + 1 :, :]):
                        return 1
                    if track_uinv and _line_blowup(sq, uinv[:, t + 1 :], uinv[:, t : t + 1]):
                        return 1
                    d[t + 1 :, :] -= qs.reshape(-1, 1) * d[t, :].reshape(1, -1)
                    if track_u:
                        u[t + 1 :, :] -= qs.reshape(-1, 1) * u[t, :].reshape(1, -1)
                    if track_uinv:
                        # inverse of "row_i -= q row_t" adds q col_i onto col_t
                        for ii in range(qs.shape[0]):
                            if qs[ii] != 0:
                                uinv[:, t] += qs[ii] * uinv[:, t + 1 + ii]

            if t + 1 < n:
                qr = (d[t, t + 1 :] + half) // p
                if np.any(qr != 0):
                    mq = float(np.max(np.abs(qr)))
                    sq = float(np.sum(np.abs(qr).astype(np.float64)))
                    if _line_blowup(mq, d[:, t], d[:, t + 1 :]):
                        return 1
                    if track_v and _line_blowup(mq, v[:, t], v[:, t + 1 :]):
                        return 1
                    # the inverse update accumulates all quotients onto one row
                    if track_vinv and _line_blowup(sq, vinv[t + 1 :, :], vinv[t : t + 1, :]):
                        return 1
                    col_t = d[:, t].copy()
                    d[:, t + 1 :] -= col_t.reshape(-1, 1) * qr.reshape(1, -1)
                    if track_v:
                        vcol_t = v[:, t].copy()
                        v[:, t + 1 :] -= vcol_t.reshape(-1, 1) * qr.reshape(1, -1)
                    if track_vinv:
                        # inverse of "col_j -= q col_t" adds q row_j onto row_t
                        for jj in range(qr.shape[0]):
                            if qr[jj] != 0:
                                vinv[t, :] += qr[jj] * vinv[t + 1 + jj, :]

            if (t + 1 < m and np.any(d[t + 1 :, t] != 0)) or (
                t + 1 < n and np.any(d[t, t + 1 :] != 0)
            ):
                continue  # nonzero remainders: re-pivot with a smaller entry
            t += 1

        # --- divisibility chain repair ------------------------------------
        bad = -1
        for i in range(mn - 1):
            a = d[i, i]
            b = d[i + 1, i + 1]
            if a != 0 and b != 0 and b % a != 0:
                bad = i
                break
        if bad < 0:
            return 0
        d[bad, :] += d[bad + 1, :]
        if track_u:
            u[bad, :] += u[bad + 1, :]
        if track_uinv:
            uinv[:, bad + 1] -= uinv[:, bad]
        restart_from = bad


def _line_blowup(mult, line, rest):
    """Would ``rest -= q * line`` with |q| <= mult leave the growth guard?

    Conservative float bound with a factor-two margin below int64.
    """
    if mult == 0.0:
        return False
    maxline = 0.0 if line.size == 0 else float(np.max(np.abs(line)))
    maxrest = 0.0 if rest.size == 0 else float(np.max(np.abs(rest)))
    return mult * maxline + maxrest > _GUARD


_jit_cache: dict = {}


def _jitted():
    if "snf" not in _jit_cache:
        from numba import njit

        blowup = njit(cache=True)(_line_blowup)
        import types

        src = types.FunctionType(
            _snf_int64_impl.__code__,
            {**_snf_int64_impl.__globals__, "_line_blowup": blowup},
            _snf_int64_impl.__name__,
        )
        _jit_cache["snf"] = njit(cache=True)(src)
    return _jit_cache["snf"]


def available_backends() -> list[str]:
    out = ["numpy"]
    try:
        import numba  # noqa: F401

        out.insert(0, "numba")
    except ImportError:
        pass
    return out


def default_backend() -> str:
    if numba_disabled_by_env():
        return "numpy"
    return available_backends()[0]


def snf_int64(a, need_u, need_v, need_vinv, need_uinv, backend=None):
    """Run the int64 kernel on a copy of ``a`` (any 2D integer ndarray).

    Returns (d, u, v, vinv, uinv) with untracked transforms as None, or
    None when the kernel aborted on overflow risk.
    """
    backend = backend or default_backend()
    m, n = a.shape
    d = np.array(a, dtype=np.int64, copy=True)
    dummy = np.zeros((1, 1), dtype=np.int64)
    u = np.eye(m, dtype=np.int64) if need_u else dummy
    v = np.eye(n, dtype=np.int64) if need_v else dummy
    vinv = np.eye(n, dtype=np.int64) if need_vinv else dummy
    uinv = np.eye(m, dtype=np.int64) if need_uinv else dummy
    if backend == "numba":
        fn = _jitted()
    elif backend == "numpy":
        fn = _snf_int64_impl
    else:
        raise ValueError(f"unknown kernel backend {backend!r}")
    status = fn(d, u, v, vinv, uinv, need_u, need_v, need_vinv, need_uinv)
    if status != 0:
        return None
    return (
        d,
        u if need_u else None,
        v if need_v else None,
        vinv if need_vinv else None,
        uinv if need_uinv else None,
    )
