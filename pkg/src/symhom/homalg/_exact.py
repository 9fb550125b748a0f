"""Pure-Python Smith normal form over unbounded integers.

Fallback engine for inputs the int64 kernel refuses (entries too large, or
growth guard tripped mid-reduction).  It mirrors ``_kernels`` step for
step: same pivot rule (smallest nonzero absolute value, row-major
tie-break), same balanced quotients, same divisibility repair, same
inverse-transform bookkeeping, so when both engines succeed they produce
identical output.
"""

from __future__ import annotations


def snf_exact(rows, m, n, need_u, need_v, need_vinv, need_uinv):
    """Return (d, u, v, vinv, uinv) as lists of lists (untracked: None)."""
    d = [list(map(int, row)) for row in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)] if need_u else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if need_v else None
    vinv = [[int(i == j) for j in range(n)] for i in range(n)] if need_vinv else None
    uinv = [[int(i == j) for j in range(m)] for i in range(m)] if need_uinv else None
    mn = min(m, n)

    def reduce_from(t0):
        t = t0
        while t < mn:
            pi = pj = -1
            best = None
            for i in range(t, m):
                di = d[i]
                for j in range(t, n):
                    a = di[j]
                    if a:
                        a = -a if a < 0 else a
                        if best is None or a < best:
                            best, pi, pj = a, i, j
            if pi < 0:
                break
            if pi != t:
                d[t], d[pi] = d[pi], d[t]
                if need_u:
                    u[t], u[pi] = u[pi], u[t]
                if need_uinv:
                    for row in uinv:
                        row[t], row[pi] = row[pi], row[t]
            if pj != t:
                for row in d:
                    row[t], row[pj] = row[pj], row[t]
                if need_v:
                    for row in v:
                        row[t], row[pj] = row[pj], row[t]
                if need_vinv:
                    vinv[t], vinv[pj] = vinv[pj], vinv[t]
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                if need_u:
                    u[t] = [-x for x in u[t]]
                if need_uinv:
                    for row in uinv:
                        row[t] = -row[t]

            p = d[t][t]
            half = p // 2
            for i in range(t + 1, m):
                q = (d[i][t] + half) // p
                if q:
                    dt, di = d[t], d[i]
                    for jj in range(n):
                        di[jj] -= q * dt[jj]
                    if need_u:
                        ut, ui = u[t], u[i]
                        for jj in range(m):
                            ui[jj] -= q * ut[jj]
                    if need_uinv:
                        # inverse of "row_i -= q row_t" adds q col_i onto col_t
                        for row in uinv:
                            row[t] += q * row[i]
            dt = d[t]
            for j in range(t + 1, n):
                q = (dt[j] + half) // p
                if q:
                    for row in d:
                        row[j] -= q * row[t]
                    if need_v:
                        for row in v:
                            row[j] -= q * row[t]
                    if need_vinv:
                        # inverse of "col_j -= q col_t" adds q row_j onto row_t
                        vt, vj = vinv[t], vinv[j]
                        for jj in range(n):
                            vt[jj] += q * vj[jj]
            if any(d[i][t] for i in range(t + 1, m)) or any(
                dt[j] for j in range(t + 1, n)
            ):
                continue
            t += 1

    restart_from = 0
    while True:
        reduce_from(restart_from)
        bad = -1
        for i in range(mn - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a and b and b % a:
                bad = i
                break
        if bad < 0:
            return d, u, v, vinv, uinv
        for jj in range(n):
            d[bad][jj] += d[bad + 1][jj]
        if need_u:
            for jj in range(m):
                u[bad][jj] += u[bad + 1][jj]
        if need_uinv:
            for row in uinv:
                row[bad + 1] -= row[bad]
        restart_from = bad
