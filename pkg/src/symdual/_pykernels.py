"""Pure numpy versions of the compiled kernels.

Same signatures and results as ``_kernels`` (the message returned by
``gray_min_weight`` may be a different minimum-weight word; its weight and
the enumeration count agree).
"""
from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def enum_level(table, w, lead_lo, lead_hi, best, best_msg, hist=None):
    table = np.asarray(table)
    k, p, r = table.shape
    if w < 1 or w > k or lead_lo >= lead_hi:
        return best, 0
    tab = table.astype(np.int64)
    hist_max = -1 if hist is None else hist.shape[0] - 1
    state = {"best": best, "count": 0}

    def record(rows, coefs):
        best_msg[:] = 0
        for i, m in zip(rows, coefs):
            best_msg[i] = m

    def walk(depth, start, prev, rows, coefs):
        stop = k - (w - 1 - depth)
        if depth == 0:
            stop = min(stop, lead_hi)
        if stop <= start:
            return
        m_hi = p - 1 if depth > 0 else 1
        if depth == w - 1:
            s = prev + tab[start:stop, 1:m_hi + 1, :]
            wt = ((s != 0) & (s != p)).sum(axis=2) + w
            state["count"] += wt.size
            flat = wt.ravel()
            if hist is not None:
                small = flat[flat <= hist_max]
                if small.size:
                    hist[:] += np.bincount(small, minlength=hist_max + 1)[: hist_max + 1]
            idx = int(np.argmin(flat))
            if flat[idx] < state["best"]:
                state["best"] = int(flat[idx])
                i, mi = divmod(idx, m_hi)
                record(rows + [start + i], coefs + [mi + 1])
            return
        for i in range(start, stop):
            for m in range(1, m_hi + 1):
                walk(depth + 1, i + 1, (prev + tab[i, m]) % p, rows + [i], coefs + [m])

    walk(0, lead_lo, np.zeros(r, dtype=np.int64), [], [])
    return state["best"], state["count"]


def gray_min_weight(gen, p, best_msg):
    gen = np.asarray(gen, dtype=np.int64)
    k, n = gen.shape
    best = n + 1
    count = 0
    for lead in range(k):
        t = k - 1 - lead
        tail = gen[lead + 1:]
        total = p ** t
        powers = p ** np.arange(t, dtype=np.int64)
        for lo in range(0, total, _CHUNK):
            idx = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
            digits = (idx[:, None] // powers[None, :]) % p
            words = (gen[lead][None, :] + digits @ tail) % p
            wt = np.count_nonzero(words, axis=1)
            count += wt.size
            j = int(np.argmin(wt))
            if wt[j] < best:
                best = int(wt[j])
                best_msg[:] = 0
                best_msg[lead] = 1
                best_msg[lead + 1:] = digits[j]
    return best, count


def rref_inplace(g, order, p, inv_table, pivots):
    rows = g.shape[0]
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.flatnonzero(g[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            g[[r, piv]] = g[[piv, r]]
        f = inv_table[g[r, c]]
        if f != 1:
            g[r] = g[r] * f % p
        col = g[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            g[hit] = (g[hit] + np.outer(p - col[hit], g[r])) % p
        pivots[r] = c
        r += 1
    return r
