"""Exhaustive codeword-weight enumeration kernels.

The walk visits one representative per scalar class of nonzero codewords:
for each leading message coordinate the coefficient is pinned to 1 and the
tail coordinates sweep a mixed-radix reflected Gray sequence over the prime
subfield digits, so every step costs one scaled-row addition.  An optional
syndrome (generator matrix of a second code) is maintained incrementally to
support minimum-weight searches over set differences like C1 \\ C2-perp.

Two interchangeable backends: a numba @njit kernel and a pure-numpy block
enumerator.  Selection: QCKIT_NO_NUMBA=1 (or a failed numba import) forces
numpy; callers may also pass backend="numba"/"numpy" explicitly.  Both
backends enumerate the same codeword set; when a budget truncates the walk
mid-stream the numpy backend rounds to whole blocks, so partial-run reports
may differ between backends (exact runs never do).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        return deco if not (args and callable(args[0])) else args[0]


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("QCKIT_NO_NUMBA", "") not in ("1", "true", "yes")


@njit(cache=True)
def _walk_kernel(rows_pos, rows_neg, syn_pos, syn_neg, add_tab, p, t, k, budget, stop_at):
    """Returns (best_weight, visited, completed)."""
    n = rows_pos.shape[1]
    ns = syn_pos.shape[1]
    best = n + 1
    visited = np.int64(0)
    cw = np.zeros(n, dtype=np.int64)
    sy = np.zeros(ns, dtype=np.int64)
    for lead in range(k):
        ltail = (k - 1 - lead) * t
        for i in range(n):
            cw[i] = 0
        for i in range(ns):
            sy[i] = 0
        wt = 0
        snz = 0
        # apply leading row (coefficient 1 on coordinate `lead`)
        base = lead * t
        for i in range(n):
            v = rows_pos[base, i]
            if v != 0:
                cw[i] = v
                wt += 1
        for i in range(ns):
            v = syn_pos[base, i]
            if v != 0:
                sy[i] = v
                snz += 1
        a = np.zeros(ltail + 1, dtype=np.int64)
        o = np.ones(ltail + 1, dtype=np.int64)
        f = np.arange(ltail + 2, dtype=np.int64)
        while True:
            if ns == 0 or snz != 0:
                if wt < best:
                    best = wt
                    if best <= stop_at:
                        return best, visited + 1, 0
            visited += 1
            if visited >= budget:
                return best, visited, 0
            j = f[0]
            f[0] = 0
            if j >= ltail:
                break
            ridx = base + t + j
            up = o[j] == 1
            a[j] += o[j]
            if up:
                row = rows_pos[ridx]
                srow = syn_pos[ridx]
            else:
                row = rows_neg[ridx]
                srow = syn_neg[ridx]
            for i in range(n):
                v = row[i]
                if v != 0:
                    old = cw[i]
                    new = add_tab[old, v]
                    cw[i] = new
                    if old == 0:
                        wt += 1
                    elif new == 0:
                        wt -= 1
            for i in range(ns):
                v = srow[i]
                if v != 0:
                    old = sy[i]
                    new = add_tab[old, v]
                    sy[i] = new
                    if old == 0:
                        snz += 1
                    elif new == 0:
                        snz -= 1
            if a[j] == 0 or a[j] == p - 1:
                o[j] = -o[j]
                f[j] = f[j + 1]
                f[j + 1] = j + 1
    return best, visited, 1


def _walk_numpy(rows_pos, rows_neg, syn_pos, syn_neg, add_tab, p, t, k, budget, stop_at):
    """Block-enumerating fallback with the same result contract."""
    n = rows_pos.shape[1]
    ns = syn_pos.shape[1]
    best = n + 1
    visited = 0
    # digit value -> multiple of a row (v copies added together)
    def multiples(row):
        out = [np.zeros(len(row), dtype=np.int64)]
        for _ in range(1, p):
            out.append(add_tab[out[-1], row])
        return out

    for lead in range(k):
        ltail = (k - 1 - lead) * t
        base = lead * t
        start = rows_pos[base].copy()
        start_s = syn_pos[base].copy()
        # low block over the trailing digits
        low = 0
        size = 1
        while low < ltail and size * p <= 4096:
            size *= p
            low += 1
        T = np.zeros((1, n), dtype=np.int64)
        TS = np.zeros((1, ns), dtype=np.int64)
        for d in range(low):
            ridx = base + t + d
            mults = multiples(rows_pos[ridx])
            smults = multiples(syn_pos[ridx]) if ns else [np.zeros(0, dtype=np.int64)] * p
            T = np.concatenate([add_tab[T, mv[None, :]] for mv in mults], axis=0)
            if ns:
                TS = np.concatenate([add_tab[TS, sv[None, :]] for sv in smults], axis=0)
            else:
                TS = np.zeros((T.shape[0], 0), dtype=np.int64)
        nhigh = ltail - low
        # odometer over the high digits, prefix maintained incrementally
        prefix = start
        prefix_s = start_s
        digits = np.zeros(nhigh, dtype=np.int64)
        high_rows = [rows_pos[base + t + low + i] for i in range(nhigh)]
        high_srows = [syn_pos[base + t + low + i] for i in range(nhigh)]
        while True:
            block = add_tab[T, prefix[None, :]]
            wts = np.count_nonzero(block, axis=1)
            if ns:
                sblock = add_tab[TS, prefix_s[None, :]]
                keep = np.count_nonzero(sblock, axis=1) > 0
                wts = wts[keep]
            visited += T.shape[0]
            if wts.size:
                w = int(wts.min())
                if w < best:
                    best = w
                    if best <= stop_at:
                        return best, visited, 0
            if visited >= budget:
                return best, visited, 0
            # advance odometer
            pos = 0
            while pos < nhigh:
                digits[pos] += 1
                prefix = add_tab[prefix, high_rows[pos]]
                if ns:
                    prefix_s = add_tab[prefix_s, high_srows[pos]]
                if digits[pos] < p:
                    break
                # wrapped around: p additions of the row sum to zero, state is reset
                digits[pos] = 0
                pos += 1
            if pos == nhigh:
                break
    return best, visited, 1


def gray_min_weight(rows_pos, rows_neg, syn_pos, syn_neg, add_tab, p, t, k,
                    budget, stop_at=0, backend=None):
    """Minimum nonzero-class codeword weight; see module docstring."""
    if k == 0:
        return rows_pos.shape[1] + 1, 0, 1
    args = (
        np.ascontiguousarray(rows_pos, dtype=np.int64),
        np.ascontiguousarray(rows_neg, dtype=np.int64),
        np.ascontiguousarray(syn_pos, dtype=np.int64),
        np.ascontiguousarray(syn_neg, dtype=np.int64),
        np.ascontiguousarray(add_tab, dtype=np.int64),
        p,
        t,
        k,
        np.int64(budget),
        np.int64(stop_at),
    )
    if backend is None:
        backend = "numba" if numba_enabled() else "numpy"
    if backend == "numba":
        best, visited, complete = _walk_kernel(*args)
    elif backend == "numpy":
        best, visited, complete = _walk_numpy(*args)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return int(best), int(visited), bool(complete)
