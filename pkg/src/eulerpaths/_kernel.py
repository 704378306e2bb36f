"""Compiled decomposition loop for the uniform weighting.

Mirrors ``lemma_path.backwards_dfs`` + ``decompose._decompose_python`` on
flat arrays. Under the uniform weighting an in-edge ``x -> v`` weighs
``1/out_deg(x)``, so "heaviest first, then smaller source, then smaller
edge id" is the integer order ``(out_deg(x), x, e)``; no fractions are
needed inside the loop.
"""

from __future__ import annotations

import numpy as np
from numba import njit

OK = 0
CLOSURE_FAILED = 1
DOMINATION_FAILED = 2
CONDITION_FAILED = 3
NO_CLOSED_VERTEX = 4

STATUS_TEXT = {
    CLOSURE_FAILED: "an out-neighbour of the path start is not on the path",
    DOMINATION_FAILED: "a path in-edge is lighter than the start's edge into that vertex",
    CONDITION_FAILED: "residual graph is neither Eulerian nor single-defect",
    NO_CLOSED_VERTEX: "search finished without a closed vertex",
}


@njit(cache=True)
def _csr(n, key, m):
    ptr = np.zeros(n + 1, np.int64)
    for e in range(m):
        ptr[key[e] + 1] += 1
    for v in range(n):
        ptr[v + 1] += ptr[v]
    fill = ptr[:-1].copy()
    ids = np.empty(m, np.int64)
    for e in range(m):
        ids[fill[key[e]]] = e
        fill[key[e]] += 1
    return ptr, ids


@njit(cache=True)
def _load(v, n, src, alive, outd, inptr, ineid, buf, keys, bp):
    """Append v's live in-edges to buf in search order; return new end."""
    start = bp
    for i in range(inptr[v], inptr[v + 1]):
        e = ineid[i]
        if alive[e]:
            buf[bp] = e
            keys[bp] = outd[src[e]] * n + src[e]
            bp += 1
    size = bp - start
    if size <= 24:
        # insertion sort; stable, so equal keys keep increasing edge id
        for i in range(start + 1, bp):
            k = keys[i]
            e = buf[i]
            j = i - 1
            while j >= start and keys[j] > k:
                keys[j + 1] = keys[j]
                buf[j + 1] = buf[j]
                j -= 1
            keys[j + 1] = k
            buf[j + 1] = e
    else:
        o = np.argsort(keys[start:bp], kind="mergesort")
        buf[start:bp] = buf[start:bp][o]
    return bp


@njit(cache=True)
def decompose_kernel(n, src, dst, first_closed, s0, r0, check):
    m = src.shape[0]
    outd = np.zeros(n, np.int64)
    ind = np.zeros(n, np.int64)
    for e in range(m):
        outd[src[e]] += 1
        ind[dst[e]] += 1
    imb = outd - ind
    inptr, ineid = _csr(n, dst, m)
    outptr, outeid = _csr(n, src, m)

    alive = np.ones(m, np.uint8)
    seen = np.zeros(n, np.int64)       # iteration stamp of first visit
    stacked = np.zeros(n, np.int64)    # iteration stamp while on the stack
    onpath = np.zeros(n, np.int64)
    parent = np.full(n, -1, np.int64)
    pathin = np.full(n, -1, np.int64)
    buf = np.empty(max(m, 1), np.int64)
    keys = np.empty(max(m, 1), np.int64)
    bpos = np.empty(n, np.int64)
    bend = np.empty(n, np.int64)
    stack = np.empty(max(n, 1), np.int64)

    path_eids = np.empty(m, np.int64)
    path_deg = np.empty(m, np.int64)
    path_ptr = np.zeros(m + 1, np.int64)
    roots = np.empty(m, np.int64)
    sources = np.empty(m, np.int64)

    s = s0
    r = r0
    live = m
    T = 0
    written = 0
    next_active = 0
    status = OK
    while live > 0:
        stamp = T + 1
        if r < 0:
            while outd[next_active] == 0:
                next_active += 1
            root = next_active
        else:
            root = r
        roots[T] = root
        sources[T] = s

        top = 0
        stack[0] = root
        seen[root] = stamp
        stacked[root] = stamp
        bpos[root] = 0
        bend[root] = _load(root, n, src, alive, outd, inptr, ineid, buf, keys, 0)
        bp = bend[root]
        last = root
        closed = -1
        while top >= 0:
            v = stack[top]
            pushed = False
            while bpos[v] < bend[v]:
                e = buf[bpos[v]]
                bpos[v] += 1
                x = src[e]
                if seen[x] == stamp:
                    continue
                seen[x] = stamp
                parent[x] = e
                last = x
                if first_closed:
                    ok = True
                    for j in range(outptr[x], outptr[x + 1]):
                        f = outeid[j]
                        if alive[f] and stacked[dst[f]] != stamp:
                            ok = False
                            break
                    if ok:
                        closed = x
                        break
                top += 1
                stack[top] = x
                stacked[x] = stamp
                bpos[x] = bp
                bp = _load(x, n, src, alive, outd, inptr, ineid, buf, keys, bp)
                bend[x] = bp
                pushed = True
                break
            if closed >= 0:
                break
            if not pushed:
                stacked[v] = 0
                top -= 1
        if first_closed and closed < 0:
            status = NO_CLOSED_VERTEX
            break
        u = closed if closed >= 0 else last

        x = u
        onpath[u] = stamp
        start = written
        while x != root:
            e = parent[x]
            path_eids[written] = e
            path_deg[written] = outd[x]
            written += 1
            x = dst[e]
            onpath[x] = stamp
            pathin[x] = e
        path_ptr[T + 1] = written

        if check:
            du = outd[u]
            for j in range(outptr[u], outptr[u + 1]):
                f = outeid[j]
                if not alive[f]:
                    continue
                y = dst[f]
                if onpath[y] != stamp:
                    status = CLOSURE_FAILED
                    break
                # weight 1/out_deg(src); heavier means smaller out-degree
                if outd[src[pathin[y]]] > du:
                    status = DOMINATION_FAILED
                    break
            if status != OK:
                T += 1
                break

        for i in range(start, written):
            e = path_eids[i]
            alive[e] = 0
            outd[src[e]] -= 1
            ind[dst[e]] -= 1
        live -= written - start
        T += 1

        # only the two path ends change balance
        imb[u] -= 1
        imb[root] += 1
        if r < 0:
            s = root
            r = u
        else:
            r = -1 if u == s else u
            if r < 0:
                s = -1
        if check:
            if r < 0:
                if imb[u] != 0 or imb[root] != 0:
                    status = CONDITION_FAILED
            elif imb[r] != -1 or imb[s] != 1 or imb[root] != (1 if root == s else 0):
                status = CONDITION_FAILED
            if status != OK:
                break
    return (path_eids[:written], path_ptr[:T + 1], path_deg[:written],
            roots[:T], sources[:T], status)
