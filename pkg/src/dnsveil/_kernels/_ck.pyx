# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Mirrors `pyk` operation for operation: same candidate order, same
splitmix-style feature sampling, same tie-breaking, so both backends grow
identical trees.  The heavy loops run without the GIL, which lets forest
training scale across threads.
"""

from libc.math cimport log, INFINITY
from libc.stdint cimport uint64_t, int32_t, int64_t

import numpy as np

BACKEND = "cython"

cdef uint64_t _MASK = 0xFFFFFFFFFFFFFFFFULL
cdef uint64_t _GOLD = 0x9E3779B97F4A7C15ULL
cdef uint64_t _MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t _MIX2 = 0x94D9B13BA8CFB96DULL


cdef inline uint64_t _mix_next(uint64_t* state) nogil:
    cdef uint64_t z
    state[0] = state[0] + _GOLD
    z = state[0]
    z = (z ^ (z >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    return z ^ (z >> 31)


def byte_entropy(data):
    """Shannon entropy in nats of the byte frequency distribution."""
    cdef const unsigned char[::1] buf = data
    cdef Py_ssize_t n = buf.shape[0]
    if n == 0:
        return 0.0
    cdef int64_t counts[256]
    cdef Py_ssize_t i
    cdef double s = 0.0, p
    with nogil:
        for i in range(256):
            counts[i] = 0
        for i in range(n):
            counts[buf[i]] += 1
        for i in range(256):
            if counts[i] > 0:
                p = (<double> counts[i]) / (<double> n)
                s += p * log(p)
    return 0.0 - s


cdef void _merge_sort(double* v, int32_t* lab, double* tv, int32_t* tl,
                      Py_ssize_t m) nogil:
    """Stable bottom-up merge sort of (value, label) pairs keyed on value."""
    cdef Py_ssize_t width = 1, lo, mid, hi, i, j, k
    cdef double* sv = v
    cdef int32_t* sl = lab
    cdef double* dv = tv
    cdef int32_t* dl = tl
    cdef double* swv
    cdef int32_t* swl
    cdef bint flipped = 0
    while width < m:
        lo = 0
        while lo < m:
            mid = lo + width
            if mid > m:
                mid = m
            hi = lo + 2 * width
            if hi > m:
                hi = m
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if sv[i] <= sv[j]:
                    dv[k] = sv[i]
                    dl[k] = sl[i]
                    i += 1
                else:
                    dv[k] = sv[j]
                    dl[k] = sl[j]
                    j += 1
                k += 1
            while i < mid:
                dv[k] = sv[i]
                dl[k] = sl[i]
                i += 1
                k += 1
            while j < hi:
                dv[k] = sv[j]
                dl[k] = sl[j]
                j += 1
                k += 1
            lo = hi
        swv = sv; sv = dv; dv = swv
        swl = sl; sl = dl; dl = swl
        flipped = not flipped
        width *= 2
    if flipped:
        for i in range(m):
            dv[i] = sv[i]
            dl[i] = sl[i]


cdef Py_ssize_t _build(const double* X, const int32_t* y,
                       Py_ssize_t n, Py_ssize_t d, int n_classes,
                       Py_ssize_t mf, uint64_t state,
                       int32_t* feature, double* threshold,
                       int32_t* left, int32_t* right, int32_t* leaf_class,
                       int64_t* idx, int64_t* tidx,
                       int64_t* stack_node, int64_t* stack_lo, int64_t* stack_hi,
                       double* vals, double* tval, int32_t* lab, int32_t* tlab,
                       int64_t* pool, double* cnt, double* lcnt) nogil:
    cdef Py_ssize_t node_count = 1, sp = 0
    cdef Py_ssize_t node, lo, hi, m, i, j, t, f, p, nl_i
    cdef Py_ssize_t best_f, best_nl, li, ri, split, kept
    cdef uint64_t r
    cdef int c, cy
    cdef int32_t majority
    cdef double node_gini, s, pr, best_w, best_thr
    cdef double a, b, thr, nl, nr, gl, gr, w

    stack_node[0] = 0
    stack_lo[0] = 0
    stack_hi[0] = n
    sp = 1

    while sp > 0:
        sp -= 1
        node = stack_node[sp]
        lo = stack_lo[sp]
        hi = stack_hi[sp]
        m = hi - lo

        for c in range(n_classes):
            cnt[c] = 0.0
        for i in range(lo, hi):
            cnt[y[idx[i]]] += 1.0
        majority = 0
        for c in range(1, n_classes):
            if cnt[c] > cnt[majority]:
                majority = c
        s = 0.0
        for c in range(n_classes):
            pr = cnt[c] / (<double> m)
            s += pr * pr
        node_gini = 1.0 - s

        if m < 2 or node_gini == 0.0:
            leaf_class[node] = majority
            continue

        for i in range(d):
            pool[i] = i
        for i in range(mf):
            r = _mix_next(&state)
            j = i + <Py_ssize_t> (r % (<uint64_t> (d - i)))
            pool[i], pool[j] = pool[j], pool[i]

        best_w = INFINITY
        best_f = -1
        best_thr = 0.0
        best_nl = 0
        for t in range(mf):
            f = pool[t]
            for i in range(m):
                vals[i] = X[idx[lo + i] * d + f]
                lab[i] = y[idx[lo + i]]
            _merge_sort(vals, lab, tval, tlab, m)
            for c in range(n_classes):
                lcnt[c] = 0.0
            for i in range(m - 1):
                cy = lab[i]
                lcnt[cy] += 1.0
                if vals[i + 1] > vals[i]:
                    nl = <double> (i + 1)
                    nr = <double> (m - i - 1)
                    s = 0.0
                    for c in range(n_classes):
                        pr = lcnt[c] / nl
                        s += pr * pr
                    gl = 1.0 - s
                    s = 0.0
                    for c in range(n_classes):
                        pr = (cnt[c] - lcnt[c]) / nr
                        s += pr * pr
                    gr = 1.0 - s
                    w = (nl * gl + nr * gr) / (<double> m)
                    if w < best_w:
                        a = vals[i]
                        b = vals[i + 1]
                        thr = 0.5 * (a + b)
                        if not (a < thr and thr < b):
                            thr = a
                        best_w = w
                        best_f = f
                        best_thr = thr
                        best_nl = i + 1

        if best_f < 0 or best_w >= node_gini:
            leaf_class[node] = majority
            continue

        kept = 0
        for i in range(lo, hi):
            if X[idx[i] * d + best_f] <= best_thr:
                tidx[kept] = idx[i]
                kept += 1
        j = kept
        for i in range(lo, hi):
            if not (X[idx[i] * d + best_f] <= best_thr):
                tidx[j] = idx[i]
                j += 1
        for i in range(m):
            idx[lo + i] = tidx[i]

        li = node_count
        ri = node_count + 1
        node_count += 2
        feature[node] = <int32_t> best_f
        threshold[node] = best_thr
        left[node] = <int32_t> li
        right[node] = <int32_t> ri
        split = lo + best_nl
        stack_node[sp] = ri
        stack_lo[sp] = split
        stack_hi[sp] = hi
        sp += 1
        stack_node[sp] = li
        stack_lo[sp] = lo
        stack_hi[sp] = split
        sp += 1

    return node_count


def build_tree(X_in, y_in, int n_classes, int max_features, seed):
    """Grow one CART-style classification tree; see `pyk.build_tree`."""
    X = np.ascontiguousarray(X_in, dtype=np.float64)
    y = np.ascontiguousarray(y_in, dtype=np.int32)
    if X.ndim != 2:
        raise ValueError("X must be 2-D")
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    if n < 1:
        raise ValueError("empty training set")
    if y.shape[0] != n:
        raise ValueError("X/y length mismatch")
    cdef Py_ssize_t mf = max_features
    if mf < 1:
        mf = 1
    if mf > d:
        mf = d
    cdef Py_ssize_t cap = 2 * n

    feature = np.full(cap, -1, dtype=np.int32)
    threshold = np.zeros(cap, dtype=np.float64)
    left = np.full(cap, -1, dtype=np.int32)
    right = np.full(cap, -1, dtype=np.int32)
    leaf_class = np.full(cap, -1, dtype=np.int32)
    idx = np.arange(n, dtype=np.int64)
    tidx = np.empty(n, dtype=np.int64)
    stack_node = np.empty(cap, dtype=np.int64)
    stack_lo = np.empty(cap, dtype=np.int64)
    stack_hi = np.empty(cap, dtype=np.int64)
    vals = np.empty(n, dtype=np.float64)
    tval = np.empty(n, dtype=np.float64)
    lab = np.empty(n, dtype=np.int32)
    tlab = np.empty(n, dtype=np.int32)
    pool = np.empty(d, dtype=np.int64)
    cnt = np.empty(n_classes, dtype=np.float64)
    lcnt = np.empty(n_classes, dtype=np.float64)

    cdef const double[:, ::1] Xv = X
    cdef const int32_t[::1] yv = y
    cdef int32_t[::1] fv = feature
    cdef double[::1] tv = threshold
    cdef int32_t[::1] lv = left
    cdef int32_t[::1] rv = right
    cdef int32_t[::1] cv = leaf_class
    cdef int64_t[::1] iv = idx
    cdef int64_t[::1] tiv = tidx
    cdef int64_t[::1] snv = stack_node
    cdef int64_t[::1] slv = stack_lo
    cdef int64_t[::1] shv = stack_hi
    cdef double[::1] vv = vals
    cdef double[::1] tvv = tval
    cdef int32_t[::1] lbv = lab
    cdef int32_t[::1] tlv = tlab
    cdef int64_t[::1] pv = pool
    cdef double[::1] cntv = cnt
    cdef double[::1] lcntv = lcnt

    cdef uint64_t st = <uint64_t> (int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef Py_ssize_t node_count
    with nogil:
        node_count = _build(&Xv[0, 0], &yv[0], n, d, n_classes, mf, st,
                            &fv[0], &tv[0], &lv[0], &rv[0], &cv[0],
                            &iv[0], &tiv[0], &snv[0], &slv[0], &shv[0],
                            &vv[0], &tvv[0], &lbv[0], &tlv[0],
                            &pv[0], &cntv[0], &lcntv[0])

    return (
        feature[:node_count].copy(),
        threshold[:node_count].copy(),
        left[:node_count].copy(),
        right[:node_count].copy(),
        leaf_class[:node_count].copy(),
    )
