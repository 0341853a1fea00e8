"""Pure-Python (numpy) implementations of the hot kernels.

This is the fallback backend used when the compiled extension is not
available.  Both backends implement the *same* algorithm, step for step:
the split search scans candidate thresholds in identical order, draws
feature subsets from the same splitmix-style generator, and breaks ties
identically, so a forest trained on either backend has the same shape.
"""

import numpy as np

BACKEND = "python"

_MASK = (1 << 64) - 1
_GOLD = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D9B13BA8CFB96D


def _mix_next(state):
    """Advance a splitmix64-style state, returning (state, output)."""
    state = (state + _GOLD) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return state, z ^ (z >> 31)


def byte_entropy(data):
    """Shannon entropy in nats of the byte frequency distribution."""
    n = len(data)
    if n == 0:
        return 0.0
    counts = np.bincount(np.frombuffer(bytes(data), dtype=np.uint8), minlength=256)
    p = counts[counts > 0].astype(np.float64) / n
    return float(0.0 - np.sum(p * np.log(p)))


def build_tree(X, y, n_classes, max_features, seed):
    """Grow one CART-style classification tree.

    Splits minimize weighted Gini impurity over midpoints between
    consecutive distinct values of `max_features` randomly drawn feature
    columns.  A node becomes a leaf when pure, under two samples, or when
    no candidate split strictly reduces impurity.  Leaf class is the
    majority, ties going to the lowest class index.

    Returns (feature, threshold, left, right, leaf_class) arrays; internal
    nodes have leaf_class == -1, leaves have feature == -1.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.int32)
    n, d = X.shape
    if n < 1:
        raise ValueError("empty training set")
    mf = max(1, min(int(max_features), d))
    cap = 2 * n
    feature = np.full(cap, -1, dtype=np.int32)
    threshold = np.zeros(cap, dtype=np.float64)
    left = np.full(cap, -1, dtype=np.int32)
    right = np.full(cap, -1, dtype=np.int32)
    leaf_class = np.full(cap, -1, dtype=np.int32)

    idx = np.arange(n, dtype=np.int64)
    state = int(seed) & _MASK
    pool = list(range(d))
    node_count = 1
    stack = [(0, 0, n)]
    classes = np.arange(n_classes)

    while stack:
        node, lo, hi = stack.pop()
        m = hi - lo
        sub = idx[lo:hi]
        ysub = y[sub]
        counts = np.bincount(ysub, minlength=n_classes).astype(np.float64)
        majority = int(np.argmax(counts))
        node_gini = 1.0 - float(np.sum((counts / m) ** 2))
        if m < 2 or node_gini == 0.0:
            leaf_class[node] = majority
            continue

        for i in range(d):
            pool[i] = i
        for i in range(mf):
            state, r = _mix_next(state)
            j = i + int(r % (d - i))
            pool[i], pool[j] = pool[j], pool[i]

        best_w = np.inf
        best_f = -1
        best_thr = 0.0
        best_nl = 0
        for t in range(mf):
            f = pool[t]
            vals = X[sub, f]
            order = np.argsort(vals, kind="stable")
            sv = vals[order]
            sy = ysub[order]
            pos = np.nonzero(sv[1:] > sv[:-1])[0]
            if pos.size == 0:
                continue
            onehot = (sy[:, None] == classes[None, :]).astype(np.float64)
            cum = np.cumsum(onehot, axis=0)
            nl = (pos + 1).astype(np.float64)
            nr = m - nl
            lc = cum[pos]
            rc = counts[None, :] - lc
            gl = 1.0 - np.sum((lc / nl[:, None]) ** 2, axis=1)
            gr = 1.0 - np.sum((rc / nr[:, None]) ** 2, axis=1)
            w = (nl * gl + nr * gr) / m
            ci = int(np.argmin(w))
            if w[ci] < best_w:
                p = int(pos[ci])
                a = float(sv[p])
                b = float(sv[p + 1])
                thr = 0.5 * (a + b)
                if not (a < thr < b):
                    thr = a
                best_w = float(w[ci])
                best_f = f
                best_thr = thr
                best_nl = p + 1

        if best_f < 0 or best_w >= node_gini:
            leaf_class[node] = majority
            continue

        go_left = X[sub, best_f] <= best_thr
        idx[lo:hi] = np.concatenate([sub[go_left], sub[~go_left]])
        li = node_count
        ri = node_count + 1
        node_count += 2
        feature[node] = best_f
        threshold[node] = best_thr
        left[node] = li
        right[node] = ri
        split = lo + best_nl
        stack.append((ri, split, hi))
        stack.append((li, lo, split))

    return (
        feature[:node_count].copy(),
        threshold[:node_count].copy(),
        left[:node_count].copy(),
        right[:node_count].copy(),
        leaf_class[:node_count].copy(),
    )
