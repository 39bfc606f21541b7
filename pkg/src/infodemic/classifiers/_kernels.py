"""Compiled inner loops for tree growth and Pegasos updates.

Everything here is single-threaded and order-deterministic.
"""

import numpy as np
from numba import njit

# Relative slack under which two split scores count as tied.
TIE_EPS = 1e-12


@njit(cache=True)
def _better(score, f, thr, best_score, best_f, best_thr):
    slack = TIE_EPS * max(1.0, abs(best_score))
    if score > best_score + slack:
        return True
    if score >= best_score - slack:
        if f < best_f:
            return True
        if f == best_f and thr < best_thr:
            return True
    return False


@njit(cache=True)
def best_split(X, y, idx, feats, max_eval):
    """Best Gini split of the samples ``idx`` over candidate features ``feats``.

    Features are visited in the given order; constant ones are skipped and do
    not count towards ``max_eval``. The score maximized is
    ``(l0^2 + l1^2)/nL + (r0^2 + r1^2)/nR``, which is ``m`` minus ``m`` times
    the weighted child Gini. Returns ``(feature, threshold, score, parent)``
    where ``parent`` is the same quantity for the unsplit node; ``feature`` is
    -1 when no feature varies.
    """
    m = idx.size
    t1 = 0
    for i in range(m):
        t1 += y[idx[i]]
    t0 = m - t1
    parent = (t0 * t0 + t1 * t1) / m

    vals = np.empty(m)
    labs = np.empty(m, dtype=np.int64)
    best_f = -1
    best_thr = 0.0
    best_score = -1.0
    evaluated = 0
    for fi in range(feats.size):
        if evaluated >= max_eval:
            break
        f = feats[fi]
        nnz = 0
        zc = 0
        z1 = 0
        vmin = np.inf
        vmax = -np.inf
        for i in range(m):
            v = X[idx[i], f]
            if v < vmin:
                vmin = v
            if v > vmax:
                vmax = v
            if v != 0.0:
                vals[nnz] = v
                labs[nnz] = y[idx[i]]
                nnz += 1
            else:
                zc += 1
                z1 += y[idx[i]]
        if vmin == vmax:
            continue
        evaluated += 1
        order = np.argsort(vals[:nnz], kind="mergesort")
        sv = vals[:nnz][order]
        sl = labs[:nnz][order]

        l0 = 0
        l1 = 0
        p = 0
        zero_done = zc == 0
        n_items = nnz + (0 if zc == 0 else 1)
        for _ in range(n_items):
            if not zero_done and (p == nnz or sv[p] > 0.0):
                cur = 0.0
                l1 += z1
                l0 += zc - z1
                zero_done = True
            else:
                cur = sv[p]
                if sl[p] == 1:
                    l1 += 1
                else:
                    l0 += 1
                p += 1
            if p < nnz and (zero_done or sv[p] < 0.0):
                nxt = sv[p]
            elif not zero_done:
                nxt = 0.0
            else:
                break
            if nxt <= cur:
                continue
            n_left = l0 + l1
            n_right = m - n_left
            r1 = t1 - l1
            r0 = t0 - l0
            score = (l0 * l0 + l1 * l1) / n_left + (r0 * r0 + r1 * r1) / n_right
            thr = cur + (nxt - cur) / 2.0
            if thr >= nxt or thr < cur:
                thr = cur
            if best_f == -1 or _better(score, f, thr, best_score, best_f, best_thr):
                best_score = score
                best_f = f
                best_thr = thr
    return best_f, best_thr, best_score, parent


@njit(cache=True)
def apply_tree(X, feature, threshold, left, right):
    """Leaf node index reached by every row of dense ``X``."""
    n = X.shape[0]
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = node
    return out


@njit(cache=True)
def pegasos_epochs(data, indices, indptr, y, n_features, lam, orders, project):
    """Pegasos subgradient descent with an unregularized bias.

    ``orders`` holds one pre-shuffled sample order per epoch. The weight vector
    is kept as ``scale * v`` so the shrink step costs O(1).
    """
    v = np.zeros(n_features)
    scale = 1.0
    sq_norm = 0.0  # squared norm of v
    b = 0.0
    t = 0
    radius = 1.0 / np.sqrt(lam)
    for e in range(orders.shape[0]):
        for j in range(orders.shape[1]):
            i = orders[e, j]
            t += 1
            eta = 1.0 / (lam * t)
            lo = indptr[i]
            hi = indptr[i + 1]
            dot = 0.0
            for k in range(lo, hi):
                dot += v[indices[k]] * data[k]
            margin = y[i] * (scale * dot + b)
            shrink = 1.0 - eta * lam
            if shrink <= 0.0:
                v[:] = 0.0
                scale = 1.0
                sq_norm = 0.0
            else:
                scale *= shrink
            if margin < 1.0:
                step = eta * y[i] / scale
                for k in range(lo, hi):
                    c = indices[k]
                    old = v[c]
                    new = old + step * data[k]
                    sq_norm += new * new - old * old
                    v[c] = new
                b += eta * y[i]
            if project:
                norm = scale * np.sqrt(max(sq_norm, 0.0))
                if norm > radius:
                    scale *= radius / norm
            if scale < 1e-9:
                v *= scale
                sq_norm *= scale * scale
                scale = 1.0
    return v * scale, b
