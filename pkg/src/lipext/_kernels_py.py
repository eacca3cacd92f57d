"""Pure numpy implementations of the hot kernels.

Semantics (including tie-breaking) match ``_ckernels.pyx`` exactly; the
two are cross-checked in ``tests/test_kernels.py``.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def max_weighted_distance(qx, qy, w, zx, zy):
    """max_i w[i] * |z - q[i]| for every query point z."""
    qx = np.asarray(qx, dtype=np.float64)
    qy = np.asarray(qy, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    zx = np.asarray(zx, dtype=np.float64)
    zy = np.asarray(zy, dtype=np.float64)
    out = np.zeros(zx.shape[0], dtype=np.float64)
    # chunk over queries to bound memory at m * n
    step = max(1, 2_000_000 // max(1, qx.shape[0]))
    for start in range(0, zx.shape[0], step):
        sl = slice(start, start + step)
        d = np.hypot(zx[sl, None] - qx[None, :], zy[sl, None] - qy[None, :])
        out[sl] = (d * w[None, :]).max(axis=1)
    return out


def lipschitz_scan(vx, vy, dpow):
    """Largest |v_i - v_j| / dpow[i, j] over i < j.

    Returns ``(value, i, j)``; the first maximiser in row-major order wins.
    ``(0.0, -1, -1)`` when there are fewer than two points.
    """
    vx = np.asarray(vx, dtype=np.float64)
    vy = np.asarray(vy, dtype=np.float64)
    n = vx.shape[0]
    if n < 2:
        return 0.0, -1, -1
    iu, ju = np.triu_indices(n, k=1)
    dpow = np.asarray(dpow, dtype=np.float64)
    ratios = np.hypot(vx[iu] - vx[ju], vy[iu] - vy[ju]) / dpow[iu, ju]
    k = int(np.argmax(ratios))
    return float(ratios[k]), int(iu[k]), int(ju[k])


def triangle_violation(dist, rtol):
    """First (i, k, j) with dist[i, j] > dist[i, k] + dist[k, j] beyond rtol.

    Scan order is i < j lexicographic, then k ascending.  Returns ``None``
    when the triangle inequality holds everywhere.
    """
    d = np.asarray(dist, dtype=np.float64)
    n = d.shape[0]
    first_k = np.full((n, n), -1, dtype=np.int64)
    for k in range(n):
        bad = d - (d[:, k, None] + d[None, k, :]) > rtol * d
        fresh = bad & (first_k < 0)
        first_k[fresh] = k
    upper = np.triu(first_k >= 0, k=1)
    if not upper.any():
        return None
    i, j = np.argwhere(upper)[0]
    return int(i), int(first_k[i, j]), int(j)
