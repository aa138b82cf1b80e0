"""Hot loops: rollout completion and the one-move neighborhood scan.

Each kernel exists twice: a numba ``@njit`` version and a plain numpy/Python
version. ``WVCP_NO_NUMBA=1`` (or numba missing) selects the fallback. Both
consume the same pre-drawn uniforms so they return identical results.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("WVCP_NO_NUMBA", "0") not in ("1", "true", "yes")

GREEDY, GREEDY_RANDOM, RANDOM = 0, 1, 2

# sentinel larger than any objective value
_INF = np.iinfo(np.int64).max


def _complete_py(indptr, indices, weight, order, color, gmax, k, pos, score, mode, draws):
    n = len(order)
    stamp = np.full(n + 1, -1, dtype=np.int64)
    free = np.empty(n + 1, dtype=np.int64)
    for t in range(pos, n):
        u = order[t]
        for j in range(indptr[u], indptr[u + 1]):
            c = color[indices[j]]
            if c >= 0:
                stamp[c] = t
        nfree = 0
        if mode == GREEDY:
            chosen = k
            for c in range(k):
                if stamp[c] != t:
                    chosen = c
                    break
        else:
            for c in range(k):
                if stamp[c] != t:
                    free[nfree] = c
                    nfree += 1
            if mode == RANDOM:
                idx = int(draws[t - pos] * (nfree + 1))
                if idx > nfree:
                    idx = nfree
                chosen = k if idx == nfree else free[idx]
            elif nfree > 0:
                idx = int(draws[t - pos] * nfree)
                if idx >= nfree:
                    idx = nfree - 1
                chosen = free[idx]
            else:
                chosen = k
        color[u] = chosen
        if chosen == k:
            gmax[k] = weight[u]
            score += weight[u]
            k += 1
    return k, score


def _scan_py(weight, color, gamma, gmax, gcnt, gsecond, active, tabu, it, score,
             best_score, conflicts, phi, legal_only, vertices, draw):
    """Best one-move by ``dscore + phi * dconflicts``; ties broken by ``draw``.

    Returns (vertex, color, objective_delta, score_delta, n_candidates) or
    vertex -1 when every move is forbidden.
    """
    verts = vertices
    cols = active
    if len(verts) == 0 or len(cols) == 0:
        return -1, -1, 0, 0, 0
    w = weight[verts]
    own = color[verts]
    sole_max = (w >= gmax[own]) & (gcnt[own] == 1)
    out = np.where(sole_max, gsecond[own] - w, 0)
    din = np.maximum(0, w[:, None] - gmax[cols][None, :])
    dscore = out[:, None] + din
    g_sub = gamma[np.ix_(verts, cols)]
    dconf = g_sub - gamma[verts, own][:, None]
    obj = dscore + phi * dconf
    valid = cols[None, :] != own[:, None]
    if legal_only:
        valid &= g_sub == 0
    n_cand = int(valid.sum())
    is_tabu = tabu[np.ix_(verts, cols)] > it
    if legal_only:
        asp = score + dscore < best_score
    else:
        asp = (conflicts + dconf == 0) & (score + dscore < best_score)
    allowed = valid & (~is_tabu | asp)
    if not allowed.any():
        return -1, -1, 0, 0, n_cand
    masked = np.where(allowed, obj, _INF)
    best = masked.min()
    ties = np.flatnonzero(masked.ravel() == best)
    idx = int(draw * len(ties))
    if idx >= len(ties):
        idx = len(ties) - 1
    flat = ties[idx]
    i, j = divmod(int(flat), len(cols))
    return int(verts[i]), int(cols[j]), int(best), int(dscore[i, j]), n_cand


def _scan_loop(weight, color, gamma, gmax, gcnt, gsecond, active, tabu, it, score,
               best_score, conflicts, phi, legal_only, vertices, draw):
    best = _INF
    nties = 0
    n_cand = 0
    for a in range(len(vertices)):
        v = vertices[a]
        wv = weight[v]
        cv = color[v]
        out = 0
        if wv >= gmax[cv] and gcnt[cv] == 1:
            out = gsecond[cv] - wv
        for b in range(len(active)):
            c = active[b]
            if c == cv:
                continue
            gv = gamma[v, c]
            if legal_only and gv != 0:
                continue
            n_cand += 1
            din = wv - gmax[c]
            if din < 0:
                din = 0
            ds = out + din
            dc = gv - gamma[v, cv]
            if tabu[v, c] > it:
                if legal_only:
                    if score + ds >= best_score:
                        continue
                elif conflicts + dc != 0 or score + ds >= best_score:
                    continue
            obj = ds + phi * dc
            if obj < best:
                best = obj
                nties = 1
            elif obj == best:
                nties += 1
    if nties == 0:
        return -1, -1, 0, 0, n_cand
    target = int(draw * nties)
    if target >= nties:
        target = nties - 1
    seen = 0
    for a in range(len(vertices)):
        v = vertices[a]
        wv = weight[v]
        cv = color[v]
        out = 0
        if wv >= gmax[cv] and gcnt[cv] == 1:
            out = gsecond[cv] - wv
        for b in range(len(active)):
            c = active[b]
            if c == cv:
                continue
            gv = gamma[v, c]
            if legal_only and gv != 0:
                continue
            din = wv - gmax[c]
            if din < 0:
                din = 0
            ds = out + din
            dc = gv - gamma[v, cv]
            if tabu[v, c] > it:
                if legal_only:
                    if score + ds >= best_score:
                        continue
                elif conflicts + dc != 0 or score + ds >= best_score:
                    continue
            if ds + phi * dc == best:
                if seen == target:
                    return v, c, best, ds, n_cand
                seen += 1
    return -1, -1, 0, 0, n_cand  # unreachable


if HAVE_NUMBA:
    _complete_nb = numba.njit(cache=True)(_complete_py)
    _scan_nb = numba.njit(cache=True)(_scan_loop)
else:  # pragma: no cover
    _complete_nb = _complete_py
    _scan_nb = _scan_loop


def complete(indptr, indices, weight, order, color, gmax, k, pos, score, mode, draws):
    fn = _complete_nb if USE_NUMBA else _complete_py
    k, score = fn(indptr, indices, weight, order, color, gmax, k, pos, score, mode, draws)
    return int(k), int(score)


def scan_moves(weight, color, gamma, gmax, gcnt, gsecond, active, tabu, it, score,
               best_score, conflicts, phi, legal_only, vertices, draw):
    fn = _scan_nb if USE_NUMBA else _scan_py
    v, c, obj, ds, n_cand = fn(weight, color, gamma, gmax, gcnt, gsecond, active, tabu,
                               it, score, best_score, conflicts, phi, legal_only,
                               vertices, draw)
    return int(v), int(c), int(obj), int(ds), int(n_cand)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
