"""Pure-Python inner loops; the compiled ``_ckernels`` module mirrors this API.

Fibre polynomials are given as nested lists (or 2-D arrays) ``C`` with
``C[i][j]`` the coefficient of ``s^i w^j``; ``s`` is the parameter along a
line in the base and ``w`` the fibre coordinate.
"""
from __future__ import annotations

import cmath
import math

BACKEND = "python"

OK = 0
PATH_TOO_CLOSE = 1
NO_CONVERGENCE = 2

LINE = 0
ARC = 1


def _coeffs(C, s):
    ni = len(C)
    nj = len(C[0])
    out = [0j] * nj
    spow = 1 + 0j
    for i in range(ni):
        row = C[i]
        for j in range(nj):
            out[j] += row[j] * spow
        spow *= s
    return out


def _dcoeffs_ds(C, s):
    ni = len(C)
    nj = len(C[0])
    out = [0j] * nj
    spow = 1 + 0j
    for i in range(1, ni):
        row = C[i]
        for j in range(nj):
            out[j] += i * row[j] * spow
        spow *= s
    return out


def _horner2(a, w):
    """Value and derivative of ``sum a[j] w^j``."""
    p = 0j
    dp = 0j
    for j in range(len(a) - 1, -1, -1):
        dp = dp * w + p
        p = p * w + a[j]
    return p, dp


def _horner(a, w):
    p = 0j
    for j in range(len(a) - 1, -1, -1):
        p = p * w + a[j]
    return p


def fiber_coeffs(C, s):
    return _coeffs(C, complex(s))


def newton_correct(C, s, roots, tol, maxiter):
    """Newton-polish every root of ``P(s, .)``; returns ``(roots, max_residual, converged)``."""
    a = _coeffs(C, complex(s))
    out = []
    worst = 0.0
    ok = True
    for w in roots:
        w = complex(w)
        p, dp = _horner2(a, w)
        it = 0
        while abs(p) >= tol and it < maxiter:
            if dp == 0:
                break
            w -= p / dp
            p, dp = _horner2(a, w)
            it += 1
        res = abs(p)
        if res >= tol:
            ok = False
        worst = max(worst, res)
        out.append(w)
    return out, worst, ok


def root_velocities(C, s, roots):
    """``dw/ds = -P_s / P_w`` at each root."""
    s = complex(s)
    a = _coeffs(C, s)
    da = _dcoeffs_ds(C, s)
    out = []
    for w in roots:
        _, pw = _horner2(a, w)
        ps = _horner(da, w)
        out.append(-ps / pw if pw != 0 else complex(math.inf))
    return out


def _min_gap(roots):
    g = math.inf
    n = len(roots)
    for i in range(n):
        for j in range(i + 1, n):
            g = min(g, abs(roots[i] - roots[j]))
    return g


def track_piece(C, kind, p0, p1, center, radius, theta0, theta1, roots,
                max_step, gap_frac, tol, maxiter, min_gap):
    """Continue ``roots`` along one line or arc piece of a path in the ``s``-plane.

    The step in the piece parameter ``tau`` is capped by ``max_step`` and by
    the requirement that no root moves more than ``gap_frac`` times the
    current minimal root separation.  Returns
    ``(roots, steps, max_residual, min_gap_seen, status)``.
    """
    p0 = complex(p0)
    p1 = complex(p1)
    center = complex(center)
    roots = [complex(r) for r in roots]
    tau = 0.0
    steps = 0
    worst_res = 0.0
    gap_seen = math.inf

    def point(t):
        if kind == LINE:
            return p0 + t * (p1 - p0), p1 - p0
        th = theta0 + t * (theta1 - theta0)
        e = cmath.exp(1j * th)
        return center + radius * e, 1j * radius * (theta1 - theta0) * e

    while tau < 1.0:
        gap = _min_gap(roots)
        gap_seen = min(gap_seen, gap)
        if gap < min_gap:
            return roots, steps, worst_res, gap_seen, PATH_TOO_CLOSE
        s, ds = point(tau)
        vel = [v * ds for v in root_velocities(C, s, roots)]
        speed = max(abs(v) for v in vel)
        h = min(max_step, 1.0 - tau)
        if speed > 0:
            h = min(h, 0.5 * gap_frac * gap / speed)
        while True:
            tn = min(tau + h, 1.0)
            sn, _ = point(tn)
            pred = [r + (tn - tau) * v for r, v in zip(roots, vel)]
            corr, res, ok = newton_correct(C, sn, pred, tol, maxiter)
            move = max(abs(c - r) for c, r in zip(corr, roots))
            if ok and move <= gap_frac * gap:
                break
            h *= 0.5
            if h < 1e-14:
                return roots, steps, worst_res, gap_seen, (PATH_TOO_CLOSE if ok else NO_CONVERGENCE)
        roots = corr
        worst_res = max(worst_res, res)
        tau = tn
        steps += 1
    return roots, steps, worst_res, min(gap_seen, _min_gap(roots)), OK


def enumerate_counts(two_d2, dual0, budget, deltas, cusps, nodes, caps, node_limit, c_init=0, n_init=0):
    """Depth-first search over class-count vectors.

    Slot ``i`` contributes ``deltas[i]``, ``cusps[i]`` and ``nodes[i]`` per
    point and takes counts ``0..caps[i]``.  Subtrees are cut as soon as the
    total delta exceeds ``budget``, ``dual0 - 3c - 2n <= 0`` or
    ``two_d2 - c - n <= 0``; all three only get worse with larger counts.
    Leaves are kept when ``c % 3 == 0`` and ``n % 4 == 0``.  ``c_init`` and
    ``n_init`` seed the pseudo-cusp and pseudo-node sums (used when the
    search is split on an outer slot).

    Returns ``(vectors, nodes_visited, exceeded)``.
    """
    nslots = len(deltas)
    found = []
    counts = [0] * nslots
    visited = 0

    def rec(i, dl, c, n):
        nonlocal visited
        visited += 1
        if visited > node_limit:
            return False
        if i == nslots:
            if c % 3 == 0 and n % 4 == 0:
                found.append(tuple(counts))
            return True
        for x in range(caps[i] + 1):
            nd = dl + x * deltas[i]
            nc = c + x * cusps[i]
            nn = n + x * nodes[i]
            if nd > budget or dual0 - 3 * nc - 2 * nn <= 0 or two_d2 - nc - nn <= 0:
                break
            counts[i] = x
            if not rec(i + 1, nd, nc, nn):
                return False
        counts[i] = 0
        return True

    if dual0 - 3 * c_init - 2 * n_init > 0 and two_d2 - c_init - n_init > 0 and budget >= 0:
        complete = rec(0, 0, c_init, n_init)
    else:
        complete = True
    return found, visited, not complete
