# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; same API and algorithms as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY
from libc.stdlib cimport malloc, free

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex cexp(double complex)

cnp.import_array()

BACKEND = "cython"

OK = 0
PATH_TOO_CLOSE = 1
NO_CONVERGENCE = 2

LINE = 0
ARC = 1

cdef enum:
    MAXD = 32


cdef inline void _coeffs(double complex[:, ::1] C, double complex s, double complex* out) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef Py_ssize_t ni = C.shape[0], nj = C.shape[1]
    cdef double complex spow = 1
    for j in range(nj):
        out[j] = 0
    for i in range(ni):
        for j in range(nj):
            out[j] = out[j] + C[i, j] * spow
        spow = spow * s


cdef inline void _dcoeffs(double complex[:, ::1] C, double complex s, double complex* out) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef Py_ssize_t ni = C.shape[0], nj = C.shape[1]
    cdef double complex spow = 1
    for j in range(nj):
        out[j] = 0
    for i in range(1, ni):
        for j in range(nj):
            out[j] = out[j] + i * C[i, j] * spow
        spow = spow * s


cdef inline void _horner2(double complex* a, Py_ssize_t nj, double complex w,
                          double complex* p, double complex* dp) noexcept nogil:
    cdef Py_ssize_t j
    cdef double complex pp = 0, dd = 0
    for j in range(nj - 1, -1, -1):
        dd = dd * w + pp
        pp = pp * w + a[j]
    p[0] = pp
    dp[0] = dd


cdef inline double complex _horner(double complex* a, Py_ssize_t nj, double complex w) noexcept nogil:
    cdef Py_ssize_t j
    cdef double complex pp = 0
    for j in range(nj - 1, -1, -1):
        pp = pp * w + a[j]
    return pp


cdef int _newton(double complex* a, Py_ssize_t nj, double complex* roots, Py_ssize_t nr,
                 double tol, int maxiter, double* worst) noexcept nogil:
    cdef Py_ssize_t r
    cdef int it, ok = 1
    cdef double complex w, p, dp
    cdef double res
    worst[0] = 0.0
    for r in range(nr):
        w = roots[r]
        _horner2(a, nj, w, &p, &dp)
        it = 0
        while cabs(p) >= tol and it < maxiter:
            if dp == 0:
                break
            w = w - p / dp
            _horner2(a, nj, w, &p, &dp)
            it += 1
        res = cabs(p)
        if res >= tol:
            ok = 0
        if res > worst[0]:
            worst[0] = res
        roots[r] = w
    return ok


cdef double _min_gap(double complex* roots, Py_ssize_t n) noexcept nogil:
    cdef double g = INFINITY, d
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(i + 1, n):
            d = cabs(roots[i] - roots[j])
            if d < g:
                g = d
    return g


def _as_c(C):
    return np.ascontiguousarray(np.asarray(C, dtype=np.complex128))


def fiber_coeffs(C, s):
    cdef double complex[:, ::1] Cv = _as_c(C)
    cdef double complex buf[MAXD]
    if Cv.shape[1] > MAXD:
        raise ValueError("fibre degree too large")
    _coeffs(Cv, s, buf)
    return [buf[j] for j in range(Cv.shape[1])]


def newton_correct(C, s, roots, double tol, int maxiter):
    cdef double complex[:, ::1] Cv = _as_c(C)
    cdef double complex a[MAXD]
    cdef double complex rr[MAXD]
    cdef Py_ssize_t nr = len(roots), k
    cdef double worst
    if Cv.shape[1] > MAXD or nr > MAXD:
        raise ValueError("fibre degree too large")
    for k in range(nr):
        rr[k] = roots[k]
    _coeffs(Cv, s, a)
    ok = _newton(a, Cv.shape[1], rr, nr, tol, maxiter, &worst)
    return [rr[k] for k in range(nr)], worst, bool(ok)


cdef void _velocities(double complex[:, ::1] C, double complex s, double complex* roots,
                      Py_ssize_t nr, double complex* out) noexcept nogil:
    cdef double complex a[MAXD]
    cdef double complex da[MAXD]
    cdef double complex p, pw, ps
    cdef Py_ssize_t nj = C.shape[1], r
    _coeffs(C, s, a)
    _dcoeffs(C, s, da)
    for r in range(nr):
        _horner2(a, nj, roots[r], &p, &pw)
        ps = _horner(da, nj, roots[r])
        if pw == 0:
            out[r] = INFINITY
        else:
            out[r] = -ps / pw


def root_velocities(C, s, roots):
    cdef double complex[:, ::1] Cv = _as_c(C)
    cdef double complex rr[MAXD]
    cdef double complex out[MAXD]
    cdef Py_ssize_t nr = len(roots), k
    if Cv.shape[1] > MAXD or nr > MAXD:
        raise ValueError("fibre degree too large")
    for k in range(nr):
        rr[k] = roots[k]
    _velocities(Cv, s, rr, nr, out)
    return [out[k] for k in range(nr)]


cdef inline void _point(int kind, double complex p0, double complex p1, double complex center,
                        double radius, double theta0, double theta1, double t,
                        double complex* s, double complex* ds) noexcept nogil:
    cdef double complex e
    if kind == 0:
        s[0] = p0 + t * (p1 - p0)
        ds[0] = p1 - p0
    else:
        e = cexp(1j * (theta0 + t * (theta1 - theta0)))
        s[0] = center + radius * e
        ds[0] = 1j * radius * (theta1 - theta0) * e


def track_piece(C, int kind, p0, p1, center, double radius, double theta0, double theta1, roots,
                double max_step, double gap_frac, double tol, int maxiter, double min_gap):
    cdef double complex[:, ::1] Cv = _as_c(C)
    cdef Py_ssize_t nr = len(roots), nj = Cv.shape[1], k
    cdef double complex cur[MAXD]
    cdef double complex vel[MAXD]
    cdef double complex corr[MAXD]
    cdef double complex a[MAXD]
    cdef double complex s, ds, sn, dsn
    cdef double complex cp0 = p0, cp1 = p1, ccen = center
    cdef double tau = 0.0, tn, h, gap, speed, move, d, res, worst = 0.0, gap_seen = INFINITY
    cdef long steps = 0
    cdef int ok, status = 0
    if nj > MAXD or nr > MAXD:
        raise ValueError("fibre degree too large")
    for k in range(nr):
        cur[k] = roots[k]
    with nogil:
        while tau < 1.0:
            gap = _min_gap(cur, nr)
            if gap < gap_seen:
                gap_seen = gap
            if gap < min_gap:
                status = 1
                break
            _point(kind, cp0, cp1, ccen, radius, theta0, theta1, tau, &s, &ds)
            _velocities(Cv, s, cur, nr, vel)
            speed = 0.0
            for k in range(nr):
                vel[k] = vel[k] * ds
                d = cabs(vel[k])
                if d > speed:
                    speed = d
            h = max_step
            if 1.0 - tau < h:
                h = 1.0 - tau
            if speed > 0 and 0.5 * gap_frac * gap / speed < h:
                h = 0.5 * gap_frac * gap / speed
            while True:
                tn = tau + h
                if tn > 1.0:
                    tn = 1.0
                _point(kind, cp0, cp1, ccen, radius, theta0, theta1, tn, &sn, &dsn)
                for k in range(nr):
                    corr[k] = cur[k] + (tn - tau) * vel[k]
                _coeffs(Cv, sn, a)
                ok = _newton(a, nj, corr, nr, tol, maxiter, &res)
                move = 0.0
                for k in range(nr):
                    d = cabs(corr[k] - cur[k])
                    if d > move:
                        move = d
                if ok and move <= gap_frac * gap:
                    break
                h = h * 0.5
                if h < 1e-14:
                    status = 1 if ok else 2
                    break
            if status != 0:
                break
            for k in range(nr):
                cur[k] = corr[k]
            if res > worst:
                worst = res
            tau = tn
            steps += 1
        if status == 0:
            gap = _min_gap(cur, nr)
            if gap < gap_seen:
                gap_seen = gap
    return [cur[k] for k in range(nr)], steps, worst, gap_seen, status


cdef int _rec(int i, int nslots, long dl, long c, long n, long two_d2, long dual0, long budget,
              long* deltas, long* cusps, long* nodes, long* caps, long* counts,
              long* visited, long node_limit, list found) except -1:
    cdef long x, nd, nc, nn
    visited[0] += 1
    if visited[0] > node_limit:
        return 0
    if i == nslots:
        if c % 3 == 0 and n % 4 == 0:
            found.append(tuple([counts[k] for k in range(nslots)]))
        return 1
    for x in range(caps[i] + 1):
        nd = dl + x * deltas[i]
        nc = c + x * cusps[i]
        nn = n + x * nodes[i]
        if nd > budget or dual0 - 3 * nc - 2 * nn <= 0 or two_d2 - nc - nn <= 0:
            break
        counts[i] = x
        if not _rec(i + 1, nslots, nd, nc, nn, two_d2, dual0, budget, deltas, cusps, nodes,
                    caps, counts, visited, node_limit, found):
            return 0
    counts[i] = 0
    return 1


def enumerate_counts(long two_d2, long dual0, long budget, deltas, cusps, nodes, caps, long node_limit,
                     long c_init=0, long n_init=0):
    cdef int nslots = len(deltas), k
    cdef long visited = 0
    cdef list found = []
    cdef long* buf = <long*> malloc(5 * max(nslots, 1) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    try:
        for k in range(nslots):
            buf[k] = deltas[k]
            buf[nslots + k] = cusps[k]
            buf[2 * nslots + k] = nodes[k]
            buf[3 * nslots + k] = caps[k]
            buf[4 * nslots + k] = 0
        if dual0 - 3 * c_init - 2 * n_init > 0 and two_d2 - c_init - n_init > 0 and budget >= 0:
            complete = _rec(0, nslots, 0, c_init, n_init, two_d2, dual0, budget, buf, buf + nslots,
                            buf + 2 * nslots, buf + 3 * nslots, buf + 4 * nslots,
                            &visited, node_limit, found)
        else:
            complete = 1
    finally:
        free(buf)
    return found, visited, not complete
