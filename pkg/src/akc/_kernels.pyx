# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled elimination kernels; same contract as :mod:`akc._kernels_py`."""

from math import gcd

BACKEND = "cython"


def rref_int(re_rows, im_rows, Py_ssize_t ncols):
    if im_rows is None:
        return _rref_real(re_rows, ncols)
    cdef list R = [list(row) for row in re_rows]
    cdef list M = [list(row) for row in im_rows]
    cdef Py_ssize_t nrows = len(R)
    cdef Py_ssize_t r = 0, p, c, s, j, k
    cdef list pivots = []
    cdef list rr, rm, sr, sm, nr, nm
    cdef object pa, pb, fa, fb, x, y, u, v, g, den, tr, tm
    cdef object qa = 1, qb = 0, nq
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not ((<list>R[p])[c] or (<list>M[p])[c]):
            p += 1
        if p == nrows:
            continue
        if p != r:
            R[p], R[r] = R[r], R[p]
            M[p], M[r] = M[r], M[p]
        rr = <list>R[r]
        rm = <list>M[r]
        pa = rr[c]
        pb = rm[c]
        nq = qa * qa + qb * qb
        for s in range(nrows):
            if s == r:
                continue
            sr = <list>R[s]
            sm = <list>M[s]
            fa = sr[c]
            fb = sm[c]
            nr = [None] * ncols
            nm = [None] * ncols
            for j in range(ncols):
                x = sr[j]
                y = sm[j]
                u = rr[j]
                v = rm[j]
                tr = pa * x - pb * y - fa * u + fb * v
                tm = pa * y + pb * x - fa * v - fb * u
                nr[j] = (tr * qa + tm * qb) // nq
                nm[j] = (tm * qa - tr * qb) // nq
            R[s] = nr
            M[s] = nm
        qa = pa
        qb = pb
        pivots.append(c)
        r += 1
    cdef list re_out = [], im_out = [], dens = []
    for k in range(r):
        sr = <list>R[k]
        sm = <list>M[k]
        pa = sr[pivots[k]]
        pb = sm[pivots[k]]
        den = pa * pa + pb * pb
        nr = [None] * ncols
        nm = [None] * ncols
        for j in range(ncols):
            x = sr[j]
            y = sm[j]
            nr[j] = x * pa + y * pb
            nm[j] = y * pa - x * pb
        g = gcd(*nr, *nm, den)
        if g > 1:
            for j in range(ncols):
                nr[j] = nr[j] // g
                nm[j] = nm[j] // g
            den = den // g
        re_out.append(nr)
        im_out.append(nm)
        dens.append(den)
    return re_out, im_out, dens, pivots


def _rref_real(re_rows, Py_ssize_t ncols):
    cdef list R = [list(row) for row in re_rows]
    cdef Py_ssize_t nrows = len(R)
    cdef Py_ssize_t r = 0, p, c, s, j, k
    cdef list pivots = []
    cdef list rr, sr, nr
    cdef object pa, fa, g
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not (<list>R[p])[c]:
            p += 1
        if p == nrows:
            continue
        if p != r:
            R[p], R[r] = R[r], R[p]
        rr = <list>R[r]
        pa = rr[c]
        for s in range(nrows):
            if s == r:
                continue
            sr = <list>R[s]
            fa = sr[c]
            if not fa:
                continue
            nr = [None] * ncols
            for j in range(ncols):
                nr[j] = pa * sr[j] - fa * rr[j]
            g = gcd(*nr)
            if g > 1:
                for j in range(ncols):
                    nr[j] = nr[j] // g
            R[s] = nr
        pivots.append(c)
        r += 1
    cdef list re_out = [], dens = []
    for k in range(r):
        sr = <list>R[k]
        pa = sr[pivots[k]]
        if pa < 0:
            sr = [-x for x in sr]
            pa = -pa
        g = gcd(*sr, pa)
        if g > 1:
            sr = [x // g for x in sr]
            pa = pa // g
        re_out.append(sr)
        dens.append(pa)
    return re_out, None, dens, pivots


def matmul_int(A, B, Py_ssize_t inner):
    cdef Py_ssize_t n = len(A), m, i, j, t
    if not B:
        return [[] for _ in A]
    m = len(B[0])
    cdef list out = []
    cdef list row, arow, brow
    cdef object a, acc
    for i in range(n):
        arow = <list>A[i]
        row = [0] * m
        for t in range(inner):
            a = arow[t]
            if not a:
                continue
            brow = <list>B[t]
            for j in range(m):
                if brow[j]:
                    row[j] = row[j] + a * brow[j]
        out.append(row)
    return out
