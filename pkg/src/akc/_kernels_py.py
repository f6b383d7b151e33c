"""Pure-Python elimination kernels (the fallback for the compiled ``_kernels``).

Matrices arrive as lists of integer rows: the real parts and, optionally, the
imaginary parts of Gaussian-integer entries.  Elimination is fraction free, so
no rational arithmetic happens in the inner loop.  Real rows are divided by
their integer content after each update.  That misses Gaussian common factors
such as ``2+i``, so complex rows use the Bareiss update instead: the exact
division by the previous pivot keeps every entry a minor of the input.
"""

from math import gcd

BACKEND = "python"


def rref_int(re_rows, im_rows, ncols):
    """Reduced row echelon form of the Gaussian-integer matrix ``re + i*im``.

    Returns ``(re_out, im_out, dens, pivots)``: nonzero rows only, row ``k`` is
    ``(re_out[k] + i*im_out[k]) / dens[k]`` with a 1 in column ``pivots[k]``.
    ``im_out`` is ``None`` when ``im_rows`` is ``None``.
    """
    if im_rows is None:
        return _rref_real(re_rows, ncols)
    R = [list(r) for r in re_rows]
    M = [list(r) for r in im_rows]
    nrows = len(R)
    pivots = []
    qa, qb = 1, 0  # previous pivot
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not (R[p][c] or M[p][c]):
            p += 1
        if p == nrows:
            continue
        if p != r:
            R[p], R[r] = R[r], R[p]
            M[p], M[r] = M[r], M[p]
        rr, rm = R[r], M[r]
        pa, pb = rr[c], rm[c]
        nq = qa * qa + qb * qb
        for s in range(nrows):
            if s == r:
                continue
            sr, sm = R[s], M[s]
            fa, fb = sr[c], sm[c]
            tr = [pa * x - pb * y - fa * u + fb * v for x, y, u, v in zip(sr, sm, rr, rm)]
            tm = [pa * y + pb * x - fa * v - fb * u for x, y, u, v in zip(sr, sm, rr, rm)]
            # exact division by the previous pivot q: t * conj(q) / |q|^2
            R[s] = [(x * qa + y * qb) // nq for x, y in zip(tr, tm)]
            M[s] = [(y * qa - x * qb) // nq for x, y in zip(tr, tm)]
        qa, qb = pa, pb
        pivots.append(c)
        r += 1
    re_out, im_out, dens = [], [], []
    for k in range(r):
        row_re, row_im = R[k], M[k]
        pa, pb = row_re[pivots[k]], row_im[pivots[k]]
        den = pa * pa + pb * pb
        nr = [x * pa + y * pb for x, y in zip(row_re, row_im)]
        nm = [y * pa - x * pb for x, y in zip(row_re, row_im)]
        g = gcd(*nr, *nm, den)
        if g > 1:
            nr = [x // g for x in nr]
            nm = [x // g for x in nm]
            den //= g
        re_out.append(nr)
        im_out.append(nm)
        dens.append(den)
    return re_out, im_out, dens, pivots


def _rref_real(re_rows, ncols):
    R = [list(r) for r in re_rows]
    nrows = len(R)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not R[p][c]:
            p += 1
        if p == nrows:
            continue
        if p != r:
            R[p], R[r] = R[r], R[p]
        rr = R[r]
        pa = rr[c]
        for s in range(nrows):
            if s == r:
                continue
            sr = R[s]
            fa = sr[c]
            if not fa:
                continue
            nr = [pa * x - fa * u for x, u in zip(sr, rr)]
            g = gcd(*nr)
            if g > 1:
                nr = [x // g for x in nr]
            R[s] = nr
        pivots.append(c)
        r += 1
    re_out, dens = [], []
    for k in range(r):
        row = R[k]
        pa = row[pivots[k]]
        if pa < 0:
            row = [-x for x in row]
            pa = -pa
        g = gcd(*row, pa)
        if g > 1:
            row = [x // g for x in row]
            pa //= g
        re_out.append(row)
        dens.append(pa)
    return re_out, None, dens, pivots


def matmul_int(A, B, inner):
    """Product of integer matrices given as row lists; ``inner`` is the shared dimension."""
    cols = list(zip(*B)) if B else []
    if not cols:
        return [[] for _ in A]
    return [[sum(a * b for a, b in zip(row, col) if a) for col in cols] for row in A]
