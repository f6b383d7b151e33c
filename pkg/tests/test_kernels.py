import os
import random
import subprocess
import sys

import pytest

from akc import kernels

py = kernels.python_backend


def rand_rows(rng, r, c, lo=-5, hi=5):
    return [[rng.randint(lo, hi) if rng.random() < 0.7 else 0 for _ in range(c)] for _ in range(r)]


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")
def test_backends_agree_on_random_matrices():
    rng = random.Random(20120601)
    for _ in range(300):
        r, c = rng.randint(0, 9), rng.randint(1, 9)
        re = rand_rows(rng, r, c)
        im = rand_rows(rng, r, c) if rng.random() < 0.5 else None
        assert kernels.rref_int(re, im, c) == py.rref_int(re, im, c)
        B = rand_rows(rng, c, rng.randint(1, 6), -10**20, 10**20)
        assert kernels.matmul_int(re, B, c) == py.matmul_int(re, B, c)


def test_rref_int_contract():
    re, im, dens, piv = py.rref_int([[2, 4], [1, 3]], None, 2)
    assert im is None and tuple(piv) == (0, 1)
    rows = [[x / d for x in r] for r, d in zip(re, dens)]
    assert rows == [[1, 0], [0, 1]]


def test_environment_switch_selects_python():
    env = dict(os.environ, AKC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import akc; print(akc.BACKEND)"], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def naive_rref(rows, ncols):
    """Textbook Gauss-Jordan over GaussianRational; the oracle for the integer kernels."""
    from akc.scalar import GaussianRational as G

    A = [[G(0) + x for x in r] for r in rows]
    piv, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    return A[:r], piv


@pytest.mark.parametrize("backend", ["active", "python"])
def test_dense_gaussian_rref_matches_oracle(backend):
    from akc.scalar import GaussianRational, I

    impl = kernels if backend == "active" else py
    rng = random.Random(99)
    for n in (6, 12, 20):
        re = rand_rows(rng, n, n)
        im = rand_rows(rng, n, n, -3, 3)
        rows = [[a + b * I for a, b in zip(r, m)] for r, m in zip(re, im)]
        want, piv = naive_rref(rows, n)
        out_re, out_im, dens, got_piv = impl.rref_int(re, im, n)
        assert list(got_piv) == piv
        got = [[GaussianRational.from_parts(a, b, d) for a, b in zip(r, m)] for r, m, d in zip(out_re, out_im, dens)]
        assert got == want
