"""Dense univariate polynomials over Q: coefficient lists, lowest degree first."""

from __future__ import annotations

from fractions import Fraction


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def deriv(p):
    return trim([k * c for k, c in enumerate(p)][1:])


def divmod_poly(a, b):
    a = trim([Fraction(x) for x in a])
    b = trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = trim(a)
    return trim(q), a


def gcd_poly(a, b):
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [Fraction(c) / lead for c in a]


def squarefree(p):
    g = gcd_poly(p, deriv(p))
    q, r = divmod_poly(p, g)
    assert not r
    return q


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if (x > 0) != (y > 0))


def sturm_real_root_count(p) -> int:
    """Number of distinct real roots of ``p`` (Sturm's theorem, evaluated at +-infinity)."""
    p = trim([Fraction(x) for x in p])
    if len(p) <= 1:
        return 0
    seq = [p, deriv(p)]
    while True:
        _, r = divmod_poly(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    at_pos = [s[-1] for s in seq]
    at_neg = [s[-1] * (-1) ** (len(s) - 1) for s in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def all_roots_real(p) -> bool:
    q = squarefree(p)
    return sturm_real_root_count(q) == len(q) - 1


def charpoly(rows) -> list:
    """Characteristic polynomial ``det(t I - A)`` by Faddeev-LeVerrier (exact over Q)."""
    A = [[Fraction(x) for x in r] for r in rows]
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return coeffs
