"""Row reduction over F_p for the small matrices describing sigma on V_z."""

from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b, p: int):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)] for i in range(n)]


def matadd(a, b, p: int):
    return [[(x + y) % p for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a, c: int, p: int):
    return [[(x * c) % p for x in row] for row in a]


def poly_eval(poly, mat, p: int):
    """poly(mat) with poly constant term first (Horner)."""
    n = len(mat)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(poly):
        acc = matadd(matmul(acc, mat, p), matscale(identity(n), c, p), p)
    return acc


def rref(mat, p: int):
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat, p: int) -> int:
    if not mat:
        return 0
    return len(rref(mat, p)[1])


def nullspace(mat, p: int) -> list[list[int]]:
    """Basis of {v : mat v = 0}."""
    cols = len(mat[0])
    red, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis
