"""Dense polynomials over a prime field F_p.

A polynomial is a tuple of ints in ``range(p)``, constant term first, with no
trailing zeros; the zero polynomial is ``()``.  Functions take ``p`` explicitly
so the same helpers serve every prime.
"""

from __future__ import annotations

from itertools import product

Poly = tuple


def trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def norm(a, p: int) -> Poly:
    return trim(c % p for c in a)


def degree(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n))


def scale(a: Poly, c: int, p: int) -> Poly:
    return trim((x * c) % p for x in a)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return norm(out, p)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    qt = [0] * max(len(a) - db, 0)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            qt[k - db] = c
            for j, y in enumerate(b):
                r[k - db + j] = (r[k - db + j] - c * y) % p
    return trim(qt), trim(r[:db])


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    return scale(a, pow(a[-1], p - 2, p), p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def xgcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        qt, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(qt, s1, p), p)
        t0, t1 = t1, sub(t0, mul(qt, t1, p), p)
    if not r0:
        return (), s0, t0
    inv = pow(r0[-1], p - 2, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(a: Poly, n: int, m: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = mod(a, m, p)
    while n:
        if n & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        n >>= 1
    return result


def is_irreducible(a: Poly, p: int) -> bool:
    """Ben-Or test: no factor of degree <= deg/2."""
    n = degree(a)
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    h = x
    for _ in range(n // 2):
        h = powmod(h, p, a, p)
        if degree(gcd(a, sub(h, x, p), p)) > 0:
            return False
    return True


def monic_polys(n: int, p: int):
    """Monic degree-``n`` polynomials, lexicographic with the constant term compared first."""
    for low in product(range(p), repeat=n):
        yield low + (1,)


def smallest_irreducible(n: int, p: int) -> Poly:
    for cand in monic_polys(n, p):
        if is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {n} over F_{p}")  # pragma: no cover


def evaluate(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def x_pow_minus_one(d: int, p: int) -> Poly:
    return norm([p - 1] + [0] * (d - 1) + [1], p)


def to_str(a: Poly, var: str = "X") -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mon = var if k == 1 else f"{var}^{k}"
            parts.append(mon if c == 1 else f"{c}*{mon}")
    return " + ".join(parts)
