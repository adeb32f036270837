"""Finite-field tower F_p <= F_q <= F_{q^f}, built deterministically.

Elements of F_{p^m} (m = r*f) are plain ints: the coefficient vector
``(c_0, ..., c_{m-1})`` in the power basis of the defining polynomial is stored
as ``c_0 + c_1*p + ... + c_{m-1}*p^(m-1)``.  The prime field is therefore
``range(p)`` and 0/1 are the field's zero/one.

"Enumeration order" below means lexicographic order on coefficient vectors
with the constant term compared first; it fixes the defining polynomial, the
primitive element, the embedding of F_q and omega_0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from . import fppoly

MAX_FIELD_SIZE = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mulmod(a, b, g, p):
    return fppoly.mod(fppoly.mul(a, b, p), g, p)


@dataclass(frozen=True, eq=False)
class FieldTower:
    """F_p <= F_q = F_{p^r} <= F_{q^f}; immutable once built.

    Attributes ``omega`` (primitive element of F_{q^f}) and ``omega0``
    (element of F_q^x with nonzero absolute trace, or ``None`` when p | f)
    are fixed once here so every downstream label is reproducible.
    """

    p: int
    r: int
    f: int
    modulus: tuple
    omega: int
    fq_gen: int
    omega0: int | None
    _exp: list = field(repr=False)
    _log: list = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def m(self) -> int:
        return self.r * self.f

    @property
    def size(self) -> int:
        return self.p ** self.m

    @property
    def order(self) -> int:
        return self.size - 1

    # -- coordinates ---------------------------------------------------------

    def coeffs(self, x: int) -> tuple:
        out = []
        for _ in range(self.m):
            x, c = divmod(x, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        x = 0
        for c in reversed(tuple(cs)):
            x = x * self.p + (c % self.p)
        return x

    def elements(self):
        """All field elements in enumeration order."""
        for cs in product(range(self.p), repeat=self.m):
            yield self.from_coeffs(cs)

    # -- arithmetic ----------------------------------------------------------

    @cached_property
    def _add_table(self):
        if self.size > 1024:
            return None
        return [[self._add_digits(a, b) for b in range(self.size)] for a in range(self.size)]

    def _add_digits(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, out, place = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def add(self, a: int, b: int) -> int:
        t = self._add_table
        return t[a][b] if t is not None else self._add_digits(a, b)

    def neg(self, a: int) -> int:
        return self.from_coeffs((-c) % self.p for c in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scalar_mul(self, c: int, a: int) -> int:
        c %= self.p
        if c == 0 or a == 0:
            return 0
        return self.from_coeffs((c * x) % self.p for x in self.coeffs(a))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._exp[(-self._log[a]) % self.order]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % self.order]

    def omega_pow(self, n: int) -> int:
        return self._exp[n % self.order]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def power_frobenius(self, x: int, j: int) -> int:
        """x^(p^j); j = r gives the q-power map."""
        return self.pow(x, pow(self.p, j % self.m, self.order) if self.order > 1 else 1)

    def frob_q(self, x: int, k: int = 1) -> int:
        """x^(q^k)."""
        return self.power_frobenius(x, self.r * k)

    def frob_inverse(self, x: int) -> int:
        """The unique p-th root x^(p^(m-1))."""
        return self.power_frobenius(x, self.m - 1)

    def absolute_trace(self, x: int) -> int:
        acc = 0
        y = x
        for _ in range(self.m):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        if acc >= self.p:
            raise ArithmeticError("trace fell outside the prime field")  # pragma: no cover
        return acc

    def in_fq(self, x: int) -> bool:
        return self.frob_q(x) == x

    def multiplicative_order(self, x: int) -> int:
        n = self.order
        k = self._log[x]
        from math import gcd

        return n // gcd(n, k)

    @cached_property
    def wp_preimages(self) -> dict:
        """Map c -> some b with b^p - b = c, for c in the image of the Artin-Schreier map."""
        out: dict = {}
        for b in self.elements():
            c = self.sub(self.pow(b, self.p), b)
            out.setdefault(c, b)
        return out

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, r={self.r}, f={self.f}, modulus={fppoly.to_str(self.modulus)})"


def build_tower(p: int, r: int, f: int) -> FieldTower:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if r < 1 or f < 1:
        raise ValueError("r and f must be positive")
    m = r * f
    if p ** m > MAX_FIELD_SIZE:
        raise ValueError(f"F_{p}^{m} has more than {MAX_FIELD_SIZE} elements")

    g = fppoly.smallest_irreducible(m, p)
    size = p ** m
    order = size - 1

    def enc(cs):
        x = 0
        for c in reversed(cs):
            x = x * p + c
        return x

    def dec(x):
        out = []
        for _ in range(m):
            x, c = divmod(x, p)
            out.append(c)
        return fppoly.trim(out)

    # smallest primitive element, using raw polynomial arithmetic
    factors = prime_factors(order) if order > 1 else []
    omega = None
    for cs in product(range(p), repeat=m):
        if not any(cs):
            continue
        a = fppoly.trim(cs)
        if all(fppoly.powmod(a, order // ell, g, p) != (1,) for ell in factors):
            omega = enc(cs)
            break
    if omega is None:
        # F_2: the only nonzero element is 1
        omega = 1

    exp = [0] * order
    log = [0] * size
    cur: tuple = (1,)
    wpoly = dec(omega)
    for k in range(order):
        x = enc(list(cur) + [0] * (m - len(cur)))
        exp[k] = x
        log[x] = k
        cur = _poly_mulmod(cur, wpoly, g, p)

    tower = FieldTower(p, r, f, g, omega, 0, None, exp, log)

    h = fppoly.smallest_irreducible(r, p)
    fq_gen = next(x for x in tower.elements() if _eval_in(tower, h, x) == 0)

    omega0 = None
    for x in tower.elements():
        if x and tower.in_fq(x) and tower.absolute_trace(x) != 0:
            omega0 = x
            break

    object.__setattr__(tower, "fq_gen", fq_gen)
    object.__setattr__(tower, "omega0", omega0)
    return tower


def _eval_in(tower: FieldTower, poly, x: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = tower.add(tower.mul(acc, x), c)
    return acc
