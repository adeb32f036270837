"""Factorisation of X^d - 1 over F_p through p-cyclotomic cosets."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import fppoly
from .gf import build_tower, is_prime


def multiplicative_order(p: int, d: int) -> int:
    if d == 1:
        return 1
    k, x = 1, p % d
    while x != 1:
        x = x * p % d
        k += 1
    return k


def cyclotomic_cosets(p: int, d: int) -> list[tuple[int, ...]]:
    """Cosets of <p> acting on Z/d, ordered by smallest representative."""
    seen = set()
    out = []
    for j in range(d):
        if j in seen:
            continue
        coset = []
        x = j
        while x not in coset:
            coset.append(x)
            x = x * p % d
        seen.update(coset)
        out.append(tuple(coset))
    return out


@dataclass(frozen=True)
class FactorTable:
    p: int
    d: int
    factors: tuple  # monic FpPoly tuples, factors[0] == X - 1
    cosets: tuple

    @property
    def count(self) -> int:
        return len(self.factors)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(fppoly.degree(fa) for fa in self.factors)

    def ell(self, i: int) -> int:
        """Degree of factor ``i`` (1-based)."""
        return fppoly.degree(self.factors[i - 1])

    def ell_of(self, I) -> int:
        return sum(self.ell(i) for i in I)

    def factor(self, i: int):
        return self.factors[i - 1]

    def product(self, I):
        out = (1,)
        for i in I:
            out = fppoly.mul(out, self.factor(i), self.p)
        return out

    def indices(self) -> range:
        return range(1, self.count + 1)


def factor_xd_minus_1(p: int, d: int) -> FactorTable:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if d < 1:
        raise ValueError("d must be positive")
    if gcd(p, d) != 1:
        raise ValueError(f"p={p} divides d={d}: X^d - 1 is not squarefree")

    m = multiplicative_order(p, d)
    field = build_tower(p, 1, m)
    zeta = field.omega_pow(field.order // d)

    factors = []
    cosets = cyclotomic_cosets(p, d)
    for coset in cosets:
        # prod (X - zeta^j) with coefficients in F_{p^m}, lowest degree first
        poly = [1]
        for j in coset:
            root = field.neg(field.pow(zeta, j))
            nxt = [0] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k + 1] = field.add(nxt[k + 1], c)
                nxt[k] = field.add(nxt[k], field.mul(c, root))
            poly = nxt
        if any(c >= p for c in poly):
            raise ArithmeticError("minimal polynomial left the prime field")  # pragma: no cover
        factors.append(fppoly.trim(poly))

    table = FactorTable(p, d, tuple(factors), tuple(cosets))
    assert table.factors[0] == fppoly.norm((-1, 1), p)
    return table
