"""Tamely ramified extensions of F = F_q((t)) and their cyclic generator.

An extension is a label ``(e, f, twist)``: the field F(omega, (omega^twist t)^(1/e))
with omega the fixed primitive element of F_{q^f}.  Nothing is ever adjoined;
downstream code only needs how the generator sigma acts on constants
(the q-power map) and on the uniformiser (multiplication by omega^a).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .gf import FieldTower, build_tower, prime_factors


@dataclass(frozen=True)
class TameClassification:
    galois: bool
    abelian: bool
    cyclic: bool
    g: int
    k: int | None = None
    l: int | None = None
    N: int | None = None


@dataclass(frozen=True)
class SigmaSeed:
    """sigma(lambda) = lambda^(p^frob_exponent), sigma(pi_L) = omega^a * pi_L."""

    frob_exponent: int
    a: int


@dataclass(frozen=True, eq=False)
class CdExtension:
    tower: FieldTower
    e: int
    f: int
    twist: int
    k: int
    l: int
    N: int
    a: int

    @property
    def p(self) -> int:
        return self.tower.p

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def d(self) -> int:
        return self.e * self.f

    @property
    def label(self) -> tuple[int, int, int]:
        return (self.e, self.f, self.twist)

    @property
    def disc(self) -> int:
        """Discriminant exponent of L/F."""
        return self.f * (self.e - 1)

    def __eq__(self, other):
        return isinstance(other, CdExtension) and (self.p, self.tower.r, self.label) == (
            other.p,
            other.tower.r,
            other.label,
        )

    def __hash__(self):
        return hash((self.p, self.tower.r, self.label))

    def __repr__(self) -> str:
        return f"CdExtension(q={self.q}, e={self.e}, f={self.f}, twist={self.twist}, a={self.a})"


def _check_tame(p: int, e: int, f: int) -> None:
    if e < 1 or f < 1:
        raise ValueError("e and f must be positive")
    if e % p == 0 or f % p == 0:
        raise ValueError(f"p={p} divides e*f={e * f}: not tamely ramified with p-coprime degree")


def enumerate_tame(p: int, r: int, e: int, f: int) -> list[tuple[int, int, int]]:
    _check_tame(p, e, f)
    q = p**r
    g = gcd(e, q**f - 1)
    return [(e, f, twist) for twist in range(g)]


def twist_exponent_N(e: int, twist: int) -> int:
    if gcd(e, twist) == 1:
        return 0
    out = 1
    for ell in prime_factors(e):
        if twist % ell:
            out *= ell
    return out


def classify(label: tuple[int, int, int], p: int, r: int) -> TameClassification:
    e, f, twist = label
    _check_tame(p, e, f)
    q = p**r
    qf1 = q**f - 1
    g = gcd(e, qf1)
    galois = qf1 % e == 0 and (twist * (q - 1)) % e == 0
    abelian = galois and (q - 1) % e == 0
    cyclic = abelian and gcd(gcd(e, f), twist) == 1
    if not galois:
        return TameClassification(False, False, False, g)
    k = twist * (q - 1) // e
    l = qf1 // e
    N = twist_exponent_N(e, twist) if cyclic else None
    return TameClassification(galois, abelian, cyclic, g, k, l, N)


def sigma_order(q: int, f: int, a: int) -> int:
    """Order of (lambda -> lambda^q, pi -> omega^a pi) acting on F_{q^f}((pi))."""
    qf1 = q**f - 1
    n = 0
    mult = 0  # exponent of omega accumulated on pi after n steps
    while True:
        n += 1
        mult = (mult * q + a) % qf1 if qf1 else 0
        if n % f == 0 and mult == 0:
            return n


def make_extension(p: int, r: int, label: tuple[int, int, int], tower: FieldTower | None = None) -> CdExtension:
    e, f, twist = label
    cls = classify(label, p, r)
    if not cls.cyclic:
        raise ValueError(f"label {label} over q={p**r} is not a cyclic extension")
    if tower is None:
        tower = build_tower(p, r, f)
    qf1 = tower.q**f - 1
    a = (cls.k + cls.N * cls.l) % qf1 if qf1 > 1 else 0
    L = CdExtension(tower, e, f, twist, cls.k, cls.l, cls.N, a)
    if sigma_order(tower.q, f, a) != e * f:
        raise ArithmeticError(f"sigma for {label} does not have order {e * f}")
    return L


def enumerate_cyclic_cd(p: int, r: int, d: int) -> list[CdExtension]:
    if gcd(p, d) != 1:
        raise ValueError(f"p={p} divides d={d}")
    towers: dict[int, FieldTower] = {}
    out = []
    for e in range(1, d + 1):
        if d % e:
            continue
        f = d // e
        for label in enumerate_tame(p, r, e, f):
            if not classify(label, p, r).cyclic:
                continue
            if f not in towers:
                towers[f] = build_tower(p, r, f)
            out.append(make_extension(p, r, label, towers[f]))
    return out


def sigma_apply_seed(L: CdExtension) -> SigmaSeed:
    return SigmaSeed(L.tower.r, L.a)
