"""Truncated Laurent series over F_{q^f}, the Artin-Schreier map and reduction.

``LaurentElem`` stores finitely many nonzero terms ``c * pi^j``.  Reduction
sends an element to its canonical class representative ``ASRep``: a multiple
of omega_0 plus terms at negative exponents prime to p.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldTower
from .tame import CdExtension

DEFAULT_WINDOW = 1 << 20


class PrecisionError(ValueError):
    pass


class ZeroClassError(ValueError):
    pass


def _clean(terms) -> tuple:
    return tuple(sorted((j, c) for j, c in terms if c))


@dataclass(frozen=True)
class LaurentElem:
    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: dict) -> LaurentElem:
        return cls(_clean(d.items()))

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def valuation(self) -> int | None:
        return self.terms[0][0] if self.terms else None

    def __bool__(self) -> bool:
        return bool(self.terms)


@dataclass(frozen=True, order=True)
class ASRep:
    """mu0 * omega_0 + sum of c_j * pi^j over j < 0, p not dividing j."""

    mu0: int = 0
    terms: tuple = ()

    @property
    def is_zero(self) -> bool:
        return self.mu0 == 0 and not self.terms

    @property
    def nu(self) -> int:
        if self.is_zero:
            raise ZeroClassError("element lies in wp(L): no extension")
        return self.terms[0][0] if self.terms else 0

    def coefficient(self, j: int) -> int:
        for k, c in self.terms:
            if k == j:
                return c
        return 0

    def exponents(self) -> list[int]:
        return [j for j, _ in self.terms]


@dataclass(frozen=True)
class Witness:
    """x - rep == wp(y) + tail, where tail is the dropped positive part."""

    y: LaurentElem
    tail: LaurentElem


def add(F: FieldTower, x: LaurentElem, y: LaurentElem) -> LaurentElem:
    out = dict(x.terms)
    for j, c in y.terms:
        out[j] = F.add(out.get(j, 0), c)
    return LaurentElem.from_dict(out)


def sub(F: FieldTower, x: LaurentElem, y: LaurentElem) -> LaurentElem:
    out = dict(x.terms)
    for j, c in y.terms:
        out[j] = F.sub(out.get(j, 0), c)
    return LaurentElem.from_dict(out)


def rep_to_laurent(L: CdExtension, rep: ASRep) -> LaurentElem:
    F = L.tower
    d = dict(rep.terms)
    if rep.mu0:
        d[0] = F.scalar_mul(rep.mu0, F.omega0)
    return LaurentElem.from_dict(d)


def _check_window(x: LaurentElem, window: int) -> None:
    if x.terms and x.terms[0][0] < -window:
        raise PrecisionError(f"exponent {x.terms[0][0]} below the window -{window}")


def wp_apply(F: FieldTower, x: LaurentElem, window: int = DEFAULT_WINDOW) -> LaurentElem:
    """x^p - x."""
    _check_window(x, window)
    p = F.p
    powered = LaurentElem.from_dict({p * j: F.pow(c, p) for j, c in x.terms})
    return sub(F, powered, x)


def reduce_mod_wp(L: CdExtension, x: LaurentElem, window: int = DEFAULT_WINDOW) -> tuple[ASRep, Witness]:
    F = L.tower
    p = F.p
    if F.omega0 is None:
        raise ValueError("no omega_0: p divides f")
    _check_window(x, window)

    coeffs = {j: c for j, c in x.terms if j <= 0}
    tail = LaurentElem.from_dict({j: c for j, c in x.terms if j > 0})
    y: dict = {}

    def bump(d, j, c):
        d[j] = F.add(d.get(j, 0), c)

    while True:
        pending = [j for j, c in coeffs.items() if c and j < 0 and j % p == 0]
        if not pending:
            break
        j = min(pending)
        b = F.frob_inverse(coeffs.pop(j))
        bump(coeffs, j // p, b)
        bump(y, j // p, b)

    c0 = coeffs.pop(0, 0)
    tr0 = F.absolute_trace(F.omega0)
    mu0 = F.absolute_trace(c0) * pow(tr0, p - 2, p) % p
    residual = F.sub(c0, F.scalar_mul(mu0, F.omega0))
    bump(y, 0, F.wp_preimages[residual])

    rep = ASRep(mu0, _clean(coeffs.items()))
    return rep, Witness(LaurentElem.from_dict(y), tail)


def nu_and_cond(rep: ASRep) -> tuple[int, int]:
    nu = rep.nu
    return nu, (0 if nu == 0 else -nu + 1)


def cond(rep: ASRep) -> int:
    """Conductor exponent; 0 for the zero class as a convenience in sums."""
    if rep.is_zero:
        return 0
    return nu_and_cond(rep)[1]


def sigma_laurent(L: CdExtension, x: LaurentElem) -> LaurentElem:
    F = L.tower
    return LaurentElem.from_dict({j: F.mul(F.frob_q(c), F.omega_pow(L.a * j)) for j, c in x.terms})


def sigma_apply(L: CdExtension, rep: ASRep) -> ASRep:
    F = L.tower
    terms = tuple((j, F.mul(F.frob_q(c), F.omega_pow(L.a * j))) for j, c in rep.terms)
    return ASRep(rep.mu0, terms)


def rep_add(L: CdExtension, x: ASRep, y: ASRep) -> ASRep:
    F = L.tower
    out = dict(x.terms)
    for j, c in y.terms:
        out[j] = F.add(out.get(j, 0), c)
    return ASRep((x.mu0 + y.mu0) % F.p, _clean(out.items()))


def rep_scale(L: CdExtension, c: int, x: ASRep) -> ASRep:
    F = L.tower
    c %= F.p
    return ASRep(c * x.mu0 % F.p, _clean((j, F.scalar_mul(c, v)) for j, v in x.terms))


def poly_apply(L: CdExtension, g, x: ASRep) -> ASRep:
    """g(sigma)(x) for g an F_p-polynomial (constant term first)."""
    acc = ASRep()
    cur = x
    for k, c in enumerate(g):
        if c:
            acc = rep_add(L, acc, rep_scale(L, c, cur))
        if k + 1 < len(g):
            cur = sigma_apply(L, cur)
    return acc


def make_rep(L: CdExtension, mu0: int = 0, terms: dict | None = None) -> ASRep:
    """Validated constructor: exponents negative and prime to p."""
    p = L.p
    for j in terms or {}:
        if j >= 0 or j % p == 0:
            raise ValueError(f"exponent {j} not allowed in a representative")
    return ASRep(mu0 % p, _clean((terms or {}).items()))
