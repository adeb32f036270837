"""F_p[H]-module structure of the representative system R_L, H = <sigma> = C_d.

Every eigenspace statement is computed by plain linear algebra on each
V_{-m} = F_{q^f} * pi^{-m}: write down the F_p-matrix of sigma, evaluate
f_i(sigma) on it and take the kernel.  The structural results (periodicity,
one residue class per factor, the minimal polynomial X^f - zeta_e^z) are then
checked against that data instead of being assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import prod

from . import fplinalg, fppoly
from .aschreier import ASRep, ZeroClassError, poly_apply, rep_add
from .cyclofactor import FactorTable
from .tame import CdExtension


class StructureError(ArithmeticError):
    """Kernel data contradicts the expected module structure."""


@dataclass(frozen=True)
class GroupLabel:
    p: int
    d: int
    I: tuple
    ell: int

    @property
    def order(self) -> int:
        return self.d * self.p**self.ell

    @property
    def degree_pd(self) -> int:
        return self.p * self.d

    @property
    def degree_split(self) -> int:
        return self.p**self.ell * self.d

    @property
    def kappa(self) -> int:
        return int(1 in self.I)

    def __str__(self) -> str:
        return f"G_{self.p}({self.d},{{{','.join(map(str, self.I))}}})"


@dataclass(frozen=True)
class Orbit:
    elements: frozenset
    generators: frozenset


def psi(p: int, factors: FactorTable, I) -> int:
    """Number of cyclic generators of M_I."""
    return prod(p ** factors.ell(i) - 1 for i in I)


def crt_idempotents(factors: FactorTable) -> list[tuple]:
    p = factors.p
    full = fppoly.x_pow_minus_one(factors.d, p)
    out = []
    for fi in factors.factors:
        h = fppoly.divmod_(full, fi, p)[0]
        g, s, _ = fppoly.xgcd(h, fi, p)
        if g != (1,):
            raise StructureError("factors of X^d - 1 are not coprime")  # pragma: no cover
        out.append(fppoly.mod(fppoly.mul(s, h, p), full, p))
    return out


def ring_elements(p: int, d: int):
    """All of F_p[X]/(X^d - 1) as reduced polynomials."""
    for cs in product(range(p), repeat=d):
        yield fppoly.trim(cs)


class ModuleContext:
    """Module data for one cyclic L and the factor table of X^d - 1."""

    def __init__(self, L: CdExtension, factors: FactorTable, val_bound: int, strict: bool = True):
        if factors.p != L.p or factors.d != L.d:
            raise ValueError("factor table does not match the extension")
        self.L = L
        self.factors = factors
        self.val_bound = val_bound
        self.strict = strict
        F = L.tower
        self.F = F
        self.p = F.p
        self.e = L.e
        self.f = L.f
        self.d = L.d
        self.dim = F.m
        top = max(val_bound, self.e * self.p)
        self.exponents = [m for m in range(1, top + 1) if m % self.p]
        self.idempotents = crt_idempotents(factors)

        self.sigma_mats = {m: self._sigma_matrix(m) for m in self.exponents}
        self.kernels: dict = {}
        self.dims: dict = {}
        for i in factors.indices():
            fi = factors.factor(i)
            for m in self.exponents:
                ker = fplinalg.nullspace(fplinalg.poly_eval(fi, self.sigma_mats[m], self.p), self.p)
                self.kernels[i, m] = ker
                self.dims[i, m] = len(ker)

        self.rho: dict = {}
        self.dichotomy = True
        for i in factors.indices():
            full = factors.ell(i) * F.r
            residues = set()
            for m in self.exponents:
                dm = self.dims[i, m]
                if dm not in (0, full):
                    self.dichotomy = False
                if dm:
                    residues.add(m % self.e)
            self.rho[i] = residues.pop() if len(residues) == 1 else None
            if self.rho[i] is None:
                self.dichotomy = False
        if strict and not self.dichotomy:
            raise StructureError(
                f"kernel dimensions of {L!r} leave {{0, ell(i)*r}} or spread over several residues"
            )

        self.zeta_e = F.omega_pow(L.a * ((F.q**self.f - 1) // (F.q - 1)))

    # -- sigma on V_{-m} ------------------------------------------------------

    def sigma_coeff(self, m: int, lam: int) -> int:
        """Coefficient of sigma(lam * pi^-m)."""
        F = self.F
        return F.mul(F.frob_q(lam), F.omega_pow(-self.L.a * m))

    def _sigma_matrix(self, m: int):
        F = self.F
        cols = [F.coeffs(self.sigma_coeff(m, self.p**k)) for k in range(self.dim)]
        return [[cols[c][r] for c in range(self.dim)] for r in range(self.dim)]

    def sigma_power_multiplier(self, m: int, k: int) -> int:
        """sigma^k(lam pi^-m) = lam^(q^k) * this."""
        F = self.F
        q = F.q
        return F.omega_pow(-self.L.a * m * ((q**k - 1) // (q - 1)))

    def poly_on_coeff(self, m: int, g, lam: int) -> int:
        """Coefficient of g(sigma)(lam * pi^-m)."""
        F = self.F
        acc = 0
        for k, c in enumerate(g):
            if c:
                term = F.mul(F.frob_q(lam, k), self.sigma_power_multiplier(m, k))
                acc = F.add(acc, F.scalar_mul(c, term))
        return acc

    # -- structural data -----------------------------------------------------

    def kappa(self, i: int) -> int:
        return int(i == 1)

    def dim_at(self, i: int, m: int) -> int:
        if m % self.p == 0:
            return 0
        if (i, m) in self.dims:
            return self.dims[i, m]
        return self.dims[i, self._shift_into_block(m)]

    def _shift_into_block(self, m: int) -> int:
        block = self.e * self.p
        mm = (m - 1) % block + 1
        return mm

    def rho_tilde(self, i: int) -> int:
        rho = self.rho[i]
        for z in range(self.p):
            cand = self.e * z + rho
            if cand % self.p == 0:
                return cand
        raise StructureError("no residue compatible with rho")  # pragma: no cover

    def min_poly_holds(self, m: int) -> bool:
        """sigma^f = zeta_e^(-m) on V_{-m} and sigma has an F_q-cyclic vector there."""
        F, p = self.F, self.p
        S = self.sigma_mats[m]
        Sf = fplinalg.identity(self.dim)
        for _ in range(self.f):
            Sf = fplinalg.matmul(S, Sf, p)
        scalar = F.pow(self.zeta_e, -m)
        cols = [F.coeffs(F.mul(scalar, p**k)) for k in range(self.dim)]
        target = [[cols[c][r] for c in range(self.dim)] for r in range(self.dim)]
        if Sf != target:
            return False
        if not F.in_fq(self.zeta_e) or (self.e > 1 and F.multiplicative_order(self.zeta_e) != self.e):
            return False
        if self.e == 1 and self.zeta_e != 1:
            return False
        fq_basis = [F.pow(F.fq_gen, j) for j in range(F.r)] if F.r > 1 else [1]
        for v in F.elements():
            if not v:
                continue
            vecs = []
            cur = v
            for _ in range(self.f):
                vecs.extend(F.coeffs(F.mul(b, cur)) for b in fq_basis)
                cur = self.sigma_coeff(m, cur)
            if fplinalg.rank(vecs, p) == self.dim:
                return True
        return False

    # -- element-level operations -------------------------------------------

    def check_rep(self, rep: ASRep) -> None:
        if rep.terms and -rep.terms[0][0] > max(self.exponents):
            raise ValueError(f"representative below the context bound -{max(self.exponents)}")

    def component_split(self, rep: ASRep) -> list[ASRep]:
        self.check_rep(rep)
        return [poly_apply(self.L, ei, rep) for ei in self.idempotents]

    def support(self, rep: ASRep) -> tuple:
        return tuple(i for i, a in zip(self.factors.indices(), self.component_split(rep)) if not a.is_zero)

    def galois_label(self, rep: ASRep) -> GroupLabel:
        if rep.is_zero:
            raise ZeroClassError("element lies in wp(L): no extension")
        I = self.support(rep)
        return GroupLabel(self.p, self.d, I, self.factors.ell_of(I))

    @cached_property
    def ring(self) -> list:
        return list(ring_elements(self.p, self.d))

    def module_elements(self, rep: ASRep) -> frozenset:
        return frozenset(poly_apply(self.L, g, rep) for g in self.ring)

    def module_orbit(self, rep: ASRep) -> Orbit:
        self.check_rep(rep)
        elems = self.module_elements(rep)
        size = len(elems)
        gens = frozenset(b for b in elems if not b.is_zero and len(self.module_elements(b)) == size)
        return Orbit(elems, gens)

    def gamma(self, i: int, y: int) -> int:
        """Number of m in (0, y] with m = rho(i) mod e and p not dividing m."""
        rho = self.rho[i]
        if rho is None:
            raise StructureError(f"factor {i} has no single residue class")
        count = sum(1 for m in range(1, y + 1) if m % self.e == rho and m % self.p)
        floor_form = (y - rho) // self.e - (y - self.rho_tilde(i)) // (self.e * self.p)
        if 0 <= y < self.e * self.p and floor_form != count:
            raise StructureError(f"floor formula {floor_form} != count {count} at y={y}")
        return count


def build_module_context(L: CdExtension, factors: FactorTable, val_bound: int, strict: bool = True) -> ModuleContext:
    return ModuleContext(L, factors, val_bound, strict)


def component_split(ctx: ModuleContext, rep: ASRep) -> list[ASRep]:
    return ctx.component_split(rep)


def galois_label(ctx: ModuleContext, rep: ASRep) -> GroupLabel:
    return ctx.galois_label(rep)


def module_orbit(ctx: ModuleContext, rep: ASRep) -> Orbit:
    return ctx.module_orbit(rep)


def gamma(ctx: ModuleContext, i: int, y: int) -> int:
    return ctx.gamma(i, y)


def sum_components(ctx: ModuleContext, parts) -> ASRep:
    acc = ASRep()
    for a in parts:
        acc = rep_add(ctx.L, acc, a)
    return acc
