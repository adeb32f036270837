"""Exact rational Dirichlet series in u = q^-s for splitting-field counts.

Phi_L(u) = sum over splitting-field classes over L of u^disc.  It is assembled
from conductor chains: for each ordering tau of the factors in I, a chain is a
weakly increasing sequence of conductors, split into blocks that share the
same period index k; the k's of different blocks are summed with the
Potthast product and the within-block data (v, l~) give finitely many
monomials.  Averaging over tau with the tie weights 1/Lambda counts every
conductor multiset once.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .modstruct import ModuleContext, psi


@dataclass(frozen=True)
class RationalFn:
    """Sum of c * u^a / prod (1 - b u^m); ``terms`` holds (c, a, ((b, m), ...))."""

    terms: tuple = ()

    def __add__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.terms + other.terms)

    def scale(self, c) -> RationalFn:
        c = Fraction(c)
        return RationalFn(tuple((c * t, a, den) for t, a, den in self.terms))

    def shift(self, c, a: int, dens=()) -> RationalFn:
        """Multiply by c u^a / prod(1 - b u^m)."""
        c = Fraction(c)
        dens = tuple(dens)
        return RationalFn(tuple((c * t, a + s, tuple(sorted(den + dens))) for t, s, den in self.terms))

    def denominators(self) -> set:
        return {bm for _, _, den in self.terms for bm in den}

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coef": _frac_str(c),
                    "u_power": a,
                    "denominator": [{"b": _frac_str(b), "m": m} for b, m in den],
                }
                for c, a, den in self.terms
            ]
        }


def _frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def monomial(c=1, a: int = 0) -> RationalFn:
    return RationalFn(((Fraction(c), a, ()),))


def geometric(b, m: int) -> RationalFn:
    return RationalFn(((Fraction(1), 0, ((Fraction(b), m),)),))


def _validate_den(den) -> None:
    for b, m in den:
        if m <= 0:
            raise ValueError(f"denominator (1 - {b} u^{m}) has no expansion at u = 0")


def series_coeffs(rfn: RationalFn, n: int) -> list[Fraction]:
    """Taylor coefficients of rfn at u = 0 up to u^n."""
    out = [Fraction(0)] * (n + 1)
    grouped: dict = defaultdict(lambda: defaultdict(Fraction))
    for c, a, den in rfn.terms:
        _validate_den(den)
        if a <= n:
            grouped[den][a] += c
    for den, numer in grouped.items():
        inv = [Fraction(0)] * (n + 1)
        inv[0] = Fraction(1)
        for b, m in den:
            # multiply by 1/(1 - b u^m): running recurrence s_k += b * s_{k-m}
            for k in range(m, n + 1):
                inv[k] += b * inv[k - m]
        for a, c in numer.items():
            if c:
                for k in range(a, n + 1):
                    out[k] += c * inv[k - a]
    return out


def potthast_product(alphas) -> RationalFn:
    """sum_{k_1 > k_2 > ... > k_J >= 0} prod X^(alpha_j k_j) with X^alpha_j = q^A_j u^B_j.

    ``alphas`` is a sequence of (coefficient q^A as a rational, B).  Returns
    1/(1 - X^(sum alpha)) * prod_{i<J} X^(beta_i) / (1 - X^(beta_i)), beta_i the
    prefix sums.
    """
    alphas = [(Fraction(c), B) for c, B in alphas]
    if not alphas:
        return monomial(1)
    for _, B in alphas:
        if B <= 0:
            raise ValueError("every alpha needs a positive u-degree for convergence")
    coef, upow, dens = Fraction(1), 0, []
    pc, pb = Fraction(1), 0
    for i, (c, B) in enumerate(alphas):
        pc, pb = pc * c, pb + B
        if i < len(alphas) - 1:
            coef *= pc
            upow += pb
        dens.append((pc, pb))
    return RationalFn(((coef, upow, tuple(sorted(dens))),))


def compositions(n: int):
    """All compositions of n as tuples, in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def lambda_weight(blocks_lt) -> int:
    """Product of factorials of runs of equal l~ inside each block."""
    out = 1
    for block in blocks_lt:
        run = 1
        for a, b in zip(block, block[1:]):
            if a == b:
                run += 1
            else:
                out *= math.factorial(run)
                run = 1
        out *= math.factorial(run)
    return out


def _residue_levels(ctx: ModuleContext, i: int) -> list[int]:
    rho = ctx.rho[i]
    return [y for y in range(ctx.e * ctx.p) if y % ctx.e == rho and y % ctx.p]


def _chain_sum(ctx: ModuleContext, order, R: list[int], start: int) -> RationalFn:
    """Chains over positions start..J (1-based) of ``order`` with all levels >= 1.

    Positions carry factor order[j-1], degree r_j, block sums R[j].  Returns
    sum over compositions and v of c * h_v-part * Psi_omega, without the
    global u^(p^l f (e-1)) and without p^kappa.
    """
    p, f, d = ctx.p, ctx.f, ctx.d
    q = ctx.F.q
    pos = list(range(start, len(order) + 1))
    if not pos:
        return monomial(1)
    rdeg = {j: ctx.factors.ell(order[j - 1]) for j in pos}
    dR = {j: p ** R[j] - p ** R[j - 1] for j in pos}
    levels = {j: _residue_levels(ctx, order[j - 1]) for j in pos}
    base_c = Fraction(1)
    for j in pos:
        base_c *= Fraction(q ** rdeg[j] - 1, q ** rdeg[j])
    total = RationalFn()
    for omega in compositions(len(pos)):
        blocks, s = [], 0
        for w in omega:
            blocks.append(pos[s : s + w])
            s += w
        # Psi_omega: sum_{0 <= k_1 < ... < k_lambda} prod x_b^k_b; reversed so the top block leads
        xs = []
        for blk in blocks:
            xs.append((Fraction(q) ** ((p - 1) * sum(rdeg[j] for j in blk)), p * d * sum(dR[j] for j in blk)))
        psi_omega = potthast_product(list(reversed(xs)))
        for v in product(range(1, p), repeat=len(pos)):
            lt = {j: levels[j][vj - 1] for j, vj in zip(pos, v)}
            blocks_lt = [[lt[j] for j in blk] for blk in blocks]
            if any(a > b for blk in blocks_lt for a, b in zip(blk, blk[1:])):
                continue  # c~(omega, v) = 0
            c = base_c / lambda_weight(blocks_lt)
            upow = 0
            for j, vj in zip(pos, v):
                c *= q ** (rdeg[j] * vj)
                upow += f * dR[j] * (lt[j] + 1)
            total = total + psi_omega.shift(c, upow)
    return total


def assemble_phi_tau(ctx: ModuleContext, I, tau) -> RationalFn:
    """Phi_tau for the ordering tau (a tuple listing I), before dividing by Psi(I).

    Includes the chains where the omega_0-line (Cond 0) sits at position 1,
    which exist when tau starts with factor 1.
    """
    I, tau = tuple(I), tuple(tau)
    if sorted(tau) != sorted(I):
        raise ValueError("tau must be an ordering of I")
    p, e, f = ctx.p, ctx.e, ctx.f
    R = [0]
    for i in tau:
        R.append(R[-1] + ctx.factors.ell(i))
    ell = R[-1]
    kappa = int(1 in I)
    head = monomial(1, p**ell * f * (e - 1))
    out = RationalFn()
    for c, a, den in _chain_sum(ctx, tau, R, 1).terms:
        out = out + RationalFn(((c * p**kappa, a, den),)).shift(1, head.terms[0][1])
    if tau[0] == 1:
        for c, a, den in _chain_sum(ctx, tau, R, 2).terms:
            out = out + RationalFn(((c * (p - 1), a, den),)).shift(1, head.terms[0][1])
    return out


def assemble_phi_L(ctx: ModuleContext, I) -> RationalFn:
    I = tuple(I)
    total = RationalFn()
    for tau in permutations(I):
        total = total + assemble_phi_tau(ctx, I, tau)
    return total.scale(Fraction(1, psi(ctx.p, ctx.factors, I)))


def assemble_phi(ctxs, I) -> RationalFn:
    total = RationalFn()
    for ctx in ctxs:
        total = total + assemble_phi_L(ctx, I)
    return total


# -- poles ------------------------------------------------------------------


@dataclass
class PoleReport:
    p: int
    d: int
    degrees: tuple  # r_1, ..., r_J in tau order
    sigmas: tuple  # sigma_1 < ... < sigma_J as Fractions
    spacings: tuple  # pd (p^R_J - p^R_{J-j}): vertical spacing is 2 pi / (that * log q)
    sigma_max: Fraction = field(init=False)

    def __post_init__(self):
        self.sigma_max = self.sigmas[-1]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "degrees": list(self.degrees),
            "sigmas": [_frac_str(s) for s in self.sigmas],
            "spacings": list(self.spacings),
            "sigma_max": _frac_str(self.sigma_max),
        }


def sigma_max_formula(p: int, d: int, ell: int) -> Fraction:
    return Fraction((p - 1) * ell, p * d * (p**ell - 1))


def pole_report(p: int, d: int, degrees) -> PoleReport:
    degrees = tuple(degrees)
    if not degrees or any(r < 1 for r in degrees):
        raise ValueError("degrees must be positive")
    J = len(degrees)
    R = [0]
    for r in degrees:
        R.append(R[-1] + r)
    sig, spac = [], []
    for j in range(1, J + 1):
        S = sum(degrees[J - j :])
        den = p * d * (p ** R[J] - p ** R[J - j])
        sig.append(Fraction((p - 1) * S, den))
        spac.append(den)
    if any(a >= b for a, b in zip(sig, sig[1:])):
        raise ArithmeticError(f"poles not strictly increasing: {sig}")
    if sig[-1] != sigma_max_formula(p, d, R[J]):
        raise ArithmeticError("top pole depends on the ordering")  # pragma: no cover
    return PoleReport(p, d, degrees, tuple(sig), tuple(spac))


def _exact_log(b: Fraction, q: int) -> int:
    """The integer A with b = q^A."""
    num, den = b.numerator, b.denominator
    if den != 1:
        return -_exact_log(Fraction(den, num), q)
    A = 0
    while num > 1:
        if num % q:
            raise ValueError(f"{b} is not a power of {q}")
        num //= q
        A += 1
    return A


def rightmost_pole(rfn: RationalFn, q: int) -> Fraction:
    """Largest real s with some denominator factor 1 - q^A u^m vanishing at u = q^-s."""
    best = None
    for b, m in rfn.denominators():
        s = Fraction(_exact_log(b, q), m)
        if best is None or s > best:
            best = s
    if best is None:
        raise ValueError("no denominators")
    return best


# -- principal part at the dominant pole ------------------------------------


def _polymul_mod(a: list, b: list, M: int, B: Fraction) -> list:
    """Product in Q[u]/(u^M - 1/B), coefficient lists of length M."""
    out = [Fraction(0)] * M
    inv_b = 1 / B
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                k = i + j
                if k >= M:
                    out[k - M] += x * y * inv_b
                else:
                    out[k] += x * y
    return out


def _reduce_mod(coeffs: dict, M: int, B: Fraction) -> list:
    out = [Fraction(0)] * M
    for k, c in coeffs.items():
        n, j = divmod(k, M)
        out[j] += c / B**n
    return out


def _inverse_factor_mod(b: Fraction, m: int, M: int, B: Fraction) -> list:
    """(1 - b u^m)^-1 modulo u^M - 1/B, assuming the two share no root."""
    g = math.gcd(m, M)
    t = M // g
    s = m // g
    scalar = 1 - b**t / B**s
    if scalar == 0:
        raise ZeroDivisionError("factor shares a root with the dominant denominator")
    geo = {m * i: b**i for i in range(t)}
    return [c / scalar for c in _reduce_mod(geo, M, B)]


def principal_part(rfn: RationalFn, B: Fraction, M: int, extra=()) -> list:
    """Numerator A(u), deg < M, of the A(u)/(1 - B u^M) part of rfn * prod(extra factors).

    ``extra`` lists further (b, m) denominators applied to the whole function,
    e.g. ((1, 1),) for the cumulative count.  Coefficient n of A/(1 - B u^M)
    is A[n mod M] * B^(n // M).
    """
    B = Fraction(B)
    total = [Fraction(0)] * M
    for c, a, den in rfn.terms:
        den = list(den) + [(Fraction(b), m) for b, m in extra]
        hits = [bm for bm in den if bm == (B, M)]
        if not hits:
            continue
        if len(hits) > 1:
            raise ValueError("dominant factor is not simple")
        acc = _reduce_mod({a: c}, M, B)
        for bm in den:
            if bm != (B, M):
                acc = _polymul_mod(acc, _inverse_factor_mod(bm[0], bm[1], M, B), M, B)
        total = [x + y for x, y in zip(total, acc)]
    return total


def principal_coeffs(numer: list, B: Fraction, M: int, n: int) -> list:
    return [numer[k % M] * Fraction(B) ** (k // M) for k in range(n + 1)]
