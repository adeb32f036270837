"""Discriminant exponents of the degree-pd field L(wp^-1(alpha)) and of its splitting field.

The block formula for the splitting field is always checked against the
conductor-discriminant sum over the nonzero elements of the module orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .aschreier import ZeroClassError, cond
from .modstruct import ModuleContext


class DiscMismatch(ArithmeticError):
    pass


@dataclass(frozen=True)
class DiscReport:
    disc_pd: int
    disc_split_over_L: int
    disc_split_over_F: int
    conductors: tuple  # ((factor index, Cond), ...) sorted by Cond
    block_sums: tuple  # R_0 = 0, R_1, ..., R_J


def block_disc(p: int, ells, conds) -> int:
    """sum_j (p^R_j - p^R_{j-1}) * Cond_j for a chain already in the chosen order."""
    total, R = 0, 0
    for ell, c in zip(ells, conds):
        total += (p ** (R + ell) - p**R) * c
        R += ell
    return total


def split_over_F(f: int, e: int, p: int, ell: int, over_L: int) -> int:
    return f * over_L + p**ell * f * (e - 1)


def pd_from_cond(p: int, d: int, e: int, f: int, c: int) -> int:
    return p * f * (e - 1) + (p - 1) * f * c


def disc_pd(ctx: ModuleContext, rep) -> int:
    if rep.is_zero:
        raise ZeroClassError("element lies in wp(L): no extension")
    p, e, f, d = ctx.p, ctx.e, ctx.f, ctx.d
    value = pd_from_cond(p, d, e, f, cond(rep))
    if rep.nu < 0 and value != p * d - f + (p - 1) * f * (-rep.nu):
        raise DiscMismatch("tower formula disagrees with pd - f + (p-1) f |nu|")  # pragma: no cover
    return value


def orbit_disc_sum(ctx: ModuleContext, rep) -> int:
    return sum(cond(b) for b in ctx.module_elements(rep) if not b.is_zero)


def disc_split(ctx: ModuleContext, rep, check_orbit: bool = True) -> DiscReport:
    if rep.is_zero:
        raise ZeroClassError("element lies in wp(L): no extension")
    p, e, f = ctx.p, ctx.e, ctx.f
    parts = ctx.component_split(rep)
    chain = sorted(
        ((cond(a), i) for i, a in zip(ctx.factors.indices(), parts) if not a.is_zero),
    )
    ells = [ctx.factors.ell(i) for _, i in chain]
    conds = [c for c, _ in chain]
    over_L = block_disc(p, ells, conds)
    if check_orbit:
        orbit = orbit_disc_sum(ctx, rep)
        if orbit != over_L:
            raise DiscMismatch(f"block formula {over_L} != orbit sum {orbit} for {rep}")
    ell = sum(ells)
    R = [0]
    for x in ells:
        R.append(R[-1] + x)
    return DiscReport(
        disc_pd(ctx, rep),
        over_L,
        split_over_F(f, e, p, ell, over_L),
        tuple((i, c) for c, i in chain),
        tuple(R),
    )


def tie_orderings_agree(ctx: ModuleContext, rep) -> bool:
    """Every ordering compatible with ascending conductors gives the same value."""
    p = ctx.p
    rpt = disc_split(ctx, rep, check_orbit=False)
    values = set()
    for perm in permutations(rpt.conductors):
        conds = [c for _, c in perm]
        if conds != sorted(conds):
            continue
        values.add(block_disc(p, [ctx.factors.ell(i) for i, _ in perm], conds))
    return values == {rpt.disc_split_over_L}


def disc_single_I_identity(ctx: ModuleContext, rep) -> tuple[int, int]:
    rpt = disc_split(ctx, rep)
    if len(rpt.conductors) != 1:
        raise ValueError("identity needs a single component")
    p, e, f = ctx.p, ctx.e, ctx.f
    ell = rpt.block_sums[-1]
    lhs = rpt.disc_split_over_F
    num = (p**ell - 1) * rpt.disc_pd - f * (e - 1) * (p**ell - p)
    if num % (p - 1):
        raise DiscMismatch("right-hand side is not integral")  # pragma: no cover
    return lhs, num // (p - 1)
