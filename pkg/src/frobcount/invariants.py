"""Randomised invariant suites shared by ``verify`` and the test-suite.

Each check tallies failed draws per invariant name in a ``SuiteResult``; a
failing draw is logged with the offending input so it can be replayed.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from . import aschreier as AS
from . import fppoly
from .discriminant import disc_single_I_identity, disc_split, tie_orderings_agree
from .modstruct import ModuleContext, psi

log = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    draws: int = 0
    failures: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool, detail=None) -> None:
        self.failures.setdefault(name, 0)
        if not ok:
            self.failures[name] += 1
            log.warning("invariant %s failed on %r", name, detail)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def random_laurent(rng: random.Random, ctx: ModuleContext, lo: int, hi: int, density: float = 0.5) -> AS.LaurentElem:
    size = ctx.F.size
    return AS.LaurentElem.from_dict({j: rng.randrange(size) for j in range(lo, hi + 1) if rng.random() < density})


def random_rep(rng: random.Random, ctx: ModuleContext, val_bound: int) -> AS.ASRep:
    size = ctx.F.size
    terms = {-m: rng.randrange(size) for m in range(1, val_bound + 1) if m % ctx.p and rng.random() < 0.6}
    return AS.make_rep(ctx.L, rng.randrange(ctx.p), terms)


def check_field(ctx: ModuleContext, res: SuiteResult, rng: random.Random, draws: int) -> None:
    F = ctx.F
    zero_trace = sum(1 for x in F.elements() if F.absolute_trace(x) == 0)
    res.record("trace-kernel-size", zero_trace == F.size // F.p, zero_trace)
    for _ in range(draws):
        x, y = rng.randrange(F.size), rng.randrange(F.size)
        res.record("wp-in-trace-kernel", F.absolute_trace(F.sub(F.pow(x, F.p), x)) == 0, x)
        fx, fy = F.power_frobenius(x, 1), F.power_frobenius(y, 1)
        res.record("frobenius-additive", F.power_frobenius(F.add(x, y), 1) == F.add(fx, fy), (x, y))
        res.record("frobenius-multiplicative", F.power_frobenius(F.mul(x, y), 1) == F.mul(fx, fy), (x, y))


def check_artin_schreier(ctx: ModuleContext, res: SuiteResult, rng: random.Random, draws: int, window: int = 12) -> None:
    L, F = ctx.L, ctx.F
    for _ in range(draws):
        x = random_laurent(rng, ctx, -window, 3)
        y = random_laurent(rng, ctx, -window, 3)
        lhs = AS.wp_apply(F, AS.add(F, x, y))
        rhs = AS.add(F, AS.wp_apply(F, x), AS.wp_apply(F, y))
        res.record("wp-linear", lhs == rhs, (x, y))
        res.record(
            "sigma-wp-commute",
            AS.sigma_laurent(L, AS.wp_apply(F, x)) == AS.wp_apply(F, AS.sigma_laurent(L, x)),
            x,
        )
        rep, wit = AS.reduce_mod_wp(L, x)
        diff = AS.sub(F, x, AS.rep_to_laurent(L, rep))
        res.record("reduction-sound", diff == AS.add(F, AS.wp_apply(F, wit.y), wit.tail), x)
        again, _ = AS.reduce_mod_wp(L, AS.rep_to_laurent(L, rep))
        res.record("reduction-idempotent", again == rep, rep)
        res.record("reduction-sigma", AS.reduce_mod_wp(L, AS.sigma_laurent(L, x))[0] == AS.sigma_apply(L, rep), x)
        if not rep.is_zero and rep.terms:
            lx = AS.rep_to_laurent(L, rep)
            res.record("nu-is-valuation", lx.valuation == rep.nu, rep)


def check_structure(ctx: ModuleContext, res: SuiteResult) -> None:
    for m in ctx.exponents:
        res.record("min-poly", ctx.min_poly_holds(m), m)
    if ctx.strict:
        F, p, e = ctx.F, ctx.p, ctx.e
        for i in ctx.factors.indices():
            block = [m for m in range(1, e * p + 1) if m % p]
            total = sum(ctx.dim_at(i, m) for m in block)
            res.record("block-dimension", total == ctx.factors.ell(i) * (p - 1) * F.r, (i, total))
            for m in ctx.exponents:
                if (i, m + e) in ctx.dims:
                    res.record("e-periodic", ctx.dims[i, m] == ctx.dims[i, m + e], (i, m))
    full = fppoly.x_pow_minus_one(ctx.d, ctx.p)
    acc = ()
    for ei in ctx.idempotents:
        acc = fppoly.add(acc, ei, ctx.p)
    res.record("idempotents-sum-to-one", fppoly.mod(acc, full, ctx.p) == (1,), acc)


def check_modules(ctx: ModuleContext, res: SuiteResult, rng: random.Random, draws: int, val_bound: int) -> None:
    L, p = ctx.L, ctx.p
    done = 0
    while done < draws:
        rep = random_rep(rng, ctx, val_bound)
        if rep.is_zero:
            continue
        done += 1
        res.draws += 1
        parts = ctx.component_split(rep)
        total = AS.ASRep()
        for a in parts:
            total = AS.rep_add(L, total, a)
        res.record("components-sum", total == rep, rep)
        for i, a in zip(ctx.factors.indices(), parts):
            killed = AS.poly_apply(L, ctx.factors.factor(i), a).is_zero
            res.record("component-in-kernel", killed, (rep, i))
        label = ctx.galois_label(rep)
        orbit = ctx.module_orbit(rep)
        res.record("orbit-size", len(orbit.elements) == p**label.ell, rep)
        res.record("generator-count", len(orbit.generators) == psi(p, ctx.factors, label.I), rep)
        try:
            rpt = disc_split(ctx, rep)
            res.record("block-equals-orbit-sum", True)
        except ArithmeticError as exc:
            res.record("block-equals-orbit-sum", False, (rep, str(exc)))
            continue
        res.record("tower-formula", rpt.disc_split_over_F == ctx.f * rpt.disc_split_over_L + p**label.ell * L.disc, rep)
        res.record("tie-orderings", tie_orderings_agree(ctx, rep), rep)
        if len(label.I) == 1:
            lhs, rhs = disc_single_I_identity(ctx, rep)
            res.record("disc-single-I", lhs == rhs, rep)


def run_suite(ctxs, draws: int = 1000, val_bound: int = 4, seed: int = 0) -> SuiteResult:
    res = SuiteResult()
    rng = random.Random(seed)
    for ctx in ctxs:
        check_field(ctx, res, rng, draws)
        check_artin_schreier(ctx, res, rng, draws)
        check_structure(ctx, res)
        check_modules(ctx, res, rng, draws, min(val_bound, max(ctx.exponents)))
    return res
