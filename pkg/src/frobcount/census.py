"""Exact field counts: closed forms, conductor-tuple sums and a brute-force oracle.

Counting unit: one cyclic F_p[H]-module <alpha> per field class, so a count of
elements is turned into a count of fields by dividing by the number of cyclic
generators Psi(I).  Every such division is checked to be exact.

The oracle never touches the closed forms.  It works on the representative
system directly, in one of two modes:

* ``elements``: every ASRep with |nu| <= val_bound is built, its module is
  spanned explicitly and distinct modules are collected in a set.
* ``signature``: for each exponent m the coefficient space V_{-m} is split
  into classes of lambdas with the same nonvanishing pattern
  {g : g(sigma)(lambda pi^-m) != 0}.  Since g(sigma) acts on each exponent
  separately, that pattern per exponent is all one needs to know the module
  size, the conductor of every element of the module and the support I.
  Exponents are processed from the top down and identical partial states are
  merged, so the cost no longer grows like the number of elements.
"""

from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import fppoly
from .aschreier import make_rep
from .cyclofactor import FactorTable, factor_xd_minus_1
from .discriminant import block_disc, disc_split, pd_from_cond, split_over_F
from .modstruct import ModuleContext, build_module_context, psi
from .tame import enumerate_cyclic_cd

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
ELEMENT_BUDGET = 2 * 10**4


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int, what: str = "elements"):
        super().__init__(f"enumeration needs about {needed} {what}, budget is {budget}")
        self.needed = needed
        self.budget = budget


class CountError(ArithmeticError):
    """A field count came out non-integral or negative."""


def exact_div(num, den: int, what: str = "") -> int:
    q, rem = divmod(num, den)
    if rem:
        raise CountError(f"{what}: {num} is not divisible by {den}")
    return q


def all_subsets(factors: FactorTable) -> list[tuple]:
    idx = list(factors.indices())
    return [I for k in range(1, len(idx) + 1) for I in combinations(idx, k)]


@dataclass
class CountTable:
    """Per-exponent counts for one group label (and one L, or all of them)."""

    p: int
    r: int
    d: int
    I: tuple
    L: object  # (e, f, twist) or "all"
    convention: str  # "pd" or "split"
    method: str  # closed / tuple / oracle / series
    x_max: int
    counts: dict = field(default_factory=dict)

    def count(self, x: int) -> int:
        return self.counts.get(x, 0)

    def cumulative(self, x: int) -> int:
        return sum(c for k, c in self.counts.items() if k <= x)

    def rows(self) -> list[tuple]:
        out, acc = [], 0
        for x in range(self.x_max + 1):
            c = self.counts.get(x, 0)
            acc += c
            out.append((x, c, acc, self.method))
        return out

    def series(self) -> list[int]:
        return [self.counts.get(x, 0) for x in range(self.x_max + 1)]

    def restricted(self, x_max: int) -> CountTable:
        return CountTable(self.p, self.r, self.d, self.I, self.L, self.convention, self.method,
                          x_max, {k: v for k, v in self.counts.items() if k <= x_max})

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "d": self.d,
            "I": list(self.I),
            "L": list(self.L) if self.L != "all" else "all",
            "convention": self.convention,
            "rows": [{"x": x, "count": c, "cumulative": s, "method": m} for x, c, s, m in self.rows()],
        }


# -- contexts ---------------------------------------------------------------


def contexts(p: int, r: int, d: int, val_bound: int = 1, strict: bool = True) -> list[ModuleContext]:
    factors = factor_xd_minus_1(p, d)
    return [build_module_context(L, factors, val_bound, strict) for L in enumerate_cyclic_cd(p, r, d)]


def _q(ctx: ModuleContext) -> int:
    return ctx.F.q


# -- closed forms -----------------------------------------------------------


def closed_N_i(ctx: ModuleContext, i: int, x: int) -> int:
    """#{alpha in Y_i \\ 0 : |nu(alpha)| <= x}."""
    if x < 0:
        return 0
    n, y = divmod(x, ctx.e * ctx.p)
    ell = ctx.factors.ell(i)
    return ctx.p ** ctx.kappa(i) * _q(ctx) ** (n * (ctx.p - 1) * ell + ctx.gamma(i, y) * ell) - 1


def closed_N_tilde(ctx: ModuleContext, i: int, x: int) -> int:
    """Number of alpha in Y_i with |nu| = x exactly (x = 0 is the omega_0 line)."""
    if x == 0:
        return ctx.p ** ctx.kappa(i) - 1
    return closed_N_i(ctx, i, x) - closed_N_i(ctx, i, x - 1)


def residue_levels(ctx: ModuleContext, i: int) -> list[int]:
    """The p - 1 values l~(1) < ... < l~(p-1) in [0, ep) carrying factor i."""
    rho = ctx.rho[i]
    return [y for y in range(ctx.e * ctx.p) if y % ctx.e == rho and y % ctx.p]


def N_tilde_formula(ctx: ModuleContext, i: int, n: int) -> int:
    """Level count written as p^kappa q^(l(p-1)k) (q^l - 1) q^(l(v-1)); 0 off the residue class."""
    k, y = divmod(n, ctx.e * ctx.p)
    levels = residue_levels(ctx, i)
    if y not in levels:
        return 0
    v = levels.index(y) + 1
    ell, q = ctx.factors.ell(i), _q(ctx)
    return ctx.p ** ctx.kappa(i) * q ** (ell * (ctx.p - 1) * k) * (q**ell - 1) * q ** (ell * (v - 1))


def closed_N(ctx: ModuleContext, I, x: int) -> tuple[int, dict, dict]:
    per = {i: closed_N_i(ctx, i, x) for i in I}
    tilde = {i: closed_N_tilde(ctx, i, x) for i in I}
    return math.prod(per.values()), per, tilde


def N_I_inclusion_exclusion(ctx: ModuleContext, I, x: int) -> int:
    """N_I as the alternating sum over J subset of I of |Y_J restricted to |nu| <= x|."""
    total = 0
    for k in range(len(I) + 1):
        for J in combinations(I, k):
            size = math.prod(closed_N_i(ctx, i, x) + 1 for i in J)
            total += (-1) ** (len(I) - k) * size
    return total


def z_pd_cumulative_L(ctx: ModuleContext, I, x: int) -> int:
    p, d, f = ctx.p, ctx.d, ctx.f
    s = psi(p, ctx.factors, I)
    z = (x - p * d + f) // ((p - 1) * f)
    if z >= 1:
        return exact_div(closed_N(ctx, I, z)[0], s, f"N_I/Psi at z={z}")
    if x >= p * d - p * f:
        return exact_div(closed_N(ctx, I, 0)[0], s, "N_I/Psi at z=0")
    return 0


def _table_from_cumulative(cum, x_max: int) -> dict:
    out, prev = {}, 0
    for x in range(x_max + 1):
        cur = cum(x)
        if cur < prev:
            raise CountError(f"cumulative count decreased at x={x}")
        if cur != prev:
            out[x] = cur - prev
        prev = cur
    return out


def _meta(ctxs):
    c0 = ctxs[0]
    return c0.p, c0.F.r, c0.d


def _label(ctxs):
    return ctxs[0].L.label if len(ctxs) == 1 else "all"


def z_pd_exact(ctxs: list[ModuleContext], I, x_max: int) -> CountTable:
    I = tuple(I)
    counts = _table_from_cumulative(lambda x: sum(z_pd_cumulative_L(c, I, x) for c in ctxs), x_max)
    p, r, d = _meta(ctxs)
    return CountTable(p, r, d, I, _label(ctxs), "pd", "closed", x_max, counts)


def split_levels(ctx: ModuleContext, i: int, n_max: int) -> list[tuple[int, int]]:
    """(Cond, count) pairs for the i-component of a class, Cond capped at n_max + 1."""
    out = []
    if ctx.kappa(i):
        out.append((0, ctx.p - 1))
    for n in range(1, n_max + 1):
        c = closed_N_tilde(ctx, i, n)
        if c:
            out.append((n + 1, c))
    return out


def z_split_L(ctx: ModuleContext, I, x_max: int) -> dict:
    """disc -> field count over one L, by enumerating conductor tuples."""
    p, e, f = ctx.p, ctx.e, ctx.f
    ells = {i: ctx.factors.ell(i) for i in I}
    ell = sum(ells.values())
    base = p**ell * f * (e - 1)
    if x_max < base:
        return {}
    n_max = (x_max - base) // (f * (p - 1)) + 1
    weights: dict = defaultdict(int)
    for choice in product(*(split_levels(ctx, i, n_max) for i in I)):
        chain = sorted(zip((c for c, _ in choice), I))
        over_L = block_disc(p, [ells[i] for _, i in chain], [c for c, _ in chain])
        x = split_over_F(f, e, p, ell, over_L)
        if x <= x_max:
            weights[x] += math.prod(w for _, w in choice)
    s = psi(p, ctx.factors, I)
    return {x: exact_div(w, s, f"split weight at x={x}") for x, w in weights.items()}


def z_split_exact(ctxs: list[ModuleContext], I, x_max: int) -> CountTable:
    I = tuple(I)
    counts: Counter = Counter()
    for ctx in ctxs:
        counts.update(z_split_L(ctx, I, x_max))
    p, r, d = _meta(ctxs)
    return CountTable(p, r, d, I, _label(ctxs), "split", "tuple", x_max, dict(counts))


def pd_principal(ctxs: list[ModuleContext], I, x: int) -> Fraction:
    """Leading inclusion-exclusion term of the cumulative pd count (no -1 corrections)."""
    total = Fraction(0)
    for ctx in ctxs:
        p, d, f = ctx.p, ctx.d, ctx.f
        z = (x - p * d + f) // ((p - 1) * f)
        if z < 1:
            continue
        n, y = divmod(z, ctx.e * p)
        q = _q(ctx)
        term = 1
        for i in I:
            ell = ctx.factors.ell(i)
            term *= p ** ctx.kappa(i) * q ** (ell * (n * (p - 1) + ctx.gamma(i, y)))
        total += Fraction(term, psi(p, ctx.factors, I))
    return total


# -- coverage of an oracle run ----------------------------------------------


def pd_coverage(ctx: ModuleContext, val_bound: int) -> int:
    """Largest x such that every pd field over L with disc <= x has |nu| <= val_bound."""
    return pd_from_cond(ctx.p, ctx.d, ctx.e, ctx.f, val_bound + 2) - 1


def split_coverage(ctx: ModuleContext, I, val_bound: int) -> int:
    p = ctx.p
    ell = ctx.factors.ell_of(I)
    top = p**ell - p ** (ell - min(ctx.factors.ell(i) for i in I))
    return ctx.f * top * (val_bound + 2) + p**ell * ctx.f * (ctx.e - 1) - 1


def val_bound_for_split(ctx: ModuleContext, I, x_max: int) -> int:
    """Smallest valuation bound whose oracle run covers split discs up to x_max."""
    p = ctx.p
    ell = ctx.factors.ell_of(I)
    top = p**ell - p ** (ell - min(ctx.factors.ell(i) for i in I))
    v = (x_max - p**ell * ctx.f * (ctx.e - 1)) // (ctx.f * top) - 1
    return max(v, 0)


def val_bound_for_pd(ctx: ModuleContext, x_max: int) -> int:
    v = (x_max - ctx.p * ctx.f * (ctx.e - 1)) // ((ctx.p - 1) * ctx.f) - 1
    return max(v, 0)


# -- the oracle -------------------------------------------------------------


@dataclass
class OracleResult:
    """Field counts per (L, I) from brute force, with the disc range they are complete on."""

    p: int
    r: int
    d: int
    val_bound: int
    mode: str
    pd: dict  # (L label, I) -> {disc: count}
    split: dict  # (L label, I) -> {disc: count}
    elements: int  # nonzero representatives covered
    labels: list  # L labels in enumeration order
    ctxs: list = field(repr=False, default_factory=list)

    def pd_limit(self, L=None) -> int:
        cs = [c for c in self.ctxs if L in (None, "all", c.L.label)]
        return min(pd_coverage(c, self.val_bound) for c in cs)

    def split_limit(self, I, L=None) -> int:
        cs = [c for c in self.ctxs if L in (None, "all", c.L.label)]
        return min(split_coverage(c, I, self.val_bound) for c in cs)

    def table(self, I, convention: str, L="all", x_max: int | None = None) -> CountTable:
        I = tuple(I)
        src = self.pd if convention == "pd" else self.split
        limit = self.pd_limit(L) if convention == "pd" else self.split_limit(I, L)
        x_max = limit if x_max is None else min(x_max, limit)
        counts: Counter = Counter()
        for lab in self.labels:
            if L not in ("all", lab):
                continue
            counts.update({x: c for x, c in src.get((lab, I), {}).items() if x <= x_max})
        return CountTable(self.p, self.r, self.d, I, L, convention, "oracle", x_max, dict(counts))


class _Ring:
    """F_p[X]/(X^d - 1) with elements as length-d tuples, indexed in product order."""

    def __init__(self, p: int, d: int):
        self.p, self.d = p, d
        self.elems = list(product(range(p), repeat=d))
        self.index = {g: k for k, g in enumerate(self.elems)}
        self.one = self.index[(1,) + (0,) * (d - 1)]
        self._units: dict = {}

    def mul(self, a: int, b: int) -> int:
        p, d = self.p, self.d
        x, y = self.elems[a], self.elems[b]
        out = [0] * d
        for i, c in enumerate(x):
            if c:
                for j, c2 in enumerate(y):
                    if c2:
                        out[(i + j) % d] = (out[(i + j) % d] + c * c2) % p
        return self.index[tuple(out)]

    def sub(self, a: int, b: int) -> int:
        x, y = self.elems[a], self.elems[b]
        return self.index[tuple((s - t) % self.p for s, t in zip(x, y))]

    def unit_count_mod(self, ann: frozenset) -> int:
        """#{g : g is invertible modulo the ideal ann}."""
        if ann not in self._units:
            n = 0
            for g in range(len(self.elems)):
                if any(self.sub(self.one, self.mul(g, h)) in ann for h in range(len(self.elems))):
                    n += 1
            self._units[ann] = n
        return self._units[ann]

    def value_at_one(self, g: int) -> int:
        return sum(self.elems[g]) % self.p


def _exponent_classes(ctx: ModuleContext, ring: _Ring, m: int, allowed: set | None) -> list:
    """[(frozenset of g with g(sigma)(lam pi^-m) != 0, number of lam)]."""
    groups: Counter = Counter()
    polys = [fppoly.trim(g) for g in ring.elems]
    idem = [ring.index[tuple(list(ei) + [0] * (ring.d - len(ei)))] for ei in ctx.idempotents]
    for lam in ctx.F.elements():
        sig = frozenset(k for k, g in enumerate(polys) if ctx.poly_on_coeff(m, g, lam))
        if allowed is not None:
            support = {i for i, e in zip(ctx.factors.indices(), idem) if e in sig}
            if not support <= allowed:
                continue
        groups[sig] += 1
    return sorted(groups.items(), key=lambda t: (len(t[0]), sorted(t[0])))


def _signature_states(ctx: ModuleContext, ring: _Ring, val_bound: int, allowed, budget: int):
    exps = [m for m in range(1, val_bound + 1) if m % ctx.p]
    n = len(ring.elems)
    states: dict = {(-1,) * n: 1}
    work = 0
    for m in reversed(exps):
        classes = _exponent_classes(ctx, ring, m, allowed)
        nxt: dict = defaultdict(int)
        for st, w in states.items():
            for sig, mult in classes:
                new = tuple(m if (lev == -1 and k in sig) else lev for k, lev in enumerate(st))
                nxt[new] += w * mult
        work += len(states) * len(classes)
        if work > budget:
            raise BudgetExceeded(work, budget, "state transitions")
        states = nxt
    const_sig = frozenset(k for k in range(n) if ring.value_at_one(k))
    final: dict = defaultdict(int)
    for st, w in states.items():
        final[st] += w
        if allowed is None or 1 in allowed:
            new = tuple(0 if (lev == -1 and k in const_sig) else lev for k, lev in enumerate(st))
            final[new] += w * (ctx.p - 1)
    return final


def _level_cond(level: int) -> int:
    return 0 if level <= 0 else level + 1


def _oracle_L_signature(ctx: ModuleContext, ring: _Ring, val_bound: int, allowed, budget: int):
    p, e, f = ctx.p, ctx.e, ctx.f
    idem = [ring.index[tuple(list(ei) + [0] * (ring.d - len(ei)))] for ei in ctx.idempotents]
    pd: dict = defaultdict(lambda: defaultdict(Fraction))
    split: dict = defaultdict(lambda: defaultdict(Fraction))
    n_elems = 0
    for st, w in _signature_states(ctx, ring, val_bound, allowed, budget).items():
        nz = [k for k, lev in enumerate(st) if lev != -1]
        if not nz:
            continue
        n_elems += w
        ann = frozenset(k for k, lev in enumerate(st) if lev == -1)
        size = len(ring.elems) // len(ann)
        gens = Fraction(ring.unit_count_mod(ann), len(ann))
        over_L = Fraction(sum(_level_cond(st[k]) for k in nz), len(ann))
        I = tuple(i for i, ek in zip(ctx.factors.indices(), idem) if st[ek] != -1)
        if size != p ** ctx.factors.ell_of(I):
            raise CountError(f"module of size {size} does not match support {I}")
        if over_L.denominator != 1:
            raise CountError("orbit conductor sum is not an integer")  # pragma: no cover
        x_pd = pd_from_cond(p, ctx.d, e, f, _level_cond(st[ring.one]))
        x_split = split_over_F(f, e, p, ctx.factors.ell_of(I), int(over_L))
        pd[I][x_pd] += w / gens
        split[I][x_split] += w / gens
    return pd, split, n_elems


def _all_reps(ctx: ModuleContext, val_bound: int):
    exps = [m for m in range(1, val_bound + 1) if m % ctx.p]
    F = ctx.F
    for mu0 in range(ctx.p):
        for coeffs in product(list(F.elements()), repeat=len(exps)):
            yield make_rep(ctx.L, mu0, {-m: c for m, c in zip(exps, coeffs) if c})


def _oracle_L_elements(ctx: ModuleContext, val_bound: int, allowed):
    """Literal enumeration: every representative, every module spanned by hand."""
    pd: dict = defaultdict(lambda: defaultdict(int))
    split: dict = defaultdict(lambda: defaultdict(int))
    seen: set = set()
    n_elems = 0
    for rep in _all_reps(ctx, val_bound):
        if rep.is_zero:
            continue
        label = ctx.galois_label(rep)
        if allowed is not None and not set(label.I) <= allowed:
            continue
        n_elems += 1
        orbit = ctx.module_orbit(rep)
        if orbit.elements in seen:
            continue
        seen.add(orbit.elements)
        if len(orbit.elements) != p_pow(ctx.p, label.ell) or len(orbit.generators) != psi(ctx.p, ctx.factors, label.I):
            raise CountError(f"orbit of {rep} has the wrong size or generator count")
        rpt = disc_split(ctx, rep)
        pd[label.I][rpt.disc_pd] += 1
        split[label.I][rpt.disc_split_over_F] += 1
    return pd, split, n_elems


def p_pow(p: int, k: int) -> int:
    return p**k


def element_count(ctx: ModuleContext, val_bound: int) -> int:
    exps = [m for m in range(1, val_bound + 1) if m % ctx.p]
    return ctx.p * ctx.F.size ** len(exps)


def oracle_census(
    p: int,
    r: int,
    d: int,
    val_bound: int,
    mode: str = "signature",
    budget: int | None = None,
    labels=None,
    L_filter=None,
) -> OracleResult:
    """Brute-force field census over every cyclic L, all group labels at once.

    ``labels`` optionally restricts to a set of I's (components outside their
    union are forced to vanish); ``L_filter`` to a list of (e, f, twist).
    """
    if mode not in ("signature", "elements"):
        raise ValueError(f"unknown oracle mode {mode!r}")
    factors = factor_xd_minus_1(p, d)
    ring = _Ring(p, d)
    allowed = None if labels is None else set().union(*map(set, labels))
    ctxs = []
    for L in enumerate_cyclic_cd(p, r, d):
        if L_filter is not None and L.label not in [tuple(x) for x in L_filter]:
            continue
        ctxs.append(build_module_context(L, factors, max(val_bound, 1), strict=False))
    if mode == "elements":
        budget = ELEMENT_BUDGET if budget is None else budget
        need = sum(element_count(c, val_bound) for c in ctxs)
        if need > budget:
            raise BudgetExceeded(need, budget)
    else:
        budget = DEFAULT_BUDGET if budget is None else budget

    pd_all, split_all, total = {}, {}, 0
    for ctx in ctxs:
        if mode == "elements":
            pd, split, n = _oracle_L_elements(ctx, val_bound, allowed)
        else:
            pd, split, n = _oracle_L_signature(ctx, ring, val_bound, allowed, budget)
        total += n
        for src, dst in ((pd, pd_all), (split, split_all)):
            for I, tab in src.items():
                if labels is not None and I not in [tuple(x) for x in labels]:
                    continue
                clean = {}
                for x, c in tab.items():
                    c = Fraction(c)
                    if c.denominator != 1:
                        raise CountError(f"non-integral field count {c} for L={ctx.L.label}, I={I}, x={x}")
                    clean[x] = int(c)
                dst[ctx.L.label, I] = clean
        log.debug("oracle L=%s: %d elements", ctx.L.label, n)
    return OracleResult(p, r, d, val_bound, mode, pd_all, split_all, total, [c.L.label for c in ctxs], ctxs)


# -- growth exponents -------------------------------------------------------


@dataclass
class ExponentEstimate:
    a_hat: float
    target: Fraction
    rel_error: float
    period: int
    ratio_residuals: list  # relative |Z(x+P)/Z(x) - q^(aP)| over the last period
    principal_residuals: list | None  # exact, should all be 0
    passed: bool


def target_exponent(p: int, d: int, ell: int, convention: str) -> Fraction:
    if convention == "pd":
        return Fraction(ell, p * d)
    return Fraction(p - 1, p * d) * Fraction(ell, p**ell - 1)


def period(p: int, d: int, ell: int, convention: str) -> int:
    return (p - 1) * p * d if convention == "pd" else (p**ell - 1) * p * d


def estimate_exponent(
    table: CountTable,
    q: int,
    ell: int,
    principal=None,
    tol: float = 1e-6,
    periods: int = 3,
) -> ExponentEstimate:
    """Mean of log_q(Z(x+P)/Z(x))/P over the last ``periods`` periods of the table.

    ``principal`` is an optional exact sequence (index x) of the principal part
    of the cumulative count; its period residuals Z(x+P) - q^(aP) Z(x) are
    reported beyond the pre-period and must vanish exactly.
    """
    p, d, conv = table.p, table.d, table.convention
    P = period(p, d, ell, conv)
    a = target_exponent(p, d, ell, conv)
    cum = []
    acc = 0
    for x in range(table.x_max + 1):
        acc += table.counts.get(x, 0)
        cum.append(acc)
    start = table.x_max - (periods + 1) * P + 1
    if start < 0 or cum[start] <= 0:
        raise ValueError(f"table too short: need {(periods + 1) * P} exponents with Z > 0")
    xs = range(start, table.x_max - P + 1)
    logs = [(math.log(cum[x + P]) - math.log(cum[x])) / (P * math.log(q)) for x in xs]
    a_hat = math.fsum(logs) / len(logs)
    factor = Fraction(q) ** (a * P)
    ratio_res = [abs(Fraction(cum[x + P], cum[x]) / factor - 1) for x in range(table.x_max - 2 * P + 1, table.x_max - P + 1)]
    prin_res = None
    if principal is not None:
        n = len(principal)
        lo = n - (periods + 1) * P
        prin_res = [principal[x + P] - factor * principal[x] for x in range(max(lo, 0), n - P)]
    rel = abs(a_hat - float(a)) / float(a)
    ok = rel < tol and (prin_res is None or all(r == 0 for r in prin_res))
    return ExponentEstimate(a_hat, a, rel, P, [float(r) for r in ratio_res], prin_res, ok)


def compare_tables(a: CountTable, b: CountTable, x_max: int | None = None) -> list[tuple]:
    """Exponents where two tables disagree, as (x, a-count, b-count)."""
    top = min(a.x_max, b.x_max) if x_max is None else x_max
    return [(x, a.count(x), b.count(x)) for x in range(top + 1) if a.count(x) != b.count(x)]


def correction_gap(ctxs: list[ModuleContext], I, convention: str) -> Fraction:
    """Decay rate (in log_q per unit x) of the gap between Z and its principal part."""
    from itertools import permutations

    from .dirichlet import pole_report

    fa = ctxs[0].factors
    p, d = fa.p, fa.d
    if convention == "pd":
        return Fraction(min(fa.ell(i) for i in I), p * d)
    top, second = None, Fraction(0)
    for tau in permutations(I):
        rep = pole_report(p, d, [fa.ell(i) for i in tau])
        top = rep.sigma_max
        if len(rep.sigmas) > 1:
            second = max(second, rep.sigmas[-2])
    return top - second


def growth_check(ctxs: list[ModuleContext], I, convention: str, tol: float = 1e-6, periods: int = 3) -> tuple:
    """Closed-form table long enough for ``tol``, its principal part, and the estimate."""
    from .dirichlet import assemble_phi, principal_coeffs, principal_part

    I = tuple(I)
    fa = ctxs[0].factors
    p, d, q = fa.p, fa.d, ctxs[0].F.q
    ell = fa.ell_of(I)
    P = period(p, d, ell, convention)
    gap = correction_gap(ctxs, I, convention)
    x_max = math.ceil(math.log(100 / tol, q) / gap) + (periods + 2) * P
    if convention == "pd":
        table = z_pd_exact(ctxs, I, x_max)
        principal = [pd_principal(ctxs, I, x) for x in range(x_max + 1)]
    else:
        table = z_split_exact(ctxs, I, x_max)
        B = Fraction(q) ** ((p - 1) * ell)
        numer = principal_part(assemble_phi(ctxs, I), B, P, extra=((1, 1),))
        principal = principal_coeffs(numer, B, P, x_max)
    return table, principal, estimate_exponent(table, q, ell, principal=principal, tol=tol, periods=periods)
