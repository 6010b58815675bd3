"""Superpotentials and BPS numbers from a phase and framing.

Pipeline: edge coordinates on a gauge-fixed chart -> monomials ``U_i``,
``V_i`` of the lift and kernel classes -> polynomial relations between
them -> framing twist -> series solution ``V(U)`` -> ``W`` with
``U_i dW/dU_i = -log V_i`` -> multiple-cover inversion to BPS numbers.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg.mpoly import MPoly, RatFunc, common_vars
from .exactalg.numtheory import divisors, gcd_all, moebius
from .exactalg.resultant import resultant_eliminate
from .exactalg.series import TruncSeries, all_exponents
from .exactalg.solve import residual_of, series_solve
from .homlattice import FramingNotSymmetric, PhaseFraming, h1_presentation, validate_phase_framing
from .periods import PeriodChart, build_chart, monomial_of_class
from .ribbon import RibbonGraph

log = logging.getLogger(__name__)

Exp = Tuple[int, ...]
DEFAULT_SEED = 20240601
DEFAULT_ORDER = 10


class ConventionError(ValueError):
    pass


class NotClosed(AssertionError):
    pass


class TriangularSolveStuck(RuntimeError):
    pass


class VerificationFailed(AssertionError):
    pass


def u_names(g: int) -> List[str]:
    return [f"U{i + 1}" for i in range(g)]


def v_names(g: int) -> List[str]:
    return [f"V{i + 1}" for i in range(g)]


def build_uv_monomials(chart: PeriodChart, pf: PhaseFraming, duality_sign: int = 1) -> Tuple[List[RatFunc], List[RatFunc]]:
    """Zero-framing coordinates ``U_i = (-x)^{mu_i}`` and ``V_i = (-x)^{-nu_i}``.

    Monomials are taken in the variables ``-x_e``, so a single edge gives
    ``U = -x_e`` while a sum of two edges carries no sign.  A phase whose
    lifts pair to minus the identity with the kernel is read on the mirror
    graph, where every edge coordinate is inverted.
    """
    if duality_sign not in (1, -1):
        raise ValueError("duality_sign must be +1 or -1")
    e = duality_sign
    us = [_signed_monomial(chart, tuple(e * k for k in mu)) for mu in pf.lift_classes]
    vs = [_signed_monomial(chart, tuple(-e * k for k in nu)) for nu in pf.kernel_classes]
    return us, vs


def _signed_monomial(chart: PeriodChart, c) -> RatFunc:
    m = monomial_of_class(chart, c)
    return -m if sum(c) % 2 else m


# -- relations between U and V -------------------------------------------------------


def _normalize_relation(p: MPoly, v_name: Optional[str] = None) -> MPoly:
    p = p.monic_normalized()
    if v_name is not None:
        lin = [c for e, c in p.terms.items() if sum(e) == 1 and e[p.vars.index(v_name)] == 1]
        if lin and lin[0] < 0:
            p = -p
    return p


def _triangular(us: Sequence[RatFunc], t_vars: Sequence[str], U: Sequence[str]) -> Dict[str, RatFunc]:
    """Solve ``U_i = us_i(t)`` for the t's, each step linear in one variable."""
    ring = tuple(t_vars) + tuple(U)
    eqs = []
    for ui, expr in zip(U, us):
        e = expr.extend(ring)
        eqs.append(MPoly.var(ring, ui) * e.den - e.num)
    solved: List[Tuple[str, RatFunc]] = []
    remaining = list(t_vars)
    while remaining:
        choice = None
        for j, eq in enumerate(eqs):
            for t in remaining:
                if eq.degree(t) == 1:
                    choice = (j, t)
                    break
            if choice:
                break
        if choice is None:
            raise TriangularSolveStuck(f"no equation is linear in any of {remaining}")
        j, t = choice
        c0, c1 = eqs[j].coefficients_in(t)
        sol = RatFunc(-c0, c1, reduce=True)
        solved.append((t, sol))
        remaining.remove(t)
        new_eqs = []
        for k, eq in enumerate(eqs):
            if k == j:
                continue
            r = eq.subs({t: sol})
            r = r if isinstance(r, RatFunc) else RatFunc(r)
            new_eqs.append(r.reduced().num)
        eqs = new_eqs
    if any(not eq.is_zero() for eq in eqs):
        raise TriangularSolveStuck("equations left over after solving for all parameters")
    # back-substitute so each t depends on U only
    out: Dict[str, RatFunc] = {}
    for t, sol in reversed(solved):
        expr = sol.subs(out) if out else sol
        expr = expr if isinstance(expr, RatFunc) else RatFunc(expr)
        out[t] = expr.reduced()
    return out


def _sample_points(chart_vars, count, rng):
    return [{v: Fraction(rng.randint(-97, 97), rng.randint(1, 53)) for v in chart_vars} for _ in range(count)]


def _verify_on_locus(relations, us, vs, chart_vars, U, V, seed, count=20):
    rng = random.Random(seed)
    checked = 0
    attempts = 0
    while checked < count:
        attempts += 1
        if attempts > 50 * count:
            raise VerificationFailed("could not find enough nondegenerate sample points")
        (pt,) = _sample_points(chart_vars, 1, rng)
        try:
            vals = {u: e.evaluate(pt) for u, e in zip(U, us)}
            vals.update({v: e.evaluate(pt) for v, e in zip(V, vs)})
        except ZeroDivisionError:
            continue
        for r in relations:
            if r.evaluate(vals) != 0:
                return False
        checked += 1
    return True


@dataclass
class ZeroFramingRelations:
    relations: List[MPoly]
    mode: str
    solutions: Dict[str, RatFunc] = field(default_factory=dict)


def zero_framing_relations(us: Sequence[RatFunc], vs: Sequence[RatFunc], seed: int = DEFAULT_SEED) -> ZeroFramingRelations:
    """Polynomial relations ``R_i(U, V) = 0`` satisfied on the image of the chart."""
    g = len(us)
    U, V = u_names(g), v_names(g)
    chart_vars = us[0].vars if us else ()
    ring = tuple(U) + tuple(V)
    try:
        sols = _triangular(us, chart_vars, U)
        rels = []
        for vi, expr in zip(V, vs):
            r = expr.extend(common_vars(chart_vars, U)).subs(sols)
            r = (r if isinstance(r, RatFunc) else RatFunc(r)).reduced()
            num, den = r.num.extend(ring), r.den.extend(ring)
            rels.append(_normalize_relation(MPoly.var(ring, vi) * den - num, vi))
        mode = "triangular"
    except TriangularSolveStuck as exc:
        log.info("triangular solve stuck (%s); eliminating with resultants", exc)
        sols = {}
        big = tuple(chart_vars) + ring
        polys = []
        for name, expr in list(zip(U, us)) + list(zip(V, vs)):
            e = expr.extend(big)
            polys.append(MPoly.var(big, name) * e.den - e.num)
        candidates = resultant_eliminate(polys, chart_vars)
        rels = []
        for c in candidates:
            c = c.extend(ring)
            if _verify_on_locus([c], us, vs, chart_vars, U, V, seed):
                rels.append(_normalize_relation(c))
            else:
                log.info("dropping spurious factor %s", c)
        mode = "resultant"
    if not _verify_on_locus(rels, us, vs, chart_vars, U, V, seed):
        raise VerificationFailed("derived relations do not vanish on the parametrized locus")
    return ZeroFramingRelations(rels, mode, sols)


# -- framing -------------------------------------------------------------------------


@dataclass
class UVSystem:
    g: int
    zero_framing_relations: List[MPoly]
    framing: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]
    twist: int
    equations: List[MPoly]
    new_vars: Tuple[str, ...]
    unknowns: Tuple[str, ...]
    seed: Tuple[int, ...]

    def describe(self) -> List[str]:
        return [str(e) for e in self.equations]


def framed_system(relations: Sequence[MPoly], framing, signs: Optional[Sequence[int]] = None, twist: int = 1) -> UVSystem:
    """Substitute ``U_i -> s_i U_i prod_j V_j^{twist * M_ij}`` into the relations.

    The zero-framing coordinates become extra unknowns ``Y_i``; with
    ``twist = -1`` the framing exponents are negated.
    """
    g = len(framing)
    m = [list(r) for r in framing]
    if any(m[i][j] != m[j][i] for i in range(g) for j in range(g)):
        raise FramingNotSymmetric(f"framing {m} is not symmetric")
    if twist not in (1, -1):
        raise ValueError("twist must be +1 or -1")
    if signs is None:
        signs = tuple((-1) ** (m[i][i] % 2) for i in range(g))
    signs = tuple(int(s) for s in signs)
    U, V = u_names(g), v_names(g)
    Y = [f"Y{i + 1}" for i in range(g)]
    ring = tuple(U) + tuple(Y) + tuple(V)
    subst = {u: MPoly.var(ring, y) for u, y in zip(U, Y)}
    subst.update({v: MPoly.var(ring, v) for v in V})
    eqs = []
    for r in relations:
        eqs.append(r.evaluate(subst) if r.vars else MPoly.const(ring, r.constant_term()))
    for i in range(g):
        lhs = MPoly.var(ring, Y[i])
        rhs = MPoly.var(ring, U[i]) * signs[i]
        for j in range(g):
            k = twist * m[i][j]
            if k > 0:
                rhs = rhs * MPoly.var(ring, V[j]) ** k
            elif k < 0:
                lhs = lhs * MPoly.var(ring, V[j]) ** (-k)
        eqs.append(lhs - rhs)
    seed = tuple([0] * g + [1] * g)
    at = {u: 0 for u in U}
    at.update(zip(Y + V, seed))
    for r in eqs:
        if r.evaluate(at) != 0:
            raise ConventionError(f"relation {r} does not vanish at U = 0, V = 1")
    return UVSystem(g, list(relations), tuple(tuple(r) for r in m), signs, twist, eqs, tuple(U), tuple(Y + V), seed)


# -- series solution and integration -------------------------------------------------


@dataclass
class SuperpotentialReport:
    order: int
    variables: Tuple[str, ...]
    K: Dict[Exp, Fraction]
    a: Dict[Exp, Fraction] = field(default_factory=dict)
    integral: Optional[bool] = None
    li2_form: Optional[str] = None
    closedness_ok: bool = True
    V_series: List[TruncSeries] = field(default_factory=list)
    relations: List[str] = field(default_factory=list)
    framing: Tuple[Tuple[int, ...], ...] = ()
    signs: Tuple[int, ...] = ()
    twist: int = 1
    seed: int = DEFAULT_SEED

    def bps(self, *d) -> Fraction:
        if len(d) == 1 and isinstance(d[0], tuple):
            d = d[0]
        return self.a.get(tuple(d), Fraction(0))

    def coefficient(self, *d) -> Fraction:
        if len(d) == 1 and isinstance(d[0], tuple):
            d = d[0]
        return self.K.get(tuple(d), Fraction(0))

    def as_dict(self) -> dict:
        def key(e):
            return ",".join(str(k) for k in e)

        def frac(c: Fraction) -> str:
            return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

        return {
            "order": self.order,
            "variables": list(self.variables),
            "framing": [list(r) for r in self.framing],
            "signs": list(self.signs),
            "twist": self.twist,
            "seed": self.seed,
            "relations": list(self.relations),
            "K": {key(e): frac(c) for e, c in sorted(self.K.items(), key=lambda kv: (sum(kv[0]), kv[0]))},
            "a": {
                key(e): (int(c) if c.denominator == 1 else frac(c))
                for e, c in sorted(self.a.items(), key=lambda kv: (sum(kv[0]), kv[0]))
                if c
            },
            "integral": self.integral,
            "closedness_ok": self.closedness_ok,
            "li2_form": self.li2_form,
        }


def solve_and_integrate(system: UVSystem, order: int = DEFAULT_ORDER) -> SuperpotentialReport:
    g = system.g
    sol = series_solve(system.equations, system.new_vars, system.unknowns, system.seed, order)
    vser = sol[g:]
    for i, v in enumerate(vser):
        if v.constant_term() != 1:
            raise ConventionError(f"V{i + 1}(0) = {v.constant_term()}, expected 1")
    ws = [-(v.log()) for v in vser]
    K: Dict[Exp, Fraction] = {}
    for d in all_exponents(g, order, 1):
        cs = [w.coefficient(d) for w in ws]
        for i in range(g):
            for j in range(i + 1, g):
                if d[j] * cs[i] != d[i] * cs[j]:
                    raise NotClosed(f"closedness fails at {d}: {cs}")
        i = next(k for k in range(g) if d[k])
        if cs[i]:
            K[d] = cs[i] / d[i]
    res = residual_of(system.equations, system.new_vars, system.unknowns, sol)
    if any(not r.is_zero() for r in res):
        raise AssertionError("framed system residual is nonzero")
    return SuperpotentialReport(
        order,
        system.new_vars,
        K,
        V_series=vser,
        framing=system.framing,
        signs=system.signs,
        twist=system.twist,
        relations=[str(r) for r in system.zero_framing_relations],
    )


def bps_invert(K: Dict[Exp, Fraction], order: int, nvars: Optional[int] = None) -> Tuple[Dict[Exp, Fraction], bool]:
    """Ooguri-Vafa inversion ``a(m) = sum_{n | m} mu(n) K_{m/n} / n^2``."""
    if nvars is None:
        nvars = len(next(iter(K))) if K else 1
    if K.get((0,) * nvars):
        raise ValueError("K must not have a constant term")
    a: Dict[Exp, Fraction] = {}
    for m in all_exponents(nvars, order, 1):
        total = Fraction(0)
        for n in divisors(gcd_all(m)):
            mu = moebius(n)
            if mu:
                total += mu * K.get(tuple(x // n for x in m), Fraction(0)) / (n * n)
        if total:
            a[m] = total
    integral = all(c.denominator == 1 for c in a.values())
    return a, integral


def multiple_cover_sum(a: Dict[Exp, object], order: int, nvars: int) -> Dict[Exp, Fraction]:
    """Forward map ``K_m = sum_{n | m} a(m/n) / n^2`` up to total degree ``order``."""
    K: Dict[Exp, Fraction] = {}
    for d, c in a.items():
        c = Fraction(c)
        if not c:
            continue
        n = 1
        while n * sum(d) <= order:
            e = tuple(n * x for x in d)
            K[e] = K.get(e, Fraction(0)) + c / (n * n)
            n += 1
    return {e: c for e, c in K.items() if c}


def li2_form(a: Dict[Exp, Fraction], variables: Sequence[str]) -> str:
    terms = []
    for d in sorted(a, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = a[d]
        if not c:
            continue
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(variables, d) if k)
        body = f"Li2({mono})"
        if c == 1:
            terms.append(("+", body))
        elif c == -1:
            terms.append(("-", body))
        else:
            terms.append(("-" if c < 0 else "+", f"{abs(c)}*{body}"))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def pipeline(
    graph: RibbonGraph,
    gauge,
    pf: PhaseFraming,
    order: int = DEFAULT_ORDER,
    twist: int = 1,
    seed: int = DEFAULT_SEED,
) -> SuperpotentialReport:
    """Graph, gauge, phase and framing to superpotential and BPS numbers."""
    pres = h1_presentation(graph)
    check = validate_phase_framing(pres, pf)
    chart = build_chart(graph, gauge)
    us, vs = build_uv_monomials(chart, pf, check.duality_sign)
    rels = zero_framing_relations(us, vs, seed)
    system = framed_system(rels.relations, pf.framing, pf.effective_signs(), twist)
    report = solve_and_integrate(system, order)
    a, integral = bps_invert(report.K, order, system.g)
    report.a = a
    report.integral = integral
    report.seed = seed
    report.li2_form = li2_form(a, system.new_vars) if integral else None
    if not integral:
        log.warning("non-integral BPS numbers for framing %s", pf.framing)
    return report
