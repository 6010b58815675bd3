"""Order-by-order solution of implicit polynomial systems as power series."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .mpoly import MPoly, common_vars
from .series import TruncSeries, poly_of_series


class SingularJacobian(ArithmeticError):
    pass


class SeedNotRoot(ValueError):
    pass


class ResidualNonzero(AssertionError):
    pass


def rational_inverse(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Gauss-Jordan inverse over Q; raises SingularJacobian when singular."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularJacobian("Jacobian at the seed is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def series_solve(
    equations: Sequence[MPoly],
    u_vars: Sequence[str],
    v_vars: Sequence[str],
    seed: Sequence[object],
    order: int,
) -> List[TruncSeries]:
    """Solve ``G_j(U, V) = 0`` for ``V(U)`` with ``V(0) = seed`` to total degree ``order``.

    The Jacobian ``dG/dV`` at ``(0, seed)`` is inverted once; every degree
    ``k`` then needs one constant linear solve.  The residual is checked
    to vanish modulo degree ``order + 1`` before returning.
    """
    u_vars = tuple(u_vars)
    v_vars = tuple(v_vars)
    if len(equations) != len(v_vars):
        raise ValueError(f"{len(equations)} equations for {len(v_vars)} unknowns")
    allv = common_vars(u_vars, v_vars)
    eqs = [g.extend(allv) for g in equations]
    seed = [Fraction(s) for s in seed]

    at_seed = {u: Fraction(0) for u in u_vars}
    at_seed.update(zip(v_vars, seed))
    for j, g in enumerate(eqs):
        if g.evaluate(at_seed) != 0:
            raise SeedNotRoot(f"equation {j} does not vanish at the seed: {g}")

    jac = [[g.diff(v).evaluate(at_seed) for v in v_vars] for g in eqs]
    jinv = rational_inverse(jac)

    coeffs = [{(0,) * len(u_vars): s} if s else {} for s in seed]
    for k in range(1, order + 1):
        vals = {u: TruncSeries.var(u_vars, k, u) for u in u_vars}
        for v, c in zip(v_vars, coeffs):
            vals[v] = TruncSeries(u_vars, k, c)
        residual = [poly_of_series(g, vals).homogeneous_part(k) for g in eqs]
        monos = set()
        for r in residual:
            monos.update(r)
        for m in monos:
            r = [res.get(m, 0) for res in residual]
            for i, row in enumerate(jinv):
                delta = -sum(a * b for a, b in zip(row, r))
                if delta:
                    coeffs[i][m] = delta

    sol = [TruncSeries(u_vars, order, c) for c in coeffs]
    res = residual_of(eqs, u_vars, v_vars, sol)
    if any(not r.is_zero() for r in res):
        raise ResidualNonzero("series solution leaves a nonzero residual")
    return sol


def residual_of(equations, u_vars, v_vars, solution: Sequence[TruncSeries]) -> List[TruncSeries]:
    """``G_j(U, V(U))`` modulo the truncation of ``solution``."""
    u_vars = tuple(u_vars)
    order = solution[0].order
    allv = common_vars(u_vars, v_vars)
    vals = {u: TruncSeries.var(u_vars, order, u) for u in u_vars}
    vals.update(zip(v_vars, solution))
    return [poly_of_series(g.extend(allv), vals) for g in equations]
