"""Cross-ratio period map from face colourings to edge coordinates.

Faces carry points of the projective line in homogeneous coordinates
``(p : q)``; the coordinate of an edge is

    x = -(D_ba * D_dc) / (D_cb * D_ad),    D_uv = p_u q_v - p_v q_u,

where ``a`` and ``c`` are the faces on either side of the edge and ``b``,
``d`` the faces at its two ends, the four read counterclockwise.  For an
edge with first dart ``d``: ``a`` is the face of ``d`` (its right-hand
side), ``c`` the face of ``alpha(d)``, ``b`` the face of
``sigma^2(alpha(d))`` at the head and ``d`` the face of ``sigma^2(d)`` at
the tail.  Turning the picture half way round gives the same value, so the
choice of primary dart does not matter; a mirror image inverts ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from .exactalg.mpoly import MPoly, RatFunc
from .ribbon import GraphError, RibbonGraph, validate

ProjPoint = Tuple[object, object]

ZERO: ProjPoint = (0, 1)
ONE: ProjPoint = (1, 1)
INFINITY: ProjPoint = (1, 0)


class DegenerateConfiguration(ZeroDivisionError):
    pass


class FaceRelationFailed(AssertionError):
    pass


class RelationFailed(AssertionError):
    pass


def edge_faces(graph: RibbonGraph, edge: int) -> Tuple[int, int, int, int]:
    """Faces ``(a, b, c, d)`` around an edge in the order used by the cross-ratio."""
    d0, d1 = graph.edge_pairs()[edge]
    fof = graph.face_of()
    s = graph.sigma
    return fof[d0], fof[s[s[d1]]], fof[d1], fof[s[s[d0]]]


def _det(u: ProjPoint, v: ProjPoint):
    return u[0] * v[1] - v[0] * u[1]


def _is_zero(x) -> bool:
    if isinstance(x, (MPoly, RatFunc)):
        return x.is_zero()
    return x == 0


def cross_ratio_of_points(za: ProjPoint, zb: ProjPoint, zc: ProjPoint, zd: ProjPoint):
    num1, num2 = _det(zb, za), _det(zd, zc)
    den1, den2 = _det(zc, zb), _det(za, zd)
    if any(_is_zero(x) for x in (num1, num2, den1, den2, _det(za, zc))):
        raise DegenerateConfiguration("two neighbouring faces carry the same point")
    num = num1 * num2
    den = den1 * den2
    if isinstance(num, MPoly) or isinstance(den, MPoly):
        return -RatFunc(num if isinstance(num, MPoly) else MPoly.const(den.vars, num),
                        den if isinstance(den, MPoly) else MPoly.const(num.vars, den))
    if isinstance(num, RatFunc) or isinstance(den, RatFunc):
        return -(num / den)
    return -Fraction(num) / Fraction(den)


def cross_ratio(graph: RibbonGraph, edge: int, coords: Mapping[int, ProjPoint]):
    a, b, c, d = edge_faces(graph, edge)
    return cross_ratio_of_points(coords[a], coords[b], coords[c], coords[d])


def default_gauge(graph: RibbonGraph) -> Tuple[Tuple[int, int, int], bool]:
    """Three pairwise-adjacent faces if there are any (second value True)."""
    fof = graph.face_of()
    adj = set()
    for a, b in graph.edge_pairs():
        adj.add((fof[a], fof[b]))
        adj.add((fof[b], fof[a]))
    f = graph.num_faces
    for i in range(f):
        for j in range(i + 1, f):
            if (i, j) not in adj:
                continue
            for k in range(j + 1, f):
                if (i, k) in adj and (j, k) in adj:
                    return (i, j, k), True
    return (0, 1, 2), False


def _variable_names(graph: RibbonGraph, free: Sequence[int]) -> List[str]:
    labels = [graph.face_labels.get(i) for i in free]
    if all(lab and lab.isidentifier() for lab in labels) and len(set(labels)) == len(labels):
        return labels
    return [f"t{k + 1}" for k in range(len(free))]


@dataclass
class PeriodChart:
    graph: RibbonGraph
    gauge: Tuple[int, int, int]
    variables: Tuple[str, ...]
    free_faces: Tuple[int, ...]
    face_coords: Dict[int, ProjPoint]
    edge_values: List[RatFunc]
    adjacent_gauge: bool = True

    def value(self, edge: int) -> RatFunc:
        return self.edge_values[edge]

    def face_value(self, face: int) -> object:
        p, q = self.face_coords[face]
        if _is_zero(q):
            return "oo"
        return RatFunc(p) / RatFunc(q) if isinstance(p, MPoly) else Fraction(p) / Fraction(q)

    def evaluate_at(self, point: Mapping[str, Fraction]) -> List[Fraction]:
        return [x.evaluate(point) for x in self.edge_values]


def build_chart(graph: RibbonGraph, gauge: Optional[Sequence] = None, names: Optional[Mapping[int, str]] = None) -> PeriodChart:
    """Fix three faces at 0, 1, oo and make the others free variables.

    Every face relation ``prod x_e = 1`` is checked exactly.
    """
    validate(graph)
    adjacent = True
    if gauge is None:
        gauge, adjacent = default_gauge(graph)
    gauge = tuple(graph.face_index(x) for x in gauge)
    if len(gauge) != 3 or len(set(gauge)) != 3:
        raise GraphError(f"gauge needs three distinct faces, got {gauge}")
    free = tuple(i for i in range(graph.num_faces) if i not in gauge)
    if names is not None:
        variables = tuple(names[i] for i in free)
    else:
        variables = tuple(_variable_names(graph, free))
    one = MPoly.const(variables, 1)
    zero = MPoly(variables)
    coords: Dict[int, ProjPoint] = {
        gauge[0]: (zero, one),
        gauge[1]: (one, one),
        gauge[2]: (one, zero),
    }
    for i, v in zip(free, variables):
        coords[i] = (MPoly.var(variables, v), one)
    values = []
    for k in range(graph.num_edges):
        values.append(cross_ratio(graph, k, coords).reduced())
    chart = PeriodChart(graph, gauge, variables, free, coords, values, adjacent)
    for i, cls in enumerate(_face_classes(graph)):
        if monomial_of_class(chart, cls) != 1:
            raise FaceRelationFailed(f"product of edge coordinates around face {i} is not 1")
    return chart


def _face_classes(graph):
    from .homlattice import face_relations

    return face_relations(graph)


def monomial_of_class(chart: PeriodChart, c: Sequence[int]) -> RatFunc:
    """``prod_e x_e^{c_e}`` as a rational function on the chart."""
    num = MPoly.const(chart.variables, 1)
    den = MPoly.const(chart.variables, 1)
    for x, k in zip(chart.edge_values, c):
        if k > 0:
            num = num * x.num**k
            den = den * x.den**k
        elif k < 0:
            num = num * x.den ** (-k)
            den = den * x.num ** (-k)
    return RatFunc(num, den, reduce=True)


def class_is_well_defined(chart: PeriodChart, c: Sequence[int]) -> bool:
    """Adding any face class to ``c`` leaves its monomial unchanged."""
    base = monomial_of_class(chart, c)
    for f in _face_classes(chart.graph):
        shifted = [a + b for a, b in zip(c, f)]
        if monomial_of_class(chart, shifted) != base:
            return False
    return True


def edge_symbols(chart: PeriodChart, names: Optional[Sequence[str]] = None) -> List[str]:
    if names is None:
        return [f"x{k + 1}" for k in range(chart.graph.num_edges)]
    return list(names)


def relation_value(chart: PeriodChart, relation: str, names: Optional[Sequence[str]] = None) -> RatFunc:
    """Evaluate an expression in the edge coordinates (``x1``, ``x2``, ... by default)."""
    syms = edge_symbols(chart, names)
    local = {s: sympy.Symbol(s) for s in syms}
    expr = sympy.sympify(relation, locals=local)
    num, den = sympy.fraction(sympy.together(expr))
    values = dict(zip(syms, chart.edge_values))
    out = []
    for part in (num, den):
        p = MPoly.from_sympy(syms, part)
        v = p.evaluate(values)
        out.append(v if isinstance(v, RatFunc) else RatFunc.const(chart.variables, v))
    return (out[0] / out[1]).reduced()


def chromatic_lagrangian_relations(chart: PeriodChart, relations: Sequence[str], names: Optional[Sequence[str]] = None):
    """Check that each expression vanishes identically on the chart."""
    report = []
    for r in relations:
        v = relation_value(chart, r, names)
        report.append((r, v.is_zero()))
        if not v.is_zero():
            raise RelationFailed(f"relation {r!r} evaluates to {v}")
    return report


def format_edge_table(chart: PeriodChart, names: Optional[Sequence[str]] = None) -> List[Tuple[str, str]]:
    syms = edge_symbols(chart, names)
    return [(s, str(x)) for s, x in zip(syms, chart.edge_values)]
