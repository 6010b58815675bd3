"""Chromatic polynomials of dual graphs and finite-field point counts.

The framed moduli space of a cubic planar graph is the set of colourings of
its faces by points of the projective line with adjacent faces distinct, so
over ``F_q`` it has ``P(q+1)`` points where ``P`` is the chromatic
polynomial of the dual graph.  Dividing by ``|PGL_2(F_q)| = q^3 - q`` gives
the count for the moduli space itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .ribbon import GraphError, Multigraph, RibbonGraph, dual


class NotDivisible(ArithmeticError):
    pass


class TooLarge(ValueError):
    pass


class NotSimple(GraphError):
    pass


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in ascending degree, no trailing zeros."""

    coefficients: Tuple[int, ...]

    def __init__(self, coefficients: Iterable[int] = ()):
        c = [int(x) for x in coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coeff(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def _c(self, other) -> "IntPoly":
        return other if isinstance(other, IntPoly) else IntPoly.const(other)

    def __add__(self, other):
        o = self._c(other)
        n = max(len(self.coefficients), len(o.coefficients))
        return IntPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._c(other)
        if self.is_zero() or o.is_zero():
            return IntPoly()
        out = [0] * (len(self.coefficients) + len(o.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(o.coefficients):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * value + c
        return acc

    def compose(self, inner: "IntPoly") -> "IntPoly":
        acc = IntPoly()
        for c in reversed(self.coefficients):
            acc = acc * inner + c
        return acc

    def divmod(self, divisor: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Division by a monic (or unit-leading) divisor, exact over Z."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if abs(divisor.leading) != 1:
            raise ValueError("divisor must have leading coefficient +-1")
        rem = list(self.coefficients)
        dd = divisor.degree
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] * divisor.leading
            if c:
                quot[k - dd] = c
                for i, b in enumerate(divisor.coefficients):
                    rem[k - dd + i] -= c * b
        return IntPoly(quot), IntPoly(rem)

    def exact_div(self, divisor: "IntPoly") -> "IntPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise NotDivisible(f"{self} is not divisible by {divisor} (remainder {r})")
        return q

    def format(self, var: str = "q") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.format("x")


# -- chromatic polynomial -----------------------------------------------------

Edges = FrozenSet[Tuple[int, int]]


def _falling(n: int) -> IntPoly:
    out = IntPoly.const(1)
    for k in range(n):
        out = out * IntPoly((-k, 1))
    return out


def _normalize(vertices: Sequence[int], edges: Iterable[Tuple[int, int]]):
    """Relabel to 0..n-1 in a deterministic order; collapse parallel edges."""
    idx = {v: i for i, v in enumerate(sorted(vertices))}
    es = frozenset(tuple(sorted((idx[a], idx[b]))) for a, b in edges)
    return len(idx), es


def chromatic_polynomial(graph: Multigraph) -> IntPoly:
    """Chromatic polynomial by deletion-contraction.

    Loops force zero, parallel edges collapse, and simplicial vertices
    (neighbourhood a clique) are peeled off with a factor ``x - deg``.
    """
    if any(a == b for a, b in graph.edges):
        return IntPoly()
    n, es = _normalize(range(graph.vertex_count), graph.edges)
    memo: Dict[Tuple[int, Edges], IntPoly] = {}
    return _chrom(n, es, memo)


def _chrom(n: int, es: Edges, memo) -> IntPoly:
    key = (n, es)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not es:
        res = IntPoly.x() ** n
    elif len(es) == n * (n - 1) // 2:
        res = _falling(n)
    else:
        nbrs: Dict[int, set] = {v: set() for v in range(n)}
        for a, b in es:
            nbrs[a].add(b)
            nbrs[b].add(a)
        simp = None
        for v in range(n):
            nb = nbrs[v]
            if all(b in nbrs[a] for a, b in combinations(sorted(nb), 2)):
                simp = v
                break
        if simp is not None:
            rest = [v for v in range(n) if v != simp]
            m, es2 = _normalize(rest, [e for e in es if simp not in e])
            res = _chrom(m, es2, memo) * IntPoly((-len(nbrs[simp]), 1))
        else:
            # branch on an edge at a max-degree vertex
            v = max(range(n), key=lambda u: (len(nbrs[u]), -u))
            w = min(nbrs[v])
            e = (min(v, w), max(v, w))
            deleted = es - {e}
            merged = []
            for a, b in deleted:
                a = v if a == w else a
                b = v if b == w else b
                if a != b:
                    merged.append((a, b))
            m, contracted = _normalize([u for u in range(n) if u != w], merged)
            res = _chrom(n, deleted, memo) - _chrom(m, contracted, memo)
    memo[key] = res
    return res


def count_colorings(graph: Multigraph, colors: int) -> int:
    """Number of proper colourings with ``colors`` colours by backtracking."""
    if any(a == b for a, b in graph.edges):
        return 0
    n = graph.vertex_count
    nbrs = [set() for _ in range(n)]
    for a, b in graph.edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    order = sorted(range(n), key=lambda v: -len(nbrs[v]))
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[u] for u in nbrs[v] if pos[u] < pos[v]] for v in order]
    assign = [0] * n

    def rec(i):
        if i == n:
            return 1
        total = 0
        for c in range(colors):
            if all(assign[j] != c for j in earlier[i]):
                assign[i] = c
                total += rec(i + 1)
        return total

    return rec(0)


# -- moduli counts --------------------------------------------------------------

PGL2_ORDER = IntPoly((0, -1, 0, 1))  # q^3 - q


def moduli_count_poly(graph: RibbonGraph) -> IntPoly:
    """``#M(F_q)`` as a polynomial in ``q``."""
    p = chromatic_polynomial(dual(graph))
    return p.compose(IntPoly((1, 1))).exact_div(PGL2_ORDER)


BRUTE_FORCE_LIMIT = 10**8


def brute_force_moduli_count(graph: RibbonGraph, q: int) -> int:
    """Count ``(q+1)``-colourings of the faces directly and divide by ``q^3 - q``."""
    if q < 2:
        raise ValueError("q must be at least 2")
    f = graph.num_faces
    if (q + 1) ** f > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{q + 1}^{f} assignments exceed the limit {BRUTE_FORCE_LIMIT}")
    total = count_colorings(dual(graph), q + 1)
    order = q**3 - q
    if total % order:
        raise NotDivisible(f"{total} colourings not divisible by |PGL_2(F_{q})| = {order}")
    return total // order


@dataclass(frozen=True)
class FillabilityReport:
    genus: int
    moduli_poly: IntPoly
    torus_poly: IntPoly
    second_coeff_moduli: int
    second_coeff_torus: int
    obstructed: bool

    def as_dict(self):
        return {
            "genus": self.genus,
            "moduli_poly": self.moduli_poly.format("q"),
            "moduli_coefficients": list(self.moduli_poly.coefficients),
            "torus_poly": self.torus_poly.format("q"),
            "torus_coefficients": list(self.torus_poly.coefficients),
            "second_coeff_moduli": self.second_coeff_moduli,
            "second_coeff_torus": self.second_coeff_torus,
            "obstructed": self.obstructed,
        }


def fillability_obstruction(graph: RibbonGraph) -> FillabilityReport:
    """Compare ``#M(F_q)`` with the point count ``(q-1)^g`` of a torus chart.

    Both are monic of degree ``g``; the moduli space has ``q^{g-1}``
    coefficient ``-2g`` against ``-g`` for the torus, so for ``g >= 1`` it
    has too few points to contain a torus of its own dimension.
    """
    if not graph.is_simple():
        raise NotSimple("the fillability certificate needs a simple graph")
    g = graph.num_faces - 3
    m = moduli_count_poly(graph)
    if m.degree != g or m.leading != 1:
        raise AssertionError(f"moduli polynomial {m.format('q')} is not monic of degree {g}")
    c_m = m.coeff(g - 1)
    if c_m != -2 * g:
        raise AssertionError(f"q^{g - 1} coefficient {c_m} differs from -2g = {-2 * g}")
    torus = IntPoly((-1, 1)) ** g
    c_t = torus.coeff(g - 1)
    return FillabilityReport(g, m, torus, c_m, c_t, obstructed=(m.leading == torus.leading and c_m < c_t))
