"""Edge lattice, intersection form and H_1 of the double-cover surface.

Every edge ``i`` gives a loop class ``gamma_i``; the pairing of two edges is
read off the rotation at their shared vertices.  Face boundaries give
relations.  ``H_1`` is presented as the edge lattice modulo the radical of
the intersection form, which is the saturation of the face relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg.smith import determinant, invariant_factors, matmul, smith_normal_form, transpose
from .ribbon import GraphError, RibbonGraph, blow_up, blowup_edge_map, validate

EdgeClass = Tuple[int, ...]


class PresentationAssertionFailed(AssertionError):
    pass


class PhaseError(ValueError):
    pass


class NotIsotropic(PhaseError):
    pass


class NotDual(PhaseError):
    pass


class NotPrimitive(PhaseError):
    pass


class FramingNotSymmetric(PhaseError):
    pass


class DecompositionFailed(AssertionError):
    pass


def pair(form: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int]) -> int:
    return sum(xi * row[j] * yj for xi, row in zip(x, form) if xi for j, yj in enumerate(y) if yj)


def intersection_form(graph: RibbonGraph) -> List[List[int]]:
    """``A[e1][e2]``: +1 for each vertex where ``e2`` comes right after ``e1`` counterclockwise."""
    e = graph.num_edges
    eof = graph.edge_of()
    a = [[0] * e for _ in range(e)]
    for d in range(graph.dart_count):
        x, y = eof[d], eof[graph.sigma[d]]
        if x != y:
            a[x][y] += 1
            a[y][x] -= 1
    return a


def face_relations(graph: RibbonGraph) -> List[EdgeClass]:
    eof = graph.edge_of()
    out = []
    for cyc in graph.face_cycles():
        row = [0] * graph.num_edges
        for d in cyc:
            row[eof[d]] += 1
        out.append(tuple(row))
    return out


def _kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """Basis (as vectors) of the integer kernel of ``rows``."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    _, d, v = smith_normal_form(rows)
    r = sum(1 for i in range(min(len(d), ncols)) if d[i][i])
    return [[v[i][k] for i in range(ncols)] for k in range(r, ncols)]


def _xgcd_combination(values: Sequence[int]) -> List[int]:
    """Integers ``s`` with ``sum(s_i * v_i) = gcd(values)``."""
    s = [0] * len(values)
    g = 0
    for i, v in enumerate(values):
        if v == 0:
            continue
        if g == 0:
            g = v
            s[i] = 1
            continue
        # extended gcd of g and v
        old_r, r = g, v
        old_a, a = 1, 0
        old_b, b = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_a, a = a, old_a - q * a
            old_b, b = b, old_b - q * b
        s = [x * old_a for x in s]
        s[i] = old_b
        g = old_r
    if g < 0:
        s = [-x for x in s]
    return s


def symplectic_basis(form: Sequence[Sequence[int]]) -> List[List[int]]:
    """Columns ``T`` with ``T^t B T`` block-diagonal ``[[0, 1], [-1, 0]]``.

    ``form`` must be antisymmetric and unimodular.
    """
    m = len(form)
    if m == 0:
        return []
    if m % 2:
        raise PresentationAssertionFailed("odd rank antisymmetric form is degenerate")
    x = [int(i == 0) for i in range(m)]
    row = [pair(form, x, [int(i == j) for i in range(m)]) for j in range(m)]
    if gcd(*row) != 1:
        raise PresentationAssertionFailed("form is not unimodular")
    y = _xgcd_combination(row)
    assert pair(form, x, y) == 1
    constraints = [
        [sum(x[i] * form[i][j] for i in range(m)) for j in range(m)],
        [sum(y[i] * form[i][j] for i in range(m)) for j in range(m)],
    ]
    comp = _kernel_basis(constraints, m)  # vectors orthogonal to x and y
    if len(comp) != m - 2:
        raise PresentationAssertionFailed("could not split off a hyperbolic plane")
    sub = [[pair(form, a, b) for b in comp] for a in comp]
    inner = symplectic_basis(sub)
    cols = [x, y]
    for k in range(m - 2):
        cols.append([sum(comp[j][i] * inner[j][k] for j in range(m - 2)) for i in range(m)])
    return transpose(cols)


@dataclass
class H1Presentation:
    relation_matrix: List[List[int]]
    face_invariant_factors: List[int]
    form: List[List[int]]
    projection: List[List[int]]
    basis: List[EdgeClass]
    induced_form: List[List[int]]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def face_torsion(self) -> List[int]:
        """Invariant factors > 1 of the raw face-relation quotient."""
        return [d for d in self.face_invariant_factors if d > 1]

    def coordinates(self, c: Sequence[int]) -> List[int]:
        """Coordinates of an edge class in the H_1 basis."""
        return [sum(p * x for p, x in zip(row, c)) for row in self.projection]

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        return pair(self.form, x, y)

    def in_radical(self, c: Sequence[int]) -> bool:
        return not any(self.coordinates(c))


def h1_presentation(graph: RibbonGraph) -> H1Presentation:
    stats = validate(graph)
    e = stats.e
    g = stats.g if stats.g is not None else (stats.f - 3)
    a = intersection_form(graph)
    rel = [list(r) for r in face_relations(graph)]

    for i in range(e):
        for j in range(e):
            if a[i][j] != -a[j][i]:
                raise PresentationAssertionFailed("intersection form is not antisymmetric")
    for r in rel:
        if any(sum(a[i][j] * r[j] for j in range(e)) for i in range(e)):
            raise PresentationAssertionFailed("a face class is not in the radical of the form")

    face_factors = invariant_factors(rel)
    if len(face_factors) != stats.f:
        raise PresentationAssertionFailed(f"face relations have rank {len(face_factors)}, expected {stats.f}")

    _, d, v = smith_normal_form(a)
    r = sum(1 for i in range(e) if d[i][i])
    if r != 2 * g:
        raise PresentationAssertionFailed(f"form has rank {r}, expected 2g = {2 * g}")
    if r + len(face_factors) != e:
        raise PresentationAssertionFailed("radical is larger than the span of the faces")

    # x -> first r coordinates of V^{-1} x kills exactly the radical
    from .exactalg.smith import integer_inverse

    vinv = integer_inverse(v)
    proj0 = [list(vinv[k]) for k in range(r)]
    lifts0 = [[v[i][k] for i in range(e)] for k in range(r)]
    induced0 = [[pair(a, x, y) for y in lifts0] for x in lifts0]
    if r and abs(determinant(induced0)) != 1:
        raise PresentationAssertionFailed("induced form on H_1 is not unimodular")

    t = symplectic_basis(induced0)
    tinv = integer_inverse(t) if r else []
    basis = [tuple(sum(lifts0[j][i] * t[j][k] for j in range(r)) for i in range(e)) for k in range(r)]
    projection = matmul(tinv, proj0) if r else []
    induced = [[pair(a, x, y) for y in basis] for x in basis]
    if r and determinant(induced) != 1:
        raise PresentationAssertionFailed("symplectic basis has determinant != 1")
    return H1Presentation(rel, face_factors, a, projection, basis, induced)


# -- phases and framings ---------------------------------------------------------


@dataclass(frozen=True)
class PhaseFraming:
    kernel_classes: Tuple[EdgeClass, ...]
    lift_classes: Tuple[EdgeClass, ...]
    framing: Tuple[Tuple[int, ...], ...]
    signs: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "kernel_classes", tuple(tuple(int(x) for x in c) for c in self.kernel_classes))
        object.__setattr__(self, "lift_classes", tuple(tuple(int(x) for x in c) for c in self.lift_classes))
        object.__setattr__(self, "framing", tuple(tuple(int(x) for x in r) for r in self.framing))
        if self.signs is not None:
            object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))

    @property
    def g(self) -> int:
        return len(self.kernel_classes)

    def effective_signs(self) -> Tuple[int, ...]:
        """Given signs, or the default ``(-1)^{M_ii}``."""
        if self.signs is not None:
            return self.signs
        return tuple((-1) ** (self.framing[i][i] % 2) for i in range(self.g))

    def with_framing(self, framing, signs=None) -> "PhaseFraming":
        return PhaseFraming(self.kernel_classes, self.lift_classes, framing, signs)


@dataclass
class PhaseValidation:
    kernel_pairings: List[List[int]]
    lift_kernel_pairings: List[List[int]]
    lift_pairings: List[List[int]]
    framed_pairings: List[List[int]]
    kernel_invariant_factors: List[int]
    duality_sign: int = 1
    ok: bool = True


def validate_phase_framing(pres: H1Presentation, pf: PhaseFraming) -> PhaseValidation:
    g = pf.g
    e = len(pres.form)
    if len(pf.lift_classes) != g:
        raise PhaseError(f"{g} kernel classes but {len(pf.lift_classes)} lifts")
    for c in pf.kernel_classes + pf.lift_classes:
        if len(c) != e:
            raise PhaseError(f"class of length {len(c)}, graph has {e} edges")
    if len(pf.framing) != g or any(len(r) != g for r in pf.framing):
        raise PhaseError(f"framing must be {g}x{g}")
    if pf.signs is not None and (len(pf.signs) != g or any(s not in (1, -1) for s in pf.signs)):
        raise PhaseError("signs must be a vector of +-1 of length g")
    if 2 * g != pres.rank:
        raise PhaseError(f"phase of rank {g} on H_1 of rank {pres.rank}")

    nu = pf.kernel_classes
    mu = pf.lift_classes
    coords = [pres.coordinates(c) for c in nu]
    factors = invariant_factors(transpose(coords)) if g else []
    if len(factors) != g:
        raise NotPrimitive("kernel classes are linearly dependent in H_1")
    if any(f != 1 for f in factors):
        raise NotPrimitive(f"kernel is not saturated in H_1 (invariant factors {factors})")

    nn = [[pres.pairing(x, y) for y in nu] for x in nu]
    if any(any(r) for r in nn):
        raise NotIsotropic(f"kernel classes pair nontrivially: {nn}")
    mn = [[pres.pairing(x, y) for y in nu] for x in mu]
    # a phase written for the opposite orientation pairs to minus the identity
    sign = mn[0][0] if g else 1
    if sign not in (1, -1) or mn != [[sign * int(i == j) for j in range(g)] for i in range(g)]:
        raise NotDual(f"<lift_i, kernel_j> = {mn}, expected +-identity")
    mm = [[pres.pairing(x, y) for y in mu] for x in mu]
    if any(any(r) for r in mm):
        raise NotIsotropic(f"zero-framing lifts pair nontrivially: {mm}")

    m = pf.framing
    framed = [
        tuple(mu[i][k] + sum(m[i][j] * nu[j][k] for j in range(g)) for k in range(e)) for i in range(g)
    ]
    ff = [[pres.pairing(x, y) for y in framed] for x in framed]
    symmetric = all(m[i][j] == m[j][i] for i in range(g) for j in range(g))
    isotropic = not any(any(r) for r in ff)
    assert symmetric == isotropic
    if not symmetric:
        raise FramingNotSymmetric(f"framing {m} is not symmetric; framed lifts pair as {ff}")
    return PhaseValidation(nn, mn, mm, ff, factors, sign)


# -- blow-up splitting ---------------------------------------------------------------


@dataclass
class BlowupSplit:
    inclusion: List[List[int]]  # e' x e
    exceptional: List[int]
    restricted_form: List[List[int]]
    exceptional_form: List[List[int]]
    cross_pairings: List[List[int]]
    determinant: int
    incident: Dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return abs(self.determinant) == 1 and not any(any(r) for r in self.cross_pairings)


def inclusion_classes(graph: RibbonGraph, vertex: int) -> Tuple[List[EdgeClass], Dict[int, int], List[int]]:
    """Images ``i(e)`` in the blown-up edge lattice: ``e`` or ``e - e'`` for edges at the vertex."""
    opposite, exc = blowup_edge_map(graph, vertex)
    e_new = graph.num_edges + 3
    images = []
    for k in range(graph.num_edges):
        vec = [0] * e_new
        vec[k] = 1
        if k in opposite:
            vec[opposite[k]] -= 1
        images.append(tuple(vec))
    return images, opposite, exc


def blowup_lattice_split(graph: RibbonGraph, vertex: int) -> BlowupSplit:
    if any(graph.vertex_of()[a] == graph.vertex_of()[b] for a, b in graph.edge_pairs()):
        raise DecompositionFailed("blow-up splitting needs a loop-free graph")
    blown = blow_up(graph, vertex)
    a = intersection_form(graph)
    a2 = intersection_form(blown)
    images, opposite, exc = inclusion_classes(graph, vertex)
    if len(opposite) != 3:
        raise DecompositionFailed("vertex must meet three distinct edges")
    n0 = [tuple(int(i == x) for i in range(blown.num_edges)) for x in exc]
    restricted = [[pair(a2, x, y) for y in images] for x in images]
    exc_form = [[pair(a2, x, y) for y in n0] for x in n0]
    cross = [[pair(a2, x, y) for y in n0] for x in images]
    basis = transpose([list(v) for v in images] + [list(v) for v in n0])
    det = determinant(basis)
    split = BlowupSplit([list(r) for r in transpose([list(v) for v in images])], exc, restricted, exc_form, cross, det, opposite)
    if restricted != a:
        raise DecompositionFailed("restricted form differs from the original form")
    if not split.ok:
        raise DecompositionFailed("i(N) + N0 is not an orthogonal unimodular splitting")
    return split


# -- presets -----------------------------------------------------------------------


def _unit(e: int, *idx: int) -> EdgeClass:
    v = [0] * e
    for i in idx:
        v[i] += 1
    return tuple(v)


def preset_phase(name: str, framing=None, signs=None) -> Tuple[str, PhaseFraming]:
    """Built-in phases for the named graphs; returns ``(graph name, phase)``."""
    if name == "tetra-p":
        e = 6
        m = framing if framing is not None else ((0,),)
        return "tetrahedron", PhaseFraming((_unit(e, 1),), (_unit(e, 0),), m, signs)
    if name == "prism-M":
        e = 9
        m = framing if framing is not None else ((0, 0), (0, 0))
        return "prism", PhaseFraming((_unit(e, 2), _unit(e, 8)), (_unit(e, 1), _unit(e, 7)), m, signs)
    if name == "cube-std":
        e = 12
        m = framing if framing is not None else ((0, 0, 0),) * 3
        return "cube", PhaseFraming(
            (_unit(e, 8), _unit(e, 2), _unit(e, 5)),
            (_unit(e, 0, 2), _unit(e, 1), _unit(e, 6)),
            m,
            signs,
        )
    raise GraphError(f"unknown phase preset {name!r}; choose from {sorted(PHASE_PRESETS)}")


PHASE_PRESETS = ("tetra-p", "prism-M", "cube-std")

DEFAULT_GAUGES = {
    "tetrahedron": ("z0", "z1", "z2"),
    "prism": ("x", "z1", "z2"),
    "cube": ("w", "x", "u"),
}
