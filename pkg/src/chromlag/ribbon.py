"""Cubic planar graphs as combinatorial maps.

A graph on ``n`` darts (half-edges) is a pair of permutations: ``alpha``
pairs the two darts of each edge and ``sigma`` rotates counterclockwise
around each vertex.  Faces are the cycles of ``phi = sigma o alpha``; with
this choice the face of a dart lies on its right-hand side.

Vertices, edges and faces are indexed by the smallest dart they contain,
so an edge built from darts ``(2k, 2k+1)`` has index ``k``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Mapping, Optional, Sequence, Tuple


class GraphError(ValueError):
    pass


class MalformedPermutation(GraphError):
    pass


class NotCubic(GraphError):
    pass


class NotPlanar(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class LoopEdge(GraphError):
    pass


@dataclass(frozen=True)
class GraphStats:
    v: int
    e: int
    f: int
    g: Optional[int]

    def as_dict(self):
        return {"v": self.v, "e": self.e, "f": self.f, "g": self.g}


@dataclass(frozen=True)
class Multigraph:
    """Abstract multigraph; loops and parallel edges are allowed."""

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for a, b in self.edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise GraphError(f"edge ({a}, {b}) out of range for {self.vertex_count} vertices")

    def degree_sequence(self):
        deg = [0] * self.vertex_count
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return sorted(deg)

    def simple_edge_set(self):
        return {tuple(sorted(e)) for e in self.edges if e[0] != e[1]}


def _cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


def _check_permutation(p: Sequence[int], n: int, name: str):
    if len(p) != n:
        raise MalformedPermutation(f"{name} has length {len(p)}, expected {n}")
    if sorted(p) != list(range(n)):
        raise MalformedPermutation(f"{name} is not a permutation of 0..{n - 1}")


@dataclass(frozen=True, eq=False)
class RibbonGraph:
    dart_count: int
    alpha: Tuple[int, ...]
    sigma: Tuple[int, ...]
    face_labels: Mapping[int, str] = field(default_factory=dict)
    allow_noncubic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
        object.__setattr__(self, "face_labels", {int(k): str(v) for k, v in dict(self.face_labels).items()})
        self._validate()

    # -- structure --------------------------------------------------------
    def _validate(self):
        n = self.dart_count
        if n <= 0 or n % 2:
            raise MalformedPermutation(f"dart count must be a positive even integer, got {n}")
        _check_permutation(self.alpha, n, "alpha")
        _check_permutation(self.sigma, n, "sigma")
        for d in range(n):
            if self.alpha[d] == d or self.alpha[self.alpha[d]] != d:
                raise MalformedPermutation("alpha must be a fixed-point-free involution")
        if not self.allow_noncubic:
            bad = [c for c in _cycles(self.sigma) if len(c) != 3]
            if bad:
                raise NotCubic(f"vertex rotations of lengths {sorted(len(c) for c in bad)} are not cubic")
        if not self._connected():
            raise NotPlanar("graph is disconnected")
        v = len(_cycles(self.sigma))
        f = len(self.face_cycles())
        if v - n // 2 + f != 2:
            raise NotPlanar(f"Euler characteristic v - e + f = {v - n // 2 + f}, not 2")
        for k in self.face_labels:
            if not 0 <= k < f:
                raise GraphError(f"face label index {k} out of range")

    def _connected(self) -> bool:
        seen = {0}
        todo = [0]
        while todo:
            d = todo.pop()
            for x in (self.alpha[d], self.sigma[d]):
                if x not in seen:
                    seen.add(x)
                    todo.append(x)
        return len(seen) == self.dart_count

    def phi(self, d: int) -> int:
        return self.sigma[self.alpha[d]]

    def face_cycles(self) -> List[Tuple[int, ...]]:
        return _cycles([self.sigma[self.alpha[d]] for d in range(self.dart_count)])

    def vertex_cycles(self) -> List[Tuple[int, ...]]:
        return _cycles(self.sigma)

    def edge_pairs(self) -> List[Tuple[int, int]]:
        return [(d, self.alpha[d]) for d in range(self.dart_count) if d < self.alpha[d]]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_cycles())

    @property
    def num_edges(self) -> int:
        return self.dart_count // 2

    @property
    def num_faces(self) -> int:
        return len(self.face_cycles())

    def _index(self, cycles):
        out = [0] * self.dart_count
        for i, c in enumerate(cycles):
            for d in c:
                out[d] = i
        return out

    def vertex_of(self) -> List[int]:
        return self._index(self.vertex_cycles())

    def face_of(self) -> List[int]:
        return self._index(self.face_cycles())

    def edge_of(self) -> List[int]:
        return self._index(self.edge_pairs())

    def face_label(self, i: int) -> str:
        return self.face_labels.get(i, f"F{i}")

    def face_index(self, key) -> int:
        """Face index from an int, a numeric string, or a face label."""
        if isinstance(key, int):
            idx = key
        else:
            key = str(key).strip()
            named = [i for i, lab in self.face_labels.items() if lab == key]
            if named:
                return named[0]
            if key.startswith("F") and key[1:].isdigit():
                idx = int(key[1:])
            elif key.lstrip("-").isdigit():
                idx = int(key)
            else:
                raise GraphError(f"unknown face {key!r}")
        if not 0 <= idx < self.num_faces:
            raise GraphError(f"face index {idx} out of range")
        return idx

    def is_simple(self) -> bool:
        """No loops and no parallel edges in the graph itself."""
        vof = self.vertex_of()
        seen = set()
        for a, b in self.edge_pairs():
            u, w = vof[a], vof[b]
            if u == w:
                return False
            key = (min(u, w), max(u, w))
            if key in seen:
                return False
            seen.add(key)
        return True

    def __eq__(self, other):
        if not isinstance(other, RibbonGraph):
            return NotImplemented
        return (
            self.dart_count == other.dart_count
            and self.alpha == other.alpha
            and self.sigma == other.sigma
            and self.face_labels == other.face_labels
        )

    def __hash__(self):
        return hash((self.dart_count, self.alpha, self.sigma))

    def canonical_form(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Relabeling-invariant encoding (orientation-preserving isomorphism)."""
        best = None
        for start in range(self.dart_count):
            label = {start: 0}
            order = [start]
            q = deque([start])
            while q:
                d = q.popleft()
                for x in (self.alpha[d], self.sigma[d]):
                    if x not in label:
                        label[x] = len(order)
                        order.append(x)
                        q.append(x)
            a = tuple(label[self.alpha[d]] for d in order)
            s = tuple(label[self.sigma[d]] for d in order)
            if best is None or (a, s) < best:
                best = (a, s)
        return best


def validate(graph: RibbonGraph) -> GraphStats:
    """Counts and genus; construction already rejected malformed input."""
    v, e, f = graph.num_vertices, graph.num_edges, graph.num_faces
    if graph.allow_noncubic and any(len(c) != 3 for c in graph.vertex_cycles()):
        return GraphStats(v, e, f, None)
    g = f - 3
    if g < 0 or v != 2 * g + 2 or e != 3 * g + 3:
        raise NotPlanar(f"counts v={v}, e={e}, f={f} do not fit a genus")
    return GraphStats(v, e, f, g)


def faces(graph: RibbonGraph) -> List[Tuple[int, ...]]:
    return graph.face_cycles()


def dual(graph: RibbonGraph) -> Multigraph:
    fof = graph.face_of()
    return Multigraph(graph.num_faces, tuple((fof[a], fof[b]) for a, b in graph.edge_pairs()))


def isomorphic(g1: RibbonGraph, g2: RibbonGraph) -> bool:
    return g1.dart_count == g2.dart_count and g1.canonical_form() == g2.canonical_form()


# -- surgeries --------------------------------------------------------------


def exceptional_data(graph: RibbonGraph, vertex: int):
    """Darts ``(d0, d1, d2)`` at ``vertex`` in counterclockwise order."""
    cycles = graph.vertex_cycles()
    if not 0 <= vertex < len(cycles):
        raise VertexOutOfRange(f"vertex {vertex} not in 0..{len(cycles) - 1}")
    cyc = cycles[vertex]
    if len(cyc) != 3:
        raise NotCubic("blow-up needs a trivalent vertex")
    d0 = cyc[0]
    return (d0, graph.sigma[d0], graph.sigma[graph.sigma[d0]])


def blow_up(graph: RibbonGraph, vertex: int) -> RibbonGraph:
    """Replace a vertex by a small triangle.

    The old darts keep their numbers; the triangle uses six new darts, the
    triangle edge between corners ``k`` and ``k+1`` being darts
    ``n+2k`` (at corner ``k``) and ``n+2k+1``.  Old faces keep their
    indices and the triangle becomes the last face.
    """
    ds = exceptional_data(graph, vertex)
    n = graph.dart_count
    alpha = list(graph.alpha) + [0] * 6
    sigma = list(graph.sigma) + [0] * 6
    for k in range(3):
        a, b = n + 2 * k, n + 2 * k + 1
        alpha[a], alpha[b] = b, a
    for k in range(3):
        to_next = n + 2 * k
        to_prev = n + 2 * ((k - 1) % 3) + 1
        sigma[ds[k]] = to_next
        sigma[to_next] = to_prev
        sigma[to_prev] = ds[k]
    return RibbonGraph(n + 6, alpha, sigma, dict(graph.face_labels))


def blowup_edge_map(graph: RibbonGraph, vertex: int):
    """Bookkeeping for :func:`blow_up`.

    Returns ``(incident, opposite, exceptional)`` where ``incident`` maps each
    edge index at the vertex to the exceptional edge index not adjacent to
    it, and ``exceptional`` lists the three new edge indices.
    """
    ds = exceptional_data(graph, vertex)
    n = graph.dart_count
    eof = graph.edge_of()
    exc = [n // 2 + k for k in range(3)]
    opposite = {}
    for k, d in enumerate(ds):
        # corner k touches triangle edges k and k-1; edge k+1 is opposite
        opposite[eof[d]] = exc[(k + 1) % 3]
    return opposite, exc


def edge_move(graph: RibbonGraph, edge: int) -> RibbonGraph:
    """Whitehead move: rotate an edge a quarter turn, reattaching its four neighbours."""
    pairs = graph.edge_pairs()
    if not 0 <= edge < len(pairs):
        raise GraphError(f"edge {edge} out of range")
    d, dp = pairs[edge]
    vof = graph.vertex_of()
    if vof[d] == vof[dp]:
        raise LoopEdge(f"edge {edge} is a loop")
    s = graph.sigma
    a1, a2 = s[d], s[s[d]]
    c1, c2 = s[dp], s[s[dp]]
    sigma = list(s)
    sigma[d], sigma[c2], sigma[a1] = c2, a1, d
    sigma[dp], sigma[a2], sigma[c1] = a2, c1, dp
    out = RibbonGraph(graph.dart_count, graph.alpha, sigma, {})
    if graph.face_labels:
        out = RibbonGraph(out.dart_count, out.alpha, out.sigma, _carry_labels(graph, out, {d, dp}))
    return out


def _carry_labels(old: RibbonGraph, new: RibbonGraph, moved) -> Dict[int, str]:
    new_fof = new.face_of()
    mapping = {}
    for i, cyc in enumerate(old.face_cycles()):
        keep = [x for x in cyc if x not in moved]
        if not keep:
            return {}
        mapping[i] = new_fof[keep[0]]
    if len(set(mapping.values())) != len(mapping):
        return {}
    return {mapping[i]: lab for i, lab in old.face_labels.items()}


# -- construction from a planar straight-line drawing -------------------------


def _angle_cmp(p, q):
    def half(v):
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    hp, hq = half(p), half(q)
    if hp != hq:
        return hp - hq
    cross = p[0] * q[1] - p[1] * q[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def from_drawing(
    points: Mapping[str, Tuple[object, object]],
    edges: Sequence[Tuple[str, str]],
    face_vertices: Optional[Mapping[str, Sequence[str]]] = None,
) -> RibbonGraph:
    """Ribbon graph of a straight-line plane drawing.

    Edge ``k`` (listed as ``(u, w)``) becomes darts ``2k`` at ``u`` and
    ``2k+1`` at ``w``.  ``face_vertices`` names faces by their vertex sets.
    """
    pts = {k: (Fraction(x), Fraction(y)) for k, (x, y) in points.items()}
    n = 2 * len(edges)
    alpha = [0] * n
    at: Dict[str, List[Tuple[int, Tuple[Fraction, Fraction]]]] = {k: [] for k in pts}
    tail = {}
    for k, (u, w) in enumerate(edges):
        alpha[2 * k], alpha[2 * k + 1] = 2 * k + 1, 2 * k
        pu, pw = pts[u], pts[w]
        at[u].append((2 * k, (pw[0] - pu[0], pw[1] - pu[1])))
        at[w].append((2 * k + 1, (pu[0] - pw[0], pu[1] - pw[1])))
        tail[2 * k], tail[2 * k + 1] = u, w
    sigma = [0] * n
    for darts in at.values():
        darts.sort(key=cmp_to_key(lambda a, b: _angle_cmp(a[1], b[1])))
        for i, (dart, _) in enumerate(darts):
            sigma[dart] = darts[(i + 1) % len(darts)][0]
    g = RibbonGraph(n, alpha, sigma)
    if not face_vertices:
        return g
    labels = {}
    for i, cyc in enumerate(g.face_cycles()):
        verts = frozenset(tail[d] for d in cyc)
        for name, vs in face_vertices.items():
            if frozenset(vs) == verts:
                labels[i] = name
    return RibbonGraph(n, alpha, sigma, labels)


# -- named graphs -------------------------------------------------------------


def theta() -> RibbonGraph:
    """Two vertices joined by three edges."""
    return RibbonGraph(6, (1, 0, 3, 2, 5, 4), (2, 5, 4, 1, 0, 3), {0: "A", 1: "B", 2: "C"})


def tetrahedron() -> RibbonGraph:
    """K4 drawn with edges ordered e1, e2, e3, e1', e2', e3' (opposite pairs share a name).

    Faces: ``z0`` is the outer face, ``z1`` the bottom triangle, ``z2`` the
    left and ``z3`` the right one.
    """
    pts = {"A": (-3, Fraction(-9, 4)), "B": (3, Fraction(-9, 4)), "C": (0, 0), "D": (0, 3)}
    edges = [("A", "B"), ("B", "D"), ("D", "A"), ("C", "D"), ("A", "C"), ("B", "C")]
    faces_ = {"z0": "ABD", "z1": "ABC", "z2": "ACD", "z3": "BCD"}
    return from_drawing(pts, edges, faces_)


def prism() -> RibbonGraph:
    """Triangular prism with edges a..i; ``abc`` inner and ``ghi`` outer triangle.

    Faces: ``x`` inner triangle, ``y`` outer face, quads ``z1`` (bottom),
    ``z2`` (left), ``z3`` (right).
    """
    pts = {
        "P1": (-3, Fraction(-16, 5)),
        "P2": (3, Fraction(-16, 5)),
        "P3": (Fraction(4, 3), -2),
        "P4": (Fraction(-4, 3), -2),
        "P5": (0, 0),
        "P6": (0, 2),
    }
    edges = [
        ("P3", "P4"),  # a
        ("P4", "P5"),  # b
        ("P5", "P3"),  # c
        ("P5", "P6"),  # d
        ("P1", "P4"),  # e
        ("P2", "P3"),  # f
        ("P1", "P2"),  # g
        ("P6", "P2"),  # h
        ("P1", "P6"),  # i
    ]
    faces_ = {
        "x": ["P3", "P4", "P5"],
        "y": ["P1", "P2", "P6"],
        "z1": ["P1", "P2", "P3", "P4"],
        "z2": ["P1", "P4", "P5", "P6"],
        "z3": ["P2", "P3", "P5", "P6"],
    }
    return from_drawing(pts, edges, faces_)


PRISM_EDGE_NAMES = "abcdefghi"


def cube() -> RibbonGraph:
    """Cube 1-skeleton with edges 1..12 (as indices 0..11).

    Inner square edges 1-4 (bottom, right, top, left), outer square 5-8 in
    the same order, diagonals 9 (bottom-left), 10, 11, 12 (top-left).
    Faces: ``u`` centre, ``v`` outer, ``w``/``x``/``y``/``z`` the bottom,
    right, top and left trapezoids.
    """
    pts = {
        "i1": (-1, -1), "i2": (1, -1), "i3": (1, 1), "i4": (-1, 1),
        "o1": (-2, -2), "o2": (2, -2), "o3": (2, 2), "o4": (-2, 2),
    }
    edges = [
        ("i1", "i2"), ("i2", "i3"), ("i3", "i4"), ("i4", "i1"),
        ("o1", "o2"), ("o2", "o3"), ("o3", "o4"), ("o4", "o1"),
        ("o1", "i1"), ("o2", "i2"), ("o3", "i3"), ("o4", "i4"),
    ]
    faces_ = {
        "u": ["i1", "i2", "i3", "i4"],
        "v": ["o1", "o2", "o3", "o4"],
        "w": ["i1", "i2", "o1", "o2"],
        "x": ["i2", "i3", "o2", "o3"],
        "y": ["i3", "i4", "o3", "o4"],
        "z": ["i4", "i1", "o4", "o1"],
    }
    return from_drawing(pts, edges, faces_)


NAMED_GRAPHS = {
    "theta": theta,
    "tetrahedron": tetrahedron,
    "prism": prism,
    "cube": cube,
}


def named_graph(name: str) -> RibbonGraph:
    try:
        return NAMED_GRAPHS[name]()
    except KeyError:
        raise GraphError(f"unknown graph preset {name!r}; choose from {sorted(NAMED_GRAPHS)}") from None


def random_blowups(rng, steps: int, start: Optional[RibbonGraph] = None) -> RibbonGraph:
    """Blow up ``steps`` random vertices, starting from the tetrahedron."""
    g = start if start is not None else tetrahedron()
    for _ in range(steps):
        g = blow_up(g, rng.randrange(g.num_vertices))
    return g
