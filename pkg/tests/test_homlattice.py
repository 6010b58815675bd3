import itertools
import random

import pytest

from chromlag.exactalg import determinant
from chromlag.homlattice import (
    DecompositionFailed,
    FramingNotSymmetric,
    NotDual,
    NotIsotropic,
    NotPrimitive,
    PhaseFraming,
    blowup_lattice_split,
    face_relations,
    h1_presentation,
    intersection_form,
    pair,
    preset_phase,
    validate_phase_framing,
)
from chromlag.ribbon import blow_up, named_graph, random_blowups

GRAPHS = ["theta", "tetrahedron", "prism", "cube"]


def unit(e, *idx, sign=1):
    v = [0] * e
    for i in idx:
        v[i] += sign
    return tuple(v)


@pytest.mark.parametrize("name", GRAPHS)
def test_form_properties(name):
    g = named_graph(name)
    a = intersection_form(g)
    e = g.num_edges
    assert all(a[i][j] == -a[j][i] for i in range(e) for j in range(e))
    assert all(abs(a[i][j]) <= 2 for i in range(e) for j in range(e))
    for f in face_relations(g):
        assert all(sum(a[i][j] * f[j] for j in range(e)) == 0 for i in range(e))
    pres = h1_presentation(g)
    genus = g.num_faces - 3
    assert pres.rank == 2 * genus
    if genus:
        assert determinant(pres.induced_form) == 1
        assert all(pres.induced_form[i][j] == -pres.induced_form[j][i] for i in range(2 * genus) for j in range(2 * genus))


def test_tetrahedron_pairings():
    g = named_graph("tetrahedron")
    a = intersection_form(g)
    e1, e2, e3 = unit(6, 0), unit(6, 1), unit(6, 2)
    assert pair(a, e1, e2) == pair(a, e2, e3) == pair(a, e3, e1) == 1
    # opposite edges define the same class in H_1
    pres = h1_presentation(g)
    for k in range(3):
        assert pres.coordinates(unit(6, k)) == pres.coordinates(unit(6, k + 3))
    assert pres.induced_form == [[0, 1], [-1, 0]]


def test_theta_form_is_zero():
    g = named_graph("theta")
    pres = h1_presentation(g)
    assert pres.rank == 0
    a = intersection_form(g)
    # contributions at the two vertices cancel edge by edge
    assert a == [[0] * 3 for _ in range(3)]
    assert all(pres.in_radical(unit(3, k)) for k in range(3))


def test_prism_block_form():
    g = named_graph("prism")
    a = intersection_form(g)
    A, B, C, D, E, F_, G, H, I = range(9)
    basis = [unit(9, A), unit(9, B), unit(9, C), unit(9, G), unit(9, H), unit(9, I)]
    basis.append(tuple(x - y - z for x, y, z in zip(unit(9, D), unit(9, A), unit(9, G))))
    basis.append(tuple(x - y - z for x, y, z in zip(unit(9, E), unit(9, C), unit(9, H))))
    basis.append(tuple(x - y - z for x, y, z in zip(unit(9, F_), unit(9, B), unit(9, I))))
    block = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]
    expected = [[0] * 9 for _ in range(9)]
    for off in (0, 3):
        for i in range(3):
            for j in range(3):
                expected[off + i][off + j] = block[i][j]
    assert [[pair(a, x, y) for y in basis] for x in basis] == expected


def test_face_relations():
    tet = named_graph("tetrahedron")
    rels = face_relations(tet)
    assert len(rels) == 4 and all(sorted(r) == [0, 0, 0, 1, 1, 1] for r in rels)
    theta = face_relations(named_graph("theta"))
    assert all(sum(r) == 2 and max(r) == 1 for r in theta)
    # prism: d = a + g, e = c + h, f = b + i in H_1
    pres = h1_presentation(named_graph("prism"))
    for lhs, r1, r2 in [(3, 0, 6), (4, 2, 7), (5, 1, 8)]:
        diff = tuple(x - y - z for x, y, z in zip(unit(9, lhs), unit(9, r1), unit(9, r2)))
        assert pres.in_radical(diff)


def test_face_quotient_torsion():
    # the edge lattice modulo the face classes alone has a Z/2 (the sum of all
    # faces is twice the sum of all edges); the presentation quotients by the
    # radical of the form instead, which is saturated
    for name in GRAPHS:
        pres = h1_presentation(named_graph(name))
        assert pres.face_torsion == [2]
        assert pres.face_invariant_factors[:-1] == [1] * (len(pres.face_invariant_factors) - 1)


@pytest.mark.parametrize("p", [-3, -1, 0, 1, 2, 5])
def test_tetra_phase_valid_for_all_p(p):
    name, pf = preset_phase("tetra-p", ((p,),))
    rep = validate_phase_framing(h1_presentation(named_graph(name)), pf)
    assert rep.duality_sign == 1


def test_prism_framings():
    pres = h1_presentation(named_graph("prism"))
    _, pf = preset_phase("prism-M")
    for a, b, d in itertools.product(range(-2, 3), repeat=3):
        validate_phase_framing(pres, pf.with_framing(((a, b), (b, d))))
    with pytest.raises(FramingNotSymmetric):
        validate_phase_framing(pres, pf.with_framing(((0, 1), (2, 0))))


def test_framing_symmetry_property():
    rng = random.Random(4)
    pres = h1_presentation(named_graph("cube"))
    _, pf = preset_phase("cube-std")
    for _ in range(25):
        m = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        symmetric = all(m[i][j] == m[j][i] for i in range(3) for j in range(3))
        try:
            validate_phase_framing(pres, pf.with_framing(m))
            accepted = True
        except FramingNotSymmetric:
            accepted = False
        assert accepted == symmetric


def test_cube_phase_pairs_with_opposite_orientation():
    pres = h1_presentation(named_graph("cube"))
    _, pf = preset_phase("cube-std")
    rep = validate_phase_framing(pres, pf)
    assert rep.lift_kernel_pairings == [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    assert rep.duality_sign == -1
    # the basis {-(e1+e3), e9; -e2, e3; -e7, e6} is symplectic-standard
    neg = PhaseFraming(pf.kernel_classes, [tuple(-x for x in c) for c in pf.lift_classes], pf.framing)
    assert validate_phase_framing(pres, neg).duality_sign == 1


def test_phase_errors():
    pres = h1_presentation(named_graph("prism"))
    _, pf = preset_phase("prism-M")
    nu, mu = pf.kernel_classes, pf.lift_classes
    with pytest.raises(NotPrimitive):
        validate_phase_framing(pres, PhaseFraming((nu[0], nu[0]), mu, pf.framing))
    with pytest.raises(NotPrimitive):
        validate_phase_framing(pres, PhaseFraming((tuple(2 * x for x in nu[0]), nu[1]), mu, pf.framing))
    with pytest.raises(NotIsotropic):
        validate_phase_framing(pres, PhaseFraming((nu[0], mu[0]), (mu[1], nu[1]), pf.framing))
    with pytest.raises(NotDual):
        validate_phase_framing(pres, PhaseFraming(nu, (mu[1], mu[0]), pf.framing))


@pytest.mark.parametrize("name", ["theta", "tetrahedron", "prism"])
def test_blowup_split(name):
    g = named_graph(name)
    for v in range(g.num_vertices):
        split = blowup_lattice_split(g, v)
        assert split.ok
        assert split.restricted_form == intersection_form(g)
        ex = split.exceptional_form
        # exceptional triangle: pairings +-1 around the cycle
        assert all(abs(ex[i][j]) == 1 for i in range(3) for j in range(3) if i != j)
        assert ex[0][1] == ex[1][2] == ex[2][0]


def test_blowup_split_random_family():
    rng = random.Random(9)
    for _ in range(6):
        g = random_blowups(rng, rng.randint(0, 4))
        assert blowup_lattice_split(g, rng.randrange(g.num_vertices)).ok


def test_blowup_split_needs_loop_free_graph():
    from chromlag.ribbon import RibbonGraph

    dumbbell = RibbonGraph(6, [1, 0, 3, 2, 5, 4], [1, 4, 3, 5, 0, 2])
    with pytest.raises(DecompositionFailed):
        blowup_lattice_split(dumbbell, 0)


def test_theta_blowup_carries_zero_form_on_old_part():
    split = blowup_lattice_split(named_graph("theta"), 0)
    pres = h1_presentation(blow_up(named_graph("theta"), 0))
    images = [tuple(row[k] for row in split.inclusion) for k in range(3)]
    assert all(pres.in_radical(c) for c in images)
