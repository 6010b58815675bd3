import random
from fractions import Fraction

import pytest

from chromlag.exactalg import MPoly, RatFunc
from chromlag.homlattice import DEFAULT_GAUGES, PhaseFraming, preset_phase
from chromlag.periods import build_chart, relation_value
from chromlag.ribbon import named_graph
from chromlag.superpot import (
    ConventionError,
    NotClosed,
    UVSystem,
    bps_invert,
    build_uv_monomials,
    framed_system,
    li2_form,
    multiple_cover_sum,
    pipeline,
    solve_and_integrate,
    zero_framing_relations,
)

F = Fraction


def setup(preset, framing=None, signs=None):
    gname, pf = preset_phase(preset, framing, signs)
    g = named_graph(gname)
    return g, DEFAULT_GAUGES[gname], pf


def run(preset, framing=None, order=6, **kw):
    g, gauge, pf = setup(preset, framing, kw.pop("signs", None))
    return pipeline(g, gauge, pf, order=order, **kw)


def uv(name, names=None):
    g, gauge, pf = setup(name)
    chart = build_chart(g, gauge)
    from chromlag.homlattice import h1_presentation, validate_phase_framing

    sign = validate_phase_framing(h1_presentation(g), pf).duality_sign
    return chart, build_uv_monomials(chart, pf, sign)


def test_tetra_monomials():
    chart, (us, vs) = uv("tetra-p")
    z = RatFunc(MPoly.var(("z3",), "z3"))
    assert us == [-(z / (1 - z))]
    assert vs == [-1 / (z - 1)]


def test_prism_monomials():
    chart, (us, vs) = uv("prism-M")
    names = ["x" + c for c in "abcdefghi"]
    assert us[0] == relation_value(chart, "-xb", names) and vs[0] == relation_value(chart, "-1/xc", names)
    assert us[1] == relation_value(chart, "-xh", names) and vs[1] == relation_value(chart, "-1/xi", names)


def test_cube_monomials_read_on_mirror():
    # the cube phase pairs to minus the identity, so coordinates are inverted
    chart, (us, vs) = uv("cube-std")
    assert us[0] == relation_value(chart, "1/(x1*x3)")
    assert us[1] == relation_value(chart, "-1/x2")
    assert vs[0] == relation_value(chart, "-x9")


def _strs(rels):
    return [str(r) for r in rels.relations]


def test_zero_framing_relations():
    _, (us, vs) = uv("tetra-p")
    r = zero_framing_relations(us, vs)
    assert r.mode == "triangular" and _strs(r) == ["-1 + U1 + V1"]
    _, (us, vs) = uv("prism-M")
    assert _strs(zero_framing_relations(us, vs)) == ["-1 + U1 + V1", "-1 + U2 + V2"]


def test_cube_relations_match_closed_forms():
    _, (us, vs) = uv("cube-std")
    rels = zero_framing_relations(us, vs).relations
    ring = rels[0].vars
    U1, U2, U3, V1, V2, V3 = (MPoly.var(ring, n) for n in ("U1", "U2", "U3", "V1", "V2", "V3"))
    assert rels[0] == V1 * (1 - U1 * U2) * (1 - U1 * U3) - (1 - U1)
    assert rels[1] == V2 * (1 - U1 * U2) - (1 - U2)
    assert rels[2] == V3 * (1 - U1 * U3) - (1 - U3)


def test_resultant_fallback():
    t = MPoly.var(("t",), "t")
    us, vs = [RatFunc(t * t)], [RatFunc(1 + t * t * t)]
    r = zero_framing_relations(us, vs)
    assert r.mode == "resultant"
    U1, V1 = MPoly.gens(r.relations[0].vars)
    assert r.relations[0] in ((V1 - 1) ** 2 - U1**3, -((V1 - 1) ** 2 - U1**3))


def _relations(strs, ring):
    import sympy

    return [MPoly.from_sympy(ring, sympy.sympify(s)) for s in strs]


@pytest.mark.parametrize("p", [-2, -1, 0, 1, 2, 3])
def test_tetra_framed_equation(p):
    ring = ("U1", "V1")
    rel = _relations(["U1 + V1 - 1"], ring)
    sys_ = framed_system(rel, [[p]])
    rep = solve_and_integrate(sys_, 6)
    # the solved V satisfies (-1)^p U V^p + V = 1 in the new coordinate
    from chromlag.exactalg import TruncSeries

    U = TruncSeries.var(("U1",), 6, "U1")
    V = rep.V_series[0]
    Vp = V**p if p >= 0 else V.inverse() ** (-p)
    assert (-1 if p % 2 else 1) * U * Vp + V - 1 == TruncSeries.const(("U1",), 6, 0)


def test_prism_offdiagonal_framing_equations():
    ring = ("U1", "U2", "V1", "V2")
    rels = _relations(["U1 + V1 - 1", "U2 + V2 - 1"], ring)
    rep = solve_and_integrate(framed_system(rels, [[0, 1], [1, 0]]), 5)
    from chromlag.exactalg import TruncSeries

    u1, u2 = (TruncSeries.var(("U1", "U2"), 5, n) for n in ("U1", "U2"))
    v1, v2 = rep.V_series
    zero = TruncSeries.const(("U1", "U2"), 5, 0)
    assert u1 * v2 + v1 - 1 == zero and u2 * v1 + v2 - 1 == zero


def test_negative_framing_is_quadratic():
    ring = ("U1", "U2", "V1", "V2")
    rels = _relations(["U1 + V1 - 1", "U2 + V2 - 1"], ring)
    sys_ = framed_system(rels, [[0, -1], [-1, 0]])
    twist_eqs = sys_.equations[2:]
    assert all(e.total_degree() == 2 for e in twist_eqs)


def test_twist_toggle_negates_framing():
    ring = ("U1", "U2", "V1", "V2")
    rels = _relations(["U1 + V1 - 1", "U2 + V2 - 1"], ring)
    a = solve_and_integrate(framed_system(rels, [[0, 1], [1, 0]], twist=-1), 5)
    b = solve_and_integrate(framed_system(rels, [[0, -1], [-1, 0]]), 5)
    assert a.K == b.K


def test_convention_error_on_bad_seed():
    ring = ("U1", "V1")
    with pytest.raises(ConventionError):
        framed_system(_relations(["U1 + V1 - 2"], ring), [[0]])


def test_not_closed():
    ring = ("U1", "U2", "Y1", "Y2", "V1", "V2")
    U1, U2, Y1, Y2, V1, V2 = MPoly.gens(ring)
    eqs = [V1 - 1 + U2, V2 - 1, Y1 - U1, Y2 - U2]
    sys_ = UVSystem(2, [], ((0, 0), (0, 0)), (1, 1), 1, eqs, ("U1", "U2"), ("Y1", "Y2", "V1", "V2"), (0, 0, 1, 1))
    with pytest.raises(NotClosed):
        solve_and_integrate(sys_, 3)


def test_solve_and_integrate_examples():
    rep = run("tetra-p", ((0,),), order=10)
    assert all(rep.coefficient(n) == F(1, n * n) for n in range(1, 11))
    rep = run("prism-M", ((0, 0), (0, 0)), order=6)
    for n in range(1, 7):
        assert rep.coefficient(n, 0) == rep.coefficient(0, n) == F(1, n * n)
    assert not any(all(e) for e in rep.K)
    rep = run("cube-std", order=4)
    assert rep.coefficient(1, 1, 0) == -1 and rep.coefficient(2, 2, 0) == F(-1, 4)
    assert rep.coefficient(1, 0, 1) == -1 and rep.coefficient(1, 1, 1) == 0


def test_bps_examples():
    a, integral = bps_invert({(n,): F(1, n * n) for n in range(1, 9)}, 8)
    assert integral and a == {(1,): 1}
    rep = run("prism-M", ((0, 1), (1, 0)), order=6)
    assert rep.a == {(1, 0): 1, (0, 1): 1, (1, 1): -1}
    assert rep.li2_form == "Li2(U1) + Li2(U2) - Li2(U1*U2)"


def test_bps_round_trip():
    rng = random.Random(2024)
    for _ in range(50):
        nvars = rng.randint(1, 3)
        order = 8
        a = {}
        for _ in range(rng.randint(1, 6)):
            d = tuple(rng.randint(0, 2) for _ in range(nvars))
            if 0 < sum(d) <= order // 2:
                a[d] = rng.randint(-5, 5)
        a = {d: c for d, c in a.items() if c}
        K = multiple_cover_sum(a, order, nvars)
        back, integral = bps_invert(K, order, nvars) if K else ({}, True)
        assert integral and back == {d: F(c) for d, c in a.items()}


def test_sign_twist_changes_K_by_parity():
    base = run("tetra-p", ((0,),), order=8)
    flipped = run("tetra-p", ((0,),), order=8, signs=(-1,))
    for n in range(1, 9):
        assert flipped.coefficient(n) == (-1) ** n * base.coefficient(n)
    # the flip is not a symmetry of the BPS numbers: Li2(-U) is not integral
    assert not flipped.integral and flipped.bps(2) == F(1, 2)


def test_blowup_of_theta_is_pants():
    # the theta graph has a point as moduli space, so the tetrahedron's W is
    # entirely the pants factor
    rep = run("tetra-p", ((0,),), order=8)
    assert rep.K == {(n,): F(1, n * n) for n in range(1, 9)}


def test_pipeline_is_deterministic():
    a = run("prism-M", ((1, -1), (-1, 2)), order=5).as_dict()
    b = run("prism-M", ((1, -1), (-1, 2)), order=5).as_dict()
    assert a == b


def test_li2_form():
    assert li2_form({(1, 0): F(1), (1, 1): F(-1), (2, 1): F(3)}, ["U1", "U2"]) == "Li2(U1) - Li2(U1*U2) + 3*Li2(U1^2*U2)"
    assert li2_form({}, ["U"]) == "0"


def test_pipeline_rejects_asymmetric_framing():
    from chromlag.homlattice import FramingNotSymmetric

    with pytest.raises(FramingNotSymmetric):
        run("prism-M", ((0, 1), (2, 0)))


def test_custom_phase_object():
    # the same tetrahedron phase written out by hand
    pf = PhaseFraming([(0, 1, 0, 0, 0, 0)], [(1, 0, 0, 0, 0, 0)], [[0]])
    rep = pipeline(named_graph("tetrahedron"), None, pf, order=5)
    assert rep.li2_form == "Li2(U1)"
