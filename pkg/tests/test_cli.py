import json

import pytest

from chromlag import io
from chromlag.cli import main
from chromlag.homlattice import preset_phase
from chromlag.ribbon import named_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--graph", "tetrahedron", "--json")
    assert code == 0
    d = json.loads(out)
    assert (d["v"], d["e"], d["f"], d["g"]) == (4, 6, 4, 1)


def test_chromatic_and_count(capsys):
    code, out, _ = run(capsys, "chromatic", "--graph", "prism", "--json")
    assert code == 0 and json.loads(out)["dual_vertices"] == 5
    code, out, _ = run(capsys, "count", "--graph", "tetrahedron", "--q", "2", "3", "5", "--json")
    assert code == 0
    assert all(r["agree"] for r in json.loads(out)["counts"])


def test_fillability(capsys):
    code, out, _ = run(capsys, "fillability", "--graph", "cube")
    assert code == 0 and "verdict" in out
    # theta has a double edge, so the certificate does not apply
    code, _, err = run(capsys, "fillability", "--graph", "theta")
    assert code == 1 and "NotSimple" in err


def test_lattice_with_phase(capsys):
    code, out, _ = run(capsys, "lattice", "--graph", "cube", "--phase", "cube-std", "--json")
    d = json.loads(out)
    assert code == 0 and d["rank"] == 6 and d["phase"]["duality_sign"] == -1


def test_periods_check(capsys):
    code, out, _ = run(capsys, "periods", "--graph", "tetrahedron", "--check", "x1*x2*x3 - 1", "--json")
    assert code == 0, out
    assert json.loads(out)["checked"]


def test_superpotential_cube(capsys):
    code, out, _ = run(capsys, "superpotential", "--phase", "cube-std", "--order", "4")
    assert code == 0
    assert "W = Li2(U1) + Li2(U2) + Li2(U3) - Li2(U1*U2) - Li2(U1*U3)" in out
    assert "seed: " in out


def test_superpotential_framing_and_out(capsys, tmp_path):
    out_file = tmp_path / "rep.json"
    code, out, _ = run(
        capsys, "superpotential", "--phase", "prism-M", "--framing", "[[0,1],[1,0]]",
        "--order", "5", "--out", str(out_file),
    )
    assert code == 0 and "Li2(U1*U2)" in out
    code, out, _ = run(capsys, "bps", "--input", str(out_file), "--json")
    d = json.loads(out)
    assert code == 0 and d["integral"] and d["a"] == {"0,1": "1", "1,0": "1", "1,1": "-1"}


def test_non_integral_hint(capsys):
    code, out, _ = run(capsys, "superpotential", "--phase", "tetra-p", "--signs", "-1", "--order", "4")
    assert code == 0 and "integral: false" in out and "hint" in out


def test_output_is_byte_identical(capsys):
    argv = ["superpotential", "--phase", "prism-M", "--framing", "[[1,-1],[-1,2]]", "--order", "5", "--json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_seed_sources(capsys, monkeypatch):
    monkeypatch.setenv("CHROMLAG_SEED", "7")
    _, out, _ = run(capsys, "superpotential", "--phase", "tetra-p", "--order", "3")
    assert "seed: 7" in out
    _, out, _ = run(capsys, "superpotential", "--phase", "tetra-p", "--order", "3", "--seed", "11")
    assert "seed: 11" in out
    monkeypatch.setenv("CHROMLAG_SEED", "nope")
    code, _, _ = run(capsys, "superpotential", "--phase", "tetra-p", "--order", "3")
    assert code == 2


def test_graph_and_phase_files_round_trip(capsys, tmp_path):
    g = named_graph("prism")
    gpath = tmp_path / "g.json"
    io.save_graph(g, gpath)
    assert io.load_graph(gpath) == g
    _, pf = preset_phase("prism-M", [[0, 1], [1, 0]])
    ppath = tmp_path / "p.json"
    io.save_phase(pf, ppath)
    assert io.load_phase(ppath) == pf
    code, out, _ = run(capsys, "superpotential", "--graph", str(gpath), "--gauge", "x,z1,z2", "--phase", str(ppath), "--order", "4")
    assert code == 0 and "Li2(U1*U2)" in out


def test_blowup_and_edgemove(capsys, tmp_path):
    out_file = tmp_path / "b.json"
    code, out, _ = run(capsys, "blowup", "--graph", "theta", "--vertex", "0", "--out", str(out_file))
    assert code == 0
    b = io.load_graph(out_file)
    assert b.num_vertices == 4 and b.num_edges == 6
    code, out, _ = run(capsys, "edgemove", "--graph", "tetrahedron", "--edge", "0", "--json")
    assert code == 0 and "alpha" in json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ["validate"],
        ["validate", "--graph", "no-such-graph"],
        ["superpotential", "--phase", "nope"],
        ["superpotential", "--phase", "prism-M", "--framing", "[[0,1],"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_domain_errors_exit_1(capsys, tmp_path):
    code, _, err = run(capsys, "superpotential", "--phase", "prism-M", "--framing", "[[0,1],[2,0]]")
    assert code == 1 and "FramingNotSymmetric" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"darts": 2, "alpha": [0, 1], "sigma": [1, 0]}))
    code, _, _ = run(capsys, "validate", "--graph", str(bad))
    assert code == 1
