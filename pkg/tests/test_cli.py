import json
from fractions import Fraction

import pytest

from stepgraphon import complete_graph, constant_graphon, cycle_graph
from stepgraphon.cli import main
from stepgraphon.constructions import odd_girth_kernel
from stepgraphon.serialize import save_graph, save_kernel

F = Fraction


@pytest.fixture
def half(tmp_path):
    path = tmp_path / "half.json"
    save_kernel(constant_graphon(F(1, 2)), path)
    return str(path)


@pytest.fixture
def c5(tmp_path):
    path = tmp_path / "c5.txt"
    save_graph(cycle_graph(5), path)
    return str(path)


@pytest.fixture
def k3(tmp_path):
    path = tmp_path / "k3.txt"
    save_graph(complete_graph(3), path)
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_density(capsys, half, k3):
    code, data = run_json(capsys, ["density", "--graph", k3, "--kernel", half])
    assert code == 0
    assert data["density"]["exact"] == "1/8"


def test_expand(capsys, tmp_path, c5):
    u_path = tmp_path / "u5.json"
    save_kernel(odd_girth_kernel(5), u_path)
    code, data = run_json(
        capsys, ["expand", "--graph", c5, "--p", "1/3", "--kernel", str(u_path)]
    )
    assert code == 0
    assert data["coeffs"][0] == "1/243"
    assert data["coeffs"][5] == "2/625"


def test_deficit(capsys, c5):
    code, data = run_json(
        capsys, ["deficit", "--graph", c5, "--k", "3", "--eps", "1/20"]
    )
    assert code == 0
    assert data["coeffs"] == ["1/81", "0", "0", "0", "0", "-12/125"]
    assert data["value_at_eps"]["exact"] == str(
        F(1, 81) - F(12, 125) * F(1, 20) ** 5
    )


def test_kappa_and_stats(capsys, c5):
    code, data = run_json(capsys, ["kappa", "--graph", c5])
    assert code == 0
    assert data["k_search"] == 3 and data["k_formula"] == 4
    code, data = run_json(capsys, ["stats", "--graph", c5])
    assert code == 0
    assert data["girth"] == 5 and data["girth_parity"] == "odd"


def test_cutnorm_and_spectrum(capsys, half):
    code, data = run_json(capsys, ["cutnorm", "--kernel", half])
    assert code == 0
    assert data["value"]["exact"] == "1/2"
    code, data = run_json(capsys, ["spectrum", "--kernel", half])
    assert code == 0
    assert abs(data["eigenvalues"][0] - 0.5) < 1e-12


def test_construct_and_margin(capsys, tmp_path, k3):
    out = tmp_path / "binary.json"
    assert main(["construct", "binary", "--k", "2", "--out", str(out)]) == 0
    capsys.readouterr()
    code, data = run_json(
        capsys, ["margin", "--template", str(out), "--graph", k3]
    )
    assert code == 0
    assert data["mono_sum"]["exact"] == "1/4"
    assert data["margin"]["exact"] == "0"


def test_constants_capped_exit_code(capsys):
    code, data = run_json(capsys, ["constants", "--k", "1"])
    assert code == 0
    assert data["levels"][0]["n_k"] == 1
    code, data = run_json(capsys, ["constants", "--k", "2"])
    assert code == 3
    assert data["capped"]


def test_alpha_and_peel(capsys, half):
    code, data = run_json(
        capsys, ["alpha", "--kernel", half, "--delta", "1/2", "--resolution", "4"]
    )
    assert code == 0
    assert data["bound"]["exact"] == "1"
    code, data = run_json(capsys, ["peel", "--kernel", half, "--d0", "1"])
    assert code == 0
    assert data["peeled_parts"] == [0]


def test_sample_and_converge(capsys, tmp_path, half, k3):
    out = tmp_path / "sample.txt"
    code, data = run_json(
        capsys,
        ["sample", "--kernel", half, "--n", "30", "--seed", "1", "--out", str(out)],
    )
    assert code == 0
    assert data["vertices"] == 30
    assert out.exists()
    code, data = run_json(
        capsys,
        ["converge", "--kernel", half, "--graph", k3,
         "--schedule", "30", "--trials", "20"],
    )
    assert code == 0
    assert data[0]["n"] == 30


def test_exit_codes(capsys, tmp_path, k3):
    # usage error
    with pytest.raises(SystemExit) as exc:
        main(["density", "--graph", k3])
    assert exc.value.code == 64
    capsys.readouterr()
    # domain error: kernel file missing
    assert main(["density", "--graph", k3, "--kernel",
                 str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()
    # domain error: bad rational
    bad = tmp_path / "bad.json"
    bad.write_text('{"sizes": ["1"], "values": [["x"]]}')
    assert main(["cutnorm", "--kernel", str(bad)]) == 2
    capsys.readouterr()


def test_localcheck(capsys, tmp_path):
    tpl = tmp_path / "tpl.json"
    assert main(["construct", "binary", "--k", "2", "--out", str(tpl)]) == 0
    capsys.readouterr()
    code, rows = run_json(capsys, ["localcheck", "--template", str(tpl),
                                   "--eps0", "1/2"])
    assert code == 0
    assert len(rows) == 2
