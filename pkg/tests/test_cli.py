import json


from sl2kit.cli import main, theta_battery
from sl2kit.slpair import basic_pair, format_pair


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_examples_list(capsys):
    code, out = run(capsys, "examples", "list")
    assert code == 0 and len(out.split()) == 11


def test_examples_run_json(capsys):
    code, out = run(capsys, "examples", "run", "V2_winkelmann", "--json")
    data = json.loads(out)
    assert code == 0 and data["example"] == "V2_winkelmann" and data["version"]
    assert any(c["status"] == "unknown-expected" for c in data["checks"])


def test_examples_run_bound_override_fails(capsys):
    code, _ = run(capsys, "examples", "run", "V3_finston", "--bound", "1")
    assert code == 1


def test_examples_run_all_serial(capsys):
    code, out = run(capsys, "examples", "run", "all", "--jobs", "1")
    assert code == 0 and "0 problem(s)" in out


def test_examples_unknown(capsys):
    assert main(["examples", "run", "V42"]) == 2
    assert main(["examples", "describe", "V42"]) == 2


def test_describe(capsys):
    code, out = run(capsys, "examples", "describe", "V3_finston")
    assert code == 0 and "T1^2*H = T2^3 + T3^2" in out


def test_verify_pair(tmp_path, capsys):
    good = tmp_path / "v3.pair"
    good.write_text(format_pair(basic_pair(3)))
    code, out = run(capsys, "verify-pair", str(good), "--json")
    assert code == 0 and json.loads(out)["ok"]
    bad = tmp_path / "bad.pair"
    bad.write_text("ring: x0 x1\nweights: 1 -1\n[down]\nx1 -> x0\n[up]\nx0 -> 2*x1\n")
    code, out = run(capsys, "verify-pair", str(bad))
    assert code == 1 and "failure" in out
    assert main(["verify-pair", str(tmp_path / "missing.pair")]) == 2


def test_structure(tmp_path, capsys):
    f = tmp_path / "v3.pair"
    f.write_text(format_pair(basic_pair(3)))
    code, out = run(capsys, "structure", str(f), "--n", "3", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["kernel_generators"]) == 4
    assert len(data["image_ideals"][2]["generators"]) == 3


def test_extend(capsys):
    code, out = run(capsys, "extend", "--module", "V2", "--shift", "1+T2", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["generators"]) == 4
    assert data["freeness_certificate"] and data["local_triviality_certificate"] is None
    code, out = run(capsys, "extend", "--module", "V3", "--shift", "1 + H")
    assert code == 0 and "12 kernel generators" in out
    assert main(["extend", "--module", "V2", "--shift", "x1"]) == 2
    assert main(["extend", "--module", "V7", "--shift", "1"]) == 2


def test_theta(capsys):
    code, out = run(capsys, "theta", "--d", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["dimension"] == 10
    assert main(["theta", "--d", "1"]) == 2


def test_theta_battery_d2():
    res = theta_battery(2)
    assert res["ok"] and res["dimension"] == 1
