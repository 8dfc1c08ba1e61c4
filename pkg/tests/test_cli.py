import json
from fractions import Fraction

import pytest

from eocount.cli import main
from eocount.graphs import complete_graph, cycle_graph, graph_to_json
from eocount.taillab import DiscreteProductSpace, instance_to_json


@pytest.fixture
def k5_file(tmp_path):
    p = tmp_path / "k5.edges"
    lines = ["5"] + [f"{u + 1} {v + 1}" for u, v in sorted(complete_graph(5).edges)]
    p.write_text("\n".join(lines) + "\n")
    return str(p)


@pytest.fixture
def c5_json_file(tmp_path):
    p = tmp_path / "c5.json"
    p.write_text(json.dumps(graph_to_json(cycle_graph(5))))
    return str(p)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_exact_rt(capsys):
    code, env = run_json(capsys, ["exact", "rt", "--n", "7"])
    assert code == 0
    assert env["result"]["value"] == "2640"
    assert env["command"] == "exact"
    assert env["inputs"] == {"subject": "rt", "n": 7}


def test_exact_eo_from_file(capsys, k5_file):
    code, env = run_json(capsys, ["exact", "eo", "--graph", k5_file])
    assert code == 0
    assert env["result"]["value"] == "24"


def test_parity_error_exit_code(capsys):
    code = main(["exact", "rt", "--n", "4"])
    err = capsys.readouterr().err
    assert code == 2
    assert json.loads(err)["kind"] == "domain"


def test_size_cap_exit_code(capsys):
    code = main(["exact", "rt", "--n", "25"])
    err = capsys.readouterr().err
    assert code == 3
    assert json.loads(err)["kind"] == "size-limit"


def test_missing_file_exit_code(capsys):
    code = main(["graphinfo", "--graph", "/nonexistent/file.edges"])
    err = capsys.readouterr().err
    assert code == 4
    assert json.loads(err)["kind"] == "io"


def test_graphinfo(capsys, c5_json_file):
    code, env = run_json(capsys, ["graphinfo", "--graph", c5_json_file])
    assert code == 0
    res = env["result"]
    assert res["tau"] == "5"
    assert res["all_degrees_even"] is True
    assert Fraction(res["cheeger"]) == Fraction(2, 2)


def test_bounds(capsys, k5_file):
    code, env = run_json(capsys, ["bounds", "--graph", k5_file])
    assert code == 0
    res = env["result"]
    assert Fraction(res["lower"]) <= 24
    assert 24 * 24 <= int(res["upper_squared"])
    assert Fraction(res["pauling"]) == Fraction(res["lower"])


def test_expand_with_eval(capsys):
    code, env = run_json(capsys, ["expand", "rt", "--order", "3",
                                  "--eval", "21", "--bits", "192"])
    assert code == 0
    res = env["result"]
    assert res["coeffs"] == {"0": "-1/2", "1": "1/4", "2": "1/4"}
    assert env["precision"]["bits"] == 192
    assert "log_ratio_to_exact" in res["eval"]
    assert abs(float(res["eval"]["log_ratio_to_exact"])) < 1e-3


def test_estimate(capsys, k5_file):
    code, env = run_json(capsys, ["estimate", "--graph", k5_file,
                                  "--M", "1", "--K", "2"])
    assert code == 0
    res = env["result"]
    assert res["in_hypothesis"] is True
    assert "1" in res["log_corrected"]


def test_taillab_command(capsys, tmp_path):
    space = DiscreteProductSpace.uniform_bits(5)
    tab = space.tabulate(
        lambda *xs: Fraction(1, 400) * sum(xs[i] * xs[j]
                                           for i in range(5)
                                           for j in range(i + 1, 5)))
    inst = tmp_path / "quad5.json"
    inst.write_text(json.dumps(instance_to_json(space, tab)))
    code, env = run_json(capsys, ["taillab", "--instance", str(inst), "--m", "2"])
    assert code == 0
    assert env["result"]["holds"] is True
    assert env["result"]["delta_holds"] is True


def test_round_trip_rationals(capsys, c5_json_file):
    _, env = run_json(capsys, ["graphinfo", "--graph", c5_json_file])
    blob = json.dumps(env)
    env2 = json.loads(blob)
    assert Fraction(env2["result"]["cheeger"]) == Fraction(env["result"]["cheeger"])


def test_threads_do_not_change_payload(capsys, k5_file):
    _, env1 = run_json(capsys, ["--threads", "1", "exact", "eo",
                                "--graph", k5_file])
    _, env2 = run_json(capsys, ["--threads", "4", "exact", "eo",
                                "--graph", k5_file])
    assert env1["result"] == env2["result"]
    code = main(["--threads", "0", "exact", "rt", "--n", "3"])
    assert code == 2
    capsys.readouterr()


def test_formats(capsys, c5_json_file):
    code = main(["--format", "plain", "graphinfo", "--graph", c5_json_file])
    out = capsys.readouterr().out
    assert code == 0 and "tau=5" in out
    code = main(["--format", "csv", "graphinfo", "--graph", c5_json_file])
    out = capsys.readouterr().out
    assert code == 0 and out.startswith("key,value") and "tau,5" in out
