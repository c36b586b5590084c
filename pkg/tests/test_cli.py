import json

import pytest

from verbalops.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def docs(tmp_path):
    def write(name, body):
        path = tmp_path / name
        path.write_text(json.dumps(body), encoding="utf-8")
        return str(path)

    return {
        "inner3": write("inner3.json", {"params3": {"gamma12": "1", "alpha12": "1", "alpha21": "0"}}),
        "conj3": write("conj3.json", {"params3": {"gamma12": "0", "alpha12": "1", "alpha21": "0",
                                                  "phi": "conjugation"}}),
        "p21": write("p21.json", {"params3": {"gamma12": "0", "alpha12": "2", "alpha21": "1"}}),
        "id3": write("id3.json", {"params3": {"alpha12": "1", "alpha21": "0"}}),
        "p4": write("p4.json", {"params4": {"gamma12": "1", "gamma1_22": "-1/2", "gamma11_2": "2",
                                            "alpha12": "[1, 1]", "alpha21": "3", "phi": "conjugation"}}),
        "q4": write("q4.json", {"params4": {"gamma12": "-1/2", "gamma1_22": "1", "alpha12": "2",
                                            "alpha21": "1"}}),
        "bad": write("bad.json", {"variety": "free", "w_plus": 7}),
    }


@pytest.mark.parametrize("variety, expr, expected", [
    ("commutative", "x2*x1", "x1*x2"),
    ("nilpotent3", "(x1*x2)*x1", "0"),
    ("jordan", "((x1*x1)*x2)*x1 - (x1*x1)*(x2*x1)", "0"),
])
def test_eval(capsys, variety, expr, expected):
    code, out, _ = run(capsys, "eval", "--variety", variety, expr)
    assert code == 0 and out.splitlines()[-1] == expected


def test_check_inner_and_outer(capsys, docs):
    code, out, _ = run(capsys, "check", docs["inner3"])
    assert code == 0 and "inner: yes, certificate c(x1) = x1 + x1*x1" in out
    code, out, _ = run(capsys, "check", docs["conj3"])
    assert code == 0 and "op2 axioms: PASS" in out and "inner: no (phi = conjugation" in out


def test_malformed_document_exits_two(capsys, docs):
    code, _, err = run(capsys, "check", docs["bad"])
    assert code == 2 and "$.w_plus" in err


def test_compose(capsys, docs):
    code, out, _ = run(capsys, "compose", docs["p21"], docs["p21"], "--json")
    assert code == 0
    body = json.loads(out)["result"]["params3"]
    assert (body["alpha12"], body["alpha21"], body["gamma12"]) == ("5", "4", "0")
    code, out, _ = run(capsys, "compose", docs["p21"], docs["id3"], "--json")
    assert json.loads(out)["result"]["params3"]["alpha12"] == "2"
    code, out, _ = run(capsys, "compose", docs["p4"], docs["q4"], "--verify")
    assert code == 0 and "oracle match: exact" in out


def test_solve_prints_relations(capsys):
    code, out, _ = run(capsys, "solve", "nilpotent4")
    assert code == 0 and "gamma_(1,2)2 = gamma12^2 + gamma_(1,1)2" in out
    code, out, _ = run(capsys, "solve", "free")
    assert "w_dot = (alpha12)*x1*x2 + (alpha21)*x2*x1" in out and "w_plus = x1 + x2" in out
    assert "w_lambda coefficient of x1: a" in out


@pytest.mark.parametrize("row, line", [
    ("jordan", "A/Y = Aut k -- MATCHES Table row 5"),
    ("alternative", "A/Y = S2 × Aut k -- MATCHES Table row 4"),
    ("nilpotent3", "A/Y = k* ⋊ Aut k -- MATCHES Table row 7"),
])
def test_theorem(capsys, row, line):
    code, out, _ = run(capsys, "theorem", row, "--samples", "20")
    assert code == 0 and out.splitlines()[-1] == line


def test_dims_and_json_header(capsys):
    code, out, _ = run(capsys, "dims", "--variety", "nilpotent3", "--gens", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["total"] == 6 and doc["seed"] == 0 and doc["degree_cap"] == 5


def test_json_output_is_deterministic(capsys):
    first = run(capsys, "theorem", "commutative", "--json", "--seed", "3", "--samples", "10")[1]
    second = run(capsys, "theorem", "commutative", "--json", "--seed", "3", "--samples", "10")[1]
    assert first == second


@pytest.mark.parametrize("argv", [
    ["eval", "x1*"],
    ["theorem", "lie"],
    ["eval", "--degree-cap", "9", "x1"],
    ["dims", "--gens", "4"],
    ["eval", "--field", "quadratic:4", "x1"],
])
def test_input_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2
