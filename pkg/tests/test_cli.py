import io
import json
from pathlib import Path


from liesym.cli import run

DATA = Path(__file__).parent / "data"
PLANAR = str(DATA / "planar_orbital.sys")
CONE = str(DATA / "cone_minors.sys")
TORAL = str(DATA / "toral_rank.sys")
DIAG = str(DATA / "diagonal_normal.sys")
CF = str(DATA / "central_force.sys")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    return code, json.loads(out) if out else None


def test_intfactor_report():
    code, rep = call_json("-f", PLANAR, "intfactor", "f", "h")
    assert code == 0 and rep["valid"]
    assert set(rep) == {"command", "inputs", "result", "certificates", "bounds", "valid"}
    assert rep["result"] == {"psi": "-x1^2*x2 - x2^3", "cofactor": "4*x1"}
    code, rep = call_json("-f", PLANAR, "intfactor", "lin", "h")
    assert rep["result"] == {"psi": "-x1*x2", "cofactor": "3"}


def test_text_and_json_strings_agree():
    for argv in (
        ["-f", PLANAR, "intfactor", "f", "h"],
        ["-f", DIAG, "normalform", "nf", "--deg", "2", "--verify"],
        ["-f", CONE, "minors", "f", "h1", "--size", "2"],
    ):
        _, text, _ = call(*argv)
        _, rep = call_json(*argv)

        def strings(v):
            if isinstance(v, str):
                yield v
            elif isinstance(v, dict):
                for x in v.values():
                    yield from strings(x)
            elif isinstance(v, list):
                for x in v:
                    yield from strings(x)

        for s in strings(rep["result"]):
            assert s in text


def test_minors_and_symmetry_commands():
    code, rep = call_json("-f", CONE, "minors", "f", "h1", "h2", "--size", "3")
    assert rep["result"]["minors"][0]["value"] == "-x1^4*x2 - 2*x1^2*x2^2*x3 - x2^3*x3^2"
    code, rep = call_json("-f", CONE, "orbsym", "h1", "f")
    assert code == 0 and rep["result"]["cofactor"] == "1"
    code, rep = call_json("-f", CONE, "symcheck", "h2", "f")
    assert code == 0 and rep["result"]["symmetric"] is True
    code, rep = call_json("-f", CONE, "symcheck", "h1", "f")
    assert code == 1 and rep["valid"] is False


def test_toral_commands():
    code, rep = call_json("toral-gens", "2,-2,3,-3", "--max-deg", "5")
    assert code == 0
    assert rep["result"]["generators"] == ["x1*x2", "x3*x4", "x1^3*x4^2", "x2^3*x3^2"]
    assert rep["bounds"]["max_degree"] == 5
    code, rep = call_json("-f", TORAL, "relations", "phi1", "phi2", "phi3", "phi4")
    assert rep["result"]["kernel"] == [[3, 2, -1, -1]]
    code, rep = call_json("relations", "--weights", "2,-2,3,-3", "--max-deg", "5")
    assert rep["result"]["binomials"] == ["y1^3*y2^2 - y3*y4"]
    code, rep = call_json("toral-trivial", "1,2")
    assert code == 0 and rep["result"]["trivial"] is True
    code, rep = call_json("-f", DIAG, "toral-centralizer", "A", "--max-deg", "2")
    assert rep["result"]["monomial_fields"] == ["x1*e1", "x2*e2", "x1^2*e2"]


def test_normalform_command():
    code, rep = call_json("-f", DIAG, "normalform", "nf", "--deg", "2", "--verify")
    assert code == 0
    assert rep["result"]["normal_form"] == ["x1", "2*x2"]
    assert rep["result"]["transformation"] == ["1/3*x2^2 + x1", "x2"]
    assert rep["certificates"]["verified"] is True
    code, rep = call_json("-f", DIAG, "normalform", "res", "--deg", "4")
    assert rep["result"]["normal_form"] == ["x1", "x1^2 + 2*x2"]


def test_centralizer_and_rankstrata():
    code, rep = call_json("-f", DIAG, "centralizer", "lin", "--max-deg", "2")
    assert rep["result"]["dimension"] == 3
    code, rep = call_json(
        "-f", TORAL, "rankstrata", "Phi", "--s", "3",
        "--at", "1,1,1,1", "--at", "0,1,0,1", "--at", "0,0,1,1", "--at", "0,0,0,0",
    )
    assert rep["result"]["all_vanish"] is True
    assert rep["result"]["rank_at"] == {"1,1,1,1": 3, "0,1,0,1": 2, "0,0,1,1": 1, "0,0,0,0": 0}


def test_reduce_and_secord():
    code, rep = call_json("-f", DIAG, "reduce", "g", "phi", "--target-deg", "2")
    assert code == 0 and rep["result"]["g"] == ["5*w1^2"]
    code, rep = call_json("-f", CF, "reduce", "f", "phi1", "phi2", "phi3", "phi4", "--target-deg", "2")
    assert rep["result"]["g"] == ["2*w3", "2*w1*w3", "w1^2 + w2", "0"]
    assert rep["certificates"]["solution_preserving"] is True
    assert call("-f", CF, "secord", "rot", "h")[0] == 0
    assert call("-f", CF, "secord", "scale", "h")[0] == 1


def test_semi_invariants_and_invcheck():
    code, rep = call_json("-f", CONE, "semiinv", "f", "cone")
    assert code == 0 and rep["result"]["cofactor"] == "2*x1"
    code, rep = call_json("-f", DIAG, "firstint", "fi", "phi")
    assert code == 0
    code, rep = call_json("-f", DIAG, "firstint", "g", "phi")
    assert code == 1
    code, rep = call_json("-f", CONE, "jacobimult", "f", "h1", "h2")
    assert code == 0 and rep["result"]["cofactor"] == "6*x1"


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(Path(PLANAR).read_text()))
    code, out, _ = call("-f", "-", "intfactor", "f", "h")
    assert code == 0 and "-x1^2*x2 - x2^3" in out


def test_show_round_trips(tmp_path):
    code, out, _ = call("-f", DIAG, "show")
    assert code == 0
    p = tmp_path / "again.sys"
    p.write_text(out)
    assert call("-f", str(p), "show")[1] == out


def test_exit_code_2(tmp_path, capsys):
    bad = tmp_path / "bad.sys"
    bad.write_text("vars: x1 x2\nfield f:\n  x1 +\n")
    code, out, err = call("-f", str(bad), "show")
    assert code == 2 and ":3:" in err
    assert call("-f", str(tmp_path / "missing.sys"), "show")[0] == 2
    assert call("-f", PLANAR, "bracket", "f", "nosuch")[0] == 2
    assert call("-f", PLANAR, "normalform", "e1", "--deg", "2")[0] == 2  # f(0) != 0
    assert call("toral-gens")[0] == 2
    assert call("no-such-command")[0] == 2
    capsys.readouterr()
