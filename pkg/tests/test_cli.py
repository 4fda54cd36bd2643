import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from k3borcea.cli import example_names, load_example, main, parse_given
from k3borcea.errors import UsageError
from k3borcea.k3data import serialize_invariants
from k3borcea.relations import validate
from k3borcea.render import dumps


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def doc2(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(json.dumps({"order": 2, "invariants": {"r": 12, "m": 10, "N": 2, "Nprime": 0}}))
    return str(path)


def test_diamond_k3(doc2):
    code, out, _ = run("diamond", "--input", doc2, "--level", "1")
    assert code == 0
    assert "20" in out and "hodge_symmetry: ok" in out


def test_diamond_json(doc2):
    code, out, _ = run("diamond", "--input", doc2, "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["h"] == [[1, 0, 1], [0, 20, 0], [1, 0, 1]]
    assert doc["dim"] == 2 and doc["passed"]
    assert set(doc["checks"]) >= {"hodge_symmetry", "serre_duality", "hp0_vanishing"}


def test_missing_file():
    code, _, err = run("diamond", "--input", "/no/such/file.json")
    assert code == 2
    assert "cannot read" in err


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{oops")
    assert run("diamond", "--input", str(path))[0] == 2


def test_negative_entry_exit_1(tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({"order": 2, "invariants": {"r": 0, "m": 0, "N": 0, "Nprime": 0}}))
    code, _, err = run("diamond", "--input", str(path))
    assert code == 1
    assert "h^{1,1}" in err


def test_euler_base_case():
    code, out, _ = run("euler", "--input", "example:order6_a", "--level", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc["values"].values()) == {24}


def test_euler_closed_form_value(doc2):
    code, out, _ = run("euler", "--input", doc2, "--level", "4", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["values"]["closed"] == 1824
    assert all(doc["agreement"].values())


def test_euler_guard():
    code, _, _ = run("euler", "--input", "example:order2_a", "--level", "9", "--route", "orbifold")
    assert code == 1
    code, out, _ = run("euler", "--input", "example:order2_a", "--level", "9", "--route", "orbifold", "--format", "json")
    assert "level too large for orbifold enumeration" in json.loads(out)["errors"]["orbifold"]


def test_validate_bundled_examples():
    for name in example_names():
        code, out, _ = run("validate", "--input", "example:" + name)
        assert code == 0, (name, out)
        assert "[DERIVED]" in load_example(name).name


def test_validate_failure(tmp_path):
    path = tmp_path / "zero4.json"
    names = ["r", "m", "N", "k", "b", "a", "gD", "gqD", "gFix4", "n1", "n2"]
    path.write_text(json.dumps({"order": 4, "invariants": {s: 0 for s in names}}))
    code, out, _ = run("validate", "--input", str(path), "--format", "json")
    assert code == 1
    assert json.loads(out)["residuals"]["2"] == -20


def test_solve_empty():
    code, out, _ = run("solve", "--order", "4", "--given", "")
    assert code == 0 and "underdetermined" in out
    assert run("solve", "--order", "4", "--given", "", "--strict")[0] == 1


def test_solve_infeasible():
    code, out, _ = run("solve", "--order", "4", "--given", "N=3,k=0,a=2,n1=0")
    assert code == 1
    assert "b = -1 < 0" in out


def test_solve_then_validate(tmp_path):
    target = tmp_path / "done.json"
    code, _, _ = run("solve", "--order", "4", "--given", "r=7,m=5,k=0,n1=0", "--write", str(target))
    assert code == 0
    assert run("validate", "--input", str(target))[0] == 0


def test_solve_minimal_json():
    code, out, _ = run("solve", "--order", "4", "--minimal", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert all(len(s) == 4 for s in doc["minimal_sufficient_sets"])
    assert doc["rank"] == 7


def test_derive_order4():
    code, out, _ = run("derive", "--order", "4", "--nmax", "6")
    assert code == 0
    assert "[5] in span" in out and "[6] in span" in out


def test_derive_latex():
    code, out, _ = run("derive", "--order", "6", "--format", "latex")
    assert code == 0
    assert r"\begin{align*}" in out and "&0=" in out
    assert r"g(F_1)" in out


def test_derive_strict_nonmember():
    code, _, _ = run("derive", "--order", "6", "--alias", "w free", "--strict")
    assert code == 1


def test_crosscheck():
    assert run("crosscheck", "--input", "example:order4_b", "--level", "4")[0] == 0
    code, out, _ = run("crosscheck", "--order", "3", "--level", "2", "--format", "json")
    assert code == 0 and len(json.loads(out)["reports"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("diamond", "--input", "example:order6_b", "--level", "3", "--format", "json"),
        ("euler", "--order", "6", "--level", "3", "--format", "json"),
        ("validate", "--input", "example:order6_a", "--format", "json"),
        ("solve", "--order", "6", "--given", "gD=0,l=0", "--format", "json"),
        ("derive", "--order", "4", "--format", "json"),
        ("crosscheck", "--input", "example:order3_a", "--level", "3", "--format", "json"),
        ("examples", "--format", "json"),
    ],
)
def test_json_round_trip(argv):
    code, out, _ = run(*argv)
    assert code in (0, 1)
    assert dumps(json.loads(out)) == out
    assert_no_floats(json.loads(out))


def assert_no_floats(x):
    assert not isinstance(x, float), x
    if isinstance(x, dict):
        for v in x.values():
            assert_no_floats(v)
    if isinstance(x, list):
        for v in x:
            assert_no_floats(v)


def test_rationals_are_pairs():
    _, out, _ = run("derive", "--order", "4", "--format", "json")
    combo = dict(json.loads(out)["certificates"]["6"]["combination"])
    assert combo["D_2"] == {"den": 2, "num": 1}


def test_usage_errors():
    assert run("diamond")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("euler", "--level", "2")[0] == 2
    assert run("diamond", "--input", "example:order2_a", "--order", "4")[0] == 2
    assert run("solve", "--order", "4", "--given", "k")[0] == 2


def test_parse_given():
    assert parse_given("k=2, gD=0,r=1/2") == {"k": 2, "gD": 0, "r": Fraction(1, 2)}
    with pytest.raises(UsageError):
        parse_given("k==")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "k3borcea", "euler", "--order", "2", "--level", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "12N" in proc.stdout


def test_examples_are_canonical():
    for name in example_names():
        inv = load_example(name)
        assert validate(inv).passed
        assert serialize_invariants(inv) == serialize_invariants(load_example(name))
