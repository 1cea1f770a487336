import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from corpus import CLI_CASES, DATA
from toricnl.cli import flatten, parse_class, run
from toricnl.errors import ParseError
from toricnl.fan import projective_space
from toricnl.grading import ClassGroup

SCHEMAS = Path(__file__).parent.parent / "schemas"


def call(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_schemas_are_valid():
    for path in sorted(SCHEMAS.glob("*.schema.json")):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))


@pytest.mark.parametrize("label, argv, schema_name, code", CLI_CASES, ids=[c[0] for c in CLI_CASES])
def test_command_output_matches_schema(label, argv, schema_name, code):
    got, text = call(argv)
    assert got == code
    jsonschema.validate(json.loads(text), schema(schema_name))


@pytest.mark.parametrize("label, argv, schema_name, code", CLI_CASES, ids=[c[0] for c in CLI_CASES])
def test_table_and_json_agree(label, argv, schema_name, code):
    _, text = call(argv + ["--format", "json"])
    got, table = call(argv + ["--format", "table"])
    assert got == code
    rows = {}
    for line in table.splitlines():
        key, _, value = line.partition("  ")
        rows[key.strip()] = value.strip()
    expected = {k: v for k, v in flatten(json.loads(text))}
    assert rows == expected


def test_k3_example():
    code, text = call(["hodge", "hypersurface", "--fan", str(DATA / "fans" / "p3.json"),
                       "--poly", str(DATA / "polys" / "fermat4.txt"), "--index", "1"])
    assert code == 0 and json.loads(text)["dimension"] == 19


def test_refuted_example():
    code, text = call(["quasismooth", "--fan", str(DATA / "fans" / "p3.json"),
                       "--poly", str(DATA / "polys" / "cone4.txt")])
    report = json.loads(text)
    assert code == 2 and report["status"] == "Refuted"
    assert report["witness"] == {"point": ["0", "0", "0", "1"], "reason": "", "status": "ValidWitness"}


def test_broken_fan_example():
    code, text = call(["fan", "check", "--fan", str(DATA / "fans" / "broken.json")])
    assert code == 1 and json.loads(text)["error"]["kind"] == "IncompleteFan"


def test_usage_errors_exit_one():
    assert call(["nosuchcommand"])[0] == 1
    assert call(["classgroup"])[0] == 1
    code, text = call(["classgroup", "--fan", "/nonexistent/fan.json"])
    assert code == 1 and "error" in json.loads(text)
    code, text = call(["basis", "--fan", str(DATA / "fans" / "p2.json"), "--degree", "1,2"])
    assert code == 1 and "error" in json.loads(text)
    code, text = call(["hodge", "hypersurface", "--fan", str(DATA / "fans" / "p2.json"),
                       "--poly", "x0^2 + x1", "--index", "0"])
    assert code == 1 and json.loads(text)["error"]["kind"] == "NotHomogeneous"


def test_literal_and_file_polynomials_agree():
    fan = str(DATA / "fans" / "p3.json")
    a = call(["nondegenerate", "--fan", fan, "--poly", str(DATA / "polys" / "fermat4.txt")])
    b = call(["nondegenerate", "--fan", fan, "--poly", "x0^4 + x1^4 + x2^4 + x3^4"])
    assert a == b


def test_generic_polynomials_follow_seed():
    fan = str(DATA / "fans" / "p2.json")
    args = ["hodge", "hypersurface", "--fan", fan, "--generic", "3", "--index", "1"]
    a, b = call(args + ["--seed", "4"]), call(args + ["--seed", "4"])
    c = call(args + ["--seed", "5"])
    assert a == b and a[1] != c[1]
    assert json.loads(a[1])["dimension"] == 1


def test_trace_goes_to_stderr(capsys):
    code, text = call(["gorenstein", "--fan", str(DATA / "fans" / "p2.json"),
                       "--ideal", str(DATA / "ideals" / "squares_p2.json"), "--socle", "3", "--trace"])
    err = capsys.readouterr().err
    assert code == 0 and "[trace]" in err and "pivots" in err
    assert "[trace]" not in text


def test_parse_class_forms():
    cl = ClassGroup(projective_space(2))
    assert parse_class("3", cl).free == (3,)
    assert parse_class("[3]", cl).free == (3,)
    assert parse_class('{"free": [3], "torsion": []}', cl).free == (3,)
    with pytest.raises(ParseError):
        parse_class("x", cl)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toricnl", "step1", "--a", "2,2", "--b", "4", "--k", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coefficient"] == "0"
