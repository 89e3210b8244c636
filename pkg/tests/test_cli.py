import json
import os
import pathlib
import subprocess
import sys

import jsonschema
import pytest

from signfree.cli import main, run

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMA = json.loads((ROOT / "docs" / "cli-schema.json").read_text())


def payload_schema(command):
    return {"$defs": SCHEMA["$defs"], "$ref": f"#/$defs/{command}"}


@pytest.fixture(scope="module")
def certs(tmp_path_factory):
    d = tmp_path_factory.mktemp("certs")
    (d / "pres.json").write_text(json.dumps({"generators": ["x"], "eq0": ["1 + x^2"]}))
    (d / "good.json").write_text(
        json.dumps({"s": [], "p": [{"coeff": "1", "square": "x", "gens": []}], "z": [{"mult": "-1", "idx": 0}]})
    )
    (d / "bad.json").write_text(
        json.dumps({"s": [], "p": [{"coeff": "1", "square": "x", "gens": []}], "z": [{"mult": "-2", "idx": 0}]})
    )
    (d / "broken.json").write_text(json.dumps({"s": [4]}))
    return d


GOLDEN = [
    ["vroots", "x^3 - 6*x^2 + 11*x - 6"],
    ["vroots", "x^4 - 6*x^2 + 1/3"],
    ["budan", "x^2 - 4", "--at", "1"],
    ["ivt", "x^3 - x", "--from", "-2", "--to", "2"],
    ["extrema", "x^3 - 2*x", "--from", "-1", "--to", "3/2"],
    ["signtable", "x^3 - 2*x"],
    ["csqrt", "--re", "1", "--im", "1"],
    ["nf", "a * (b \\/ 0) + abs(a)"],
    ["semieq", "x \\/ (1 - x)", "1 \\/ x \\/ (1 - x)"],
    ["prove", "|- abs(x+y) <= abs(x)+abs(y)"],
    ["prove", "|- (x \\/ y) - (x + y) = 0"],
    ["series", "X^2 + X - e", "--op", "newton", "--depth", "8"],
    ["series", "e^2", "--op", "frac", "--other", "e", "--depth", "6"],
    ["series", "e - 2*e^2", "--op", "abs"],
    ["series", "geom", "--op", "inv", "--depth", "4"],
    ["series", "e", "--op", "sup", "--other", "e^2"],
]


@pytest.mark.parametrize("argv", GOLDEN, ids=[" ".join(a) for a in GOLDEN])
def test_payloads_match_schema(argv):
    result = run(argv)
    jsonschema.validate(result, SCHEMA)
    assert result["status"] == "ok"
    jsonschema.validate(json.loads(json.dumps(result)), SCHEMA)
    jsonschema.validate(result["payload"], payload_schema(argv[0]))


def test_examples():
    top = run(["vroots", "x^3 - 6*x^2 + 11*x - 6"])["payload"]["rho"][2]
    assert top == [{"rational": "1"}, {"rational": "2"}, {"rational": "3"}]
    b = run(["budan", "x^2 - 4", "--at", "1"])["payload"]
    assert b["changes"] == 1 and b["bracket"] == [{"rational": "-2"}, {"rational": "2"}]
    assert run(["prove", "|- abs(x+y) <= abs(x)+abs(y)"])["payload"]["result"] == "Valid"


def test_series_newton_output():
    p = run(["series", "X^2 + X - e", "--op", "newton", "--depth", "6"])["payload"]
    assert p["series"] == "e - e^2 + 2*e^3 - 5*e^4 + 14*e^5 + O(e^6)"


def test_checkcert(certs):
    ok = run(["checkcert", str(certs / "pres.json"), str(certs / "good.json")])
    assert ok["payload"] == {"result": "Accepted"}
    bad = run(["checkcert", str(certs / "pres.json"), str(certs / "bad.json")])
    assert bad["payload"] == {"result": "Rejected", "residual": "-x^2 - 1"}
    broken = run(["checkcert", str(certs / "pres.json"), str(certs / "broken.json")])
    assert broken["status"] == "error" and broken["error"]["type"] == "MalformedCertificate"
    for r in (ok, bad, broken):
        jsonschema.validate(r, SCHEMA)


def test_parse_error_carries_position():
    r = run(["nf", "x + * y"])
    jsonschema.validate(r, SCHEMA)
    assert r["status"] == "error" and r["payload"] is None
    assert r["error"]["position"] == 4 and r["error"]["expected"]


def test_domain_errors_are_relayed():
    r = run(["budan", "x^2 - 4", "--at", "0"])
    assert r["status"] == "error" and "vanishes" in r["error"]["message"]
    r = run(["series", "e", "--op", "inv"])
    assert r["error"]["type"] == "NotAUnitError"
    r = run(["prove", "|- x * y >= 0"])
    assert r["error"]["type"] == "UnsupportedFragmentError"
    r = run(["series", "e", "--op", "frac"])
    assert r["error"]["type"] == "UsageError"


def test_non_monic_input_is_normalized():
    r = run(["vroots", "2*x^2 - 8"])
    assert r["status"] == "ok" and r["diagnostics"]
    assert r["payload"]["polynomial"] == "x^2 - 4"


def test_exit_codes(capsys):
    assert main(["vroots", "x - 1"]) == 0
    assert main(["vroots", "x +"]) == 1
    out = capsys.readouterr().out
    assert out.count('"status"') == 2


def _invoke(argv, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run(
        [sys.executable, "-m", "signfree.cli", *argv], capture_output=True, env=env, check=False
    )


@pytest.mark.parametrize("argv", GOLDEN[::3], ids=[" ".join(a) for a in GOLDEN[::3]])
def test_byte_identical_across_runs(argv):
    a, b = _invoke(argv, 1), _invoke(argv, 2)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
