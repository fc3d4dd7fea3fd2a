import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from asorder.cli import RunConfig, main, parse_config, run

SCHEMA = json.loads(resources.files("asorder").joinpath("schema/report.schema.json").read_text())

COMMAND_LINES = [
    ["construct", "--p", "3", "--n", "2", "--b", "0,1"],
    ["construct", "--p", "5", "--n", "1", "--a", "2"],
    ["construct", "--p", "3", "--n", "3"],
    ["census", "--p", "2", "--n", "6"],
    ["census", "--p", "3", "--n", "2"],
    ["bound", "--p", "3", "--n", "1"],
    ["bound", "--p", "5", "--n", "3", "--s", "2", "--t", "2"],
    ["verify", "--p", "3", "--n", "1", "--a", "1", "--b", "0"],
    ["verify", "--p", "3", "--n", "2", "--b", "0,1", "--s", "1", "--t", "1"],
    ["verify", "--p", "3", "--n", "3", "--b", "0"],
    ["table"],
    ["sweep", "--p", "3", "--n", "1,2", "--max-b", "2"],
]


def invoke(argv):
    out = io.StringIO()
    code = run(parse_config(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv", COMMAND_LINES, ids=lambda a: " ".join(a))
def test_json_output_validates(argv):
    code, out = invoke(argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["command"] == argv[0]
    assert code in (0, 1, 2)


def test_schema_rejects_malformed_reports():
    _, out = invoke(["verify", "--p", "3", "--n", "1", "--b", "0"])
    doc = json.loads(out)
    doc["report"]["order"] = 13
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, SCHEMA)


def test_verify_p3_n1_exit_code_and_flags():
    code, out = invoke(["verify", "--p", "3", "--n", "1", "--a", "1", "--b", "0"])
    rep = json.loads(out)["report"]
    assert code == 2
    assert rep["order"] == "13"
    assert "CLOSED_FORM_EXCEEDS_ORDER:thm2_closed" in rep["flags"]


def test_verify_clean_instance_exits_zero():
    code, out = invoke(["verify", "--p", "3", "--n", "2", "--b", "0,1"])
    assert code == 0
    assert json.loads(out)["report"]["order"] == "728"


def test_verify_reducible_instance_exits_one():
    code, out = invoke(["verify", "--p", "3", "--n", "3", "--b", "0"])
    assert code == 1
    assert json.loads(out)["report"]["error"].startswith("IrreducibilityFailure")


def test_census_command():
    code, out = invoke(["census", "--p", "2", "--n", "6"])
    rep = json.loads(out)["report"]
    assert code == 0
    assert rep["g"]["6"] == "54"
    assert rep["probLower"].startswith("6.76879687409855e-1")
    code, _ = invoke(["census", "--p", "3", "--n", "2"])
    assert code == 2


def test_table_command():
    code, out = invoke(["table"])
    rep = json.loads(out)["report"]
    assert code == 0
    assert rep["provenance"] == "reconstructed"
    assert len(rep["rows"]) == 8 and all(r["match"] for r in rep["rows"])


def test_construct_certificate():
    code, out = invoke(["construct", "--p", "3", "--n", "1"])
    rep = json.loads(out)["report"]
    assert code == 0
    assert [r["thetaPowPj"] for r in rep["frobeniusCertificate"]] == ["1;1;0", "2;1;0", "0;1;0"]
    assert rep["groupOrder"] == "26"


def test_bound_budget_block():
    code, out = invoke(["bound", "--p", "3", "--n", "2", "--s", "1", "--t", "1"])
    rep = json.loads(out)["report"]
    assert code == 0
    assert rep["budget"]["istExact"] == "43"
    assert rep["budget"]["istBinomLower"] == "42"


def test_text_output():
    code, out = invoke(["census", "--p", "2", "--n", "6", "--format", "text"])
    assert code == 0
    assert "anUpper: 12" in out


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["census", "--p", "3"])
    assert exc.value.code == 1
    assert main(["census", "--p", "4", "--n", "2"]) == 1
    assert main(["bound", "--p", "x", "--n", "2"]) == 1
    assert "error" in capsys.readouterr().err


def test_order_guard_env(monkeypatch):
    monkeypatch.setenv("ORDER_GUARD_BITS", "5")
    cfg = parse_config(["verify", "--p", "3", "--n", "2", "--b", "0,1"])
    assert cfg.order_guard_bits == 5
    out = io.StringIO()
    assert run(cfg, out) == 1
    assert json.loads(out.getvalue())["report"]["error"].startswith("TooLarge")


@pytest.mark.parametrize("argv", COMMAND_LINES, ids=lambda a: " ".join(a))
def test_config_roundtrip(argv):
    cfg = parse_config(argv)
    assert RunConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg
    assert parse_config(cfg.to_argv()) == cfg


def test_sweep_parallel_matches_serial():
    _, serial = invoke(["sweep", "--p", "3,5", "--n", "1,2", "--max-b", "3"])
    _, parallel = invoke(["sweep", "--p", "3,5", "--n", "1,2", "--max-b", "3", "--jobs", "3"])
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "config"}
    assert strip(serial) == strip(parallel)


def test_sweep_records_errors_and_continues():
    code, out = invoke(["sweep", "--p", "3,4", "--n", "1,3"])
    rep = json.loads(out)["report"]
    assert code == 2
    errors = [r for r in rep["records"] if r["error"]]
    assert any(r["instance"]["p"] == "4" for r in errors)
    assert any(r["error"].startswith("IrreducibilityFailure") for r in errors)
    assert any(r["order"] == "13" for r in rep["records"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "asorder", "census", "--p", "3", "--n", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["report"]["g"] == {"1": "3"}
