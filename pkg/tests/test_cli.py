import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from jetcert.cli import RunConfig, emit_profile_csv, main, run, verify_golden
from jetcert.serialize import dec_rat
from jetcert.threefold import Candidate, Mode


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    from jetcert.cli import build_parser, config_from_args

    args = build_parser().parse_args(list(argv))
    status = run(config_from_args(args), out, err)
    return status, out.getvalue(), err.getvalue()


def test_certify3_json():
    status, out, _ = invoke("certify3", "--p", "3", "--q", "7", "--format", "json")
    doc = json.loads(out)
    assert status == 0
    assert doc["result"]["verdict"] == "ELIMINATED"
    assert dec_rat(doc["result"]["total_budget"]) == F(27, 196)
    assert doc["input"] == {"p": 3, "q": 7, "degree_bound": {"num": "1", "den": "1"}, "mu": 3,
                            "alpha2_override": None, "mode": None}


def test_sweep3_q9():
    status, out, _ = invoke("sweep3", "--q-max", "9")
    rows = json.loads(out)["result"]["rows"]
    assert status == 0 and len(rows) == 4 and {r["verdict"] for r in rows} == {"ELIMINATED"}


def test_certify_dim():
    status, out, _ = invoke("certify-dim", "--d", "4")
    res = json.loads(out)["result"]
    assert status == 0 and res["verdict"] == "CONTRADICTION_ESTABLISHED"
    assert dec_rat(res["epsilon"]) == F(13, 48)


def test_certify_dim_range_text():
    status, out, _ = invoke("certify-dim", "--d", "4", "--d-max", "6", "--format", "text")
    assert status == 0 and out.count("CONTRADICTION_ESTABLISHED") == 3 and "limit" in out


def test_not_eliminated_never_exits_zero():
    status, out, _ = invoke("certify3", "--p", "6", "--q", "13", "--mode", "small_q")
    assert status == 1 and json.loads(out)["result"]["verdict"] == "NOT_ELIMINATED"


def test_failed_dim_certificate_exits_nonzero(monkeypatch):
    import jetcert.general as general

    monkeypatch.setattr(general, "f4_value", lambda d, a, e: F(5))
    status, out, _ = invoke("certify-dim", "--d", "4")
    assert status == 1 and json.loads(out)["result"]["verdict"].startswith("FAILED_AT")


def test_out_of_scope_emits_error_document():
    status, out, err = invoke("certify3", "--p", "1", "--q", "2")
    assert status == 3
    assert json.loads(out)["error"]["type"] == "OutOfScopeError"
    assert "1/2" in err


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["certify3", "--p", "3"])
    assert exc.value.code == 2
    assert run(RunConfig("certify-dim", d=4, output_format="csv"), io.StringIO(), io.StringIO()) == 2
    assert run(RunConfig("profile", p=3, q=7, samples=1), io.StringIO(), io.StringIO()) == 2


def test_deterministic_output():
    a = invoke("certify3", "--p", "5", "--q", "11")[1]
    b = invoke("certify3", "--p", "5", "--q", "11")[1]
    assert a == b


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_profile_csv_3_7():
    rows = _csv(emit_profile_csv(Candidate(3, 7), Mode.SMALL_Q, 4))
    assert rows[0]["t_exact"] == "0" and rows[0]["density_exact"] == "0"
    assert float(rows[0]["t"]) == 0 and float(rows[0]["density"]) == 0
    assert F(rows[-1]["t_exact"]) == F(9, 7)
    assert [r["piece_provenance"] for r in rows[1:]] == ["EST1"] * 4 + ["F3"] * 4 + ["EST4"] * 8
    assert {F(r["t_exact"]) for r in rows} >= {F(3, 7), F(6, 7), F(15, 14)}


def test_profile_csv_plateau_5_11():
    rows = _csv(emit_profile_csv(Candidate(5, 11), Mode.LARGE_Q, 5))
    plateau = [r for r in rows if F(5, 7) <= F(r["t_exact"]) <= F(10, 11)]
    assert len(plateau) >= 5
    assert {r["density_exact"] for r in plateau} == {"25/154"}


def test_profile_command_defaults_to_csv():
    status, out, _ = invoke("profile", "--p", "3", "--q", "7", "--samples", "2")
    assert status == 0 and out.startswith("t,density,piece_provenance")


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("JETCERT_OUTPUT_DIR", str(tmp_path))
    status, out, _ = invoke("certify-dim", "--d", "5")
    assert status == 0 and out == ""
    written = tmp_path / "certify_dim_d5.json"
    assert json.loads(written.read_text())["result"]["d"] == 5


def test_output_path(tmp_path):
    target = tmp_path / "sub" / "cert.json"
    status, _, _ = invoke("certify3", "--p", "4", "--q", "9", "-o", str(target))
    assert status == 0 and json.loads(target.read_text())["command"] == "certify3"


def test_convergence_and_oracle_commands():
    status, out, _ = invoke("convergence", "--p", "3", "--q", "7", "--n", "70", "140", "--format", "csv")
    rows = _csv(out)
    assert status == 0 and [r["n"] for r in rows] == ["70", "140"]
    status, out, _ = invoke("oracle-check", "--d", "3", "--k-max", "10")
    assert status == 0 and json.loads(out)["result"]["mismatches"] == []


def test_golden_corpus_reproduces():
    outcomes = verify_golden()
    assert outcomes and all(ok for _, ok in outcomes), [n for n, ok in outcomes if not ok]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jetcert", "certify3", "--p", "4", "--q", "9", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "ELIMINATED" in proc.stdout and "112/729" in proc.stdout
