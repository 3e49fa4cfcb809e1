"""Command line tests: payload shapes, exit codes, stdout/stderr split."""

import json

import pytest

from cleanforge import PropertyReport, cli
from cleanforge.cli import main


def run(capsys, args):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, args):
    code, out, err = run(capsys, args)
    payload = json.loads(out)
    # stdout carries exactly the canonical sorted-keys rendering
    assert out == json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return code, payload, err


def test_decompose_json(capsys):
    code, d, err = run_json(capsys, [
        "decompose", "--ring", "Z/4", "--matrix", '[["0","2"],["1","1"]]'])
    assert code == 0
    assert d["case"] == "split"
    assert d["E"] == [["3", "2"], ["3", "2"]]
    assert d["U"] == [["1", "0"], ["2", "3"]]
    assert d["certificate"] == {"g": ["2", "1"], "h": ["1", "1"],
                                "u": ["1"], "v": ["3"]}
    assert d["verified"] is True and d["ring"] == "Z/4"


def test_decompose_text_format(capsys):
    code, out, err = run(capsys, [
        "decompose", "--ring", "Z/4", "--matrix", '[["0","2"],["1","1"]]',
        "--format", "text"])
    assert code == 0
    assert "case: split" in out and "verified: True" in out


def test_decompose_crt_case(capsys):
    code, d, _ = run_json(capsys, [
        "decompose", "--ring", "Z/12", "--matrix", '[["7","2"],["1","5"]]'])
    assert code == 0
    assert d["case"] == "crt"
    assert d["E"] == [["4", "0"], ["0", "4"]]
    assert d["components"] if "components" in d else d["certificate"]


def test_charpoly_json(capsys):
    code, d, _ = run_json(capsys, [
        "charpoly", "--ring", "Z/4", "--matrix", '[["0","2"],["1","1"]]'])
    assert code == 0
    assert d["charpoly"] == ["2", "3", "1"] and d["verified"] is True


def test_factor_modes(capsys):
    code, d, _ = run_json(capsys, [
        "factor", "--ring", "Z/4", "--poly", "X^2+3*X+2"])
    assert code == 0 and d["verified"] is True
    assert d["factors"] == [["2", "1"], ["1", "1"]]
    code, d, _ = run_json(capsys, [
        "factor", "--ring", "Z/4", "--poly", "X^2+3*X+2", "--a", "1"])
    assert code == 0
    assert d["g"] == ["2", "1"] and d["h"] == ["1", "1"]
    code, d, _ = run_json(capsys, [
        "factor", "--ring", "Z/4", "--poly", "X^2+X+1", "--brute"])
    assert code == 0 and d["reducible"] is False
    code, d, _ = run_json(capsys, [
        "factor", "--ring", "Z/4", "--poly", "X^2+3*X+2", "--brute"])
    assert code == 0 and d["reducible"] is True
    assert d["g"] == ["1", "1"] and d["h"] == ["2", "1"]


def test_factor_flag_conflict(capsys):
    code, out, err = run(capsys, [
        "factor", "--ring", "Z/4", "--poly", "X^2+3*X+2", "--a", "1", "--brute"])
    assert code == 2
    assert json.loads(err)["error"]["code"] == "PreconditionViolated"


def test_hensel_json(capsys):
    code, d, _ = run_json(capsys, [
        "hensel", "--ring", "Z/4", "--poly", "X^2+3*X+2",
        "--gbar", "X", "--hbar", "X+1"])
    assert code == 0
    assert (d["g"], d["h"], d["u"], d["v"]) == (
        ["2", "1"], ["1", "1"], ["1"], ["3"])
    assert d["verified"] is True


def test_pireg_json(capsys):
    code, d, _ = run_json(capsys, [
        "pireg", "--ring", "Z/4", "--matrix", '[["0","2"],["1","1"]]'])
    assert code == 0
    assert d["q"] == 2 and d["period"] == 2
    assert d["s"] == [["0", "2"], ["1", "1"]] and d["verified"] is True


def test_witness_json(capsys):
    code, d, _ = run_json(capsys, ["witness", "--p", "7"])
    assert code == 0
    assert d["p"] == 7 and d["ring"] == "Zloc(7)"
    assert d["f"] == ["7", "-1", "1"]
    assert d["checks"]["discriminant"] == -27
    assert d["verified"] is True


def test_verify_suite_json_and_summary(capsys):
    code, out, err = run(capsys, [
        "verify", "--suite", "local", "--ring", "Z/9", "--n", "2"])
    assert code == 0
    d = json.loads(out)
    assert d["property"] == "strongly-clean-decomposition"
    assert d["checked"] == 6561 and d["ok"] is True
    assert d["failures"] == []
    # the one-line summary goes to stderr, not stdout
    assert "strongly-clean-decomposition" in err and "PASS" in err


def test_verify_sampled_suite(capsys):
    code, out, err = run(capsys, [
        "verify", "--suite", "pireg", "--ring", "Z/4", "--n", "2",
        "--engine", "generic", "--sample", "50", "--seed", "3"])
    assert code == 0
    d = json.loads(out)
    assert d["checked"] == 50 and d["details"]["engine"] == "generic"


def test_verify_failure_exits_one(capsys, monkeypatch):
    def fake_check(spec, n, mode="exhaustive", count=1000, seed=0, engine="auto"):
        return PropertyReport(
            name="strongly-clean-decomposition", ring=spec.name(),
            bounds={"n": n, "mode": mode}, checked=3,
            failures=[{"matrix": [["0"]], "reason": "forced"}],
            elapsed=0.0, details={})
    monkeypatch.setattr(cli, "check_theorem_local_instance", fake_check)
    code, out, err = run(capsys, [
        "verify", "--suite", "local", "--ring", "Z/4", "--n", "2"])
    assert code == 1
    d = json.loads(out)
    assert d["ok"] is False and d["failures"]
    assert "FAIL" in err


def test_error_payloads_go_to_stderr(capsys):
    cases = [
        (["decompose", "--ring", "Z/5x", "--matrix", "[]"], "ParseError"),
        (["decompose", "--ring", "Z/4", "--matrix", "not json"], "ParseError"),
        (["decompose", "--ring", "Z/4", "--matrix", '[["0","2"]]'], "ParseError"),
        (["decompose", "--ring", "Zloc(5)", "--matrix", '[["1"]]'], "UnsupportedRing"),
        (["charpoly", "--ring", "Z/4", "--matrix", '[["9","2"],["1","x"]]'], "ParseError"),
        (["witness", "--p", "6"], "NotPrime"),
        (["factor", "--ring", "Z/4", "--poly", "2*X^2+1", "--brute"], "NotMonic"),
    ]
    for args, code_name in cases:
        code, out, err = run(capsys, args)
        assert code == 2, args
        assert out == ""
        payload = json.loads(err)
        assert payload["error"]["code"] == code_name, args


def test_witness_degenerate_exits_one(capsys, monkeypatch):
    from cleanforge.errors import WitnessDegenerate

    def fake_witness(p):
        raise WitnessDegenerate("forced")
    monkeypatch.setattr(cli, "nonclean_witness_quadratic", fake_witness)
    code, out, err = run(capsys, ["witness", "--p", "7"])
    assert code == 1
    assert json.loads(err)["error"]["code"] == "WitnessDegenerate"


def test_usage_errors_from_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense", "--ring", "Z/4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["decompose"])
    assert exc.value.code == 2


def test_verify_bound_exceeded_exits_two(capsys):
    code, out, err = run(capsys, [
        "verify", "--suite", "local", "--ring", "Z/9", "--n", "4"])
    assert code == 2
    assert json.loads(err)["error"]["code"] == "BoundExceeded"
