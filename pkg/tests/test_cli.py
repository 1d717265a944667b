"""End-to-end command-line checks, driven through run() so exit codes
and emitted payloads are observable without a subprocess."""

import json

import pytest

from cyclodiff.cli import run


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


# -- exit code contract ------------------------------------------------------------


def test_usage_errors_exit_1(capsys):
    for argv in (["frobnicate"], ["field"], ["field", "info"],
                 ["ds", "check", "--q", "7"],
                 ["gb", "solve", "--m", "6", "--theta", "0",
                  "--strategy", "magic"]):
        with pytest.raises(SystemExit) as info:
            run(argv)
        assert info.value.code == 1, argv
        capsys.readouterr()


def test_runtime_errors_exit_1(capsys):
    # not a prime power
    assert run(["field", "info", "--p", "6"]) == 1
    assert "cyclodiff:" in capsys.readouterr().err
    # jacobi needs both characters
    assert run(["sums", "jacobi", "--q", "13", "--m", "4", "--s", "1"]) == 1
    capsys.readouterr()
    # unknown --limits key
    assert run(["gb", "probe-zero", "--m", "4", "--theta", "1",
                "--limits", '{"spairs": 1}']) == 1
    assert "unknown limit keys" in capsys.readouterr().err
    # malformed --limits JSON
    assert run(["gb", "probe-zero", "--m", "4", "--theta", "1",
                "--limits", "{oops"]) == 1
    capsys.readouterr()


# -- field and sums ----------------------------------------------------------------


def test_field_info(capsys):
    assert run(["field", "info", "--p", "3", "--e", "2"]) == 0
    payload = _json_out(capsys)
    assert payload["p"] == 3 and payload["e"] == 2 and payload["q"] == 9
    assert payload["modulus"] == [1, 0, 1]
    assert isinstance(payload["generator"], int)


def test_sums_gauss_shape(capsys):
    assert run(["sums", "gauss", "--q", "13", "--m", "4", "--s", "1"]) == 0
    payload = _json_out(capsys)
    assert payload["value"]["order"] == 52
    assert len(payload["value"]["coeffs"]) == 24     # phi(52)
    assert run(["sums", "gauss", "--q", "13", "--m", "4", "--s", "1",
                "--numeric"]) == 0
    payload = _json_out(capsys)
    re, im = payload["numeric"]
    assert abs(re * re + im * im - 13) < 1e-6        # |G|^2 = q


def test_sums_jacobi_value(capsys):
    assert run(["sums", "jacobi", "--q", "13", "--m", "4",
                "--s", "1", "--t", "1"]) == 0
    payload = _json_out(capsys)
    assert payload["value"] == {"order": 4, "coeffs": [3, -2]}


# -- difference sets ---------------------------------------------------------------


def test_ds_check_known_hit(capsys):
    assert run(["ds", "check", "--q", "73", "--m", "8",
                "--methods", "direct,charsum,jacobi,gauss"]) == 0
    payload = _json_out(capsys)
    assert payload["verdict"] == "difference_set"
    assert payload["family"] == "lehmer_octic"
    assert set(payload["methods"].values()) == {"difference_set"}


def test_ds_check_negative(capsys):
    assert run(["ds", "check", "--q", "53", "--m", "4",
                "--methods", "direct,charsum,jacobi,gauss"]) == 0
    payload = _json_out(capsys)
    assert payload["verdict"] == "not_difference_set"
    assert payload["family"] is None


def test_ds_scan_quadratic(capsys):
    assert run(["ds", "scan", "--m", "2", "--q-max", "60",
                "--modified-mode", "plain"]) == 0
    payload = _json_out(capsys)
    hits = {row["q"] for row in payload["nontrivial_hits"]}
    assert hits == {7, 11, 19, 23, 27, 31, 43, 47, 59}
    assert payload["hits"] == 10          # q = 3 hits trivially
    assert payload["unexplained"] == []


def test_ds_check_text_format(capsys):
    assert run(["ds", "check", "--q", "7", "--m", "2",
                "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "verdict: difference_set" in out


# -- systems through files ---------------------------------------------------------


def test_sys_gen_parse_round_trip(tmp_path, capsys):
    first = tmp_path / "sys.txt"
    second = tmp_path / "reparse.txt"
    assert run(["sys", "gen", "--m", "6", "--format", "text",
                "--output", str(first)]) == 0
    assert run(["sys", "parse", "--system", str(first), "--format", "text",
                "--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    capsys.readouterr()


def test_sys_verify_pipeline(tmp_path, capsys):
    system = tmp_path / "sys.txt"
    sol = tmp_path / "sol.json"
    assert run(["sys", "gen", "--m", "6", "--format", "text",
                "--output", str(system)]) == 0
    assert run(["sys", "explicit", "--m", "6", "--output", str(sol)]) == 0
    assert run(["sys", "verify", "--system", str(system),
                "--solution", str(sol), "--mode", "exact"]) == 0
    payload = _json_out(capsys)
    assert payload["ok"] is True

    # a well-formed point off the variety is a discrepancy, not a crash
    data = json.loads(sol.read_text())
    data["values"][0]["coeffs"][0] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert run(["sys", "verify", "--system", str(system),
                "--solution", str(bad), "--mode", "exact"]) == 2
    assert _json_out(capsys)["ok"] is False


def test_sys_from_field_bridge_verify(tmp_path, capsys):
    gsol = tmp_path / "g.json"
    ghat = tmp_path / "ghat.json"
    system = tmp_path / "sys.txt"
    assert run(["sys", "from-field", "--q", "7", "--m", "6",
                "--output", str(gsol)]) == 0
    assert run(["sys", "bridge", "--m", "6", "--theta", "2",
                "--solution", str(gsol), "--output", str(ghat)]) == 0
    assert run(["sys", "gen", "--m", "6", "--level", "ghat", "--theta", "2",
                "--format", "text", "--output", str(system)]) == 0
    assert run(["sys", "verify", "--system", str(system),
                "--solution", str(ghat), "--mode", "scaled"]) == 0
    assert _json_out(capsys)["ok"] is True
    # theta mismatch between flag and recovered branch
    assert run(["sys", "bridge", "--m", "6", "--theta", "1",
                "--solution", str(gsol)]) == 1
    capsys.readouterr()


# -- basis pipeline ----------------------------------------------------------------


def test_gb_solve_unit_ideal(capsys):
    assert run(["gb", "solve", "--m", "4", "--theta", "0"]) == 0
    payload = _json_out(capsys)
    assert payload["coeffs"] == [1]
    assert "stats" in payload


def test_gb_solve_text_line(capsys):
    assert run(["gb", "solve", "--m", "6", "--theta", "1",
                "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "F 6 1 : -1 0 7"


def test_gb_solve_undecided(capsys):
    assert run(["gb", "solve", "--m", "6", "--theta", "0",
                "--limits", '{"gb_max_spairs": 5}']) == 1
    payload = _json_out(capsys)
    assert payload["result"] == "undecided"
    assert payload["stats"]["spairs_reduced"] >= 1


def test_gb_table_fixtures(capsys):
    assert run(["gb", "table", "--m", "16", "--fixtures-only"]) == 0
    payload = _json_out(capsys)
    assert payload["checks"]["gate"]["gate_holds"] is True
    assert payload["checks"]["product"]["combined_divides_product"] is True
    thetas = {row["theta"] for row in payload["rows"]}
    assert thetas == {0, 1, 2, 4}
    assert run(["gb", "table", "--m", "16", "--fixtures-only",
                "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "gate_ok=True" in out and "theta  2  17*x^2 - 1" in out


def test_gb_probe_zero(capsys):
    assert run(["gb", "probe-zero", "--m", "4", "--theta", "1"]) == 0
    assert _json_out(capsys)["result"] == "nonempty"
