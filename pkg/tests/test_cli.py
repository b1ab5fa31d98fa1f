"""End-to-end checks of the command-line harness (eval / verify / list)."""

import json
from importlib import resources

import pytest

from hypertheta.cli import (
    EXIT_CONFIG,
    EXIT_DIVISOR,
    EXIT_FAILED,
    EXIT_INVALID_PERIOD,
    EXIT_RADIUS,
    main,
)
from hypertheta.identity_catalog import Domain, load_catalog
from hypertheta.theta_core import (
    EvalPoint,
    PeriodMatrix,
    ThetaCharacteristic,
    theta_eval,
)
from hypertheta.addition import f_eval


def _printed_value(line: str) -> complex:
    # "theta[...](x, y) = <re><im>j   [radius N]"
    payload = line.split("=", 1)[1].split("[", 1)[0].strip()
    return complex(payload)


def test_eval_odd_characteristic_is_zero(capsys):
    assert main(["eval", "--char", "0,1,0,1", "--z", "0,0",
                 "--tau", "i,i,0"]) == 0
    out = capsys.readouterr().out
    assert abs(_printed_value(out)) < 1e-13
    assert "[radius" in out


def test_eval_matches_direct_summation(capsys):
    assert main(["eval", "--char", "0,0,0,0", "--z", "0,0",
                 "--tau", "i,i,0"]) == 0
    value = _printed_value(capsys.readouterr().out)
    direct = theta_eval(ThetaCharacteristic.of(0, 0, 0, 0), EvalPoint(0, 0),
                        PeriodMatrix(1j, 1j, 0))
    assert value == pytest.approx(direct, rel=1e-15)


def test_eval_half_integer_characteristic(capsys):
    assert main(["eval", "--char", "1/2,1/2,0,0", "--z", "0.1,0.2",
                 "--tau", "i,i,0.1i"]) == 0
    value = _printed_value(capsys.readouterr().out)
    direct = theta_eval(ThetaCharacteristic.of("1/2", "1/2", 0, 0),
                        EvalPoint(0.1, 0.2), PeriodMatrix(1j, 1j, 0.1j))
    assert value == pytest.approx(direct, rel=1e-15)


def test_eval_real_component_flag_forms_agree(capsys):
    argv_complex = ["eval", "--char", "1,0,1,0",
                    "--z", "0.21-0.12i,-0.34+0.05i",
                    "--tau", "0.3+1.1i,-0.2+1.4i,0.15+0.25i"]
    argv_reals = ["eval", "--char", "1,0,1,0",
                  "--z", "0.21,-0.12,-0.34,0.05",
                  "--tau", "0.3,1.1,-0.2,1.4,0.15,0.25"]
    assert main(argv_complex) == 0
    first = _printed_value(capsys.readouterr().out)
    assert main(argv_reals) == 0
    second = _printed_value(capsys.readouterr().out)
    assert first == second


def test_eval_ratio_prints_quotient(capsys):
    tau = PeriodMatrix(1.1j, 1.3j, 0)
    z = EvalPoint(0.21 - 0.12j, 0.1)
    assert main(["eval", "--ratio", "--char", "1,0,1,0",
                 "--z", "0.21-0.12i,0.1", "--tau", "1.1i,1.3i,0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("F[1 0; 1 0]")
    assert _printed_value(out) == pytest.approx(
        f_eval((1, 0, 1, 0), z, tau).value, rel=1e-15)


@pytest.mark.parametrize("argv,code", [
    (["eval", "--char", "0,x,0,1", "--z", "0,0", "--tau", "i,i,0"],
     EXIT_CONFIG),
    (["eval", "--char", "0,0,0", "--z", "0,0", "--tau", "i,i,0"],
     EXIT_CONFIG),
    (["eval", "--char", "0,0,0,0", "--z", "0,0,0", "--tau", "i,i,0"],
     EXIT_CONFIG),
    (["eval", "--char", "0,0,0,0", "--z", "0,0", "--tau=-i,i,0"],
     EXIT_INVALID_PERIOD),
    (["eval", "--char", "0,0,0,0", "--z", "0,25i", "--tau", "i,i,0"],
     EXIT_RADIUS),
    (["eval", "--ratio", "--char", "1,0,1,0",
      "--z", "0.5+0.55i,0.07+0.02i", "--tau", "1.1i,1.3i,0"],
     EXIT_DIVISOR),
])
def test_eval_exit_codes(argv, code, capsys):
    assert main(argv) == code
    assert capsys.readouterr().err  # reason goes to stderr


def _run_verify(tmp_path, capsys, *extra):
    out = tmp_path / "rows.jsonl"
    code = main(["verify", "--samples", "2", "--out", str(out), *extra])
    captured = capsys.readouterr()
    rows = [json.loads(line) for line in
            out.read_text().splitlines()] if out.exists() else []
    report = json.loads(captured.out.strip().splitlines()[-1])
    return code, rows, report, captured.err


def test_verify_smoke(tmp_path, capsys):
    code, rows, report, _ = _run_verify(tmp_path, capsys)
    assert code == 0
    assert report["total_rows"] == len(rows)
    assert report["passed_rows"] == report["total_rows"]
    assert report["failing_ids"] == []
    assert report["suites"] == {"catalog": True, "addition": True,
                                "elliptic": True}
    # 200 catalog ids + 15 quotients + 15 path rows + 7 elliptic rows
    assert len({r["id"] for r in rows}) == 200 + 30 + 7
    for key in ("config", "per_identity", "redraws", "versions",
                "catalog_sha256", "determinism_hash", "wall_time_s"):
        assert key in report
    per = report["per_identity"]["B1"]
    assert per["passed"] == per["samples"] == 2
    assert rows == sorted(rows, key=lambda r: (r["id"], r["sample"]))


def test_verify_reports_are_deterministic(tmp_path, capsys):
    code1, rows1, rep1, _ = _run_verify(tmp_path, capsys)
    code2, rows2, rep2, _ = _run_verify(tmp_path, capsys)
    assert code1 == code2 == 0
    assert rows1 == rows2
    assert rep1["determinism_hash"] == rep2["determinism_hash"]
    rep1.pop("wall_time_s"), rep2.pop("wall_time_s")
    assert rep1 == rep2
    code3, _, rep3, _ = _run_verify(tmp_path, capsys, "--seed", "1")
    assert code3 == 0
    assert rep3["determinism_hash"] != rep1["determinism_hash"]


def test_verify_only_root_form_adds_sign_details(tmp_path, capsys):
    code, rows, report, _ = _run_verify(tmp_path, capsys, "--only", "D5")
    assert code == 0
    assert {r["id"] for r in rows} == {"D5"}
    assert report["suites"] == {"catalog": True, "addition": False,
                                "elliptic": False}
    details = report["sign_resolutions"]
    assert details and all(d["id"] == "D5" for d in details)
    assert all("signs" in d and "matches_printed" in d for d in details)


def test_verify_only_spans_all_suites(tmp_path, capsys):
    code, rows, report, _ = _run_verify(tmp_path, capsys,
                                        "--only", "A3,E.matrix,2e37")
    assert code == 0
    assert {r["id"] for r in rows} == {"A3", "A3.path", "E.matrix",
                                       "2e37.r1", "2e37.r2"}
    assert report["suites"] == {"catalog": True, "addition": True,
                                "elliptic": True}
    assert report["sign_resolutions"] == []


def test_verify_failure_exit_code_lists_ids(tmp_path, capsys):
    code, rows, report, err = _run_verify(
        tmp_path, capsys, "--only", "B1",
        "--rel-tol", "1e-17", "--abs-tol", "1e-19")
    assert code == EXIT_FAILED
    assert report["failing_ids"] == ["B1"]
    assert "B1" in err
    assert not all(r["pass"] for r in rows)


def test_verify_config_file_flags_win(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 7, "n_samples": 5,
                               "rel_tol": 1e-8}))
    code, _, report, _ = _run_verify(tmp_path, capsys, "--only", "B2",
                                     "--config", str(cfg))
    assert code == 0
    echo = report["config"]
    assert echo["seed"] == 7           # from the file
    assert echo["rel_tol"] == 1e-8     # from the file
    assert echo["n_samples"] == 2      # --samples flag wins


def test_verify_csv_format(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    code = main(["verify", "--samples", "1", "--only", "C17",
                 "--format", "csv", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("id,sample,lhs_re")
    assert lines[1].startswith("C17,0,")


def test_verify_rejects_bad_config(capsys):
    assert main(["verify", "--samples", "0"]) == EXIT_CONFIG
    assert "samples" in capsys.readouterr().err
    assert main(["verify", "--rel-tol", "-1"]) == EXIT_CONFIG
    capsys.readouterr()


def test_verify_parallel_jobs_match_serial(tmp_path, capsys):
    serial = tmp_path / "serial.jsonl"
    parallel = tmp_path / "parallel.jsonl"
    assert main(["verify", "--samples", "1", "--only", "2e5",
                 "--out", str(serial)]) == 0
    assert main(["verify", "--samples", "1", "--only", "2e5",
                 "--jobs", "2", "--out", str(parallel)]) == 0
    capsys.readouterr()
    assert serial.read_text() == parallel.read_text()


def test_list_text_inventory(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for ident in ("2e8", "2e26", "2e42", "2e75", "B1", "B19", "C1", "C28",
                  "D1", "D16", "A1", "A15", "E.matrix", "E.33"):
        assert f"\n{ident} " in out or out.startswith(f"{ident} ")
    # equation rendering and typo flags surface in the listing
    assert "t[0 0; 0 0](z1+z2)" in out
    assert "lhs-misprint" in out and "char-misprint" in out
    catalog = load_catalog()
    two_point = sum(i.domain is Domain.TWO_POINT for i in catalog)
    b_series = sum(i.domain is Domain.TWO_POINT and i.id.startswith("B")
                   for i in catalog)
    sector = sum(i.domain is Domain.TWO_POINT and i.id.startswith("2e")
                 for i in catalog)
    assert two_point == b_series + sector
    assert f"({two_point} TwoPoint)" in out


def test_list_json_is_catalog_file_verbatim(capsys):
    assert main(["list", "--format", "json"]) == 0
    out = capsys.readouterr().out
    shipped = (resources.files("hypertheta") / "data/catalog.json").read_text()
    assert out == shipped


def test_unknown_flag_exits_with_config_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--does-not-exist"])
    assert exc.value.code == EXIT_CONFIG
    capsys.readouterr()
