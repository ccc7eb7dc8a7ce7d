"""Command-line interface: exit codes, formats, config merge, exports."""

import json

import pytest

from zerotrace.cli import main
from zerotrace.instances import instance_from_spec
from zerotrace.zerosets import Sample, verify_bundle

CSV_HEADER = "n,pi,rho,binom_le_dminus1,maximal_vc,maximal_ldim"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_missing_subcommand_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "zerotrace" in capsys.readouterr().out


def test_analyze_moment_curve(capsys):
    code, out, _ = run(capsys, "analyze", "--instance", "moment_curve:3", "--n-max", "4")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "analyze"
    assert report["vcdim"] == 2
    assert report["ldim"] == 2
    assert report["independence"]["kind"] == "independent"
    assert all(a["passed"] for a in report["assertions"])
    assert report["profiles"]["pi"] == [1, 2, 4, 7]
    assert "timings" in report


def test_analyze_requires_instance(capsys):
    code, _, err = run(capsys, "analyze")
    assert code == 3
    assert "instance" in err


def test_analyze_rejects_csv(capsys):
    code, _, err = run(capsys, "analyze", "--instance", "moment_curve:3", "--format", "csv")
    assert code == 3
    assert "CSV" in err


def test_analyze_unknown_instance(capsys):
    code, _, err = run(capsys, "analyze", "--instance", "mystery")
    assert code == 3
    assert "unknown builtin" in err


def test_analyze_stream_exhaustion_is_resource_exit(capsys):
    code, _, err = run(capsys, "analyze", "--instance", "moment_curve:4,p=3")
    assert code == 2
    assert "resource limit" in err


def test_shatter_fn_csv(capsys):
    code, out, _ = run(
        capsys, "shatter-fn", "--instance", "moment_curve:3", "--n-max", "5", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1] == "1,2,2,2,true,true"
    assert lines[5] == "5,16,16,16,true,true"


def test_shatter_fn_covered_instance_is_not_maximal(capsys):
    code, out, _ = run(
        capsys, "shatter-fn", "--instance", "two_lines", "--n-max", "4", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["sampling"] == "stream-prefix"
    assert all(not row["maximal_vc"] for row in report["rows"])
    assert all(row["pi"] <= row["rho"] <= row["binom_le_dminus1"] for row in report["rows"])


def test_shatter_fn_designed_grid_splits_the_verdicts(capsys):
    # plane union: the tree profile stays maximal while the trace
    # profile drops strictly below C(5,<3) on the designed sample
    code, out, _ = run(
        capsys, "shatter-fn", "--instance", "high_vcden:3", "--n-max", "5", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1:5] == [
        "1,2,2,2,true,true",
        "2,4,4,4,true,true",
        "3,7,7,7,true,true",
        "4,11,11,11,true,true",
    ]
    assert lines[5] == "5,14,16,16,false,true"

    code, out, _ = run(
        capsys, "shatter-fn", "--instance", "high_vcden:3", "--n-max", "5", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["sampling"] == "designed-grid"
    assert len(report["points"]) == 11


def test_verify_subset(capsys):
    code, out, err = run(
        capsys, "verify", "--checks", "trace_count_on_d_points,dual_basis_kronecker"
    )
    assert code == 0
    report = json.loads(out)
    assert report["failed"] == 0
    assert {r["name"] for r in report["results"]} == {
        "trace_count_on_d_points",
        "dual_basis_kronecker",
    }
    for line in err.strip().splitlines():
        assert line.startswith("PASS ")


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "--checks", "nonsense")
    assert code == 3
    assert "unknown check" in err


def test_config_file_merge_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"instance": "moment_curve:3", "n_max": 2, "format": "csv"}))
    code, out, _ = run(capsys, "shatter-fn", "--config", str(cfg))
    assert code == 0
    assert len(out.strip().splitlines()) == 3  # header + 2 rows
    code, out, _ = run(capsys, "shatter-fn", "--config", str(cfg), "--n-max", "4")
    assert code == 0
    assert len(out.strip().splitlines()) == 5  # flag wins over config


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"instanec": "typo"}))
    code, _, err = run(capsys, "shatter-fn", "--config", str(cfg))
    assert code == 3
    assert "unknown config keys" in err


def test_analyze_report_written_without_timings(tmp_path, capsys):
    code, _, _ = run(
        capsys,
        "analyze",
        "--instance",
        "moment_curve:2",
        "--out",
        str(tmp_path),
    )
    assert code == 0
    written = json.loads((tmp_path / "analyze_report.json").read_text())
    assert "timings" not in written
    assert written["vcdim"] == 1


def test_export_writes_reloadable_artifacts(tmp_path, capsys):
    out_dir = tmp_path / "artifacts"
    code, out, _ = run(
        capsys,
        "export",
        "--instance",
        "high_vcden:3",
        "--n-max",
        "4",
        "--out",
        str(out_dir),
    )
    assert code == 0
    report = json.loads(out)
    assert set(report["files"]) == {
        "cover.json",
        "family.json",
        "family_sets.json",
        "instance.json",
        "shatter.csv",
        "tree.json",
    }
    # the witness bundle re-verifies from disk
    bundle = json.loads((out_dir / "family.json").read_text())
    reloaded = verify_bundle(bundle)
    assert len(reloaded) >= 1
    # the exported instance spec is loadable and consistent
    spec = json.loads((out_dir / "instance.json").read_text())
    inst = instance_from_spec(spec)
    assert inst.d == 3
    Sample.prefix(inst, 3)
    assert (out_dir / "shatter.csv").read_text().splitlines()[0] == CSV_HEADER


def test_export_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for out_dir in (a, b):
        code, _, _ = run(
            capsys, "export", "--instance", "two_lines", "--n-max", "3", "--out", str(out_dir)
        )
        assert code == 0
    for name in ("instance.json", "family.json", "tree.json", "shatter.csv", "cover.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_export_requires_out(capsys):
    code, _, err = run(capsys, "export", "--instance", "two_lines")
    assert code == 3
    assert "--out" in err


def test_analyze_instance_spec_file(tmp_path, capsys):
    spec = {
        "field": "rational",
        "d": 2,
        "family": {"polynomials": ["1", "x"], "variables": ["x"]},
        "sample": {"points": [0, 1, 2]},
    }
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run(capsys, "analyze", "--instance", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["sample"]["kind"] == "spec"
    assert report["sample"]["points"] == [0, 1, 2]
    assert report["vcdim"] == 1
