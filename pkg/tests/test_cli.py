import csv
import io
import json
import subprocess
import sys

import pytest
import yaml

from coopdmt import __version__
from coopdmt.cli import ConfigError, build_config, main, parse_protocol


def _csv_rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# tool=coopdmt ")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dmt_rows(capsys):
    code, out, _ = _run(["dmt", "--protocol", "direct", "--protocol", "naf"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    assert len(rows) == 2 * 21
    assert {r["protocol"] for r in rows} == {"direct", "naf"}


def test_dmt_grid_from_config(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text(yaml.safe_dump({"protocols": ["Direct", "Naf"], "n_nodes": 2, "r_grid": [0, 0.5, 1]}))
    code, out, _ = _run(["dmt", "--config", str(cfg)], capsys)
    assert code == 0
    rows = _csv_rows(out)
    assert len(rows) == 6
    assert list(rows[0]) == ["protocol", "n", "r", "d"]
    naf0 = [r for r in rows if r["protocol"] == "naf" and float(r["r"]) == 0.0][0]
    assert float(naf0["d"]) == 2.0


def test_json_mirrors_csv(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"protocol": "ddf", "r_grid": [0.25, 0.75]}))
    _, out_csv, _ = _run(["dmt", "--config", str(cfg)], capsys)
    _, out_json, _ = _run(["dmt", "--config", str(cfg), "--format", "json"], capsys)
    doc = json.loads(out_json)
    rows = _csv_rows(out_csv)
    assert len(doc["rows"]) == len(rows) == 2
    for a, b in zip(doc["rows"], rows):
        assert a["protocol"] == b["protocol"]
        assert a["d"] == float(b["d"]) and a["r"] == float(b["r"]) and a["n"] == int(b["n"])
    meta = doc["metadata"]
    assert meta["version"] == __version__ and meta["command"] == "dmt"
    assert f"config_sha256={meta['config_sha256']}" in out_csv.splitlines()[0]


def test_outage_rerun_is_byte_identical(tmp_path):
    cfg = tmp_path / "o.yaml"
    cfg.write_text(yaml.safe_dump({"protocols": ["direct"], "snr_grid_db": [10], "rate_bpcu": 1.0,
                                   "trials": 20000, "seed": 9}))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["outage", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["outage", "--config", str(cfg), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert "seed=9" in text.splitlines()[0]
    rows = _csv_rows(text)
    assert len(rows) == 1
    r = rows[0]
    assert list(r) == ["protocol", "snr_db", "rate_bpcu", "trials", "outages", "p_out", "ci_low",
                       "ci_high", "seed"]
    assert int(r["trials"]) == 20000
    assert float(r["p_out"]) == int(r["outages"]) / 20000
    assert float(r["ci_low"]) <= float(r["p_out"]) <= float(r["ci_high"])
    # a different seed changes both the rows and the config hash
    c = tmp_path / "c.csv"
    assert main(["outage", "--config", str(cfg), "--seed", "10", "--out", str(c)]) == 0
    assert c.read_text().splitlines()[0] != text.splitlines()[0]


def test_outage_profile_fields(tmp_path, capsys):
    cfg = tmp_path / "o.yaml"
    cfg.write_text(yaml.safe_dump({"protocols": ["naf", "ltw_af"], "snr_grid_db": [20, 25],
                                   "rate_bpcu": 2.0, "trials": 5000, "fair_power_split": True,
                                   "noiseless_links": ["h21"]}))
    code, out, _ = _run(["outage", "--config", str(cfg)], capsys)
    assert code == 0
    assert [r["protocol"] for r in _csv_rows(out)] == ["naf", "naf", "ltw_af", "ltw_af"]


def test_exponent_command(tmp_path, capsys):
    cfg = tmp_path / "e.yaml"
    cfg.write_text(yaml.safe_dump({"protocols": ["direct"], "snr_grid_db": [10, 20], "trials": 100000}))
    code, out, _ = _run(["exponent", "--config", str(cfg)], capsys)
    assert code == 0
    row = _csv_rows(out)[0]
    assert 0.8 < float(row["slope"]) < 1.2 and int(row["points_used"]) == 2
    # too few outages for a fit is a failed verification
    code, out, _ = _run(["exponent", "--config", str(cfg), "--trials", "10"], capsys)
    assert code == 1


def test_verify_region(tmp_path, capsys):
    cfg = tmp_path / "v.yaml"
    cfg.write_text(yaml.safe_dump({"protocols": ["naf"], "r_grid": [0.1, 0.3, 0.7]}))
    code, out, _ = _run(["verify-region", "--config", str(cfg)], capsys)
    assert code == 0
    rows = _csv_rows(out)
    assert list(rows[0]) == ["protocol", "n", "r", "d_closed", "d_region", "abs_err"]
    assert max(float(r["abs_err"]) for r in rows) < 2e-3
    code, _, _ = _run(["verify-region", "--protocol", "ddf_multi", "--n-nodes", "3"], capsys)
    assert code == 0
    code, out, _ = _run(["verify-region", "--protocol", "cma_naf", "--n-nodes", "2"], capsys)
    assert code == 0 and max(float(r["abs_err"]) for r in _csv_rows(out)) < 2e-3
    cfg.write_text(yaml.safe_dump({"protocols": ["naf"], "r_grid": [0.33], "tolerance": 0.0,
                                   "resolution": 0.1}))
    code, _, err = _run(["verify-region", "--config", str(cfg)], capsys)
    assert code == 1 and "verification failed" in err


@pytest.mark.parametrize("argv", [
    ["dmt"],
    ["dmt", "--protocol", "warp_drive"],
    ["bogus"],
    ["dmt", "--protocol", "naf", "--format", "xml"],
    ["dmt", "--protocol", "naf", "--n-nodes", "3"],
    ["verify-region", "--protocol", "ddf_multi", "--n-nodes", "5"],
    ["verify-region", "--protocol", "direct"],
    ["outage", "--protocol", "direct", "--trials", "0"],
])
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2


@pytest.mark.parametrize("data", [
    {"protocols": ["naf"], "mystery": 1},
    {"protocols": ["naf"], "r_grid": [0.2, 1.5]},
    {"protocols": [], "r_grid": [0.2]},
    {"protocols": ["naf"], "offsets_db": {"h21": 3.0}, "noiseless_links": ["h21"]},
    {"protocol": "naf", "protocols": ["ddf"]},
])
def test_bad_config_file_exit_2(tmp_path, capsys, data):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text(yaml.safe_dump(data))
    assert main(["dmt", "--config", str(cfg)]) == 2


def test_unparsable_config_exit_2(tmp_path, capsys):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("protocols: [naf\n")
    assert main(["dmt", "--config", str(cfg)]) == 2
    cfg.write_text("- just\n- a list\n")
    assert main(["dmt", "--config", str(cfg)]) == 2


def test_io_errors_exit_3(tmp_path, capsys):
    assert main(["dmt", "--config", str(tmp_path / "missing.yaml")]) == 3
    assert main(["dmt", "--protocol", "naf", "--out", str(tmp_path / "no" / "such" / "f.csv")]) == 3


def test_flags_override_file(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text(yaml.safe_dump({"protocols": ["naf"], "seed": 1, "r_grid": [0.5]}))
    code, out, _ = _run(["dmt", "--config", str(cfg), "--seed", "42", "--protocol", "ddf"], capsys)
    assert code == 0
    assert "seed=42" in out.splitlines()[0]
    assert [r["protocol"] for r in _csv_rows(out)] == ["ddf"]


def test_parse_protocol_and_build_config():
    assert parse_protocol("CmaNaf").value == "cma_naf"
    assert parse_protocol("ltw-af").value == "ltw_af"
    with pytest.raises(ConfigError):
        parse_protocol("x")
    cfg = build_config("dmt", {"protocol": "naf"}, {})
    assert cfg.digest() == build_config("dmt", {"protocols": ["naf"]}, {"out": "x.csv"}).digest()
    with pytest.raises(ConfigError):
        build_config("dmt", {"command": "outage", "protocol": "naf"}, {})


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "coopdmt", "dmt", "--protocol", "ddf"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.startswith("# tool=coopdmt")
