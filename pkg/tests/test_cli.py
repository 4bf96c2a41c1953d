"""CLI contract: records, formats, exit codes, determinism, env seed."""

import json
import os
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "igeo.cli"]


def run(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("IGEO_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CMD + list(args), capture_output=True, text=True, env=env, timeout=120
    )


def records_of(out: str):
    return json.loads(out)["records"]


class TestQuantityCommands:
    def test_metric_json_contains_matrix(self):
        res = run("metric", "--chart", "theta", "--point", "0,1", "--format", "json")
        assert res.returncode == 0
        recs = {r["quantity"]: r for r in records_of(res.stdout)}
        assert recs["g"]["value"] == [[1.0, 0.0], [0.0, 2.0]]
        assert recs["g"]["provenance"] == "oracle"
        assert recs["g"]["point"] == [0.0, 1.0]

    def test_scalar_dual_chart(self):
        res = run("scalar", "--chart", "xi", "--point", "1,2", "--format", "json")
        assert res.returncode == 0
        (rec,) = records_of(res.stdout)
        assert abs(rec["value"] + 0.5) < 1e-8

    def test_dual_chart_metric_engines_agree(self):
        closed = run("metric", "--chart", "xi", "--point", "1,2", "--format", "json")
        quad = run("metric", "--chart", "xi", "--point", "1,2",
                   "--engine", "gauss_hermite:64", "--format", "json")
        g_closed = records_of(closed.stdout)[0]["value"]
        g_quad = records_of(quad.stdout)[0]["value"]
        for row_c, row_q in zip(g_closed, g_quad):
            for a, b in zip(row_c, row_q):
                assert abs(a - b) < 1e-9

    def test_transform_converts_point(self):
        res = run("transform", "--point", "1,2", "--format", "json")
        recs = {r["quantity"]: r for r in records_of(res.stdout)}
        assert recs["point_xi"]["value"] == [1.0, 5.0]
        assert recs["jacobian"]["value"] == [[1.0, 0.0], [2.0, 4.0]]

    def test_expectation_connection_dual_chart(self):
        res = run("christoffel", "--chart", "xi", "--point", "0,1",
                  "--connection", "expectation", "--format", "json")
        recs = {r["quantity"]: r for r in records_of(res.stdout)}
        lower = recs["Gamma_lower"]["value"]
        assert abs(lower[0][0][1] + 1.0) < 1e-10  # inhomogeneous term present

    def test_grid_row_major_order(self):
        res = run("metric", "--grid", "0:1:2,1:2:2", "--format", "json")
        points = [tuple(r["point"]) for r in records_of(res.stdout)]
        # three records per point, points in row-major grid order
        assert points[::3] == [(0.0, 1.0), (0.0, 2.0), (1.0, 1.0), (1.0, 2.0)]


class TestExitCodes:
    def test_domain_error_names_invariant(self):
        res = run("metric", "--point", "0,-1")
        assert res.returncode == 2
        assert "sigma > 0" in res.stderr

    def test_dual_chart_domain_error(self):
        res = run("metric", "--chart", "xi", "--point", "2,4")
        assert res.returncode == 2
        assert "c2 - c1^2 > 0" in res.stderr

    def test_grid_rejected_before_computation(self):
        res = run("metric", "--grid", "0:1:2,-1:1:3")
        assert res.returncode == 2

    def test_usage_errors(self):
        assert run("metric", "--point", "0,1", "--badflag").returncode == 64
        assert run("metric").returncode == 64                        # no point
        assert run("metric", "--point", "zero,1").returncode == 64
        assert run("metric", "--point", "0,1", "--engine", "bogus").returncode == 64
        assert run("nonsense").returncode == 64

    def test_small_monte_carlo_is_usage_error(self):
        res = run("metric", "--point", "0,1", "--engine", "monte_carlo:50")
        assert res.returncode == 64

    def test_curvature_requires_closed_form(self):
        res = run("curvature", "--point", "0,1", "--engine", "monte_carlo:1000")
        assert res.returncode == 64

    def test_audit_strict_flags_mismatch(self):
        res = run("audit", "--point", "0,1", "--strict")
        assert res.returncode == 3
        res = run("audit", "--point", "0,1")
        assert res.returncode == 0

    def test_selftest_passes(self):
        res = run("selftest")
        assert res.returncode == 0
        assert "FAIL" not in res.stdout


class TestAuditOutput:
    def test_json_rows(self):
        res = run("audit", "--point", "0,1", "--format", "json")
        doc = json.loads(res.stdout)
        rows = {(r["quantity"], r["oracle_label"]): r for r in doc["records"]}
        k = rows[("K", "native_levi_civita")]
        assert k["verdict"] == "MISMATCH"
        assert abs(k["abs_gap"] - 2.0) < 1e-9
        t = rows[("T_xi.max_abs", "native_levi_civita")]
        assert t["verdict"] == "MATCH" and "discrepancy" in t["note"]
        assert any("torsion" in n for n in doc["notes"])

    def test_text_readable(self):
        res = run("audit", "--point", "0,1")
        assert "MISMATCH" in res.stdout and "MATCH" in res.stdout
        assert "note:" in res.stdout


class TestDeterminismAndFormats:
    def test_byte_identical_json(self):
        args = ("metric", "--point", "0.5,1.5", "--engine",
                "monte_carlo:100000:99", "--format", "json")
        a, b = run(*args), run(*args)
        assert a.stdout == b.stdout
        assert a.returncode == b.returncode == 0

    def test_env_seed_override(self):
        args = ("metric", "--point", "0.5,1.5", "--engine", "monte_carlo:100000",
                "--format", "json")
        default = run(*args)
        overridden = run(*args, env_extra={"IGEO_SEED": "99"})
        explicit = run("metric", "--point", "0.5,1.5", "--engine",
                       "monte_carlo:100000:99", "--format", "json")
        assert overridden.stdout == explicit.stdout
        assert overridden.stdout != default.stdout

    def test_csv_json_same_multiset(self):
        base = ("metric", "--grid", "0:1:2,1:2:2")
        js = run(*base, "--format", "json")
        cs = run(*base, "--format", "csv")
        from_json = {
            (tuple(r["point"]), r["quantity"], json.dumps(r["value"]))
            for r in records_of(js.stdout)
        }
        import csv as csvmod
        import io

        from_csv = set()
        for row in csvmod.DictReader(io.StringIO(cs.stdout)):
            point = tuple(json.loads(row["point"]))
            value = json.loads(row["value"])
            from_csv.add((point, row["quantity"], json.dumps(value)))
        assert from_json == from_csv

    def test_output_file(self, tmp_path):
        target = tmp_path / "report.json"
        res = run("metric", "--point", "0,1", "--format", "json", "--output", str(target))
        assert res.returncode == 0 and res.stdout == ""
        assert json.loads(target.read_text())["meta"]["command"] == "metric"

    def test_seventeen_significant_digits(self):
        res = run("scalar", "--chart", "theta", "--point", "0.1,1.3", "--format", "json")
        (rec,) = records_of(res.stdout)
        # full double precision survives the round trip
        assert rec["value"] == pytest.approx(-0.5, abs=1e-9)
        assert "." in res.stdout.split('"value": ')[1]
