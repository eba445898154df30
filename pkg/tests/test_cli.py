import json

import pytest

from qaskey import cli


def run(argv):
    return cli.main(argv)


class TestVerify:
    def test_single_point_chain(self, tmp_path, capsys):
        rep = tmp_path / "r.json"
        code = run(["verify", "--family", "big-q-jacobi", "--identity", "eq41",
                    "--params", "a=1/3,b=1/4,c=1/5,q=1/2", "--n-max", "5",
                    "--no-timestamp", "--report", str(rep)])
        assert code == 0
        doc = json.loads(rep.read_text())
        assert all(r["status"] == "pass" for r in doc["results"])
        assert {r["identity_id"] for r in doc["results"]} == {"eq41"}

    def test_batch_structure_report_shape(self, tmp_path):
        rep = tmp_path / "r.json"
        code = run(["verify", "--family", "askey-wilson", "--identity", "eq18",
                    "--n-max", "10", "--samples", "20", "--seed", "7",
                    "--no-timestamp", "--report", str(rep)])
        assert code == 0
        doc = json.loads(rep.read_text())
        results = doc["results"]
        assert len(results) == 200                 # 20 samples x n = 1..10
        assert all(r["status"] == "pass" for r in results)
        assert all(r["residual"] is None for r in results)
        # schema fields
        assert set(doc) == {"run", "results"}
        assert set(doc["run"]) == {"seed", "degree_cap"}
        row = results[0]
        assert set(row) == {"identity_id", "family", "params", "n", "status", "residual"}
        assert all("/" in v for v in row["params"].values())

    def test_timestamp_field(self, tmp_path):
        rep = tmp_path / "r.json"
        run(["verify", "--family", "jacobi", "--identity", "eq26",
             "--samples", "1", "--report", str(rep)])
        doc = json.loads(rep.read_text())
        assert "timestamp" in doc["run"]

    def test_determinism(self, tmp_path):
        args = ["verify", "--family", "continuous-q-ultraspherical",
                "--identity", "eq54", "--samples", "4", "--seed", "99",
                "--n-max", "6", "--no-timestamp"]
        r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
        assert run(args + ["--report", str(r1)]) == 0
        assert run(args + ["--report", str(r2)]) == 0
        assert r1.read_bytes() == r2.read_bytes()

    def test_csv_summary(self, tmp_path):
        rep, csvp = tmp_path / "r.json", tmp_path / "s.csv"
        run(["verify", "--family", "jacobi", "--identity", "eq02",
             "--samples", "2", "--n-max", "4", "--no-timestamp",
             "--report", str(rep), "--csv", str(csvp)])
        lines = csvp.read_text().strip().split("\n")
        assert lines[0] == "identity_id,family,n,status"
        assert len(lines) == 1 + 2 * 4

    def test_info_status_does_not_fail(self, tmp_path):
        rep = tmp_path / "r.json"
        code = run(["verify", "--family", "askey-wilson", "--identity", "eq73",
                    "--samples", "2", "--n-max", "5", "--no-timestamp",
                    "--report", str(rep)])
        assert code == 0
        doc = json.loads(rep.read_text())
        assert {r["status"] for r in doc["results"]} == {"info"}

    def test_unknown_identity(self):
        assert run(["verify", "--family", "jacobi", "--identity", "nope"]) == 2

    def test_bad_family_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["verify", "--family", "nonsense"])
        assert exc.value.code == 2

    def test_missing_param_single_point(self):
        assert run(["verify", "--family", "askey-wilson", "--identity", "eq18",
                    "--params", "a=1/3"]) == 2


class TestConfig:
    def test_config_file_defaults_and_override(self, tmp_path):
        rep = tmp_path / "r.json"
        cfg = tmp_path / "run.cfg"
        cfg.write_text("family=jacobi\nidentity=eq26\nsamples=3\nseed=5\n"
                       "n-max=4\nno-timestamp=true\nreport=%s\n" % rep)
        assert run(["verify", "--config", str(cfg)]) == 0
        doc = json.loads(rep.read_text())
        assert len(doc["results"]) == 3 * 4
        # CLI flag overrides the file value
        rep2 = tmp_path / "r2.json"
        assert run(["verify", "--config", str(cfg), "--samples", "1",
                    "--report", str(rep2)]) == 0
        assert len(json.loads(rep2.read_text())["results"]) == 4

    def test_missing_config(self):
        assert run(["verify", "--config", "/nonexistent.cfg"]) == 2

    def test_malformed_config(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("just a line without equals\n")
        assert run(["verify", "--config", str(cfg)]) == 2


class TestLimitsCommand:
    def test_cqjacobi_table(self, tmp_path):
        out = tmp_path / "t.csv"
        code = run(["limits", "--which", "cqjacobi-to-jacobi", "--alpha", "1",
                    "--beta", "2", "--n", "3", "--k-max", "8", "--out", str(out)])
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "step,parameter_value,max_deviation,ratio"
        assert len(lines) == 1 + 6                 # k = 3..8

    def test_aw_to_bigq_table(self, tmp_path):
        out = tmp_path / "t.csv"
        code = run(["limits", "--which", "aw-to-bigq", "--eps-steps", "6",
                    "--out", str(out)])
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 7
        ratios = [float(l.split(",")[3]) for l in lines[2:]]
        assert all(r >= 2.0 for r in ratios)       # O(eps) certified

    def test_missing_which(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["limits"])
        assert exc.value.code == 2


class TestFullGridSmoke:
    def test_all_identities_one_sample(self, tmp_path):
        rep = tmp_path / "all.json"
        code = run(["verify", "--family", "all", "--identity", "all",
                    "--samples", "1", "--seed", "13", "--n-max", "6",
                    "--degree-cap", "8", "--no-timestamp", "--report", str(rep)])
        assert code == 0
        doc = json.loads(rep.read_text())
        statuses = {r["status"] for r in doc["results"]}
        assert statuses <= {"pass", "info"}
        idents = {r["identity_id"] for r in doc["results"]}
        for expected in ("eq28", "eq18", "eq26", "eq40", "eq54", "eq59", "eq59t",
                         "eq02", "eq31", "eq32", "eq76", "eq77", "bangerezako",
                         "eq71", "eq73", "sklyanin", "eq51", "eq52", "eq53",
                         "eq55", "qdiff2", "combo54", "eq53-nonskew", "eq42",
                         "eq41", "qdiff-derive", "coeff-match", "eigen",
                         "gamma-lambda", "commutator", "d-from-l", "string",
                         "skew-l", "sym-d", "sym-x", "orthogonality", "dual-path"):
            assert expected in idents, expected
