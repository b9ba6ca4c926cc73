import json

import pytest

from variant.cli import run_cli

from conftest import data_path


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAssess:
    def test_happy_path(self, capsys, tmp_path):
        out = tmp_path / "result.json"
        code, stdout, _ = run(
            capsys,
            "assess",
            "--input",
            data_path("boil_water.csv"),
            "--provider",
            "hash",
            "--weights",
            "paper-default",
            "--out",
            str(out),
        )
        assert code == 0
        assert out.exists()
        doc = json.loads(out.read_text())
        assert 0.0 <= doc["overall"] <= 1.0
        assert "overall variety" in stdout

    def test_two_runs_byte_identical(self, capsys, tmp_path):
        paths = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            code, _, _ = run(
                capsys,
                "assess",
                "--input",
                data_path("boil_water.csv"),
                "--provider",
                "hash",
                "--out",
                str(out),
            )
            assert code == 0
            paths.append(out)
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_explicit_weight_list(self, capsys, tmp_path):
        out = tmp_path / "result.json"
        code, _, _ = run(
            capsys,
            "assess",
            "--input",
            data_path("boil_water.csv"),
            "--weights",
            "1,1,1,1,1,1,1",
            "--out",
            str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["config"]["weights"]["action"] == 1.0
        assert doc["config"]["weights_preset"] is None

    def test_with_clustering(self, capsys, tmp_path):
        out = tmp_path / "result.json"
        code, _, _ = run(
            capsys,
            "assess",
            "--input",
            data_path("boil_water.csv"),
            "--k",
            "2",
            "--out",
            str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["clusters"]["k"] == 2
        assert len(doc["clusters"]["labels"]) == 4
        assert "dendrogram" in doc

    def test_invalid_space_fails(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        header = (
            "concept_id,concept_name,instance_id,part,organ,effect,"
            "phenomenon,input,state_change,action"
        )
        bad.write_text(header + "\n")  # zero concepts
        code, _, err = run(capsys, "assess", "--input", str(bad), "--out", str(tmp_path / "r.json"))
        assert code == 1
        assert "no concepts" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "assess", "--input", str(tmp_path / "ghost.csv"), "--out", "r.json"
        )
        assert code == 1
        assert "error" in err


class TestTreeMetrics:
    def test_gsid_per_level(self, capsys):
        code, stdout, _ = run(
            capsys,
            "tree-metrics",
            "--tree",
            data_path("pump_even_tree.json"),
            "--metric",
            "gsid",
        )
        assert code == 0
        assert "alpha=1:0.6" in stdout
        assert "alpha=2:1" in stdout

    def test_all_metrics(self, capsys):
        code, stdout, _ = run(
            capsys, "tree-metrics", "--tree", data_path("pump_even_tree.json")
        )
        assert code == 0
        for metric in ("svs", "nm", "ihi", "hhid", "gsid"):
            assert metric in stdout
        # the fixture carries the conventional weights, so svs lands on 10
        assert "overall: 10" in stdout

    def test_nelson_uses_its_own_preset(self, capsys):
        code, stdout, _ = run(
            capsys,
            "tree-metrics",
            "--tree",
            data_path("pump_even_tree.json"),
            "--metric",
            "nm",
        )
        assert code == 0
        assert "overall: 6.25" in stdout


class TestTestcase:
    def test_case_two_csv(self, capsys, tmp_path):
        out = tmp_path / "curve.csv"
        code, _, _ = run(capsys, "testcase", "--case", "II", "--n-max", "40", "--out", str(out))
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "x,svs,nm,ihi,hhid,gsid"
        first = dict(zip(lines[0].split(","), lines[1].split(",")))
        assert first["x"] == "2"
        assert float(first["hhid"]) == pytest.approx(0.5, abs=1e-12)
        assert float(first["gsid"]) == pytest.approx(1.0, abs=1e-12)

    def test_case_one_csv(self, capsys, tmp_path):
        out = tmp_path / "curve.csv"
        code, _, _ = run(capsys, "testcase", "--case", "I", "--n", "20", "--out", str(out))
        assert code == 0
        rows = out.read_text().splitlines()[1:]
        assert rows[0].startswith("0/20,")
        assert rows[-1].startswith("10/10,")


class TestClusterCommand:
    def test_labels_from_result_file(self, capsys, tmp_path):
        result_path = tmp_path / "r.json"
        code, _, _ = run(
            capsys,
            "assess",
            "--input",
            data_path("boil_water.csv"),
            "--out",
            str(result_path),
        )
        assert code == 0
        labels_path = tmp_path / "labels.json"
        code, stdout, _ = run(
            capsys,
            "cluster",
            "--result",
            str(result_path),
            "--k",
            "2",
            "--out",
            str(labels_path),
        )
        assert code == 0
        assert "concept 1: cluster" in stdout
        doc = json.loads(labels_path.read_text())
        assert doc["k"] == 2
        assert len(doc["labels"]) == 4
        assert doc["dendrogram"]["leaves"] == [1, 2, 3, 4]


class TestValidate:
    def test_clean_file(self, capsys):
        code, stdout, _ = run(capsys, "validate", "--input", data_path("boil_water.csv"))
        assert code == 0
        assert "ok (4 concepts)" in stdout

    def test_violations_exit_one(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        header = (
            "concept_id,concept_name,instance_id,part,organ,effect,"
            "phenomenon,input,state_change,action"
        )
        bad.write_text(header + "\n")
        code, stdout, _ = run(capsys, "validate", "--input", str(bad))
        assert code == 1
        assert "empty-space" in stdout

    def test_warnings_still_pass(self, capsys, tmp_path):
        partial = tmp_path / "partial.csv"
        header = (
            "concept_id,concept_name,instance_id,part,organ,effect,"
            "phenomenon,input,state_change,action"
        )
        partial.write_text(header + "\n1,kettle,1,,,,,,,boils water\n2,pot,1,,,,,,,heats water\n")
        code, stdout, _ = run(capsys, "validate", "--input", str(partial))
        assert code == 0
        assert "warning" in stdout


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        assert run_cli(["transmogrify"]) == 2

    def test_missing_required_flag(self, capsys):
        assert run_cli(["assess"]) == 2

    def test_bad_choice(self, capsys):
        assert run_cli(["testcase", "--case", "III", "--out", "x.csv"]) == 2
