import json
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

import pytest
from click.testing import CliRunner

from app.digraph import Digraph, complete_digraph
from harness.cli import cli
from harness.io import emit_digraph, read_report

runner = CliRunner()


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(emit_digraph(complete_digraph(3)))
    return str(path)


@pytest.fixture
def single_arc_file(tmp_path):
    path = tmp_path / "arc.json"
    path.write_text(emit_digraph(Digraph(3, frozenset({(0, 1)}))))
    return str(path)


class TestSolve:

    def test_constructive_one_to_one(self, k3_file):
        result = runner.invoke(cli, ["solve", "--kind", "one-to-one", "--graph", k3_file,
                                     "--S", "0", "--T", "2", "--k", "2"])
        assert result.exit_code == 0
        assert json.loads(result.output) == {"paths": [[0, 1, 2], [0, 2]]}

    def test_exact_without_cover_exits_1(self, single_arc_file):
        result = runner.invoke(cli, ["solve", "--kind", "unpaired-mtm", "--method", "exact",
                                     "--graph", single_arc_file, "--S", "0", "--T", "2"])
        assert result.exit_code == 1
        assert "no unpaired-mtm cover" in result.output

    def test_failed_hypothesis_is_a_usage_error(self, single_arc_file):
        result = runner.invoke(cli, ["solve", "--kind", "unpaired-mtm", "--graph", single_arc_file,
                                     "--S", "0", "--T", "2"])
        assert result.exit_code == 2
        assert "min semi-degree" in result.output

    def test_dot_output(self, k3_file):
        result = runner.invoke(cli, ["solve", "--kind", "one-to-one", "--graph", k3_file,
                                     "--S", "0", "--T", "2", "--k", "2", "--dot"])
        assert result.exit_code == 0
        assert "0 -> 1 [style=bold];" in result.output

    def test_malformed_graph(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 2, "arcs": [[0, 0]]}')
        result = runner.invoke(cli, ["degrees", "--graph", str(path)])
        assert result.exit_code == 2
        assert "loop" in result.output


class TestVerify:

    def write(self, tmp_path, name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    def test_accept_and_reject(self, tmp_path, k3_file):
        spec = self.write(tmp_path, "spec.json", {"kind": "one-to-one", "k": 2, "S": [0], "T": [2]})
        good = self.write(tmp_path, "good.json", {"paths": [[0, 1, 2], [0, 2]]})
        bad = self.write(tmp_path, "bad.json", {"paths": [[0, 2], [0, 2]]})

        accepted = runner.invoke(cli, ["verify", "--graph", k3_file, "--spec", spec, "--cover", good])
        assert accepted.exit_code == 0
        assert json.loads(accepted.output) == {"accepted": True}

        rejected = runner.invoke(cli, ["verify", "--graph", k3_file, "--spec", spec, "--cover", bad])
        assert rejected.exit_code == 1
        assert json.loads(rejected.output)["reason"] == "Overlap"

    def test_invalid_spec_is_a_usage_error(self, tmp_path, k3_file):
        spec = self.write(tmp_path, "spec.json", {"kind": "unpaired-mtm", "k": 1, "S": [0], "T": [0]})
        cover = self.write(tmp_path, "cover.json", {"paths": [[0]]})

        result = runner.invoke(cli, ["verify", "--graph", k3_file, "--spec", spec, "--cover", cover])
        assert result.exit_code == 2
        assert "intersect" in result.output

    def test_empty_source_list_is_a_usage_error(self, tmp_path, k3_file):
        spec = self.write(tmp_path, "spec.json", {"kind": "one-to-one", "k": 1, "S": [], "T": [2]})
        cover = self.write(tmp_path, "cover.json", {"paths": [[0, 1, 2]]})

        result = runner.invoke(cli, ["verify", "--graph", k3_file, "--spec", spec, "--cover", cover])
        assert result.exit_code == 2
        assert "S: List should have at least 1 item" in result.output


class TestDegreesAndCoverability:

    def test_degrees_of_complete_digraph(self, k3_file):
        result = runner.invoke(cli, ["degrees", "--graph", k3_file])
        assert result.exit_code == 0
        summary = json.loads(result.output)
        assert summary["delta0"] == 2
        assert summary["ore_min"] == "inf"

    def test_coverable(self, k3_file):
        result = runner.invoke(cli, ["coverable", "--graph", k3_file, "--kind", "one-to-one", "--k", "2"])
        assert result.exit_code == 0
        assert json.loads(result.output)["status"] == "proven-true"


class TestGenExtremal:

    def test_prints_graph_spec_and_dot(self):
        result = runner.invoke(cli, ["gen-extremal", "--family", "one-to-one-sharp-odd", "--n", "5", "--k", "2"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert json.loads(lines[0])["n"] == 5
        assert json.loads(lines[1]) == {"S": [0], "T": [3], "k": 2, "kind": "one-to-one"}
        assert lines[2] == "digraph {"

    def test_writes_files(self, tmp_path):
        prefix = tmp_path / "fig1"
        result = runner.invoke(cli, ["gen-extremal", "--family", "paired2-figure1", "--out", str(prefix)])
        assert result.exit_code == 0
        assert json.loads((tmp_path / "fig1.graph.json").read_text())["n"] == 9
        assert (tmp_path / "fig1.dot").exists()

    def test_out_of_range(self):
        result = runner.invoke(cli, ["gen-extremal", "--family", "unpaired-sharp-even", "--n", "4", "--k", "2"])
        assert result.exit_code == 2


class TestCampaignCommands:

    def test_check_theorem_writes_report(self, tmp_path):
        out = tmp_path / "main1.json"
        result = runner.invoke(cli, ["check-theorem", "--id", "main1", "--mode", "exhaustive",
                                     "--n-min", "3", "--n-max", "4", "--out", str(out)])
        assert result.exit_code == 0
        report = read_report(out)
        assert report.summary.instances == 18
        assert report.config.theorem.value == "main1"

    def test_check_theorem_needs_seed_in_random_mode(self):
        result = runner.invoke(cli, ["check-theorem", "--id", "main4", "--n-min", "4", "--n-max", "5"])
        assert result.exit_code == 2

    def test_check_sharpness_family(self):
        result = runner.invoke(cli, ["check-sharpness", "--family", "one-to-one-sharp-odd"])
        assert result.exit_code == 0
        assert "one-to-one-sharp-odd" in result.output

    def test_check_sharpness_needs_one_selector(self):
        assert runner.invoke(cli, ["check-sharpness"]).exit_code == 2
