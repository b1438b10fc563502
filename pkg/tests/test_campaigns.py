import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

import pytest
from pydantic import ValidationError

from app.extremal import Family, gen_one_to_one_sharp
from harness.campaigns import run_all_sharpness, run_sharpness_check, run_theorem_check
from harness.io import emit_report
from harness.models import CampaignConfig, Outcome, TheoremId


def config(**overrides) -> CampaignConfig:
    values = {"theorem": "main1", "n_min": 3, "n_max": 4, "mode": "random", "samples": 8, "seed": 11}
    values.update(overrides)
    return CampaignConfig(**values)


class TestCampaignConfig:

    def test_random_mode_needs_seed(self):
        with pytest.raises(ValidationError, match="seed"):
            CampaignConfig(theorem="main1", n_min=3, n_max=5, mode="random")

    def test_empty_range(self):
        with pytest.raises(ValidationError):
            config(n_min=6, n_max=5)

    def test_positive_offset_is_rejected(self):
        with pytest.raises(ValidationError):
            config(threshold_offset=1)

    def test_exhaustive_order_cap(self):
        with pytest.raises(ValueError, match="exhaustive"):
            run_theorem_check(config(mode="exhaustive", n_max=9))


class TestTheoremChecks:

    def test_hamiltonian_connectedness_exhaustive(self):
        """k = 1, every digraph with the degree floor and every (s, t) at orders 3 and 4."""
        report = run_theorem_check(config(mode="exhaustive", seed=None))
        assert report.summary.instances == 18
        assert report.summary.failures == 0
        assert report.passed

    def test_unpaired_random(self):
        report = run_theorem_check(config(n_min=6, n_max=9, k_min=2, k_max=3))
        assert report.summary.instances == 8 * 5
        assert report.failures == []

    def test_tight_random(self):
        report = run_theorem_check(config(theorem="main2-tight", n_min=4, n_max=8, k_min=2, k_max=4))
        assert report.summary.instances == 8 * 3
        assert report.passed

    def test_balanced_bipartite(self):
        """Every (S,T) of K<->m,m is covered at k = m and refuted below it."""
        report = run_theorem_check(config(theorem="main2-bipartite", mode="exhaustive", seed=None,
                                          n_min=4, n_max=6, k_min=2, k_max=3))
        assert report.passed
        assert report.summary.refuted == 3
        assert report.summary.accepted == 6 + 20

    def test_paired_two_random(self):
        report = run_theorem_check(config(theorem="2t2", n_min=5, n_max=8))
        assert report.summary.instances == 8 * 4
        assert report.passed

    def test_one_to_many_random(self):
        report = run_theorem_check(config(theorem="main3", n_min=6, n_max=8, k_min=2, k_max=2))
        assert report.passed

    def test_one_to_one_random(self):
        report = run_theorem_check(config(theorem="main4", n_min=3, n_max=7, k_min=2, k_max=4))
        assert report.passed

    def test_oracle_cross_check(self):
        report = run_theorem_check(config(theorem="oracle", mode="exhaustive", seed=None,
                                          n_min=2, n_max=3, k_min=1, k_max=2))
        assert report.passed
        assert report.summary.refuted > 0
        assert report.summary.accepted > 0


class TestLoweredThreshold:

    def test_extremal_witness_is_reported_as_failure(self):
        report = run_theorem_check(config(theorem="main4", n_min=5, n_max=5, k_min=2, k_max=2,
                                          samples=2, threshold_offset=-1))
        assert "05/02/extremal" in report.failures

        record = next(record for record in report.records if record.key == "05/02/extremal")
        assert record.method == "exact"
        assert record.counterexample.graph == gen_one_to_one_sharp(5, 2).digraph.to_dict()


class TestDeterminism:

    def test_same_seed_same_report(self):
        first = emit_report(run_theorem_check(config(theorem="main4", n_min=4, n_max=6, k_min=2, k_max=3)))
        second = emit_report(run_theorem_check(config(theorem="main4", n_min=4, n_max=6, k_min=2, k_max=3)))
        assert first == second

    def test_worker_count_does_not_change_the_report(self):
        serial = emit_report(run_theorem_check(config(theorem="main4", n_min=4, n_max=5, k_min=2, k_max=2)))
        parallel = emit_report(run_theorem_check(config(theorem="main4", n_min=4, n_max=5, k_min=2, k_max=2,
                                                        n_jobs=2, output="ignored.json")))
        assert serial == parallel

    def test_timings_are_opt_in(self):
        quiet = run_theorem_check(config())
        assert all(record.elapsed_ms is None for record in quiet.records)
        timed = run_theorem_check(config(record_timings=True))
        assert all(record.elapsed_ms is not None for record in timed.records)

    def test_truncation_is_reported(self):
        report = run_theorem_check(config(mode="exhaustive", seed=None, max_instances=5))
        assert report.summary.instances == 5
        assert report.summary.truncated


class TestSharpness:

    @pytest.mark.parametrize("family", [
        Family.TIGHT_SHARP_ODD_K,
        Family.TIGHT_SHARP_EVEN_K,
        Family.PAIRED2_FIGURE1,
        Family.ONE_TO_MANY_SHARP_ODD,
        Family.ONE_TO_MANY_SHARP_EVEN,
        Family.ONE_TO_ONE_SHARP_ODD,
        Family.ONE_TO_ONE_SHARP_EVEN,
    ])
    def test_both_sides(self, family):
        report = run_sharpness_check(family)
        outcomes = {record.key: record.outcome for record in report.records}
        assert outcomes == {
            "1-claim": Outcome.ACCEPTED,
            "2-refutation": Outcome.REFUTED,
            "3-hypothesis-side": Outcome.ACCEPTED,
        }

    @pytest.mark.parametrize("family", [Family.ONE_TO_MANY_SHARP_ODD, Family.ONE_TO_MANY_SHARP_EVEN])
    def test_one_to_many_hypothesis_side_is_constructive(self, family):
        """Defaults sit in n >= 3k, so the raised digraph goes to the proof-following solver."""
        report = run_sharpness_check(family)
        side = next(record for record in report.records if record.key == "3-hypothesis-side")
        assert side.method == "constructive"
        assert side.outcome == Outcome.ACCEPTED
        assert report.params["n"] >= 3 * report.params["k"]

    def test_odd_one_to_many_below_three_k_falls_back_to_exact(self):
        report = run_sharpness_check(Family.ONE_TO_MANY_SHARP_ODD, n=5, k=2)
        side = next(record for record in report.records if record.key == "3-hypothesis-side")
        assert side.method == "exact"
        assert report.passed

    def test_ore_witness_records_m(self):
        assert run_sharpness_check(Family.PAIRED2_FIGURE1).params == {"n": 9, "k": 2, "m": 3}

    @pytest.mark.slow
    def test_every_family(self):
        assert all(report.passed for report in run_all_sharpness())
