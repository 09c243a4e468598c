"""Tests for the experiment drivers: sweeps, tables, and the conjecture search."""

import dataclasses

import numpy as np
import pytest

from tracebound.experiments import (
    conjecture_candidate,
    conjecture_margin,
    examples_table,
    find_conjecture_counterexample,
    mixed_pair,
    record_from_report,
    record_violations,
    run_figure1,
    verify_sweep,
)
from tracebound.bounds import build_report
from tracebound.sampling import RngStream
from tracebound.states import projector_state


class TestRunFigure1:
    def test_pinned_run_is_deterministic(self):
        recs_a, sum_a = run_figure1(4, 10, seed=3)
        recs_b, sum_b = run_figure1(4, 10, seed=3)
        assert recs_a == recs_b
        assert sum_a.violations == 0
        assert sum_a.seed == 3 and sum_a.n_samples == 10

    def test_worker_count_does_not_change_records(self):
        recs_a, _ = run_figure1(8, 40, seed=5, workers=1)
        recs_b, _ = run_figure1(8, 40, seed=5, workers=4)
        assert recs_a == recs_b

    def test_sorted_by_reduced_rank_then_index(self):
        recs, _ = run_figure1(8, 60, seed=1)
        keys = [(r.reduced_rank, r.index) for r in recs]
        assert keys == sorted(keys)

    def test_zero_violations_and_chain(self):
        recs, summary = run_figure1(16, 200, seed=2)
        assert summary.violations == 0
        for rec in recs:
            assert 0.5 - 1e-9 <= rec.q_ratio <= min(rec.reduced_rank, rec.d / 4) + 1e-9
        assert summary.min_q >= 0.5 - 1e-9
        assert summary.max_q_over_r <= 1.0 + 1e-9

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            run_figure1(3, 10)
        with pytest.raises(ValueError):
            run_figure1(128, 10)
        with pytest.raises(ValueError):
            run_figure1(8, 0)
        with pytest.raises(ValueError):
            run_figure1(8, 10, workers=0)


class TestRecordViolations:
    def _clean_record(self):
        rho = projector_state(8, 2, offset=0)
        sigma = projector_state(8, 3, offset=2)
        return record_from_report(0, build_report(rho, sigma))

    def test_clean_record_passes(self):
        assert record_violations(self._clean_record()) == []

    def test_corrupted_bound_is_reported(self):
        rec = dataclasses.replace(self._clean_record(),
                                  upper_reduced_rank=self._clean_record().upper_reduced_rank - 1.0)
        assert any("reduced-rank" in msg for msg in record_violations(rec))

    def test_corrupted_flag_is_reported(self):
        rec = dataclasses.replace(self._clean_record(), weyl_ok=False)
        assert any("Weyl" in msg for msg in record_violations(rec))

    def test_equal_states_record_has_no_violations(self):
        rho = projector_state(4, 2)
        rec = record_from_report(0, build_report(rho, rho))
        assert rec.q_ratio is None
        assert record_violations(rec) == []


class TestExamplesTable:
    def test_row_count_and_residuals(self):
        d = 8
        rows = examples_table(d)
        assert len(rows) == d + d * (d - 1) // 2
        for row in rows:
            if row.residual is not None:
                assert row.residual <= 1e-10, (row.family, row.r, row.s)

    def test_projector_vs_mixed_values(self):
        rows = [r for r in examples_table(16) if r.family == "projector_vs_mixed"]
        first = rows[0]
        assert first.r == 1
        assert first.trace_distance == pytest.approx(15 / 16, abs=1e-12)
        assert first.hs_distance == pytest.approx(15 / 16, abs=1e-12)
        assert first.expected_q == pytest.approx(0.9375, abs=1e-15)

    def test_orthogonal_pure_row(self):
        rows = [r for r in examples_table(8)
                if r.family == "orthogonal_projectors" and r.r == 1 and r.s == 1]
        assert len(rows) == 1
        assert rows[0].hs_distance == pytest.approx(2.0, abs=1e-12)
        assert rows[0].q_ratio == pytest.approx(0.5, abs=1e-12)

    def test_degenerate_row_is_skipped_with_reason(self):
        rows = [r for r in examples_table(8) if r.family == "projector_vs_mixed" and r.r == 8]
        assert len(rows) == 1
        assert rows[0].note == "states equal"
        assert rows[0].trace_distance is None and rows[0].residual is None

    def test_rejects_small_dimension(self):
        with pytest.raises(ValueError):
            examples_table(3)


class TestConjectureSearch:
    def test_finds_violation_at_d8(self):
        res = find_conjecture_counterexample(8, 1000, seed=0)
        assert res.found
        assert res.margin > 0
        assert res.kind in ("structured", "ensemble")

    def test_found_pair_recomputes_from_coordinates(self):
        res = find_conjecture_counterexample(8, 1000, seed=0)
        rho, sigma, kind = conjecture_candidate(res.d, res.seed, res.index)
        assert kind == res.kind
        assert conjecture_margin(rho, sigma) == res.margin

        # independent recomputation: singular values for D, direct matrix
        # algebra for HS and purity
        delta = rho.matrix - sigma.matrix
        td = 0.5 * float(np.sum(np.linalg.svd(delta, compute_uv=False)))
        hs = float(np.real(np.trace(delta @ delta)))
        pur = float(np.real(np.trace(rho.matrix @ rho.matrix)))
        assert td * td - hs / pur > 0

    def test_skips_pure_rho(self):
        for index in range(40):
            rho, _, _ = conjecture_candidate(8, 0, index)
            assert rho.rank() >= 2

    def test_exhausted_single_candidate(self):
        # candidate (d=8, seed=0, index=0) is pinned non-violating
        res = find_conjecture_counterexample(8, 1, seed=0)
        assert not res.found
        assert res.exhausted
        assert res.candidates_tried == 1
        assert res.margin is None and res.index is None

    def test_impossible_at_low_dimension(self):
        # for d <= 4 the chain Q <= d/4 <= 1 <= 1/purity makes violations
        # impossible, so the search must exhaust honestly
        res = find_conjecture_counterexample(4, 200, seed=0)
        assert res.exhausted

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            find_conjecture_counterexample(1, 10)
        with pytest.raises(ValueError):
            find_conjecture_counterexample(8, 0)


class TestVerifySweep:
    def test_small_sweep_is_clean(self):
        summary = verify_sweep([2, 4, 8], 50, seed=11)
        assert summary.violations == 0
        assert summary.failures == ()
        assert summary.n_samples == 150

    def test_min_q_and_max_ratio_ranges(self):
        summary = verify_sweep([8], 100, seed=13)
        assert summary.min_q >= 0.5 - 1e-9
        assert summary.max_q_over_r <= 1.0 + 1e-9

    def test_mixed_pair_covers_kinds(self):
        ranks = set()
        for i in range(10):
            rho, sigma = mixed_pair(8, i, RngStream(17, i))
            ranks.add((rho.rank() == 1, sigma.rank() == 1))
        assert len(ranks) >= 2  # pure and mixed cases both appear

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            verify_sweep([], 10)
        with pytest.raises(ValueError):
            verify_sweep([1], 10)
        with pytest.raises(ValueError):
            verify_sweep([4], 0)
