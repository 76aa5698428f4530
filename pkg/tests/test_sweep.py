import filecmp

import numpy as np
import pytest

from risfeed.sweep import (run_grid, convergence_study, optimize_f,
                           write_table_csv, write_trace_csv, analyze_point)


class TestRunGrid:
    def test_table_first_block(self):
        records = run_grid(4, [8], [4, 8, 40, 80, 120], "center")
        assert len(records) == 5
        expected_s1 = [-7.32, -10.34, -21.14, -26.99, -30.48]
        for rec, s1 in zip(records, expected_s1):
            assert rec.metrics.sigma_sq_db[0] == pytest.approx(s1, abs=0.05)

    def test_single_point(self):
        (rec,) = run_grid(4, [32], [8], "center")
        assert rec.metrics.sigma_sq_db[0] == pytest.approx(-10.25, abs=0.05)

    def test_sorted_by_np_then_f(self):
        records = run_grid(4, [16, 8], [8.0, 4.0], "center")
        keys = [(r.n_p, r.f) for r in records]
        assert keys == sorted(keys)

    def test_empty_lists_rejected(self):
        with pytest.raises(ValueError):
            run_grid(4, [8], [], "center")
        with pytest.raises(ValueError):
            run_grid(4, [], [8], "center")

    def test_grid_error_annotated(self):
        with pytest.raises(RuntimeError, match="f=-1"):
            run_grid(4, [8], [-1.0], "center")

    def test_csv_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_table_csv(run_grid(4, [8, 16], [4, 8], "center"), a)
        write_table_csv(run_grid(4, [8, 16], [4, 8], "center"), b)
        assert filecmp.cmp(a, b, shallow=False)
        header = a.read_text().splitlines()[0]
        assert header == ("sl_no,n_a,n_p,f,feed,beam,sigma1_db,sigma2_db,"
                          "sigma3_db,sigma4_db,sum_db,cond,l_iso_db,f_over_d")


class TestConvergenceStudy:
    def test_large_surface_limit(self):
        got = dict(convergence_study(4, 8.0, [16, 32, 64, 128]))
        assert got[16] == pytest.approx(-6.6, abs=0.05)
        assert got[32] == pytest.approx(-6.3, abs=0.05)
        assert got[64] == pytest.approx(-6.22, abs=0.05)
        assert got[128] == pytest.approx(-6.22, abs=0.05)

    def test_small_surface_values(self):
        got = dict(convergence_study(4, 8.0, [4, 8]))
        assert got[4] == pytest.approx(-10.40, abs=0.05)
        assert got[8] == pytest.approx(-7.98, abs=0.05)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            convergence_study(4, 8.0, [])


class TestDoublingBehavior:
    def test_3db_per_halving_below_fd_1(self):
        # within the f/D < 1 regime, halving f gains close to 3 dB
        pairs = [(8, 4, 8), (16, 8, 16), (32, 16, 32)]
        for n_p, f_small, f_large in pairs:
            _, _, _, m_small = analyze_point(4, n_p, f_small, "center")
            _, _, _, m_large = analyze_point(4, n_p, f_large, "center")
            gain = m_small.sigma_sq_db[0] - m_large.sigma_sq_db[0]
            assert gain == pytest.approx(3.0, abs=0.1)

    def test_6db_trend_far_field(self):
        # f/D >> 1 at N_p = 8: doubling approaches the inverse-square law
        _, _, _, m80 = analyze_point(4, 8, 80, "center")
        _, _, _, m160 = analyze_point(4, 8, 160, "center")
        drop = m160.sigma_sq_db[0] - m80.sigma_sq_db[0]
        assert -6.2 <= drop <= -5.0

    def test_fixed_fd_half_invariants(self):
        # rows at f/D = 0.5 share condition number and sum offset
        expected = {8: (3.54, 3.65), 16: (3.57, 3.67), 32: (3.58, 3.67)}
        for n_p, (cond, offset) in expected.items():
            _, _, _, mm = analyze_point(4, n_p, n_p / 2, "center")
            assert mm.cond == pytest.approx(cond, rel=0.005)
            assert mm.sum_db - mm.sigma_sq_db[0] == pytest.approx(offset,
                                                                  abs=0.05)


class TestOptimizeF:
    def test_max_power_prefers_smallest_f(self):
        best, trace = optimize_f(4, 8, "center", False, "pem",
                                 [4, 8, 16, 40, 80, 120],
                                 objective="max_power")
        assert best == 4
        assert len(trace) == 6

    def test_single_point_range(self):
        best, trace = optimize_f(4, 8, "center", False, "pem", [16.0],
                                 objective="max_power")
        assert best == 16.0
        assert trace == [(16.0, pytest.approx(trace[0][1]))]

    def test_tie_goes_to_smaller_f(self):
        best, _ = optimize_f(4, 8, "center", False, "pem", [8.0, 8.0],
                             objective="max_power")
        assert best == 8.0

    def test_min_profile_variation_runs(self):
        best, trace = optimize_f(4, 32, "end", True, "nonpem",
                                 [12.0, 16.0, 24.0],
                                 objective="min_profile_variation")
        vals = dict(trace)
        assert best == min(vals, key=vals.get)

    def test_min_sll_trace_and_regression(self):
        # frozen scan over the end-feed non-PEM family (coarse angle grid)
        best, trace = optimize_f(4, 128, "end", True, "nonpem",
                                 list(range(60, 141, 10)),
                                 objective="min_sll", grid_step_deg=0.1)
        vals = {f: v for f, v in trace if v is not None}
        assert best == min(vals, key=vals.get)
        assert best == 90

    def test_rejects_empty_range(self):
        with pytest.raises(ValueError):
            optimize_f(4, 8, "center", False, "pem", [],
                       objective="max_power")

    def test_rejects_unknown_objective(self):
        with pytest.raises(ValueError):
            optimize_f(4, 8, "center", False, "pem", [8.0],
                       objective="min_beamwidth")

    def test_trace_csv(self, tmp_path):
        best, trace = optimize_f(4, 8, "center", False, "pem", [4.0, 8.0],
                                 objective="max_power")
        path = tmp_path / "trace.csv"
        write_trace_csv(trace, best, "max_power", path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "f,max_power,is_best"
        assert lines[1].endswith(",1")      # best at the smaller f
        assert lines[2].endswith(",0")
