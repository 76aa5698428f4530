"""Grid sweeps over feed scenarios: power-transfer tables, convergence
with surface size, and exhaustive scans for the best feeder distance."""

import csv
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import make_center_feed, make_end_feed
from .coupling import build_T
from .modes import (svd_modes, mode_metrics, power_transfer, nonpem_vector,
                    ModeMetrics)
from .patterns import ris_pattern, ris_excitation, sidelobe_level

OBJECTIVES = ("max_power", "min_sll", "min_profile_variation")


@dataclass(frozen=True)
class SweepRecord:
    """Mode metrics for one (scenario, beam) grid point."""

    n_a: int
    n_p: int
    f: float
    feed: str
    tilted: bool
    beam: str
    metrics: ModeMetrics
    sidelobe_db: Optional[float] = None


def _make_scenario(n_a, n_p, f, feed_style, tilted):
    if feed_style == "center":
        return make_center_feed(n_a, n_p, f)
    return make_end_feed(n_a, n_p, f, tilted)


def analyze_point(n_a, n_p, f, feed_style, tilted=False, beam="pem"):
    """Mode analysis plus metrics for one grid point."""
    scenario = _make_scenario(n_a, n_p, f, feed_style, tilted)
    T = build_T(scenario)
    modes = svd_modes(T)
    metrics = mode_metrics(modes, scenario)
    return scenario, T, modes, metrics


def run_grid(n_a, n_p_list, f_list, feed_style, tilted=False, beam="pem"):
    """Evaluate the Cartesian (n_p, f) grid; records sorted by (n_p, f)."""
    if not n_p_list or not f_list:
        raise ValueError("n_p_list and f_list must be non-empty")
    records = []
    for n_p in n_p_list:
        for f in f_list:
            try:
                _, _, _, metrics = analyze_point(n_a, n_p, f, feed_style,
                                                 tilted, beam)
            except Exception as exc:
                raise RuntimeError(
                    f"grid point n_p={n_p} f={f} failed: {exc}") from exc
            records.append(SweepRecord(n_a=n_a, n_p=n_p, f=f,
                                       feed=feed_style, tilted=tilted,
                                       beam=beam, metrics=metrics))
    records.sort(key=lambda rec: (rec.n_p, rec.f, rec.feed))
    return records


def convergence_study(n_a, f, n_p_list):
    """Total eigenmode power (dB) vs surface size, center feed."""
    if not n_p_list:
        raise ValueError("n_p_list must be non-empty")
    out = []
    for n_p in n_p_list:
        _, _, _, metrics = analyze_point(n_a, n_p, f, "center")
        out.append((n_p, metrics.sum_db))
    return out


def _beam_for(modes, beam):
    if beam == "pem":
        return modes.beam(0)
    if beam == "nonpem":
        return nonpem_vector(modes.beam(0))
    raise ValueError(f"unknown beam {beam!r}")


def optimize_f(n_a, n_p, feed_style, tilted, beam, f_values,
               objective="min_sll", grid_step_deg=None):
    """Exhaustive scan of feeder distances under one objective.

    Returns (best_f, trace) where trace is a list of (f, objective value)
    in scan order. Grid points where the objective is undefined (e.g. a
    pattern without sidelobes) are skipped. Ties go to the smaller f.
    """
    f_values = list(f_values)
    if not f_values:
        raise ValueError("f range must be non-empty")
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    angles = None
    if grid_step_deg is not None:
        from .patterns import default_grid
        angles = default_grid(grid_step_deg)
    best_f, best_val = None, None
    trace = []
    for f in sorted(f_values):
        scenario, T, modes, _ = analyze_point(n_a, n_p, f, feed_style, tilted,
                                              beam)
        b = _beam_for(modes, beam)
        if objective == "max_power":
            val = power_transfer(T, b)
            better = best_val is None or val > best_val
        elif objective == "min_sll":
            sll = sidelobe_level(ris_pattern(T, b, angles))
            if sll is None:
                trace.append((f, None))
                continue
            val = sll
            better = best_val is None or val < best_val
        else:
            mags = ris_excitation(T, b).magnitudes
            val = float(np.std(mags) / np.mean(mags))
            better = best_val is None or val < best_val
        trace.append((f, val))
        if better:
            best_f, best_val = f, val
    if best_f is None:
        raise RuntimeError("objective undefined at every grid point")
    return best_f, trace


def write_table_csv(records, path):
    """Emit sweep records in the fixed table layout, 6 decimal places."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sl_no", "n_a", "n_p", "f", "feed", "beam",
                    "sigma1_db", "sigma2_db", "sigma3_db", "sigma4_db",
                    "sum_db", "cond", "l_iso_db", "f_over_d"])
        for i, rec in enumerate(records, start=1):
            m = rec.metrics
            sig = list(m.sigma_sq_db) + [float("nan")] * (4 - rec.n_a)
            w.writerow([i, rec.n_a, rec.n_p, f"{rec.f:g}", rec.feed,
                        rec.beam]
                       + [f"{s:.6f}" for s in sig[:4]]
                       + [f"{m.sum_db:.6f}", f"{m.cond:.6f}",
                          f"{m.l_iso_db:.6f}", f"{m.f_over_d:.6f}"])


def write_trace_csv(trace, best_f, objective, path):
    """Emit an optimization trace for audit."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["f", objective, "is_best"])
        for f, val in trace:
            w.writerow([f"{f:g}",
                        "" if val is None else f"{val:.9e}",
                        int(f == best_f)])
