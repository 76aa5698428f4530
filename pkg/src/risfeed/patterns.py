"""Far-field radiation patterns and surface excitation profiles.

Pattern angles are measured from the array boresight, positive toward
the array's +axis direction. The steering vector is stored conjugated so
that its plain dot product with an excitation gives the far-field sum
consistent with the exp(+j*pi*r) propagation phase used in the coupling
matrix; a beam focused on a target therefore peaks at the target's
physical angle.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .coupling import PropagationMatrix, element_gain
from .modes import BeamVector

DEFAULT_GRID_STEP_DEG = 0.05
_POWER_FLOOR = 1e-30    # keeps dB values finite at pattern nulls


def default_grid(step_deg=DEFAULT_GRID_STEP_DEG):
    """Angle grid over [-90, +90] degrees, inclusive."""
    n = int(round(180.0 / step_deg))
    return np.linspace(-90.0, 90.0, n + 1)


@dataclass(frozen=True)
class PatternCurve:
    """Sampled power radiation pattern."""

    angles_deg: np.ndarray
    power_dbi: np.ndarray
    power_norm_db: np.ndarray
    peak_angle_deg: float
    peak_dbi: float


@dataclass(frozen=True)
class ExcitationProfile:
    """Per-element excitation magnitude across the surface (1-based)."""

    magnitudes: np.ndarray
    element_index: np.ndarray


def steering_vector(n, theta):
    """Conjugated uniform-array steering vector for angle theta (radians)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return np.exp(-1j * np.pi * np.arange(n) * np.sin(theta))


def _curve_from_power(angles_deg, power_lin):
    power_lin = np.maximum(power_lin, _POWER_FLOOR)
    power_dbi = 10.0 * np.log10(power_lin)
    k = int(np.argmax(power_dbi))
    peak = power_dbi[k]
    return PatternCurve(angles_deg=angles_deg,
                        power_dbi=power_dbi,
                        power_norm_db=power_dbi - peak,
                        peak_angle_deg=float(angles_deg[k]),
                        peak_dbi=float(peak))


def _array_pattern(weights, angles_deg):
    """|sum_k w_k exp(-j pi k sin(theta))|^2 * E(theta) per grid angle."""
    theta = np.radians(np.asarray(angles_deg, dtype=float))
    if theta.size == 0:
        raise ValueError("empty angle grid")
    k = np.arange(len(weights))
    phases = np.exp(-1j * np.pi * np.outer(np.sin(theta), k))
    af = np.abs(phases @ weights) ** 2
    return af * element_gain(theta)


def amaf_pattern(b: BeamVector, angles_deg=None) -> PatternCurve:
    """Feeder power pattern: array factor times the patch element factor."""
    if angles_deg is None:
        angles_deg = default_grid()
    power = _array_pattern(b.weights, angles_deg)
    return _curve_from_power(np.asarray(angles_deg, dtype=float), power)


def ris_excitation(T: PropagationMatrix, b: BeamVector) -> ExcitationProfile:
    """Incident magnitude on each surface element for a feeder excitation."""
    if b.weights.shape[0] != T.n_a:
        raise ValueError("beam length does not match feeder size")
    e = T.entries @ b.weights
    return ExcitationProfile(magnitudes=np.abs(e),
                             element_index=np.arange(1, T.n_p + 1))


def ris_pattern(T: PropagationMatrix, b: BeamVector, angles_deg=None,
                cophase="broadside") -> PatternCurve:
    """Surface power pattern for a feeder excitation.

    With cophase="broadside" each surface element cancels the incident
    phase, so the effective aperture vector is |T b| and the beam points
    broadside; "none" leaves the incident complex excitation untouched.
    The aperture is not renormalized: dBi values include the feeder-to-
    surface propagation loss.
    """
    if cophase not in ("broadside", "none"):
        raise ValueError(f"unknown cophase mode {cophase!r}")
    if b.weights.shape[0] != T.n_a:
        raise ValueError("beam length does not match feeder size")
    if angles_deg is None:
        angles_deg = default_grid()
    e = T.entries @ b.weights
    x = np.abs(e) if cophase == "broadside" else e
    if not np.any(np.abs(x) > 0):
        raise ValueError("all-zero surface excitation")
    power = _array_pattern(x, angles_deg)
    return _curve_from_power(np.asarray(angles_deg, dtype=float), power)


def sidelobe_level(curve: PatternCurve):
    """Highest sidelobe relative to the main peak, in dB.

    The main lobe spans the strict local minima flanking the global
    peak; the result is the largest local maximum outside it. Returns
    None when the curve has no sidelobe (monotone away from the peak).
    """
    y = curve.power_norm_db
    n = y.size
    if n < 3:
        raise ValueError("curve needs at least 3 samples")
    k = int(np.argmax(y))
    lo = k
    while lo > 0 and y[lo - 1] <= y[lo]:
        lo -= 1
    hi = k
    while hi < n - 1 and y[hi + 1] <= y[hi]:
        hi += 1
    outside = np.concatenate([y[:lo], y[hi + 1:]])
    if outside.size == 0:
        return None
    return float(outside.max())


def write_pattern_csv(curve: PatternCurve, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["angle_deg", "power_dbi", "power_norm_db"])
        for a, p, pn in zip(curve.angles_deg, curve.power_dbi,
                            curve.power_norm_db):
            w.writerow([f"{a:.6f}", f"{p:.6f}", f"{pn:.6f}"])


def write_profile_csv(profile: ExcitationProfile, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["element_index", "magnitude", "magnitude_db"])
        for i, m in zip(profile.element_index, profile.magnitudes):
            m_db = 20.0 * np.log10(max(m, 1e-300))
            w.writerow([int(i), f"{m:.12e}", f"{m_db:.6f}"])
