"""Element patterns and the feeder-to-surface propagation matrix.

Entry (n, m) couples feeder element m to surface element n through the
Friis magnitude with both element gains, plus the distance phase:

    T[n, m] = sqrt(E(theta) * E(phi)) * exp(j*pi*r) / (2*pi*r)

with r in lambda/2 units, theta the departure angle from the feeder
element boresight and phi the arrival angle from the surface element
boresight.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .geometry import Scenario


def element_gain(theta):
    """Patch-element power gain 4*cos^2(theta), zero in the rear hemisphere.

    Peak gain is 4 (6.02 dBi); half power at +/-45 degrees. Accepts
    scalars or arrays of angles in radians.
    """
    theta = np.asarray(theta, dtype=float)
    cos_t = np.cos(theta)
    gain = np.where(np.abs(np.remainder(theta + np.pi, 2 * np.pi) - np.pi)
                    < np.pi / 2, 4.0 * cos_t * cos_t, 0.0)
    return gain if gain.ndim else float(gain)


@dataclass(frozen=True)
class CouplingTerms:
    """Geometry of one feeder-surface element pair."""

    r: float       # distance, lambda/2 units
    theta: float   # departure angle from feeder element boresight, rad
    phi: float     # arrival angle from surface element boresight, rad


@dataclass(frozen=True)
class PropagationMatrix:
    """Complex coupling matrix, surface elements x feeder elements."""

    entries: np.ndarray   # (N_p, N_a)
    scenario: Scenario

    @property
    def n_p(self) -> int:
        return self.entries.shape[0]

    @property
    def n_a(self) -> int:
        return self.entries.shape[1]


def _pair_geometry(scenario):
    """Distances and unsigned angles for every element pair.

    Returns (r, theta, phi), each shaped (N_p, N_a).
    """
    apos = scenario.amaf.positions      # (N_a, 2)
    rpos = scenario.ris.positions       # (N_p, 2)
    d = rpos[:, None, :] - apos[None, :, :]     # feeder -> surface
    r = np.linalg.norm(d, axis=2)
    if np.any(r == 0.0):
        n, m = np.argwhere(r == 0.0)[0]
        raise ValueError(f"coincident elements: surface {n}, feeder {m}")
    cos_theta = (d @ scenario.amaf.boresight) / r
    cos_phi = (-d @ scenario.ris.boresight) / r
    theta = np.arccos(np.clip(cos_theta, -1.0, 1.0))
    phi = np.arccos(np.clip(cos_phi, -1.0, 1.0))
    return r, theta, phi


def coupling_terms(amaf_element, ris_element, scenario):
    """Distance and angles between one feeder and one surface element."""
    if not 0 <= amaf_element < scenario.n_a:
        raise IndexError(f"feeder element {amaf_element} out of range")
    if not 0 <= ris_element < scenario.n_p:
        raise IndexError(f"surface element {ris_element} out of range")
    r, theta, phi = _pair_geometry(scenario)
    n, m = ris_element, amaf_element
    return CouplingTerms(r=float(r[n, m]), theta=float(theta[n, m]),
                         phi=float(phi[n, m]))


def build_T(scenario):
    """Assemble the full propagation matrix for a scenario."""
    r, theta, phi = _pair_geometry(scenario)
    amp = np.sqrt(element_gain(theta) * element_gain(phi)) / (2.0 * np.pi * r)
    entries = amp * np.exp(1j * np.pi * r)
    return PropagationMatrix(entries=entries, scenario=scenario)


def write_matrix_csv(T, path):
    """Dump matrix entries with their pair geometry, for regression use."""
    r, theta, phi = _pair_geometry(T.scenario)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "m", "re", "im", "r", "theta_deg", "phi_deg"])
        for n in range(T.n_p):
            for m in range(T.n_a):
                w.writerow([n, m,
                            f"{T.entries[n, m].real:.12e}",
                            f"{T.entries[n, m].imag:.12e}",
                            f"{r[n, m]:.12e}",
                            f"{np.degrees(theta[n, m]):.9f}",
                            f"{np.degrees(phi[n, m]):.9f}"])
