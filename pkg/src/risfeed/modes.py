"""Eigenmode analysis of the propagation matrix.

The SVD is obtained from the small Hermitian Gram matrix G = T^H T
(feeder side, typically 4x4) with a cyclic complex Jacobi eigensolver:
eigenvalues of G are the squared singular values, eigenvectors are the
right singular vectors, and left vectors follow as T v / sigma. Global
phase of each right vector is fixed so its largest-magnitude entry is
real and positive (lowest index on ties), which makes every downstream
file reproducible bit for bit.
"""

import json
from dataclasses import dataclass

import numpy as np

from .geometry import Scenario
from .coupling import PropagationMatrix

JACOBI_THRESHOLD = 1e-14   # times ||G||_F
JACOBI_MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    """Jacobi iteration failed to reach the off-diagonal threshold."""


def jacobi_eigh(G, threshold=JACOBI_THRESHOLD, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (w, V) with G @ V = V @ diag(w), unsorted. The sweep stops
    once every off-diagonal magnitude falls below threshold * ||G||_F.
    """
    G = np.asarray(G, dtype=complex)
    n = G.shape[0]
    if G.shape != (n, n):
        raise ValueError("matrix must be square")
    if np.max(np.abs(G - G.conj().T)) > 1e-12 * max(1.0, np.linalg.norm(G)):
        raise ValueError("matrix must be Hermitian")
    A = G.copy()
    V = np.eye(n, dtype=complex)
    stop = threshold * np.linalg.norm(G)
    if n == 1:
        return A.real.diagonal().copy(), V
    off = np.max(np.abs(A - np.diag(A.diagonal())))
    if off <= stop:
        return A.diagonal().real.copy(), V
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = A[p, q]
                off = max(off, abs(g))
                if abs(g) <= stop:
                    continue
                # phase rotation makes the pivot real, then a classical
                # symmetric Jacobi rotation annihilates it
                phase = g / abs(g)
                tau = (A[q, q].real - A[p, p].real) / (2.0 * abs(g))
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau))
                if tau == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                J = np.eye(n, dtype=complex)
                J[p, p] = c
                J[p, q] = s * phase
                J[q, p] = -s * phase.conjugate()
                J[q, q] = c
                A = J.conj().T @ A @ J
                V = V @ J
        if off <= stop:
            return A.diagonal().real.copy(), V
    raise ConvergenceError(
        f"off-diagonal {off:.3e} above {stop:.3e} after "
        f"{max_sweeps} sweeps")


@dataclass(frozen=True)
class BeamVector:
    """Unit-norm feeder excitation."""

    weights: np.ndarray
    label: str = "custom"   # pem | nonpem | custom

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        object.__setattr__(self, "weights", w)
        if abs(np.linalg.norm(w) - 1.0) > 1e-12:
            raise ValueError("beam vector must be unit norm")


@dataclass(frozen=True)
class ModeAnalysis:
    """Full SVD of the propagation matrix.

    sigma:         (N_a,) singular values, descending.
    right_vectors: (N_a, N_a), column i is v_i.
    left_vectors:  (N_p, N_a), column i is T v_i / sigma_i.
    """

    sigma: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray

    def beam(self, i=0) -> BeamVector:
        """The i-th eigenmode as a feeder excitation (0 = principal)."""
        label = "pem" if i == 0 else "custom"
        return BeamVector(self.right_vectors[:, i].copy(), label)


@dataclass(frozen=True)
class ModeMetrics:
    """Scalar summary of one mode analysis."""

    sigma_sq_db: tuple
    sum_db: float
    cond: float
    l_iso_db: float
    f_over_d: float


def _fix_phase(v):
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    if pivot != 0:
        v = v * (pivot.conjugate() / abs(pivot))
    v[k] = abs(v[k])    # force exactly real positive
    return v


def svd_modes(T: PropagationMatrix) -> ModeAnalysis:
    """Singular values and vectors of T via the Gram-matrix route."""
    M = T.entries
    if M.size == 0:
        raise ValueError("empty propagation matrix")
    G = M.conj().T @ M
    w, V = jacobi_eigh(G)
    order = np.argsort(-w, kind="stable")
    w = np.maximum(w[order], 0.0)
    V = V[:, order]
    sigma = np.sqrt(w)
    right = np.empty_like(V)
    left = np.zeros((M.shape[0], M.shape[1]), dtype=complex)
    for i in range(V.shape[1]):
        v = _fix_phase(V[:, i].copy())
        right[:, i] = v
        if sigma[i] > 0:
            left[:, i] = (M @ v) / sigma[i]
    return ModeAnalysis(sigma=sigma, right_vectors=right, left_vectors=left)


def power_transfer(T: PropagationMatrix, b: BeamVector) -> float:
    """Power delivered to the surface by a unit-power feeder excitation."""
    if b.weights.shape[0] != T.n_a:
        raise ValueError(
            f"beam length {b.weights.shape[0]} != feeder size {T.n_a}")
    return float(np.linalg.norm(T.entries @ b.weights) ** 2)


def nonpem_vector(v1: BeamVector) -> BeamVector:
    """Element-wise magnitudes of a beam: phases removed, norm preserved."""
    return BeamVector(np.abs(v1.weights).astype(complex), "nonpem")


def isotropic_loss_db(f) -> float:
    """Free-space spreading loss between isotropic points at distance f."""
    if f <= 0:
        raise ValueError("f must be positive")
    return -10.0 * np.log10((2.0 * np.pi * f) ** 2)


def rayleigh_f(n_p, spacing=1.0) -> float:
    """Distance at which f/D reaches the far-field boundary f/D = D."""
    if n_p < 1:
        raise ValueError("n_p must be >= 1")
    return (n_p * spacing) ** 2


def mode_metrics(modes: ModeAnalysis, scenario: Scenario) -> ModeMetrics:
    """dB powers, their sum, condition number, and geometry ratios."""
    sig_sq = modes.sigma ** 2
    with np.errstate(divide="ignore"):
        sig_db = tuple(10.0 * np.log10(sig_sq))
    sum_db = 10.0 * np.log10(sig_sq.sum())
    smallest = modes.sigma[-1]
    cond = float(modes.sigma[0] / smallest) if smallest > 0 else float("inf")
    return ModeMetrics(sigma_sq_db=sig_db,
                       sum_db=float(sum_db),
                       cond=cond,
                       l_iso_db=isotropic_loss_db(scenario.f),
                       f_over_d=scenario.f_over_d)


def mode_report(modes: ModeAnalysis, metrics: ModeMetrics,
                scenario: Scenario) -> dict:
    """JSON-ready report of one scenario's mode analysis."""
    v1 = modes.right_vectors[:, 0]
    return {
        "scenario": {
            "n_a": scenario.n_a,
            "n_p": scenario.n_p,
            "f": scenario.f,
            "feed": scenario.feed_style,
            "tilted": scenario.tilted,
        },
        "sigma_sq_db": list(metrics.sigma_sq_db),
        "sum_db": metrics.sum_db,
        "cond": metrics.cond,
        "l_iso_db": metrics.l_iso_db,
        "f_over_d": metrics.f_over_d,
        "v1_re": v1.real.tolist(),
        "v1_im": v1.imag.tolist(),
    }


def write_mode_report(report: dict, path):
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
