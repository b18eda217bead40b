"""Operational consequences of the average negativity.

Lower bound on the singlet distance, upper bounds on teleportation fidelity
and distillable entanglement, and the spectral concentration check that
separates lopsided from balanced bipartitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RATIO_PRESET",
    "CLUSTER_THRESHOLD_PRESETS",
    "BoundsReport",
    "singlet_distance_lower",
    "teleportation_fidelity_upper",
    "asymptotic_singlet_distance",
    "distillable_upper",
    "log_negativity",
    "cluster_threshold",
    "cluster_check",
    "build_bounds_report",
]

#: Conventional preset for the asymptotic ratio of the mean negativity of a
#: large Haar-random equal bipartition to the maximal one. The engine's
#: extrapolate_limit reproduces it to its quoted precision.
RATIO_PRESET = 0.72037

#: Worked dimension-threshold figures for epsilon = 0.1: a d_A x d_B split
#: concentrates only once d_B vastly exceeds these.
CLUSTER_THRESHOLD_PRESETS = {2: 200, 16: 6400}


@dataclass(frozen=True)
class BoundsReport:
    """Clamped bound values for one system size (raw values kept alongside)."""

    n_qubits: int
    mean_negativity: float
    singlet_distance_lb: float
    fidelity_ub: float
    distillable_ub_ebits: float
    log_neg_mean: float
    singlet_distance_raw: float
    fidelity_raw: float


def singlet_distance_lower(mean_neg: float, m: int, clamp: bool = True) -> float:
    """Lower bound 2 (1 - (2N + 1) / m) on the local distance to a singlet.

    m is the local dimension of the target maximally entangled state. The
    raw value goes negative for near-maximal negativity; the clamped form
    floors it at zero.
    """
    if m < 2:
        raise ValueError("singlet dimension must be at least 2")
    if mean_neg < 0:
        raise ValueError("mean negativity must be nonnegative")
    raw = 2.0 * (1.0 - (2.0 * mean_neg + 1.0) / m)
    return max(0.0, raw) if clamp else raw


def teleportation_fidelity_upper(mean_neg: float, m: int, clamp: bool = True) -> float:
    """Upper bound (2N + 1) / m on the optimal teleportation fidelity."""
    if m < 2:
        raise ValueError("singlet dimension must be at least 2")
    raw = (2.0 * mean_neg + 1.0) / m
    return min(1.0, raw) if clamp else raw


def asymptotic_singlet_distance(c: float) -> float:
    """Large-system limit 2 (1 - c) of the singlet-distance bound."""
    return 2.0 * (1.0 - c)


def distillable_upper(n_qubits: int, c: float) -> float:
    """Upper bound log2(c 2^{n/2} + 1 - c) on distillable entanglement.

    Follows from the mean partial-transpose trace norm c 2^{n/2} + 1 - c;
    asymptotically n/2 + log2(c), so c < 1 tightens the trivial n/2 bound
    by |log2 c| ebits.
    """
    if not 0.0 < c <= 1.0:
        raise ValueError("ratio must lie in (0, 1]")
    if n_qubits < 2 or n_qubits % 2:
        raise ValueError("n_qubits must be even and at least 2")
    return math.log2(c * 2 ** (n_qubits // 2) + 1.0 - c)


def log_negativity(neg: float) -> float:
    """Logarithmic negativity log2(2N + 1)."""
    if neg < 0:
        raise ValueError("negativity must be nonnegative")
    return math.log2(2.0 * neg + 1.0)


def cluster_threshold(d_a: int, epsilon: float) -> float:
    """Scale d_A log2(d_A) / epsilon^2 past which the complement dominates.

    The proportionality constant is not pinned down; the worked presets in
    CLUSTER_THRESHOLD_PRESETS show the intended orders of magnitude, and both
    coincide with this scale at epsilon = 0.1.
    """
    if d_a < 2:
        raise ValueError("subsystem dimension must be at least 2")
    if not 0.0 < epsilon:
        raise ValueError("epsilon must be positive")
    return d_a * math.log2(d_a) / (epsilon * epsilon)


def cluster_check(rho_a, epsilon: float) -> bool:
    """True iff every eigenvalue of rho_A is within (1 +- eps)/d_A."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    entries = getattr(rho_a, "entries", rho_a)
    entries = np.asarray(entries, dtype=np.complex128)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError("reduced state must be a square matrix")
    d_a = entries.shape[0]
    eigenvalues = np.linalg.eigvalsh(entries)
    lo = (1.0 - epsilon) / d_a
    hi = (1.0 + epsilon) / d_a
    return bool(eigenvalues.min() >= lo and eigenvalues.max() <= hi)


def build_bounds_report(n_qubits: int, c: float | None = None, mean_negativity: float | None = None) -> BoundsReport:
    """Bounds for an n-qubit equal bipartition.

    With a ratio c the asymptotic forms are used (mean = c (m-1)/2, singlet
    distance 2(1-c), fidelity c); with an explicit mean negativity the
    finite-m formulas apply. Exactly one of the two must be given.
    """
    if n_qubits < 2 or n_qubits % 2:
        raise ValueError("n_qubits must be even and at least 2")
    if (c is None) == (mean_negativity is None):
        raise ValueError("set exactly one of c / mean_negativity")
    m = 2 ** (n_qubits // 2)
    if c is not None:
        if not 0.0 < c <= 1.0:
            raise ValueError("ratio must lie in (0, 1]")
        mean = c * (m - 1) / 2.0
        singlet_raw = asymptotic_singlet_distance(c)
        fidelity_raw = c
        distillable = distillable_upper(n_qubits, c)
    else:
        mean = float(mean_negativity)
        singlet_raw = singlet_distance_lower(mean, m, clamp=False)
        fidelity_raw = teleportation_fidelity_upper(mean, m, clamp=False)
        distillable = log_negativity(mean)
    return BoundsReport(
        n_qubits=n_qubits,
        mean_negativity=mean,
        singlet_distance_lb=min(2.0, max(0.0, singlet_raw)),
        fidelity_ub=min(1.0, fidelity_raw),
        distillable_ub_ebits=distillable,
        log_neg_mean=log_negativity(mean),
        singlet_distance_raw=singlet_raw,
        fidelity_raw=fidelity_raw,
    )
