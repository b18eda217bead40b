"""Histograms of sampled negativities and the analytic Gaussian reference.

The reference density is the two-cumulant (Gaussian) approximation with the
engine's normalized mean and standard deviation. Agreement is quantified by
a one-sample Kolmogorov-Smirnov statistic computed from the binned empirical
CDF, the z-score of the sample mean against the analytic one, and the
relative error of the sample standard deviation.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from ._backend import format_rational
from .moments import MomentReport

__all__ = [
    "Histogram",
    "GaussianReference",
    "ComparisonReport",
    "build_histogram",
    "gaussian_reference",
    "compare",
    "export",
    "build_document",
]


@dataclass(frozen=True)
class Histogram:
    """Equal-width counts; out-of-range samples are clipped into edge bins."""

    bin_edges: np.ndarray
    counts: np.ndarray
    total: int

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=float)
        counts = np.asarray(self.counts, dtype=np.int64)
        if edges.ndim != 1 or edges.size < 2:
            raise ValueError("need at least one bin")
        if np.any(np.diff(edges) <= 0):
            raise ValueError("bin edges must be strictly ascending")
        if counts.shape != (edges.size - 1,):
            raise ValueError("counts length must match bin count")
        if int(counts.sum()) != self.total:
            raise ValueError("counts do not sum to total")
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "counts", counts)

    def densities(self) -> np.ndarray:
        widths = np.diff(self.bin_edges)
        return self.counts / (self.total * widths)

    def cumulative_fractions(self) -> np.ndarray:
        """Empirical CDF values at the right edge of each bin."""
        return np.cumsum(self.counts) / self.total

    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    def sample_mean(self) -> float:
        return float(np.sum(self.midpoints() * self.counts) / self.total)

    def sample_sigma(self) -> float:
        mean = self.sample_mean()
        var = float(np.sum((self.midpoints() - mean) ** 2 * self.counts) / self.total)
        return math.sqrt(var)


def build_histogram(values, bins: int, value_range: tuple[float, float] | None = None) -> Histogram:
    """Equal-width histogram; auto range is [min, max] padded by one width.

    Values outside the range are clipped into the edge bins so the total
    count is preserved.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("cannot histogram an empty sample")
    if bins < 1:
        raise ValueError("need at least one bin")
    if value_range is None:
        lo = float(values.min())
        hi = float(values.max())
        pad = (hi - lo) / bins if hi > lo else 0.5
        lo, hi = lo - pad, hi + pad
    else:
        lo, hi = float(value_range[0]), float(value_range[1])
        if not hi > lo:
            raise ValueError("range must have positive width")
    width = (hi - lo) / bins
    idx = np.clip(np.floor((values - lo) / width).astype(np.int64), 0, bins - 1)
    counts = np.bincount(idx, minlength=bins)
    edges = lo + width * np.arange(bins + 1)
    return Histogram(edges, counts, int(values.size))


@dataclass(frozen=True)
class GaussianReference:
    """Normal density with the normalized analytic mean and deviation."""

    mean_prime: float
    sigma_prime: float

    def __post_init__(self):
        if not self.sigma_prime > 0:
            raise ValueError("sigma must be positive")

    def density(self, x):
        x = np.asarray(x, dtype=float)
        z = (x - self.mean_prime) / self.sigma_prime
        return np.exp(-0.5 * z * z) / (self.sigma_prime * math.sqrt(2.0 * math.pi))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        z = (x - self.mean_prime) / (self.sigma_prime * math.sqrt(2.0))
        return 0.5 * (1.0 + np.vectorize(math.erf)(z))


def gaussian_reference(report: MomentReport) -> GaussianReference:
    """Reference with mean <N>/N_max and deviation sigma/N_max."""
    if report.mu < 2:
        raise ValueError("reference needs mu >= 2")
    return GaussianReference(report.mean_normalized, report.sigma_normalized)


@dataclass(frozen=True)
class ComparisonReport:
    """Histogram-vs-reference agreement figures."""

    ks_statistic: float
    mean_zscore: float
    sigma_relative_error: float


def compare(hist: Histogram, ref: GaussianReference) -> ComparisonReport:
    """KS statistic, mean z-score, and sigma relative error.

    The KS statistic is the largest gap between the empirical CDF and the
    Gaussian CDF over all bin edges, where the binned empirical CDF is known
    exactly (fraction of samples below the edge).
    """
    if hist.total < 100:
        raise ValueError("comparison needs at least 100 samples")
    ecdf = np.concatenate(([0.0], hist.cumulative_fractions()))
    reference = ref.cdf(hist.bin_edges)
    ks = float(np.max(np.abs(reference - ecdf)))
    mean = hist.sample_mean()
    sigma = hist.sample_sigma()
    zscore = (mean - ref.mean_prime) / (sigma / math.sqrt(hist.total))
    sigma_rel = abs(sigma - ref.sigma_prime) / ref.sigma_prime
    return ComparisonReport(ks_statistic=ks, mean_zscore=float(zscore), sigma_relative_error=float(sigma_rel))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _poly_json(poly) -> dict | None:
    if poly is None:
        return None
    return {"pi_half_coeffs": poly.coeff_strings()}


def build_document(
    report: MomentReport,
    n_qubits: int | None = None,
    histogram: Histogram | None = None,
    reference: GaussianReference | None = None,
    comparison: ComparisonReport | None = None,
) -> dict:
    """The shared JSON document for moments / sampling / comparison output."""
    doc = {
        "mu": report.mu,
        "n_qubits": n_qubits,
        "mean_exact": _poly_json(report.mean_exact),
        "variance_exact": _poly_json(report.variance_exact),
        "mean_float": report.mean_float,
        "sigma_float": report.sigma_float,
        "normalized": {
            "mean": report.mean_normalized,
            "sigma": report.sigma_normalized,
        },
        "n_max": format_rational(report.n_max),
        "histogram": None,
        "comparison": None,
    }
    if histogram is not None:
        doc["histogram"] = {
            "bin_edges": [float(e) for e in histogram.bin_edges],
            "counts": [int(c) for c in histogram.counts],
            "total": histogram.total,
        }
    if reference is not None:
        doc["reference"] = {
            "mean_prime": reference.mean_prime,
            "sigma_prime": reference.sigma_prime,
        }
    if comparison is not None:
        doc["comparison"] = {
            "ks_statistic": comparison.ks_statistic,
            "mean_zscore": comparison.mean_zscore,
            "sigma_relative_error": comparison.sigma_relative_error,
        }
    return doc


def _csv_rows(hist: Histogram, ref: GaussianReference | None):
    densities = hist.densities()
    mids = hist.midpoints()
    gauss = ref.density(mids) if ref is not None else np.zeros_like(mids)
    for i in range(hist.counts.size):
        yield (
            repr(float(hist.bin_edges[i])),
            repr(float(hist.bin_edges[i + 1])),
            int(hist.counts[i]),
            repr(float(densities[i])),
            repr(float(gauss[i])),
        )


def export(hist: Histogram, ref: GaussianReference | None, report: MomentReport, fmt: str, destination) -> None:
    """Write histogram + reference + moment data as CSV or JSON.

    CSV rows are ``bin_left,bin_right,count,density,gaussian_density``, one
    per bin. destination may be a path or a writable text stream.
    """
    if fmt == "csv":
        text = render_csv(hist, ref)
    elif fmt == "json":
        comparison = compare(hist, ref) if ref is not None and hist.total >= 100 else None
        text = render_json(build_document(report, histogram=hist, reference=ref, comparison=comparison))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as handle:
            handle.write(text)


def render_csv(hist: Histogram, ref: GaussianReference | None) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["bin_left", "bin_right", "count", "density", "gaussian_density"])
    for row in _csv_rows(hist, ref):
        writer.writerow(row)
    return buffer.getvalue()


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"
