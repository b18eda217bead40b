"""Exact moment engine for the negativity of random bipartite pure states.

For an equal mu x mu bipartition the Schmidt-coefficient average of any
symmetric observable reduces, through the squared-Vandermonde eigenvalue
density and its Laguerre-basis expansion, to determinant sums over the pair
integral matrices

    A = [J(k, l, 1)]_{k,l < mu}     (rational entries)
    B = [J(k, l, 1/2)]_{k,l < mu}   (rational multiples of sqrt(pi)),

where J is laguerre.laguerre_pair_integral. Everything here is exact: the
mean is

    <N> = (1/(2 mu^2)) sum_{k,l} (B_kk B_ll - B_kl^2)

and the variance comes from the square / cube / quartic determinant sums of
the same matrices. Unrestricted index sums are used throughout: repeated
indices duplicate determinant rows and contribute exact zeros, so no
distinct-index bookkeeping is needed.

The determinant sums have two implementations. The naive path evaluates
every small determinant explicitly and is kept as a correctness oracle for
small mu. The trace path expands the permutation sum into power-sum traces,

    pair   : t1^2 - t2
    triple : a1 b1^2 - a1 tr(B^2) - 2 b1 tr(AB) + 2 tr(A B^2)
    quad   : b1^4 - 6 b1^2 b2 + 3 b2^2 + 8 b1 b3 - 6 b4,

which needs a single exact matrix square instead of O(mu^4) determinants.

Beyond the exact-mode ceilings the same term sums are evaluated in mpmath
floating point with enough working precision for the alternating binomial
sums, verified by recomputing at doubled precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from mpmath import mp

from ._backend import ZERO, rational
from .exactring import (
    DEFAULT_PRECISION,
    Precision,
    SqrtPiMonomial,
    SqrtPiPolynomial,
)
from .exactring import _gamma_half_twice, _reciprocal_gamma_half_twice

__all__ = [
    "ResourceCeilingError",
    "PairIntegralMatrix",
    "MomentReport",
    "TableRow",
    "DEFAULT_EXACT_MEAN_CEILING",
    "DEFAULT_EXACT_VARIANCE_CEILING",
    "build_pair_integral_matrix",
    "det_moment_sum",
    "mean_negativity",
    "mean_pair_product",
    "sqrt_sum_second_moment",
    "fourth_moment",
    "variance_negativity",
    "max_negativity",
    "normalized_moments",
    "generate_table",
    "extrapolate_limit",
]

#: Largest mu handled in exact big-rational arithmetic by default. The
#: Gamma(t+3/2)^2 numerators reach hundreds of digits near the ceiling.
DEFAULT_EXACT_MEAN_CEILING = 128
DEFAULT_EXACT_VARIANCE_CEILING = 64

#: Relative agreement required between successive precision doublings on the
#: floating fallback path.
_DOUBLING_RTOL = 1e-8
_MAX_DOUBLINGS = 6


class ResourceCeilingError(RuntimeError):
    """Exact evaluation was forced beyond the configured size ceiling."""


@dataclass(frozen=True)
class PairIntegralMatrix:
    """Symmetric mu x mu matrix of exact Laguerre pair integrals.

    Every entry shares one sqrt(pi) grade (``power``); ``rows`` holds the
    rational coefficients.
    """

    mu: int
    beta_twice: int
    power: int
    rows: tuple

    @property
    def beta(self) -> Fraction:
        return Fraction(self.beta_twice, 2)

    def entry(self, k: int, l: int) -> SqrtPiMonomial:
        return SqrtPiMonomial(self.rows[k][l], self.power)

    def entries(self) -> list[list[SqrtPiMonomial]]:
        return [[self.entry(k, l) for l in range(self.mu)] for k in range(self.mu)]


def _weight_tables(mu: int, beta_twice: int):
    """Coefficient tables for the binomial term sum at a given weight.

    g2[t] is the rational part of Gamma(t+beta+1)^2 and rc[m + mu] the
    rational part of 1/Gamma(m+beta+1) for m in [-mu, mu], zero at poles.
    """
    g2 = []
    for t in range(mu):
        g = _gamma_half_twice(beta_twice + 2 * t + 2)
        g2.append(g.coeff * g.coeff)
    rc = [_reciprocal_gamma_half_twice(beta_twice + 2 * m + 2).coeff for m in range(-mu, mu + 1)]
    return g2, rc


@lru_cache(maxsize=None)
def _build_matrix_cached(mu: int, beta_twice: int) -> PairIntegralMatrix:
    g2, rc = _weight_tables(mu, beta_twice)
    power = 1 if beta_twice % 2 else 0
    rows = [[ZERO] * mu for _ in range(mu)]
    for k in range(mu):
        for l in range(k, mu):
            # J(k, l, beta): the t-sum runs over the smaller index k <= l.
            acc = ZERO
            binom = 1
            t_fact = 1
            for t in range(k + 1):
                if t:
                    binom = binom * (k - t + 1) // t
                    t_fact *= t
                r = rc[t - l + mu]
                if r != 0:
                    term = g2[t] * r * rational(binom, t_fact)
                    acc = acc - term if t % 2 else acc + term
            if l % 2:
                acc = -acc
            acc = acc / math.factorial(l)
            rows[k][l] = acc
            rows[l][k] = acc
    return PairIntegralMatrix(mu, beta_twice, power, tuple(tuple(r) for r in rows))


def build_pair_integral_matrix(mu: int, beta) -> PairIntegralMatrix:
    """Shared symmetric matrix of J(k, l, beta) for k, l < mu (cached)."""
    if mu < 1:
        raise ValueError("dimension must be at least 1")
    beta = Fraction(beta) if not isinstance(beta, (int, Fraction)) else beta
    twice = int(Fraction(beta) * 2)
    if Fraction(twice, 2) != beta or twice not in (1, 2):
        raise ValueError("weight exponent must be 1/2 or 1")
    return _build_matrix_cached(mu, twice)


# ---------------------------------------------------------------------------
# determinant moment sums
# ---------------------------------------------------------------------------


def _trace(rows) -> object:
    return sum((rows[i][i] for i in range(len(rows))), ZERO)


def _overlap(a_rows, b_rows) -> object:
    # tr(A B) for symmetric A, B: sum_ij A_ij B_ij
    total = ZERO
    for ra, rb in zip(a_rows, b_rows):
        for x, y in zip(ra, rb):
            total += x * y
    return total


def _mat_square(rows):
    n = len(rows)
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        row_i = rows[i]
        for j in range(i, n):
            row_j = rows[j]
            acc = ZERO
            for x, y in zip(row_i, row_j):
                acc += x * y
            out[i][j] = acc
            out[j][i] = acc
    return out


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _det4(m):
    total = ZERO
    sign = 1
    for c in range(4):
        minor = [[m[r][cc] for cc in range(4) if cc != c] for r in range(1, 4)]
        term = m[0][c] * _det3(minor)
        total = total + term if sign > 0 else total - term
        sign = -sign
    return total


def _pair_sum(rows, naive: bool):
    if naive:
        total = ZERO
        n = len(rows)
        for k in range(n):
            for l in range(n):
                total += rows[k][k] * rows[l][l] - rows[k][l] * rows[l][k]
        return total
    t1 = _trace(rows)
    return t1 * t1 - _overlap(rows, rows)


def _triple_sum(a_rows, b_rows, naive: bool):
    n = len(a_rows)
    if naive:
        total = ZERO
        for k in range(n):
            for l in range(n):
                for m_ in range(n):
                    det = _det3([[a_rows[r][k], b_rows[r][l], b_rows[r][m_]] for r in (k, l, m_)])
                    total += det
        return total
    b2 = _mat_square(b_rows)
    a1 = _trace(a_rows)
    b1 = _trace(b_rows)
    return a1 * b1 * b1 - a1 * _overlap(b_rows, b_rows) - 2 * b1 * _overlap(a_rows, b_rows) + 2 * _overlap(a_rows, b2)


def _quad_sum(b_rows, naive: bool):
    n = len(b_rows)
    if naive:
        total = ZERO
        for k in range(n):
            for l in range(n):
                for m_ in range(n):
                    for p in range(n):
                        idx = (k, l, m_, p)
                        det = _det4([[b_rows[r][c] for c in idx] for r in idx])
                        total += det
        return total
    b2 = _mat_square(b_rows)
    b1 = _trace(b_rows)
    t2 = _overlap(b_rows, b_rows)
    t3 = _overlap(b2, b_rows)
    t4 = _overlap(b2, b2)
    return b1**4 - 6 * b1 * b1 * t2 + 3 * t2 * t2 + 8 * b1 * t3 - 6 * t4


def det_moment_sum(mu: int, pattern: str, beta=None, method: str = "trace") -> SqrtPiPolynomial:
    """Unrestricted determinant moment sum over the pair integral matrices.

    pattern "pair" (requires beta in {1/2, 1}) sums 2x2 determinants of one
    matrix; "triple" sums the 3x3 determinants whose first column carries the
    integer weight and remaining columns the sqrt weight; "quad" sums the 4x4
    all-sqrt-weight determinants. method "naive" evaluates each determinant
    explicitly (correctness oracle, small mu only); "trace" uses the
    power-sum expansion. Both are exact and agree term for term.
    """
    if method not in ("trace", "naive"):
        raise ValueError(f"unknown method {method!r}")
    naive = method == "naive"
    if pattern == "pair":
        if beta is None:
            raise ValueError("pair pattern requires beta")
        mat = build_pair_integral_matrix(mu, beta)
        coeff = _pair_sum(mat.rows, naive)
        return SqrtPiPolynomial({2 * mat.power: coeff})
    if beta is not None:
        raise ValueError(f"{pattern} pattern does not take beta")
    if pattern == "triple":
        a = build_pair_integral_matrix(mu, 1)
        b = build_pair_integral_matrix(mu, Fraction(1, 2))
        return SqrtPiPolynomial({2: _triple_sum(a.rows, b.rows, naive)})
    if pattern == "quad":
        b = build_pair_integral_matrix(mu, Fraction(1, 2))
        return SqrtPiPolynomial({4: _quad_sum(b.rows, naive)})
    raise ValueError(f"unknown pattern {pattern!r}")


# ---------------------------------------------------------------------------
# exact moments
# ---------------------------------------------------------------------------


def mean_negativity(mu: int) -> SqrtPiPolynomial:
    """Exact Haar-average negativity of an equal mu x mu bipartition."""
    if mu < 1:
        raise ValueError("dimension must be at least 1")
    return det_moment_sum(mu, "pair", beta=Fraction(1, 2)) / (2 * mu * mu)


def mean_pair_product(mu: int) -> SqrtPiPolynomial:
    """Exact average of sum_{i != j} p_i p_j over the Schmidt simplex."""
    if mu < 1:
        raise ValueError("dimension must be at least 1")
    return det_moment_sum(mu, "pair", beta=1) / (mu * mu * (mu * mu + 1))


def sqrt_sum_second_moment(mu: int) -> SqrtPiPolynomial:
    """Exact <(sum_i sqrt(p_i))^2> = 1 + 2 <N>."""
    return SqrtPiPolynomial.from_scalar(1) + 2 * mean_negativity(mu)


def fourth_moment(mu: int) -> SqrtPiPolynomial:
    """Exact <(sum_i sqrt(p_i))^4>.

    Expands into 1 + 2A + 2B + 4C + D with A the distinct-pair sqrt sum, B
    the distinct pair product sum, C the triple and D the quadruple sums;
    degree-one symmetric moments scale by 1/mu^2 and degree-two moments by
    1/(mu^2 (mu^2 + 1)).
    """
    if mu < 1:
        raise ValueError("dimension must be at least 1")
    deg1 = rational(1, mu * mu)
    deg2 = rational(1, mu * mu * (mu * mu + 1))
    a = det_moment_sum(mu, "pair", beta=Fraction(1, 2)) * deg1
    b = det_moment_sum(mu, "pair", beta=1) * deg2
    c = det_moment_sum(mu, "triple") * deg2
    d = det_moment_sum(mu, "quad") * deg2
    return SqrtPiPolynomial.from_scalar(1) + 2 * a + 2 * b + 4 * c + d


def variance_negativity(mu: int) -> SqrtPiPolynomial:
    """Exact variance of the negativity: (<S^4> - <S^2>^2) / 4."""
    s2 = sqrt_sum_second_moment(mu)
    return (fourth_moment(mu) - s2 * s2) / 4


def max_negativity(mu: int):
    """Largest negativity attainable on a mu x mu bipartition, (mu-1)/2."""
    return rational(mu - 1, 2)


# ---------------------------------------------------------------------------
# floating fallback path (beyond the exact ceilings)
# ---------------------------------------------------------------------------


def _working_bits(mu: int, precision: Precision) -> int:
    # The alternating t-sums cancel ~O(mu) digits; scale headroom with mu.
    return max(precision.bits, 4 * mu + 64)


def _mpf_matrix(mu: int, beta_twice: int):
    """Coefficient matrix of J(k, l, beta) as mpf values at mp.prec.

    Same term sums as the exact builder, with the sqrt(pi)-unit-free Gamma
    tables generated by the upward recurrence Gamma(x+1) = x Gamma(x).
    """
    beta = mp.mpf(beta_twice) / 2
    g2 = [mp.mpf(0)] * mu
    g = mp.mpf(1) / 2 if beta_twice == 1 else mp.mpf(1)  # Gamma(beta+1) / sqrt(pi)^power
    for t in range(mu):
        if t:
            g = g * (t + beta)
        g2[t] = g * g
    rc = [mp.mpf(0)] * (2 * mu + 1)
    for m in range(-mu, mu + 1):
        mono = _reciprocal_gamma_half_twice(beta_twice + 2 * m + 2)
        rc[m + mu] = mp.mpf(int(mono.coeff.numerator)) / mp.mpf(int(mono.coeff.denominator))
    rows = [[mp.mpf(0)] * mu for _ in range(mu)]
    for k in range(mu):
        for l in range(k, mu):
            acc = mp.mpf(0)
            binom = 1
            t_fact = 1
            for t in range(k + 1):
                if t:
                    binom = binom * (k - t + 1) // t
                    t_fact *= t
                r = rc[t - l + mu]
                if r:
                    term = g2[t] * r * mp.mpf(binom) / mp.mpf(t_fact)
                    acc = acc - term if t % 2 else acc + term
            acc = acc / mp.mpf(math.factorial(l))
            if l % 2:
                acc = -acc
            rows[k][l] = acc
            rows[l][k] = acc
    return rows


def _mpf_trace(rows):
    return mp.fsum(rows[i][i] for i in range(len(rows)))


def _mpf_overlap(a_rows, b_rows):
    return mp.fsum(x * y for ra, rb in zip(a_rows, b_rows) for x, y in zip(ra, rb))


def _mpf_square(rows):
    n = len(rows)
    out = [[mp.mpf(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = mp.fsum(x * y for x, y in zip(rows[i], rows[j]))
            out[i][j] = acc
            out[j][i] = acc
    return out


def _mpf_mean(mu: int):
    b = _mpf_matrix(mu, 1)
    t1 = _mpf_trace(b)
    pair = t1 * t1 - _mpf_overlap(b, b)
    return pair * mp.pi / (2 * mu * mu)


def _mpf_mean_and_variance(mu: int):
    b = _mpf_matrix(mu, 1)
    a = _mpf_matrix(mu, 2)
    b2 = _mpf_square(b)
    pi = mp.pi
    t1 = _mpf_trace(b)
    a1 = _mpf_trace(a)
    b_over = _mpf_overlap(b, b)
    pair_half = (t1 * t1 - b_over) * pi
    pair_one = a1 * a1 - _mpf_overlap(a, a)
    triple = (a1 * t1 * t1 - a1 * b_over - 2 * t1 * _mpf_overlap(a, b) + 2 * _mpf_overlap(a, b2)) * pi
    t3 = _mpf_overlap(b2, b)
    t4 = _mpf_overlap(b2, b2)
    quad = (t1**4 - 6 * t1 * t1 * b_over + 3 * b_over * b_over + 8 * t1 * t3 - 6 * t4) * pi * pi
    deg1 = mp.mpf(1) / (mu * mu)
    deg2 = mp.mpf(1) / (mu * mu * (mu * mu + 1))
    mean = pair_half / (2 * mu * mu)
    s2 = 1 + 2 * mean
    s4 = 1 + 2 * pair_half * deg1 + 2 * pair_one * deg2 + 4 * triple * deg2 + quad * deg2
    variance = (s4 - s2 * s2) / 4
    return mean, variance


def _verified_float(compute, mu: int, precision: Precision):
    """Run an mpf computation at doubling precision until stable.

    Accepts once two consecutive precisions agree to _DOUBLING_RTOL
    (componentwise relative agreement), returning the higher-precision
    values.
    """
    bits = _working_bits(mu, precision)
    with mp.workprec(bits):
        previous = compute(mu)
    for _ in range(_MAX_DOUBLINGS):
        bits *= 2
        with mp.workprec(bits):
            current = compute(mu)
        prev_t = previous if isinstance(previous, tuple) else (previous,)
        cur_t = current if isinstance(current, tuple) else (current,)
        if all(abs(p - c) <= _DOUBLING_RTOL * abs(c) for p, c in zip(prev_t, cur_t)):
            return current
        previous = current
    raise RuntimeError(f"floating fallback failed to stabilize for mu={mu}")


# ---------------------------------------------------------------------------
# reports and the ratio table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentReport:
    """Exact and floating moments for one bipartition size."""

    mu: int
    mean_exact: SqrtPiPolynomial | None
    variance_exact: SqrtPiPolynomial | None
    mean_float: float
    sigma_float: float
    mean_normalized: float
    sigma_normalized: float
    n_max: object  # rational (mu - 1) / 2


@dataclass(frozen=True)
class TableRow:
    """One row of the normalized-mean convergence table."""

    n_qubits: int
    mu: int
    ratio: float
    delta: float | None


def normalized_moments(
    mu: int,
    precision: Precision = DEFAULT_PRECISION,
    exact: bool | None = None,
    mean_ceiling: int = DEFAULT_EXACT_MEAN_CEILING,
    variance_ceiling: int = DEFAULT_EXACT_VARIANCE_CEILING,
) -> MomentReport:
    """Mean and standard deviation, absolute and divided by (mu-1)/2.

    exact=None picks exact arithmetic per component while it fits under the
    ceilings and the verified floating path beyond; exact=True insists on
    exact arithmetic (ResourceCeilingError when too large); exact=False
    forces the floating path.
    """
    if mu < 2:
        raise ValueError("normalized moments need mu >= 2")
    if exact and (mu > mean_ceiling or mu > variance_ceiling):
        raise ResourceCeilingError(
            f"exact mode limited to mu <= {min(mean_ceiling, variance_ceiling)} (requested {mu})"
        )
    use_exact_mean = mu <= mean_ceiling if exact is None else exact
    use_exact_var = mu <= variance_ceiling if exact is None else exact

    n_max = max_negativity(mu)
    bits = precision.bits
    mean_exact = variance_exact = None
    mean_mpf = var_mpf = None
    if use_exact_mean:
        mean_exact = mean_negativity(mu)
        mean_mpf = mean_exact.evaluate_mpf(bits)
    if use_exact_var:
        variance_exact = variance_negativity(mu)
        var_mpf = variance_exact.evaluate_mpf(bits)
    if mean_mpf is None or var_mpf is None:
        float_mean, float_var = _verified_float(_mpf_mean_and_variance, mu, precision)
        mean_mpf = float_mean if mean_mpf is None else mean_mpf
        var_mpf = float_var if var_mpf is None else var_mpf

    with mp.workprec(bits):
        sigma_mpf = mp.sqrt(var_mpf)
        n_max_mpf = mp.mpf(int(n_max.numerator)) / mp.mpf(int(n_max.denominator))
        report = MomentReport(
            mu=mu,
            mean_exact=mean_exact,
            variance_exact=variance_exact,
            mean_float=float(mean_mpf),
            sigma_float=float(sigma_mpf),
            mean_normalized=float(mean_mpf / n_max_mpf),
            sigma_normalized=float(sigma_mpf / n_max_mpf),
            n_max=n_max,
        )
    return report


def generate_table(
    n_list: Iterable[int],
    precision: Precision = DEFAULT_PRECISION,
    exact: bool | None = None,
    mean_ceiling: int = DEFAULT_EXACT_MEAN_CEILING,
) -> list[TableRow]:
    """Normalized-mean rows for the given even qubit counts, with deltas."""
    rows: list[TableRow] = []
    previous = None
    for n in n_list:
        if n < 2 or n % 2:
            raise ValueError("qubit counts must be even and at least 2")
        mu = 2 ** (n // 2)
        use_exact = mu <= mean_ceiling if exact is None else exact
        if exact and mu > mean_ceiling:
            raise ResourceCeilingError(f"exact mode limited to mu <= {mean_ceiling} (requested {mu})")
        if use_exact:
            mean_mpf = mean_negativity(mu).evaluate_mpf(precision.bits)
        else:
            mean_mpf = _verified_float(_mpf_mean, mu, precision)
        with mp.workprec(precision.bits):
            ratio = float(mean_mpf / (mp.mpf(mu - 1) / 2))
        delta = None if previous is None else ratio - previous
        rows.append(TableRow(n_qubits=n, mu=mu, ratio=ratio, delta=delta))
        previous = ratio
    return rows


def extrapolate_limit(rows: Sequence[TableRow]) -> float:
    """Geometric-tail estimate of the large-size normalized-mean limit.

    With deltas decaying by a roughly constant factor r per row, the missing
    tail past the last row sums to delta_last * r / (1 - r); r is estimated
    from the most recent successive delta ratios.
    """
    if len(rows) < 3:
        raise ValueError("extrapolation needs at least three rows")
    deltas = [row.delta for row in rows[1:]]
    if any(d is None or d <= 0 for d in deltas):
        raise ValueError("rows must carry positive deltas")
    ratios = [d2 / d1 for d1, d2 in zip(deltas, deltas[1:])]
    tail = ratios[-3:]
    r = sum(tail) / len(tail)
    if not 0.0 < r < 1.0:
        raise ValueError(f"delta ratios do not contract (r={r})")
    return rows[-1].ratio + deltas[-1] * r / (1.0 - r)
