"""Random pure states, Schmidt spectra, and negativity evaluation.

Haar-random pure states are sampled as normalized complex Gaussian vectors
(the induced measure on rays is the Haar one, at O(mu nu) cost instead of
generating a full random unitary). Pseudorandom states come from a layered
circuit: each round applies an independent Haar-random 2x2 rotation to every
qubit followed by a fixed controlled-phase layer on a nearest-neighbour
ring.

Sampling campaigns are reproducible and order-independent: sample i of a
batch is driven by a seed sequence derived from (master_seed, i) alone, so
results are bit-identical for any chunking or thread count. The chunked
kernels vectorize over samples without changing any per-sample arithmetic.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "PureState",
    "SchmidtSpectrum",
    "DensityMatrix",
    "SampleBatch",
    "haar_pure_state",
    "schmidt_spectrum",
    "negativity_pure",
    "partial_transpose",
    "negativity_general",
    "pseudorandom_circuit_state",
    "sample_negativities",
    "reduced_state_a",
]

#: Squared singular values below this are round-off and clamped to zero
#: before any square root is taken.
SPECTRUM_CLIP = 1e-15

#: Fixed vectorization width of the sampling kernels. Results are
#: per-sample deterministic, so this constant only affects speed.
_CHUNK = 512

#: Schmidt spectra switch from SVD of the amplitude matrix to the
#: eigendecomposition of the reduced state once the split is this lopsided.
_EIGH_RATIO = 8


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector on a mu x nu bipartite space."""

    amplitudes: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        mu, nu = self.dims
        amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if amplitudes.shape != (mu * nu,):
            raise ValueError(f"amplitude vector must have length {mu * nu}")
        norm_sq = float(np.sum(np.abs(amplitudes) ** 2))
        if abs(norm_sq - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", amplitudes)

    def matrix(self) -> np.ndarray:
        """Amplitudes reshaped to (mu, nu), subsystem A indexing rows."""
        return self.amplitudes.reshape(self.dims)

    def density_matrix(self) -> "DensityMatrix":
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(rho, self.dims)


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Probability vector of squared Schmidt coefficients, descending."""

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("spectrum must be a nonempty vector")
        if np.any(p < 0):
            raise ValueError("spectrum has negative entries")
        if np.any(np.diff(p) > 0):
            raise ValueError("spectrum must be sorted in descending order")
        if abs(float(p.sum()) - 1.0) > 1e-10:
            raise ValueError("spectrum does not sum to one")
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator on mu x nu."""

    entries: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        mu, nu = self.dims
        d = mu * nu
        entries = np.asarray(self.entries, dtype=np.complex128)
        if entries.shape != (d, d):
            raise ValueError(f"density matrix must be {d} x {d}")
        if not np.allclose(entries, entries.conj().T, atol=1e-12):
            raise ValueError("density matrix is not Hermitian")
        trace = float(np.real(np.trace(entries)))
        if abs(trace - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace is {trace!r}")
        if float(np.linalg.eigvalsh(entries).min()) < -1e-10:
            raise ValueError("density matrix is not positive semidefinite")
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class SampleBatch:
    """Reproducible sampling campaign specification.

    Identical fields give identical sample vectors, independent of worker
    count or evaluation order. Either dims (Haar) or n_qubits must be set;
    the circuit generator needs an even n_qubits.
    """

    master_seed: int
    count: int
    dims: tuple[int, int] | None = None
    n_qubits: int | None = None
    generator: str = "haar"
    j: int = 40

    def __post_init__(self):
        if (self.dims is None) == (self.n_qubits is None):
            raise ValueError("set exactly one of dims / n_qubits")
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.generator not in ("haar", "circuit"):
            raise ValueError(f"unknown generator {self.generator!r}")
        if self.generator == "circuit":
            if self.n_qubits is None:
                raise ValueError("circuit generator needs n_qubits")
            if self.j < 0:
                raise ValueError("round count must be nonnegative")
        if self.n_qubits is not None and (self.n_qubits < 2 or self.n_qubits % 2):
            raise ValueError("n_qubits must be even and at least 2")

    @property
    def resolved_dims(self) -> tuple[int, int]:
        if self.dims is not None:
            return self.dims
        half = 2 ** (self.n_qubits // 2)
        return (half, half)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _sample_seed(master_seed: int, index: int) -> np.random.SeedSequence:
    # Same derivation SeedSequence.spawn uses, but stateless in the parent.
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(index,))


def _gaussian_amplitudes(rng: np.random.Generator, size: int) -> np.ndarray:
    z = rng.standard_normal(2 * size).view(np.complex128)
    return z / np.linalg.norm(z)


def haar_pure_state(mu: int, nu: int, seed) -> PureState:
    """Haar-random pure state on a mu x nu space, deterministic per seed."""
    if mu < 1 or nu < 1:
        raise ValueError("dimensions must be at least 1")
    return PureState(_gaussian_amplitudes(_rng(seed), mu * nu), (mu, nu))


def _spectra_from_matrices(matrices: np.ndarray) -> np.ndarray:
    """Descending squared singular values for a stack of (mu, nu) matrices."""
    mu, nu = matrices.shape[-2:]
    if max(mu, nu) >= _EIGH_RATIO * min(mu, nu):
        small = matrices if mu <= nu else matrices.conj().swapaxes(-1, -2)
        gram = small @ small.conj().swapaxes(-1, -2)
        p = np.linalg.eigvalsh(gram)[..., ::-1]
    else:
        s = np.linalg.svd(matrices, compute_uv=False)
        p = s * s
    return np.where(p < SPECTRUM_CLIP, 0.0, p)


def schmidt_spectrum(state: PureState) -> SchmidtSpectrum:
    """Squared singular values of the reshaped amplitude matrix."""
    p = _spectra_from_matrices(state.matrix()[np.newaxis])[0]
    return SchmidtSpectrum(p)


def _negativities_from_spectra(p: np.ndarray) -> np.ndarray:
    s = np.sqrt(p).sum(axis=-1)
    return np.maximum(0.0, (s * s - 1.0) / 2.0)


def negativity_pure(spectrum: SchmidtSpectrum) -> float:
    """Negativity of a pure state from its Schmidt spectrum.

    ((sum_i sqrt(p_i))^2 - 1) / 2, between 0 and (mu - 1) / 2.
    """
    return float(_negativities_from_spectra(spectrum.p[np.newaxis])[0])


def partial_transpose(rho: DensityMatrix) -> np.ndarray:
    """Transpose the subsystem-A indices only; Hermiticity is preserved."""
    mu, nu = rho.dims
    tensor = rho.entries.reshape(mu, nu, mu, nu)
    return np.ascontiguousarray(tensor.transpose(2, 1, 0, 3)).reshape(mu * nu, mu * nu)


def negativity_general(rho: DensityMatrix) -> float:
    """(trace norm of the partial transpose - 1) / 2 for any state."""
    eigenvalues = np.linalg.eigvalsh(partial_transpose(rho))
    return float((np.abs(eigenvalues).sum() - 1.0) / 2.0)


def reduced_state_a(state: PureState) -> np.ndarray:
    """Reduced density matrix on subsystem A."""
    m = state.matrix()
    return m @ m.conj().T


# ---------------------------------------------------------------------------
# pseudorandom circuit states
# ---------------------------------------------------------------------------


def _su2_from_gaussians(g: np.ndarray) -> np.ndarray:
    """Map (..., 4) real Gaussians to Haar-random SU(2) matrices (..., 2, 2)."""
    q = g / np.linalg.norm(g, axis=-1, keepdims=True)
    a, b, c, d = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    u = np.empty(q.shape[:-1] + (2, 2), dtype=np.complex128)
    u[..., 0, 0] = a + 1j * b
    u[..., 0, 1] = c + 1j * d
    u[..., 1, 0] = -c + 1j * d
    u[..., 1, 1] = a - 1j * b
    return u


@lru_cache(maxsize=None)
def _cz_layer_diagonal(n_qubits: int) -> np.ndarray:
    """Diagonal (+-1) of the controlled-phase layer on the ring of qubits."""
    edges = sorted({tuple(sorted((q, (q + 1) % n_qubits))) for q in range(n_qubits)})
    index = np.arange(2**n_qubits)
    diag = np.ones(2**n_qubits)
    for u, v in edges:
        bit_u = (index >> (n_qubits - 1 - u)) & 1
        bit_v = (index >> (n_qubits - 1 - v)) & 1
        diag *= np.where((bit_u & bit_v).astype(bool), -1.0, 1.0)
    return diag


def _apply_single_qubit(psi: np.ndarray, gates: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Apply per-sample 2x2 gates on one qubit of a (batch, 2**n) stack."""
    batch = psi.shape[0]
    pre = 2**qubit
    post = 2 ** (n_qubits - 1 - qubit)
    view = psi.reshape(batch, pre, 2, post)
    rotated = np.einsum("bij,bpjq->bpiq", gates, view)
    return rotated.reshape(batch, -1)


def _circuit_states(n_qubits: int, rounds: int, seeds) -> np.ndarray:
    """Stack of circuit statevectors, one per seed sequence."""
    batch = len(seeds)
    gaussians = np.empty((batch, rounds, n_qubits, 4))
    for i, seed in enumerate(seeds):
        gaussians[i] = np.random.default_rng(seed).standard_normal((rounds, n_qubits, 4))
    dim = 2**n_qubits
    psi = np.zeros((batch, dim), dtype=np.complex128)
    psi[:, 0] = 1.0
    if rounds == 0:
        return psi
    gates = _su2_from_gaussians(gaussians)
    diag = _cz_layer_diagonal(n_qubits)
    for r in range(rounds):
        for q in range(n_qubits):
            psi = _apply_single_qubit(psi, gates[:, r, q], q, n_qubits)
        psi = psi * diag
    return psi


def pseudorandom_circuit_state(n_qubits: int, j: int, seed) -> PureState:
    """State after j rounds of random single-qubit rotations + fixed coupling.

    Qubit 0 is the most significant index; the bipartition used downstream
    splits the first n/2 qubits from the rest. j = 0 returns the fiducial
    all-zeros state.
    """
    if n_qubits < 2 or n_qubits % 2:
        raise ValueError("n_qubits must be even and at least 2")
    if j < 0:
        raise ValueError("round count must be nonnegative")
    psi = _circuit_states(n_qubits, j, [seed])[0]
    half = 2 ** (n_qubits // 2)
    return PureState(psi, (half, half))


# ---------------------------------------------------------------------------
# batched sampling
# ---------------------------------------------------------------------------


def _haar_chunk(mu: int, nu: int, seeds) -> np.ndarray:
    amplitudes = np.empty((len(seeds), mu * nu), dtype=np.complex128)
    for i, seed in enumerate(seeds):
        amplitudes[i] = _gaussian_amplitudes(np.random.default_rng(seed), mu * nu)
    return _negativities_from_spectra(_spectra_from_matrices(amplitudes.reshape(-1, mu, nu)))


def _circuit_chunk(n_qubits: int, rounds: int, seeds) -> np.ndarray:
    psi = _circuit_states(n_qubits, rounds, seeds)
    half = 2 ** (n_qubits // 2)
    return _negativities_from_spectra(_spectra_from_matrices(psi.reshape(-1, half, half)))


def sample_negativities(batch: SampleBatch, threads: int = 1) -> np.ndarray:
    """Negativity of every sample in the batch, in sample order.

    Sample i depends only on (master_seed, i), so the output is identical
    for any thread count and any chunking of the work.
    """
    if threads < 1:
        raise ValueError("threads must be at least 1")
    out = np.empty(batch.count)
    if batch.count == 0:
        return out
    seeds = [_sample_seed(batch.master_seed, i) for i in range(batch.count)]
    spans = [(start, min(start + _CHUNK, batch.count)) for start in range(0, batch.count, _CHUNK)]

    if batch.generator == "haar":
        mu, nu = batch.resolved_dims

        def run(span):
            start, stop = span
            out[start:stop] = _haar_chunk(mu, nu, seeds[start:stop])

    else:

        def run(span):
            start, stop = span
            out[start:stop] = _circuit_chunk(batch.n_qubits, batch.j, seeds[start:stop])

    if threads == 1:
        for span in spans:
            run(span)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, spans))
    return out
