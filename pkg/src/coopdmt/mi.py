"""Mutual information of linear Gaussian channels with colored noise.

Everything is in bits and broadcasts over leading batch axes, so one call can
evaluate a whole Monte Carlo chunk of small matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["hermitian", "logdet_ipm", "LinearChannelModel", "subset_mi"]

# minimum eigenvalue below this fraction of the trace means "not positive definite"
PD_RTOL = 1e-12


def hermitian(a, rtol: float = 1e-12) -> np.ndarray:
    """Validate that ``a`` is (a stack of) Hermitian matrices and symmetrize it.

    The tolerance is relative to the largest entry so that matrices scaled by
    a large symbol energy still pass.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    ah = np.conj(np.swapaxes(a, -1, -2))
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    if np.max(np.abs(a - ah), initial=0.0) > rtol * scale:
        raise ValueError("matrix is not Hermitian")
    return 0.5 * (a + ah)


def logdet_ipm(signal_cov, noise_cov) -> np.ndarray:
    """``log2 det(I + signal_cov @ inv(noise_cov))`` in bits.

    Computed as ``log2 det(N + S) - log2 det(N)`` from the Cholesky factors
    of the two Hermitian positive definite matrices, so no complex
    determinant is ever formed.
    """
    s = hermitian(signal_cov)
    n = hermitian(noise_cov)
    if s.shape != n.shape:
        raise ValueError(f"dimension mismatch: {s.shape} vs {n.shape}")
    trace = np.real(np.trace(n, axis1=-2, axis2=-1))
    try:
        chol_n = np.linalg.cholesky(n)
    except np.linalg.LinAlgError:
        raise ValueError("noise covariance is not positive definite") from None
    diag_n = np.real(np.diagonal(chol_n, axis1=-2, axis2=-1))
    if np.any(trace <= 0) or np.any(diag_n ** 2 < PD_RTOL * trace[..., None]):
        raise ValueError("noise covariance is not positive definite")
    diag_t = np.real(np.diagonal(np.linalg.cholesky(n + s), axis1=-2, axis2=-1))
    out = 2.0 * np.sum(np.log2(diag_t) - np.log2(diag_n), axis=-1)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class LinearChannelModel:
    """``y = signal @ x + noise @ w + v`` over one coherence interval.

    ``signal[..., :, k]`` is the column of symbol ``k``, owned by source
    ``sources[k]`` (0-based) with per-source index ``symbols[k]``. ``noise``
    holds the injected (relayed) noise columns with variances ``noise_var``.
    Every observation also carries its own destination noise ``v`` of
    variance ``dest_noise_var``; those identity columns are implicit.
    """

    signal: np.ndarray
    sources: np.ndarray
    symbols: np.ndarray
    noise: np.ndarray
    noise_var: np.ndarray
    dest_noise_var: float = 1.0

    def __post_init__(self):
        n_obs, n_sym = self.signal.shape[-2:]
        if self.sources.shape != (n_sym,) or self.symbols.shape != (n_sym,):
            raise ValueError("one source tag and one symbol tag per signal column")
        if self.noise.shape[-2] != n_obs or self.noise.shape[:-2] != self.signal.shape[:-2]:
            raise ValueError("noise columns must match the observations")
        if self.noise_var.shape != (self.noise.shape[-1],):
            raise ValueError("one variance per noise column")
        if np.any(self.noise_var <= 0) or self.dest_noise_var <= 0:
            raise ValueError("noise variances must be positive")

    @property
    def n_obs(self) -> int:
        return self.signal.shape[-2]

    @property
    def n_sources(self) -> int:
        return int(self.sources.max()) + 1

    def noise_cov(self) -> np.ndarray:
        w = self.noise * np.sqrt(self.noise_var)
        cov = w @ np.conj(np.swapaxes(w, -1, -2))
        return cov + self.dest_noise_var * np.eye(self.n_obs)

    def signal_cov(self, subset, symbol_energy: float) -> np.ndarray:
        cols = np.isin(self.sources, sorted(subset))
        a = self.signal[..., cols]
        return symbol_energy * (a @ np.conj(np.swapaxes(a, -1, -2)))


def subset_mi(model: LinearChannelModel, subset, symbol_energy: float) -> np.ndarray:
    """MI (bits) carried by the symbols of ``subset`` given all other symbols.

    Known symbols are subtracted out, so their columns enter neither the
    signal nor the noise covariance.
    """
    subset = set(subset)
    if not subset:
        raise ValueError("subset must be nonempty")
    if not subset <= set(range(model.n_sources)):
        raise ValueError(f"subset {sorted(subset)} names unknown sources")
    return logdet_ipm(model.signal_cov(subset, symbol_energy), model.noise_cov())
