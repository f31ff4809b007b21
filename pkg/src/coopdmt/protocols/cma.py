"""Cooperative multiple access with non-orthogonal amplify-and-forward.

``N`` sources share one destination. Each frame has one slot per source;
in its slot a source broadcasts ``a_j x`` of its own symbol plus ``b_j``
times the last signal it heard from the source it is currently helping.
Helpers rotate per super-frame of ``L`` frames, and a coherence interval
spans ``N - 1`` super-frames so that every source is helped by every other.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ..fading import ChannelRealization, LinkSnrProfile
from ..mi import LinearChannelModel, subset_mi
from .af import effective_g
from .config import ProtocolConfig

__all__ = ["cma_schedule", "cma_calibrate_gains", "cma_power_residual", "cma_build_model",
           "outage_cma"]

MAX_ITER = 10_000
POWER_RTOL = 1e-6


def cma_schedule(n: int, superframe_index: int) -> tuple:
    """Helper of each source (1-based) during super-frame ``superframe_index >= 1``.

    Entry ``j`` is the source that relays for source ``j + 1``: a right
    circular shift of ``(1, ..., N)`` by ``((i - 1) mod (N - 1)) + 1``.
    """
    if n < 2:
        raise ValueError("cooperation needs at least two sources")
    if superframe_index < 1:
        raise ValueError("super-frames are numbered from 1")
    shift = (superframe_index - 1) % (n - 1) + 1
    return tuple(int(v) for v in np.roll(np.arange(1, n + 1), shift))


def _relay_noise(sigma_w2: np.ndarray) -> np.ndarray:
    """Worst receive noise of each source over everyone it may help."""
    s = np.where(np.eye(len(sigma_w2), dtype=bool), -np.inf, sigma_w2)
    return np.max(s, axis=1)


def cma_power_residual(a, b, energy, sigma_w2) -> np.ndarray:
    """Relative gap between the steady-state transmit power and ``energy``.

    The steady state assumes every helpee transmits at ``energy`` and unit
    mean channel power, so the repeated signal has power ``energy + sigma^2``.
    """
    s2 = _relay_noise(np.asarray(sigma_w2, dtype=float))
    p = np.asarray(a) ** 2 * energy + np.asarray(b) ** 2 * (energy + s2)
    return np.abs(p - energy) / energy


def cma_calibrate_gains(config: ProtocolConfig, profile: LinkSnrProfile):
    """Gains ``(a, b)`` holding every source's mean transmit power at ``E``.

    ``a_j^2 : b_j^2`` is fixed by ``config.cma_repetition_share``; the scale
    is found by iterating the power recursion
    ``P_j <- a_j^2 E + b_j^2 (max_i P_i + sigma_j^2)`` to its fixed point.
    """
    if config.n_nodes < 2:
        raise ValueError("cooperation needs at least two sources")
    return _calibrate(config, profile.rho, profile.resolve(config.n_nodes)[1])


def _calibrate(config: ProtocolConfig, e, sw2):
    n = config.n_nodes
    s2 = _relay_noise(sw2)
    beta = config.cma_repetition_share
    q = beta / (1.0 - beta)
    p = np.full(n, (1.0 - beta) * e)
    for _ in range(MAX_ITER):
        heard = np.max(p) + s2
        a2 = e / (e + q * heard)
        b2 = q * a2
        p_new = a2 * e + b2 * heard
        if np.max(np.abs(p_new - p)) <= 1e-14 * e:
            p = p_new
            break
        p = p_new
    else:
        raise RuntimeError("transmit power recursion did not converge")
    a, b = np.sqrt(a2), np.sqrt(b2)
    if np.max(cma_power_residual(a, b, e, sw2)) >= POWER_RTOL:
        raise RuntimeError("calibrated gains miss the power target")
    return a, b


def cma_build_model(realization: ChannelRealization, config: ProtocolConfig, gains) -> LinearChannelModel:
    """Linear model of one coherence interval, in chronological slot order.

    Observation ``k N + j`` is source ``j``'s slot in frame ``k``; symbol
    column ``k N + j`` is the symbol it broadcasts there. Noise column
    ``k N + j`` is the receive noise of that slot's helper, kept only if the
    helper later repeats it and the link is noisy. Stored receptions do not
    cross super-frame boundaries.
    """
    n = realization.n_nodes
    if n != config.n_nodes:
        raise ValueError("realization and config disagree on n_nodes")
    big_l = config.cma_frames_per_superframe
    a, b = (np.asarray(v, dtype=float) for v in gains)
    frames = (n - 1) * big_l
    n_obs = n * frames
    batch = realization.batch_shape
    g = effective_g(realization).reshape(-1, n)
    h = realization.h.reshape(-1, n, n)
    sw2 = realization.sigma_w2
    m = g.shape[0]

    sig = np.zeros((m, n_obs, n_obs), dtype=complex)
    noise = np.zeros((m, n_obs, n_obs), dtype=complex)
    noise_var = np.zeros(n_obs)
    rec_sig = np.zeros((m, n, n_obs), dtype=complex)
    rec_noise = np.zeros((m, n, n_obs), dtype=complex)
    rec_supp = np.zeros((n, n_obs), dtype=bool)
    used = np.zeros(n_obs, dtype=bool)
    valid = np.zeros(n, dtype=bool)
    helpers = None

    for k in range(frames):
        if k % big_l == 0:
            valid[:] = False
            helpers = np.array(cma_schedule(n, k // big_l + 1)) - 1
        for s in range(n):
            tau = k * n + s
            t_sig = np.zeros((m, n_obs), dtype=complex)
            t_sig[:, tau] = a[s]
            t_noise = np.zeros((m, n_obs), dtype=complex)
            supp = np.zeros(n_obs, dtype=bool)
            if valid[s] and b[s] != 0:
                t_sig += b[s] * rec_sig[:, s]
                t_noise = b[s] * rec_noise[:, s]
                supp = rec_supp[s].copy()
                used |= supp
            valid[s] = False
            sig[:, tau] = g[:, s, None] * t_sig
            noise[:, tau] = g[:, s, None] * t_noise

            hp = helpers[s]
            link = h[:, hp, s, None]
            rec_sig[:, hp] = link * t_sig
            rec_noise[:, hp] = link * t_noise
            rec_supp[hp] = supp
            if sw2[hp, s] > 0:
                rec_noise[:, hp, tau] += 1.0
                rec_supp[hp, tau] = True
                noise_var[tau] = sw2[hp, s]
            valid[hp] = True

    keep = used & (noise_var > 0)
    idx = np.arange(n_obs)
    return LinearChannelModel(
        sig.reshape(batch + (n_obs, n_obs)),
        idx % n,
        idx // n,
        noise[:, :, keep].reshape(batch + (n_obs, int(keep.sum()))),
        noise_var[keep],
    )


def outage_cma(model: LinearChannelModel, config: ProtocolConfig, rho):
    """MAC outage: some nonempty source subset cannot carry its share of bits.

    Each source owes ``(N - 1) L R`` bits per coherence interval.
    """
    n = config.n_nodes
    per_user = (n - 1) * config.cma_frames_per_superframe * config.rate_bpcu
    out = np.zeros(model.signal.shape[:-2], dtype=bool)
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            out |= subset_mi(model, subset, rho) < size * per_user
    return out[()] if out.ndim == 0 else out
