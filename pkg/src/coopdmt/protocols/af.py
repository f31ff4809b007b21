"""Amplify-and-forward relaying: direct and genie baselines, NAF, LTW-AF."""

from __future__ import annotations

import numpy as np

from ..fading import ChannelRealization
from ..mi import LinearChannelModel, logdet_ipm, subset_mi
from .config import ProtocolConfig

__all__ = [
    "mi_direct",
    "mi_genie_miso",
    "naf_relay_gain",
    "relay_gain",
    "mi_naf_frame",
    "mi_ltw_af_frame",
    "mi_naf_multi",
    "af_general_mi",
    "effective_g",
]

ENERGY_RTOL = 1e-9


def _scalar(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


def mi_direct(g1, rho):
    """``log2(1 + |g1|^2 rho)``."""
    return _scalar(np.log2(1.0 + np.abs(np.asarray(g1)) ** 2 * rho))


def mi_genie_miso(g, rho):
    """Power-combined MISO bound ``log2(1 + rho * sum |g_j|^2)`` over the last axis."""
    g = np.asarray(g)
    if g.ndim == 0 or g.shape[-1] == 0:
        raise ValueError("need at least one gain")
    return _scalar(np.log2(1.0 + rho * np.sum(np.abs(g) ** 2, axis=-1)))


def naf_relay_gain(h, energy, sigma_w2, rx_energy=None, scale: float = 1.0):
    """Largest repetition gain meeting the relay energy budget, times ``scale``.

    The relay receives ``h x + w`` with ``E|x|^2 = rx_energy`` (defaults to
    ``energy``) and must transmit at most ``energy``. With ``sigma_w2 == 0``
    and ``h == 0`` the relay hears nothing and the gain is set to 0.
    """
    rx = energy if rx_energy is None else rx_energy
    denom = np.abs(np.asarray(h)) ** 2 * rx + sigma_w2
    with np.errstate(divide="ignore"):
        b = np.where(denom > 0, np.sqrt(energy / np.where(denom > 0, denom, 1.0)), 0.0)
    return _scalar(scale * b)


def effective_g(realization: ChannelRealization) -> np.ndarray:
    """Node-to-destination gains with their SNR offsets folded in."""
    return realization.g * np.sqrt(realization.g_snr)


def relay_gain(realization: ChannelRealization, config: ProtocolConfig, rho, relay: int = 1,
               ltw: bool = False):
    """Repetition gain of ``relay`` (0-based) under the config's gain policy.

    With the fair power split the NAF relay repeats at ``E/2`` a symbol sent
    at full ``E``; LTW-AF relays always transmit alone at full ``E``.
    """
    e_tx = rho / 2 if (config.fair_power_split and not ltw) else rho
    return naf_relay_gain(realization.h[..., relay, 0], e_tx,
                          realization.sigma_w2[relay, 0], rx_energy=rho,
                          scale=config.relay_gain_scale)


def _frame_cov(g1, g2, h, sw2, b, e1, e2s):
    """2x2 covariances of one cooperation frame.

    Slot 1: source sends x1 at energy e1, relay listens. Slot 2: source sends
    x2 at energy e2s while the relay repeats with gain b (the repetition
    keeps the slot-1 energy e1 of x1).
    """
    g1, g2, h, b = np.broadcast_arrays(*(np.asarray(v, dtype=complex) for v in (g1, g2, h, b)))
    c = g2 * b * h
    s = np.empty(g1.shape + (2, 2), dtype=complex)
    s[..., 0, 0] = e1 * np.abs(g1) ** 2
    s[..., 0, 1] = e1 * g1 * np.conj(c)
    s[..., 1, 0] = np.conj(s[..., 0, 1])
    s[..., 1, 1] = e1 * np.abs(c) ** 2 + e2s * np.abs(g1) ** 2
    n = np.zeros(g1.shape + (2, 2), dtype=complex)
    n[..., 0, 0] = 1.0
    n[..., 1, 1] = 1.0 + np.abs(g2 * b) ** 2 * sw2
    return s, n


def mi_naf_frame(realization: ChannelRealization, b, config: ProtocolConfig, rho, relay: int = 1):
    """Per-channel-use MI of one NAF frame with ``relay`` (0-based) repeating.

    Under the fair split the second slot carries source and relay at ``E/2``
    each; a silent relay (``b == 0``) leaves the source at full energy.
    """
    g = effective_g(realization)
    g1, g2 = g[..., 0], g[..., relay]
    h = realization.h[..., relay, 0]
    b = np.asarray(b, dtype=float)
    e2s = np.where((b != 0) & config.fair_power_split, rho / 2, rho)
    s, n = _frame_cov(g1, g2, h, realization.sigma_w2[relay, 0], b, rho, e2s)
    return _scalar(0.5 * logdet_ipm(s, n))


def mi_ltw_af_frame(realization: ChannelRealization, b, config: ProtocolConfig, rho):
    """Per-channel-use MI of one LTW-AF frame (source silent in slot 2)."""
    g = effective_g(realization)
    s, n = _frame_cov(g[..., 0], g[..., 1], realization.h[..., 1, 0],
                      realization.sigma_w2[1, 0], b, rho, 0.0)
    return _scalar(0.5 * logdet_ipm(s, n))


def mi_naf_multi(realization: ChannelRealization, config: ProtocolConfig, rho):
    """Average NAF frame MI over a super-frame where relay i repeats in frame i."""
    n = realization.n_nodes
    if n < 2:
        raise ValueError("multi-relay NAF needs at least one relay")
    total = 0.0
    for relay in range(1, n):
        b = relay_gain(realization, config, rho, relay)
        total = total + mi_naf_frame(realization, b, config, rho, relay)
    return _scalar(np.asarray(total / (n - 1)))


def _diag_of(a, name):
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    if a.shape[-1] != a.shape[-2]:
        raise ValueError(f"{name} must be square")
    off = a - np.eye(a.shape[-1]) * a
    if np.any(off != 0):
        raise ValueError(f"{name} must be diagonal")
    return a


def af_general_mi(a1, a2, b, realization: ChannelRealization, rho, l=None, relay_energy=None):
    """MI per channel use of a general linear AF block of ``l`` symbol intervals.

    The source sends ``A1 x1`` over the first ``l'`` intervals while the
    relay listens, then ``A2 x2`` over the remaining ``l - l'`` intervals
    while the relay transmits ``B`` times what it heard. Inputs are i.i.d.
    with energy ``E = rho``. ``B`` must meet the relay energy budget
    (``relay_energy``, default ``E``) on every row.
    """
    a1 = _diag_of(a1, "A1")
    a2 = _diag_of(a2, "A2")
    b = np.asarray(b, dtype=complex)
    if b.ndim == 1:
        b = b[:, None]
    l1, l2 = a1.shape[-1], a2.shape[-1]
    if b.shape[-2:] != (l2, l1):
        raise ValueError(f"B must be {l2}x{l1}, got {b.shape[-2:]}")
    if l is not None and l != l1 + l2:
        raise ValueError(f"l={l} but A1, A2 give {l1 + l2}")
    e = rho
    budget = e if relay_energy is None else relay_energy
    h = realization.h[..., 1, 0]
    sw2 = realization.sigma_w2[1, 0]
    h2 = np.abs(h)[..., None] ** 2
    d1 = np.abs(np.diagonal(a1, axis1=-2, axis2=-1)) ** 2
    used = np.sum(np.abs(b) ** 2 * (e * h2[..., None] * d1 + sw2), axis=-1)
    if np.any(used > budget * (1.0 + ENERGY_RTOL)):
        raise ValueError("B violates the relay energy constraint")

    g = effective_g(realization)
    g1, g2 = g[..., 0], g[..., 1]
    batch = realization.batch_shape
    lt = l1 + l2
    sig = np.zeros(batch + (lt, lt), dtype=complex)
    sig[..., :l1, :l1] = g1[..., None, None] * a1
    sig[..., l1:, :l1] = (g2 * h)[..., None, None] * (b @ a1)
    sig[..., l1:, l1:] = g1[..., None, None] * a2
    if sw2 > 0:
        noise = np.zeros(batch + (lt, l1), dtype=complex)
        noise[..., l1:, :] = g2[..., None, None] * b
        noise_var = np.full(l1, float(sw2))
    else:
        noise = np.zeros(batch + (lt, 0), dtype=complex)
        noise_var = np.zeros(0)
    model = LinearChannelModel(sig, np.zeros(lt, dtype=int), np.arange(lt), noise, noise_var)
    return _scalar(np.asarray(subset_mi(model, {0}, e) / lt))
