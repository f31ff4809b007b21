"""Dynamic decode-and-forward: listening time, multi-relay schedule, CB-DDF.

A relay listens until the mutual information it has accumulated reaches the
codeword's ``lR`` bits, then re-encodes and transmits for the rest of the
codeword. Times are fractions of the codeword length ``l``.
"""

from __future__ import annotations

import numpy as np

from ..fading import ChannelRealization
from .af import effective_g
from .config import DecodeSchedule, ProtocolConfig

__all__ = [
    "ddf_listen_fraction",
    "outage_ddf",
    "ddf_decode_schedule",
    "outage_ddf_multi",
    "outage_cb_ddf",
    "outage_ltw_df",
    "inter_link_snr",
]

TINY = np.finfo(float).tiny


def _scalar(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


def inter_link_snr(h, sigma_w2, rho):
    """Received SNR ``|h|^2 rho / sigma_w2`` of an inter-node link.

    A noiseless link gives ``inf`` unless the gain itself is zero.
    """
    p = np.abs(np.asarray(h)) ** 2 * rho
    sw2 = np.asarray(sigma_w2, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(sw2 > 0, p / np.where(sw2 > 0, sw2, 1.0), np.where(p > 0, np.inf, 0.0))
    return out


def _quantize(f, block_length):
    if block_length is None:
        return np.maximum(f, TINY)
    l = block_length
    return np.clip(np.ceil(f * l - 1e-9) / l, 1.0 / l, 1.0)


def _round_time(t, block_length, first):
    """Snap a decode time to the codeword grid (finite ``l``) or floor it above 0."""
    if block_length is None:
        return np.maximum(t, TINY) if first else t
    l = block_length
    with np.errstate(invalid="ignore"):
        out = np.ceil(t * l - 1e-9) / l
    return np.maximum(out, 1.0 / l) if first else out


def ddf_listen_fraction(h, c, rho, rate, block_length: int | None = None):
    """Fraction of the codeword the relay spends listening.

    ``c`` is the inverse relay noise variance (``inf`` for a noiseless link).
    Continuous mode returns ``min(1, R / log2(1 + |h|^2 c rho))``, floored at
    the smallest positive float; with ``block_length`` the listening time is
    rounded up to whole symbol intervals.
    """
    c = np.asarray(c, dtype=float)
    with np.errstate(divide="ignore"):
        sw2 = np.where(np.isinf(c), 0.0, 1.0 / c)
    cap = np.log2(1.0 + inter_link_snr(h, sw2, rho))
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(cap > 0, rate / np.where(cap > 0, cap, 1.0), np.inf)
    f = np.where(rate == 0, 0.0, f)
    return _scalar(_quantize(np.minimum(f, 1.0), block_length))


def _phase_rho(rho, n_tx, fair):
    return rho / n_tx if fair else rho


def outage_ddf(realization: ChannelRealization, config: ProtocolConfig, rho):
    """Single-relay DDF outage indicator."""
    c = 1.0 / realization.sigma_w2[1, 0] if realization.sigma_w2[1, 0] > 0 else np.inf
    f = ddf_listen_fraction(realization.h[..., 1, 0], c, rho, config.rate_bpcu,
                            config.ddf_block_length)
    g2 = np.abs(effective_g(realization)) ** 2
    listen = np.log2(1.0 + g2[..., 0] * rho)
    coop = np.log2(1.0 + (g2[..., 0] + g2[..., 1]) * _phase_rho(rho, 2, config.fair_power_split))
    mi = f * listen + (1.0 - f) * coop
    return _scalar(np.asarray(mi < config.rate_bpcu))


def ddf_decode_schedule(realization: ChannelRealization, config: ProtocolConfig, rho) -> DecodeSchedule:
    """Event-driven decode times of every relay.

    At each step the undecoded relay that would reach ``R`` bits first
    decodes next (ties to the lower index) and joins the transmitters. A
    relay accumulates ``log2(1 + sum_i snr_ni / k)`` bits per use over the
    current transmitters ``i`` (``k`` of them under the fair split, else 1);
    with ``ddf_relay_mi_source_only`` only the source term counts.
    """
    n = realization.n_nodes
    batch = realization.batch_shape
    rate = config.rate_bpcu
    fair = config.fair_power_split
    snr = inter_link_snr(realization.h, np.nan_to_num(realization.sigma_w2, nan=1.0), rho)
    snr = snr.reshape((-1, n, n))
    m = snr.shape[0]
    rows = np.arange(m)

    t = np.zeros(m)
    acc = np.zeros((m, n))
    tx = np.zeros((m, n), dtype=bool)
    tx[:, 0] = True
    alive = np.ones(m, dtype=bool)
    n_dec = np.zeros(m, dtype=int)
    order = np.full((m, max(n - 1, 0)), -1, dtype=int)
    frac = np.zeros((m, n))

    for step in range(n - 1):
        k = 1 + n_dec
        if config.ddf_relay_mi_source_only:
            s = snr[:, :, 0]
        else:
            s = np.sum(np.where(tx[:, None, :], snr, 0.0), axis=2)
        r = np.log2(1.0 + (s / k[:, None] if fair else s))
        need = np.maximum(rate - acc, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            dt = np.where(need == 0, 0.0, np.where(r > 0, need / np.where(r > 0, r, 1.0), np.inf))
        dt[tx] = np.inf
        nxt = np.argmin(dt, axis=1)
        t_next = _round_time(t + dt[rows, nxt], config.ddf_block_length, step == 0)
        go = alive & (t_next < 1.0)
        span = np.where(go, t_next - t, 0.0)
        with np.errstate(invalid="ignore"):
            gained = np.nan_to_num(r * span[:, None], nan=0.0, posinf=np.inf)
        acc = np.where(go[:, None], acc + gained, acc)
        frac[rows, k - 1] += span
        t = np.where(go, t_next, t)
        tx[rows[go], nxt[go]] = True
        order[go, step] = nxt[go]
        n_dec = n_dec + go
        alive = go

    frac[rows, n_dec] += 1.0 - t
    # silent relays go after the decoders, by index
    pos = np.tile(n + np.arange(n), (m, 1))
    r_idx, s_idx = np.nonzero(order >= 0)
    pos[r_idx, order[r_idx, s_idx]] = s_idx
    order = np.argsort(pos[:, 1:], axis=1, kind="stable") + 1
    return DecodeSchedule(frac.reshape(batch + (n,)), order.reshape(batch + (max(n - 1, 0),)),
                          n_dec.reshape(batch))


def _outage_from_schedule(g2, sched: DecodeSchedule, config: ProtocolConfig, rho):
    n = g2.shape[-1]
    idx = np.concatenate([np.zeros(sched.decode_order.shape[:-1] + (1,), dtype=int),
                          sched.decode_order], axis=-1)
    ordered = np.take_along_axis(g2, idx, axis=-1)
    cum = np.cumsum(ordered, axis=-1)
    k = np.arange(1, n + 1)
    rho_k = rho / k if config.fair_power_split else np.full(n, float(rho))
    frac = sched.phase_fractions
    # a noiseless relay link can make a never-entered phase infinite
    mi = np.sum(np.where(frac > 0, frac * np.log2(1.0 + cum * rho_k), 0.0), axis=-1)
    return mi < config.rate_bpcu


def outage_ddf_multi(realization: ChannelRealization, config: ProtocolConfig, rho):
    """Multi-relay DDF outage: phase-weighted MI of the growing transmitter set."""
    sched = ddf_decode_schedule(realization, config, rho)
    g2 = np.abs(effective_g(realization)) ** 2
    return _scalar(np.asarray(_outage_from_schedule(g2, sched, config, rho)))


def _relabel(realization: ChannelRealization, dest: int) -> ChannelRealization:
    """Relay-channel view of a broadcast realization as seen by ``dest``.

    Node 0 is the source; nodes 1.. are the other destinations acting as
    relays, and the cell-site link of node k becomes its link to ``dest``.
    """
    n = realization.n_nodes
    others = [j for j in range(n) if j != dest]
    nodes_g = realization.g
    g = np.empty_like(nodes_g)
    g[..., 0] = nodes_g[..., dest]
    h = np.zeros(realization.h.shape, dtype=complex)
    g_snr = np.empty(n)
    sw2 = np.full((n, n), np.nan)
    g_snr[0] = realization.g_snr[dest]
    for a, j in enumerate(others, start=1):
        g[..., a] = realization.h[..., dest, j]
        x = realization.sigma_w2[dest, j]
        g_snr[a] = np.inf if x == 0 else 1.0 / x
        h[..., a, 0] = h[..., 0, a] = nodes_g[..., j]
        sw2[a, 0] = sw2[0, a] = 1.0 / realization.g_snr[j]
        for b_, i in enumerate(others, start=1):
            if i != j:
                h[..., a, b_] = realization.h[..., j, i]
                sw2[a, b_] = realization.sigma_w2[j, i]
    return ChannelRealization(g, h, g_snr, sw2)


def outage_cb_ddf(realization: ChannelRealization, config: ProtocolConfig, rho):
    """Common-message broadcast with DDF cooperation: outage if any destination fails."""
    n = realization.n_nodes
    out = np.zeros(realization.batch_shape, dtype=bool)
    for dest in range(n):
        view = _relabel(realization, dest)
        sched = ddf_decode_schedule(view, config, rho)
        g2 = np.abs(view.g) ** 2 * view.g_snr
        # an inf factor on a zero gain would give nan
        g2 = np.where(np.isnan(g2), 0.0, g2)
        out |= _outage_from_schedule(g2, sched, config, rho)
    return _scalar(out)


def outage_ltw_df(realization: ChannelRealization, config: ProtocolConfig, rho):
    """Fixed-slot decode-and-forward with a silent relay on failure.

    The source sends in the first half; the relay re-encodes in the second
    half only if it decoded, otherwise the second half stays silent.
    """
    rate = config.rate_bpcu
    snr = inter_link_snr(realization.h[..., 1, 0], realization.sigma_w2[1, 0], rho)
    decoded = 0.5 * np.log2(1.0 + snr) >= rate
    g2 = np.abs(effective_g(realization)) ** 2
    alone = 0.5 * np.log2(1.0 + rho * g2[..., 0])
    coop = 0.5 * np.log2(1.0 + rho * (g2[..., 0] + g2[..., 1]))
    mi = np.where(decoded, coop, alone)
    return _scalar(np.asarray(mi < rate))
