"""Per-realization mutual information and outage indicators."""

from __future__ import annotations

import numpy as np

from ..fading import ChannelRealization
from .af import (af_general_mi, effective_g, mi_direct, mi_genie_miso, mi_ltw_af_frame,
                 mi_naf_frame, mi_naf_multi, naf_relay_gain, relay_gain)
from .cma import (_calibrate, cma_build_model, cma_calibrate_gains, cma_power_residual, cma_schedule,
                  outage_cma)
from .config import DecodeSchedule, Protocol, ProtocolConfig
from .ddf import (ddf_decode_schedule, ddf_listen_fraction, inter_link_snr, outage_cb_ddf,
                  outage_ddf, outage_ddf_multi, outage_ltw_df)

__all__ = [
    "Protocol", "ProtocolConfig", "DecodeSchedule",
    "mi_direct", "mi_genie_miso", "naf_relay_gain", "relay_gain", "mi_naf_frame",
    "mi_ltw_af_frame", "mi_naf_multi", "af_general_mi", "effective_g",
    "ddf_listen_fraction", "outage_ddf", "ddf_decode_schedule", "outage_ddf_multi",
    "outage_cb_ddf", "outage_ltw_df", "inter_link_snr",
    "cma_schedule", "cma_calibrate_gains", "cma_power_residual", "cma_build_model", "outage_cma",
    "outage",
]

# cap on batch elements times squared model size per CMA evaluation (memory)
_CMA_BUDGET = 1 << 21


def _outage_cma(realization: ChannelRealization, config: ProtocolConfig, rho):
    gains = _calibrate(config, rho, realization.sigma_w2)
    flat = realization.g.reshape(-1, realization.n_nodes)
    n_obs = config.n_nodes * (config.n_nodes - 1) * config.cma_frames_per_superframe
    step = max(1, _CMA_BUDGET // n_obs ** 2)
    m = flat.shape[0]
    h = realization.h.reshape(m, config.n_nodes, config.n_nodes)
    parts = []
    for lo in range(0, m, step):
        part = ChannelRealization(flat[lo:lo + step], h[lo:lo + step],
                                  realization.g_snr, realization.sigma_w2)
        parts.append(outage_cma(cma_build_model(part, config, gains), config, rho))
    out = np.concatenate(parts) if parts else np.zeros(0, dtype=bool)
    return out.reshape(realization.batch_shape)


def outage(realization: ChannelRealization, config: ProtocolConfig, rho):
    """Outage indicator(s) of ``config.protocol`` at reference SNR ``rho``."""
    p = config.protocol
    rate = config.rate_bpcu
    if p is Protocol.DIRECT:
        out = mi_direct(effective_g(realization)[..., 0], rho) < rate
    elif p is Protocol.GENIE_MISO:
        out = mi_genie_miso(effective_g(realization), rho) < rate
    elif p is Protocol.NAF:
        b = relay_gain(realization, config, rho)
        out = mi_naf_frame(realization, b, config, rho) < rate
    elif p is Protocol.LTW_AF:
        b = relay_gain(realization, config, rho, ltw=True)
        out = mi_ltw_af_frame(realization, b, config, rho) < rate
    elif p is Protocol.NAF_MULTI:
        out = mi_naf_multi(realization, config, rho) < rate
    elif p is Protocol.LTW_DF:
        out = outage_ltw_df(realization, config, rho)
    elif p is Protocol.DDF:
        out = outage_ddf(realization, config, rho)
    elif p is Protocol.DDF_MULTI:
        out = outage_ddf_multi(realization, config, rho)
    elif p is Protocol.CB_DDF:
        out = outage_cb_ddf(realization, config, rho)
    elif p is Protocol.CMA_NAF:
        out = _outage_cma(realization, config, rho)
    else:  # pragma: no cover
        raise ValueError(f"unknown protocol {p!r}")
    out = np.asarray(out)
    return out[()] if out.ndim == 0 else out

