from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from ..fading import Role, Topology

__all__ = ["Protocol", "ProtocolConfig", "DecodeSchedule"]


class Protocol(str, enum.Enum):
    DIRECT = "direct"
    GENIE_MISO = "genie_miso"
    LTW_AF = "ltw_af"
    LTW_DF = "ltw_df"
    NAF = "naf"
    NAF_MULTI = "naf_multi"
    DDF = "ddf"
    DDF_MULTI = "ddf_multi"
    CB_DDF = "cb_ddf"
    CMA_NAF = "cma_naf"


_SINGLE_RELAY = {Protocol.LTW_AF, Protocol.LTW_DF, Protocol.NAF, Protocol.DDF}


@dataclass(frozen=True)
class ProtocolConfig:
    """Protocol identity plus every finite-SNR knob.

    relay_gain_scale
        AF repetition gain as a fraction of the largest gain the relay energy
        constraint allows; 1.0 takes that bound with equality.
    fair_power_split
        Transmitters sharing a symbol interval split the energy ``E`` evenly
        (``E/2`` for two, ``E/j`` for ``j``).
    ddf_block_length
        ``None`` for the asymptotic (continuous) DDF listening time, or a
        codeword length ``l`` to round listening times up to whole symbols.
    cma_repetition_share
        Fraction ``beta`` fixing the CMA-NAF gain ratio ``a^2 : b^2 = (1-beta) : beta``.
    """

    protocol: Protocol
    n_nodes: int = 2
    rate_bpcu: float = 1.0
    fair_power_split: bool = False
    relay_gain_scale: float = 1.0
    ddf_relay_mi_source_only: bool = False
    ddf_block_length: int | None = None
    cma_frames_per_superframe: int = 2
    cma_repetition_share: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "protocol", Protocol(self.protocol))
        p, n = self.protocol, self.n_nodes
        if int(n) != n or n < 1:
            raise ValueError(f"n_nodes must be a positive integer, got {n!r}")
        if p in _SINGLE_RELAY and n != 2:
            raise ValueError(f"{p.value} is a single-relay protocol (n_nodes=2)")
        if p in (Protocol.NAF_MULTI, Protocol.DDF_MULTI, Protocol.CMA_NAF) and n < 2:
            raise ValueError(f"{p.value} needs n_nodes >= 2")
        if not 0.0 < self.relay_gain_scale <= 1.0:
            raise ValueError("relay_gain_scale must lie in (0, 1]")
        if not (self.rate_bpcu >= 0 and np.isfinite(self.rate_bpcu)):
            raise ValueError("rate_bpcu must be a finite nonnegative number")
        if self.ddf_block_length is not None and self.ddf_block_length < 1:
            raise ValueError("ddf_block_length must be a positive integer")
        if self.cma_frames_per_superframe < 1:
            raise ValueError("cma_frames_per_superframe must be positive")
        if not 0.0 <= self.cma_repetition_share < 1.0:
            raise ValueError("cma_repetition_share must lie in [0, 1)")

    @property
    def topology(self) -> Topology:
        p = self.protocol
        if p is Protocol.DIRECT:
            return Topology(1, Role.POINT_TO_POINT)
        if p is Protocol.CB_DDF:
            return Topology(self.n_nodes, Role.BROADCAST)
        if p is Protocol.CMA_NAF:
            return Topology(self.n_nodes, Role.MULTIPLE_ACCESS)
        if p is Protocol.GENIE_MISO and self.n_nodes == 1:
            return Topology(1, Role.POINT_TO_POINT)
        return Topology(self.n_nodes, Role.RELAY)

    def with_rate(self, rate_bpcu: float) -> "ProtocolConfig":
        return replace(self, rate_bpcu=rate_bpcu)


@dataclass(frozen=True, eq=False)
class DecodeSchedule:
    """DDF phase structure, possibly batched over leading axes.

    ``phase_fractions[..., j]`` is the fraction of the codeword during which
    exactly ``j + 1`` nodes transmit. ``decode_order[..., k]`` is the node
    index (0-based, relays are 1..N-1) of the k-th relay to decode, and
    ``n_decoded`` how many relays decode before the codeword ends; entries of
    ``decode_order`` past ``n_decoded`` list the silent relays.
    """

    phase_fractions: np.ndarray
    decode_order: np.ndarray
    n_decoded: np.ndarray

    @property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.phase_fractions, axis=-1)
