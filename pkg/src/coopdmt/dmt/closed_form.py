"""Closed-form diversity-multiplexing tradeoff curves."""

from __future__ import annotations

from dataclasses import dataclass

from ..protocols.config import Protocol

__all__ = ["TradeoffPoint", "dmt_closed_form", "emit_curve"]


@dataclass(frozen=True)
class TradeoffPoint:
    r: float
    d: float

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"multiplexing gain {self.r} outside [0, 1]")
        if self.d < 0:
            raise ValueError(f"negative diversity gain {self.d}")


def _pos(x):
    return max(x, 0.0)


def _ddf_multi(n, r):
    # three branches meeting at r = 1/n and r = 1/2
    if n == 1:
        return 1.0 - r
    if r <= 1.0 / n:
        return n * (1.0 - r)
    if r <= 0.5:
        return 1.0 + (n - 1) * (1.0 - 2.0 * r) / (1.0 - r)
    return (1.0 - r) / r


def _check_n(protocol, n):
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if protocol in (Protocol.NAF, Protocol.DDF, Protocol.LTW_DF, Protocol.LTW_AF) and n != 2:
        raise ValueError(f"{protocol.value} is defined for n = 2 only")
    if protocol in (Protocol.NAF_MULTI, Protocol.DDF_MULTI, Protocol.CMA_NAF) and n < 2:
        raise ValueError(f"{protocol.value} needs n >= 2")


def dmt_closed_form(protocol, n: int, r: float) -> float:
    """Diversity gain ``d(r)`` of ``protocol`` with ``n`` cooperating nodes.

    ``n`` counts every node that can transmit the message (source plus
    relays, or the cooperating destinations/sources); it is ignored for the
    direct link.
    """
    protocol = Protocol(protocol)
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"multiplexing gain {r} outside [0, 1]")
    _check_n(protocol, n)
    if protocol is Protocol.DIRECT:
        return 1.0 - r
    if protocol in (Protocol.GENIE_MISO, Protocol.CMA_NAF):
        return n * (1.0 - r)
    if protocol in (Protocol.NAF, Protocol.NAF_MULTI):
        return (1.0 - r) + (n - 1) * _pos(1.0 - 2.0 * r)
    if protocol is Protocol.DDF:
        return 2.0 * (1.0 - r) if r <= 0.5 else (1.0 - r) / r
    if protocol in (Protocol.DDF_MULTI, Protocol.CB_DDF):
        return _ddf_multi(n, r)
    if protocol is Protocol.LTW_DF:
        return 2.0 * _pos(1.0 - 2.0 * r)
    raise ValueError(f"no closed-form tradeoff for {protocol.value}")


def emit_curve(protocol, n: int, r_grid) -> list:
    return [TradeoffPoint(float(r), dmt_closed_form(protocol, n, r)) for r in r_grid]
