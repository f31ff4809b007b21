"""Quasi-static Rayleigh fading: topologies, link SNR bookkeeping and sampling.

Conventions used throughout the package:

* the destination noise has unit variance, so the symbol energy ``E`` equals
  the reference SNR ``rho``;
* a node-to-destination link ``g_j`` may carry a fixed SNR offset, stored as a
  linear power factor in :attr:`ChannelRealization.g_snr`;
* an inter-node link ``h_ji`` carries its offset as the receiving node's noise
  variance ``sigma_w2 = 10**(-offset/10)`` (so ``c = 1/sigma_w2``). A noiseless
  link has ``sigma_w2 == 0``.

Inter-node links are reciprocal (``h_ji == h_ij``); nodes are 1-based in link
ids and 0-based in arrays.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

__all__ = [
    "Role",
    "Topology",
    "LinkSnrProfile",
    "ChannelRealization",
    "snr_linear",
    "snr_db",
    "exponential_order",
    "substream",
    "sample_realization",
    "sample_batch",
]


def snr_linear(db):
    """dB to linear power ratio."""
    out = 10.0 ** (np.asarray(db, dtype=float) / 10.0)
    return float(out) if out.ndim == 0 else out


def snr_db(linear):
    """Linear power ratio to dB."""
    return 10.0 * np.log10(linear)


def exponential_order(x, rho):
    """Exponential order ``-log(x)/log(rho)`` of a positive channel quantity.

    ``x = 1/rho`` has order 1, ``x = rho`` has order -1.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("exponential order needs x > 0")
    if rho <= 1:
        raise ValueError("exponential order needs rho > 1")
    out = -np.log(x) / math.log(rho)
    return float(out) if out.ndim == 0 else out


def substream(seed: int, *key: int) -> np.random.Generator:
    """Counter-based random stream keyed by ``(seed, *key)``.

    Streams for distinct keys are statistically independent, and a stream
    depends only on its key, never on the order in which streams are created.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


class Role(str, enum.Enum):
    RELAY = "relay"
    BROADCAST = "broadcast"
    MULTIPLE_ACCESS = "multiple_access"
    POINT_TO_POINT = "point_to_point"


@dataclass(frozen=True)
class Topology:
    """``n_nodes`` partners plus one cell site.

    Relay: node 1 is the source, nodes 2..N relays. Broadcast: N destinations
    served by one source (``g_j`` is source to destination j). Multiple
    access: N sources. Point-to-point: a single link ``g_1``.
    """

    n_nodes: int
    role: Role = Role.RELAY

    def __post_init__(self):
        object.__setattr__(self, "role", Role(self.role))
        if int(self.n_nodes) != self.n_nodes or self.n_nodes < 1:
            raise ValueError(f"n_nodes must be a positive integer, got {self.n_nodes!r}")
        if self.role in (Role.RELAY, Role.MULTIPLE_ACCESS) and self.n_nodes < 2:
            raise ValueError(f"{self.role.value} topology needs n_nodes >= 2")
        if self.role is Role.POINT_TO_POINT and self.n_nodes != 1:
            raise ValueError("point-to-point topology has exactly one node")

    @property
    def n_inter_links(self) -> int:
        """Number of distinct (reciprocal) inter-node gains."""
        return self.n_nodes * (self.n_nodes - 1) // 2


_G_ID = re.compile(r"^g(\d+)$")
_H_ID = re.compile(r"^h(\d+),(\d+)$|^h(\d)(\d)$")


def _parse_link(link: str):
    """Return ("g", j) or ("h", j, i) with 0-based j > i, or a wildcard tuple."""
    if link in ("g*", "h*"):
        return (link[0], "*")
    m = _G_ID.match(link)
    if m:
        j = int(m.group(1)) - 1
        if j < 0:
            raise ValueError(f"bad link id {link!r}")
        return ("g", j)
    m = _H_ID.match(link)
    if m:
        a, b = (m.group(1), m.group(2)) if m.group(1) else (m.group(3), m.group(4))
        j, i = int(a) - 1, int(b) - 1
        if j == i or min(i, j) < 0:
            raise ValueError(f"bad link id {link!r}")
        return ("h", max(i, j), min(i, j))
    raise ValueError(f"unknown link id {link!r}; expected g<j>, h<j><i>, h<j>,<i>, g* or h*")


@dataclass(frozen=True)
class LinkSnrProfile:
    """Reference SNR plus fixed per-link offsets.

    ``offsets_db`` maps link ids (``"g2"``, ``"h21"``, ``"h3,1"``, or the
    wildcards ``"g*"`` / ``"h*"``) to dB offsets; a specific id overrides a
    wildcard. ``noiseless_links`` lists inter-node links treated as error-free.
    """

    base_snr_db: float
    offsets_db: Mapping[str, float] = field(default_factory=dict)
    noiseless_links: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "offsets_db", dict(self.offsets_db))
        object.__setattr__(self, "noiseless_links", frozenset(self.noiseless_links))
        if not math.isfinite(self.base_snr_db):
            raise ValueError("base_snr_db must be finite")
        parsed_off = {}
        for k, v in self.offsets_db.items():
            if not math.isfinite(v):
                raise ValueError(f"offset for {k!r} is not finite")
            parsed_off[_parse_link(k)] = v
        parsed_nl = {_parse_link(k) for k in self.noiseless_links}
        for p in parsed_nl:
            if p[0] == "g":
                raise ValueError("only inter-node (h) links can be noiseless")
            # a specific id overrides a wildcard, so only same-level clashes count
            if p in parsed_off or (p[1] == "*" and any(q[0] == "h" for q in parsed_off)):
                raise ValueError(f"link {p} is both offset and noiseless")

    @property
    def rho(self) -> float:
        return snr_linear(self.base_snr_db)

    def with_snr(self, snr_db_value: float) -> "LinkSnrProfile":
        return LinkSnrProfile(snr_db_value, self.offsets_db, self.noiseless_links)

    def resolve(self, n_nodes: int):
        """Per-link quantities for ``n_nodes`` nodes.

        Returns ``(g_snr, sigma_w2)``: linear power factors of shape ``(N,)``
        and inter-node noise variances of shape ``(N, N)`` (0 on noiseless
        links, NaN on the unused diagonal).
        """
        off = {_parse_link(k): v for k, v in self.offsets_db.items()}
        nl = {_parse_link(k) for k in self.noiseless_links}
        g_snr = np.full(n_nodes, 10.0 ** (off.get(("g", "*"), 0.0) / 10.0))
        for key, v in off.items():
            if key[0] == "g" and key[1] != "*":
                if key[1] >= n_nodes:
                    raise ValueError(f"link g{key[1] + 1} outside a {n_nodes}-node topology")
                g_snr[key[1]] = 10.0 ** (v / 10.0)
        sw2 = np.full((n_nodes, n_nodes), 10.0 ** (-off.get(("h", "*"), 0.0) / 10.0))
        if ("h", "*") in nl:
            sw2[:] = 0.0
        for key, v in off.items():
            if key[0] == "h" and key[1] != "*":
                j, i = key[1], key[2]
                if j >= n_nodes:
                    raise ValueError(f"link h{j + 1}{i + 1} outside a {n_nodes}-node topology")
                sw2[j, i] = sw2[i, j] = 10.0 ** (-v / 10.0)
        for key in nl:
            if key[1] != "*":
                j, i = key[1], key[2]
                if j >= n_nodes:
                    raise ValueError(f"link h{j + 1}{i + 1} outside a {n_nodes}-node topology")
                sw2[j, i] = sw2[i, j] = 0.0
        np.fill_diagonal(sw2, np.nan)
        return g_snr, sw2


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """Complex link gains of one (or a batch of) quasi-static draws.

    ``g[..., j]`` is node j to destination; ``h[..., j, i]`` node i to node j
    (symmetric, zero diagonal). Leading axes index independent draws.
    """

    g: np.ndarray
    h: np.ndarray
    g_snr: np.ndarray
    sigma_w2: np.ndarray

    def __post_init__(self):
        n = self.g.shape[-1]
        if self.h.shape[-2:] != (n, n) or self.h.shape[:-2] != self.g.shape[:-1]:
            raise ValueError("g and h dimensions disagree")
        if self.g_snr.shape != (n,) or self.sigma_w2.shape != (n, n):
            raise ValueError("link profile does not match the realization")
        if not (np.all(np.isfinite(self.g)) and np.all(np.isfinite(self.h))):
            raise ValueError("channel gains must be finite")

    @property
    def n_nodes(self) -> int:
        return self.g.shape[-1]

    @property
    def batch_shape(self) -> tuple:
        return self.g.shape[:-1]

    def noiseless(self, j: int, i: int) -> bool:
        return self.sigma_w2[j, i] == 0.0

    def __getitem__(self, idx) -> "ChannelRealization":
        """Select draws along the batch axes."""
        return ChannelRealization(self.g[idx], self.h[idx], self.g_snr, self.sigma_w2)

    @classmethod
    def from_gains(cls, g, h=None, profile: LinkSnrProfile | None = None) -> "ChannelRealization":
        """Build a realization from explicit gains (tests, worked examples).

        ``h`` may be a full matrix or omitted for point-to-point.
        """
        g = np.asarray(g, dtype=complex)
        n = g.shape[-1]
        if h is None:
            h = np.zeros(g.shape[:-1] + (n, n), dtype=complex)
        h = np.asarray(h, dtype=complex)
        profile = profile or LinkSnrProfile(0.0)
        g_snr, sw2 = profile.resolve(n)
        return cls(g, h, g_snr, sw2)


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    z = rng.standard_normal(shape + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * math.sqrt(0.5)


def sample_batch(topology: Topology, profile: LinkSnrProfile, rng: np.random.Generator,
                 size: int) -> ChannelRealization:
    """Draw ``size`` independent realizations with CN(0, 1) gains."""
    n = topology.n_nodes
    g = _complex_normal(rng, (size, n))
    h = np.zeros((size, n, n), dtype=complex)
    if n > 1:
        iu = np.triu_indices(n, 1)
        upper = _complex_normal(rng, (size, len(iu[0])))
        h[:, iu[0], iu[1]] = upper
        h[:, iu[1], iu[0]] = upper
    g_snr, sw2 = profile.resolve(n)
    return ChannelRealization(g, h, g_snr, sw2)


def sample_realization(topology: Topology, profile: LinkSnrProfile,
                       rng: np.random.Generator) -> ChannelRealization:
    """Draw a single realization (batch shape ``()``)."""
    return sample_batch(topology, profile, rng, 1)[0]
