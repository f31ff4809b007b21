"""Slot-by-slot simulation of cooperative multiple access on actual numbers.

Used as an independent oracle for the linear model: the destination samples
are produced by running the transmit/receive recursion directly, and the
linear coefficients are then recovered by least squares.
"""

import numpy as np

from coopdmt.protocols import cma_schedule


def simulate(g, h, sw2, n, big_l, a, b, x, w):
    """Run one coherence interval for a batch of symbol/noise draws.

    ``g`` (effective destination gains) and ``h`` may carry a leading batch
    axis matching ``x`` and ``w`` (shape ``(T, n_obs)``). Returns the
    destination samples without destination noise and the transmitted signals.
    """
    frames = (n - 1) * big_l
    g = np.asarray(g)
    h = np.asarray(h)
    y = np.zeros(x.shape, dtype=complex)
    t_all = np.zeros(x.shape, dtype=complex)
    for k in range(frames):
        if k % big_l == 0:
            stored = [None] * n
            helpers = cma_schedule(n, k // big_l + 1)
        for s in range(n):
            tau = k * n + s
            t = a[s] * x[:, tau]
            if stored[s] is not None:
                t = t + b[s] * stored[s]
            stored[s] = None
            t_all[:, tau] = t
            y[:, tau] = g[..., s] * t
            hp = helpers[s] - 1
            stored[hp] = h[..., hp, s] * t + (w[:, tau] if sw2[hp, s] > 0 else 0.0)
    return y, t_all


def recover_coefficients(g, h, sw2, n, big_l, gains, seed=7):
    """Least-squares recovery of the signal and noise coefficient matrices."""
    n_obs = n * (n - 1) * big_l
    trials = 3 * n_obs
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((trials, n_obs)) + 1j * rng.standard_normal((trials, n_obs))
    ws = rng.standard_normal((trials, n_obs)) + 1j * rng.standard_normal((trials, n_obs))
    ys, _ = simulate(g, h, sw2, n, big_l, *gains, xs, ws)
    coef, *_ = np.linalg.lstsq(np.concatenate([xs, ws], axis=1), ys, rcond=None)
    coef = coef.T
    return coef[:, :n_obs], coef[:, n_obs:]
