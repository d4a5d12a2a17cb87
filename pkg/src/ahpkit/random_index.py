"""Monte Carlo regeneration of the random-index table.

For each sample a random reciprocal matrix is drawn by picking every
upper-triangle entry uniformly from the 17-point 1/9..9 scale, mirroring
reciprocals and setting the diagonal to 1; its CI is computed through the
same geometric-mean / eigenvalue-estimate pipeline used everywhere else,
and RI is the mean CI.

Sampling is chunked, and every chunk derives its own RNG substream from
the seed, so the result is a pure function of (order, samples, seed)
regardless of how chunks would be scheduled.
"""

from __future__ import annotations

import numpy as np

from .errors import OrderTooSmallError
from .matrix import SAATY_VALUES

_CHUNK = 8192


def simulate_ri(order: int, samples: int, seed: int) -> float:
    """Mean CI of ``samples`` random reciprocal matrices of the given order."""
    if order < 3:
        raise OrderTooSmallError(
            f"random-index simulation needs order >= 3 (RI is identically 0 "
            f"below that), got {order}",
            order=order,
        )
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")

    scale = np.asarray(SAATY_VALUES)
    iu, ju = np.triu_indices(order, k=1)
    n_chunks = (samples + _CHUNK - 1) // _CHUNK
    streams = np.random.SeedSequence(seed).spawn(n_chunks)

    total = 0.0
    done = 0
    for chunk_seed in streams:
        n = min(_CHUNK, samples - done)
        rng = np.random.default_rng(chunk_seed)
        vals = scale[rng.integers(0, len(scale), size=(n, iu.size))]
        mats = np.ones((n, order, order))
        mats[:, iu, ju] = vals
        mats[:, ju, iu] = 1.0 / vals
        raw = np.exp(np.mean(np.log(mats), axis=2))
        w = raw / raw.sum(axis=1, keepdims=True)
        aw = np.einsum("nij,nj->ni", mats, w)
        mu = np.sum(aw / (order * w), axis=1)
        total += float(np.sum((mu - order) / (order - 1)))
        done += n
    return total / samples
