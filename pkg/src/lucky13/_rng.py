"""Counter-based uniform random streams (vectorized numpy form).

Each trial owns an independent stream derived from (seed, trial index),
and every draw within a trial is addressed by a fixed slot number, so
results never depend on execution order, chunking, or thread count.  The
generator is a SplitMix64-style bit mixer over a 64-bit counter; the
numba kernels reimplement the identical arithmetic scalar-by-scalar, and
the cross-backend tests compare outputs bit for bit.

All numpy-side arithmetic stays on uint64 *arrays*: scalar uint64 ops
would raise overflow warnings where arrays wrap silently, and wrapping
is exactly what the mixer wants.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB

_U53_SCALE = 2.0**-53


def mask_seed(seed: int) -> int:
    """Reduce an arbitrary integer seed to the uint64 domain."""
    return int(seed) & 0xFFFFFFFFFFFFFFFF


def mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer over a uint64 array, elementwise."""
    z = z.copy()
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MULT1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MULT2)
    z ^= z >> np.uint64(31)
    return z


def trial_bases(seed: int, start: int, count: int) -> np.ndarray:
    """Per-trial stream bases for trials start .. start+count-1."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    golden = np.full(count, GOLDEN, dtype=np.uint64)
    return mix64(np.uint64(mask_seed(seed)) ^ mix64(idx * golden))


def draw_offsets(n_draws: int) -> np.ndarray:
    """Counter offsets for the fixed per-trial draw slots."""
    idx = np.arange(1, n_draws + 1, dtype=np.uint64)
    return idx * np.full(n_draws, GOLDEN, dtype=np.uint64)


def uniforms(bases: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Uniform[0, 1) matrix: rows follow ``bases``, columns ``offsets``."""
    x = mix64(bases[:, np.newaxis] + offsets[np.newaxis, :])
    return (x >> np.uint64(11)).astype(np.float64) * _U53_SCALE
