"""Counter-based sampling: matrix i of a Monte Carlo run is a pure function of (seed, i).

Each entry is SplitMix64(mix(seed) + counter * golden) reduced mod 2T+1,
with counter = i * n**2 + position. The modulo bias is below 2**-50 for
every box size the census accepts.
"""

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def splitmix64(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= _M1
    z ^= z >> np.uint64(27)
    z *= _M2
    z ^= z >> np.uint64(31)
    return z


def seed_key(seed: int) -> np.uint64:
    return splitmix64(np.array([seed % (1 << 64)], dtype=np.uint64))[0]


def sample_entries(seed: int, start: int, stop: int, n: int, T: int) -> np.ndarray:
    """Entries of sampled matrices start..stop-1, shape (stop-start, n, n)."""
    width = n * n
    counters = np.arange(start * width, stop * width, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = seed_key(seed) + counters * _GOLDEN
        z = splitmix64(z)
    vals = (z % np.uint64(2 * T + 1)).astype(np.int64) - T
    return vals.reshape(stop - start, n, n)


def box_entries(start: int, stop: int, n: int, T: int) -> np.ndarray:
    """Exhaustive odometer: matrix index -> entries, row-major, last entry fastest."""
    base = 2 * T + 1
    idx = np.arange(start, stop, dtype=np.int64)
    width = n * n
    out = np.empty((stop - start, width), dtype=np.int64)
    for k in range(width - 1, -1, -1):
        out[:, k] = idx % base - T
        idx //= base
    return out.reshape(stop - start, n, n)
