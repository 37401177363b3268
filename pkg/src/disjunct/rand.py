"""Counter-based randomness for replayable Monte Carlo.

Every random draw is a pure function of (seed, trial, slot), so trial loops
can be chunked or parallelized any way at all and still produce identical
results:

    u(seed, trial, slot) = mix(mix(seed ^ (trial+1)*C1) ^ (slot+1)*C2)

where mix is the splitmix64 finalizer.  Uniform integers below m are taken
as u % m; the bias is below m / 2^64 (< 1e-13 for every population size
used here) and is documented rather than rejected away so each trial
consumes a fixed number of counter slots.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_C1 = 0x9E3779B97F4A7C15
_C2 = 0xC2B2AE3D27D4EB4F
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * _M1) & _MASK
    x = ((x ^ (x >> 27)) * _M2) & _MASK
    return x ^ (x >> 31)


def _mix64_np(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_M1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_M2)
    x ^= x >> np.uint64(31)
    return x


def draw(seed: int, trial: int, slot: int) -> int:
    """The (trial, slot) counter value for this seed, as a uint64."""
    base = mix64(seed ^ ((trial + 1) * _C1) & _MASK)
    return mix64(base ^ ((slot + 1) * _C2) & _MASK)


def draw_block(seed: int, first_trial: int, n_trials: int, slots: int) -> np.ndarray:
    """(n_trials, slots) uint64 counter values; row t is trial first_trial + t."""
    trials = np.arange(first_trial, first_trial + n_trials, dtype=np.uint64)
    base = _mix64_np(np.uint64(seed) ^ (trials + np.uint64(1)) * np.uint64(_C1))
    slot_keys = (np.arange(1, slots + 1, dtype=np.uint64)) * np.uint64(_C2)
    return _mix64_np(base[:, None] ^ slot_keys[None, :])


def uniform_indices(
    seed: int, first_trial: int, n_trials: int, slots: int, population: int
) -> np.ndarray:
    """(n_trials, slots) independent uniform indices in [0, population)."""
    return (draw_block(seed, first_trial, n_trials, slots) % np.uint64(population)).astype(
        np.int64
    )


def sample_distinct(
    seed: int, first_trial: int, n_trials: int, count: int, population: int
) -> np.ndarray:
    """(n_trials, count) distinct indices per row, uniform over ordered selections.

    Sequential sampling: the s-th draw is uniform on [0, population - s) and
    shifted past the already-chosen values, so the first t entries are a
    uniform t-subset and the last entry is uniform over the complement.
    """
    if count > population:
        raise ValueError(f"cannot draw {count} distinct from {population}")
    raw = draw_block(seed, first_trial, n_trials, count)
    picked = np.empty((n_trials, count), dtype=np.int64)
    for s in range(count):
        r = (raw[:, s] % np.uint64(population - s)).astype(np.int64)
        if s:
            prev = np.sort(picked[:, :s], axis=1)
            for c in range(s):
                r += r >= prev[:, c]
        picked[:, s] = r
    return picked
