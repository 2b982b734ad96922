"""Numba twins of the simulation inner loops.

These reimplement, scalar by scalar, the exact arithmetic of the
vectorized numpy paths in ``simulation``: same SplitMix64 mixer, same
draw-slot layout, same stable ordering for expertise selection.  A
histogram produced here must match the numpy backend bit for bit; the
test suite enforces that.

Importing this module is safe without numba installed: ``HAVE_NUMBA``
is False and the kernel handles are None.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MULT1 = np.uint64(0xBF58476D1CE4E5B9)
_MULT2 = np.uint64(0x94D049BB133111EB)
_U53_SCALE = 2.0**-53

if HAVE_NUMBA:

    @njit(cache=True, nogil=True, inline="always")
    def _mix64(z):
        z ^= z >> np.uint64(30)
        z = z * _MULT1
        z ^= z >> np.uint64(27)
        z = z * _MULT2
        z ^= z >> np.uint64(31)
        return z

    @njit(cache=True, nogil=True, inline="always")
    def _draw(base, slot):
        x = _mix64(base + np.uint64(slot + 1) * _GOLDEN)
        return np.float64(x >> np.uint64(11)) * _U53_SCALE

    @njit(cache=True, nogil=True, inline="always")
    def _trial_base(seed, trial):
        return _mix64(seed ^ _mix64(np.uint64(trial + 1) * _GOLDEN))

    @njit(cache=True, nogil=True)
    def profile_histogram(seed, start, trials, probs, counts):
        n = probs.shape[0]
        for i in range(trials):
            base = _trial_base(seed, start + i)
            total = 0
            for q in range(n):
                if _draw(base, q) < probs[q]:
                    total += 1
            counts[total] += 1

    @njit(cache=True, nogil=True)
    def population_histogram(
        seed,
        start,
        trials,
        cdf,
        named,
        expertise_trials,
        success_p,
        inv_weights,
        weighted,
        sure_p,
        unsure_correct_p,
        non_expert_p,
        counts,
    ):
        n_cat = cdf.shape[0]
        key_slot = expertise_trials
        cat_slot = expertise_trials + named
        sure_slot = cat_slot + 13
        answer_slot = sure_slot + 13
        keys = np.empty(named, dtype=np.float64)
        expert = np.zeros(n_cat, dtype=np.bool_)
        capped = 0
        for i in range(trials):
            base = _trial_base(seed, start + i)
            successes = 0
            for j in range(expertise_trials):
                if _draw(base, j) < success_p:
                    successes += 1
            q_count = successes + 1
            if q_count > named:
                q_count = named
                capped += 1
            for c in range(named):
                u = _draw(base, key_slot + c)
                keys[c] = -(u ** inv_weights[c]) if weighted else u
            order = np.argsort(keys, kind="mergesort")
            for c in range(n_cat):
                expert[c] = False
            for pos in range(q_count):
                expert[order[pos]] = True
            total = 0
            for q in range(13):
                u = _draw(base, cat_slot + q)
                category = 0
                while category < n_cat - 1 and u >= cdf[category]:
                    category += 1
                if expert[category]:
                    if _draw(base, sure_slot + q) < sure_p:
                        total += 1
                    elif _draw(base, answer_slot + q) < unsure_correct_p:
                        total += 1
                elif _draw(base, answer_slot + q) < non_expert_p:
                    total += 1
            counts[total] += 1
        return capped

else:  # pragma: no cover - exercised only without numba
    profile_histogram = None
    population_histogram = None
