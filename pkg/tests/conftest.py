"""Shared oracles and helpers for the test suite.

The enumeration oracle below is deliberately independent of the library's
convolution code: it walks every outcome vector of n independent Bernoulli
questions and accumulates exact products.  At n = 13 that is 8192 outcomes,
cheap enough to use freely.
"""

from __future__ import annotations

import itertools

import numpy as np


def enumerate_pmf(probs) -> np.ndarray:
    """Exhaustive 2^n enumeration of the distribution of the success count."""
    probs = [float(p) for p in probs]
    mass = np.zeros(14)
    for outcome in itertools.product((0, 1), repeat=len(probs)):
        weight = 1.0
        for bit, p in zip(outcome, probs):
            weight *= p if bit else (1.0 - p)
        mass[sum(outcome)] += weight
    return mass


def all_category_splits():
    """All 105 (sure, unsure, guess) combinations, ordered by sure then unsure."""
    return [
        (s, u, 13 - s - u)
        for s in range(14)
        for u in range(14 - s)
    ]
