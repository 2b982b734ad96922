"""Exact discrete-probability engine for a 13-question true/false game.

Everything here is a pure function over small dense arrays: the number of
correct answers out of 13 always lives on the support 0..13, so PMFs are
plain length-14 float64 vectors wrapped in :class:`Pmf13`.

Three knowledge models share one representation:

* two categories   -- Sure (p=1) and Guess (p=0.5),
* three categories -- Sure / Unsure (p=0.75) / Guess,
* per-question     -- an arbitrary probability vector (Poisson binomial).

Category profiles reduce to probability vectors, but the category path is
computed independently (shift + binomial convolution) so the two routes
cross-check each other in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

N_QUESTIONS = 13

#: Success probability for each self-assessed question category.
CATEGORY_PROB = {"S": 1.0, "U": 0.75, "G": 0.5}

SURE_P = CATEGORY_PROB["S"]
UNSURE_P = CATEGORY_PROB["U"]
GUESS_P = CATEGORY_PROB["G"]

_SUM_TOL = 1e-12
_TIE_TOL = 1e-12
_PROB_MATCH_TOL = 1e-9

_VALID_BANDS = ((1, 3), (4, 6), (7, 9), (10, 12), (13, 13))


@dataclass(frozen=True, order=True)
class LuckyRange:
    """One of the five bands a contestant can bet on: 1-3, 4-6, 7-9, 10-12, 13."""

    low: int
    high: int

    def __post_init__(self) -> None:
        if (self.low, self.high) not in _VALID_BANDS:
            raise ValueError(f"not a valid Lucky Range: {self.low}-{self.high}")

    @property
    def label(self) -> str:
        return str(self.low) if self.low == self.high else f"{self.low}-{self.high}"

    @classmethod
    def from_label(cls, label: str) -> "LuckyRange":
        text = label.strip()
        if text == "13":
            return cls(13, 13)
        try:
            low, high = (int(part) for part in text.split("-"))
        except ValueError:
            raise ValueError(f"cannot parse Lucky Range {label!r}") from None
        return cls(low, high)

    def __contains__(self, k: int) -> bool:
        return self.low <= k <= self.high

    def members(self) -> range:
        return range(self.low, self.high + 1)


#: The five bands, ascending.
LUCKY_RANGES = tuple(LuckyRange(lo, hi) for lo, hi in _VALID_BANDS)


@dataclass(frozen=True, eq=False)
class Pmf13:
    """Probability mass function over 0..13 correct answers.

    ``mass`` is a read-only float64 array of length 14; entries are
    nonnegative and sum to 1 within 1e-12.
    """

    mass: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.mass, dtype=np.float64)
        if arr.shape != (N_QUESTIONS + 1,):
            raise ValueError(f"mass must have shape (14,), got {arr.shape}")
        if np.any(arr < 0.0):
            raise ValueError("mass entries must be nonnegative")
        total = float(arr.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"mass must sum to 1 within {_SUM_TOL}, got {total!r}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "mass", arr)

    @classmethod
    def point(cls, k: int) -> "Pmf13":
        """Point mass at ``k`` correct answers."""
        mass = np.zeros(N_QUESTIONS + 1)
        mass[k] = 1.0
        return cls(mass)

    def p(self, k: int) -> float:
        return float(self.mass[k])

    def mean(self) -> float:
        return float(np.dot(np.arange(N_QUESTIONS + 1), self.mass))

    def argmax_set(self, tol: float = _TIE_TOL) -> tuple[int, ...]:
        """All k whose mass ties the maximum within ``tol``."""
        best = float(self.mass.max())
        return tuple(int(k) for k in np.flatnonzero(self.mass >= best - tol))

    def allclose(self, other: "Pmf13", atol: float = _SUM_TOL) -> bool:
        return bool(np.allclose(self.mass, other.mass, rtol=0.0, atol=atol))


@dataclass(frozen=True)
class QuestionProfile:
    """A contestant's knowledge model for the 13 questions.

    Either category counts (``sure + unsure + guess == 13``) or a full
    per-question success-probability vector with entries in [0.5, 1.0].
    """

    counts: tuple[int, int, int] | None = None
    probs: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if (self.counts is None) == (self.probs is None):
            raise ValueError("profile needs exactly one of counts or probs")
        if self.counts is not None:
            s, u, g = self.counts
            if any(int(c) != c or c < 0 for c in (s, u, g)):
                raise ValueError("category counts must be nonnegative integers")
            if s + u + g != N_QUESTIONS:
                raise ValueError(
                    f"category counts must sum to {N_QUESTIONS}, got {s + u + g}"
                )
            object.__setattr__(self, "counts", (int(s), int(u), int(g)))
        else:
            probs = tuple(float(p) for p in self.probs)
            if len(probs) != N_QUESTIONS:
                raise ValueError(f"need exactly {N_QUESTIONS} probabilities")
            if any(p < 0.5 or p > 1.0 for p in probs):
                raise ValueError("per-question probabilities must lie in [0.5, 1.0]")
            object.__setattr__(self, "probs", probs)

    @classmethod
    def from_counts(cls, sure: int, unsure: int = 0, guess: int = 0) -> "QuestionProfile":
        return cls(counts=(sure, unsure, guess))

    @classmethod
    def from_probs(cls, probs) -> "QuestionProfile":
        return cls(probs=tuple(probs))

    @property
    def is_counts(self) -> bool:
        return self.counts is not None

    def prob_vector(self) -> tuple[float, ...]:
        """The 13 per-question success probabilities (Sure first, then Unsure, Guess)."""
        if self.probs is not None:
            return self.probs
        s, u, g = self.counts
        return (SURE_P,) * s + (UNSURE_P,) * u + (GUESS_P,) * g

    def question_pool(self) -> list[str] | list[float]:
        """The multiset of question references reveals draw from."""
        if self.is_counts:
            s, u, g = self.counts
            return ["S"] * s + ["U"] * u + ["G"] * g
        return list(self.probs)


@dataclass(frozen=True)
class ModeResult:
    """Candidate modes of a sum of independent Bernoulli draws, plus its mean."""

    modes: tuple[int, ...]
    mean: float


@dataclass(frozen=True)
class ModeInRange:
    """Most likely value inside a Lucky Range; ``candidates`` is the full tie set."""

    number: int
    candidates: tuple[int, ...] = field(default=())


def binomial_pmf(n: int, p: float) -> Pmf13:
    """PMF of Binom(n, p) embedded on the 0..13 support.

    Masses are computed from exact binomial coefficients, so for dyadic ``p``
    (0.5, 0.75) every entry is exact in double precision.
    """
    if int(n) != n or not 0 <= n <= N_QUESTIONS:
        raise ValueError(f"n must be an integer in 0..{N_QUESTIONS}, got {n!r}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    n = int(n)
    mass = np.zeros(N_QUESTIONS + 1)
    for k in range(n + 1):
        mass[k] = math.comb(n, k) * p**k * (1.0 - p) ** (n - k)
    return Pmf13(mass)


def _convolve_binomial(mass: np.ndarray, n: int, p: float) -> np.ndarray:
    """Convolve ``mass`` with Binom(n, p); result stays on 0..13."""
    kernel = [math.comb(n, k) * p**k * (1.0 - p) ** (n - k) for k in range(n + 1)]
    out = np.convolve(mass, kernel)
    return out[: N_QUESTIONS + 1]


def _poisson_binomial(probs) -> np.ndarray:
    """Fold independent Bernoulli questions into a dense PMF, one at a time."""
    mass = np.zeros(N_QUESTIONS + 1)
    mass[0] = 1.0
    for p in probs:
        shifted = np.empty_like(mass)
        shifted[0] = 0.0
        shifted[1:] = mass[:-1]
        mass = mass * (1.0 - p) + shifted * p
    return mass


def exact_pmf(profile: QuestionProfile) -> Pmf13:
    """Exact distribution of the total number of correct answers.

    Category profiles go through shift-by-sure plus binomial convolution;
    probability vectors go through the iterative per-question fold.
    """
    if profile.is_counts:
        s, u, g = profile.counts
        mass = np.zeros(N_QUESTIONS + 1)
        mass[s] = 1.0
        if u:
            mass = _convolve_binomial(mass, u, UNSURE_P)
        if g:
            mass = _convolve_binomial(mass, g, GUESS_P)
        return Pmf13(mass)
    return Pmf13(_poisson_binomial(profile.probs))


def range_probability(pmf: Pmf13, lucky_range: LuckyRange) -> float:
    """P(total correct falls inside the range). N=0 is never in any range."""
    return float(pmf.mass[lucky_range.low : lucky_range.high + 1].sum())


def _remove_question(pool: list, question) -> None:
    """Drop one matching question from the remaining pool, in place."""
    if isinstance(question, str):
        label = question.strip().upper()
        if label not in CATEGORY_PROB:
            raise ValueError(f"unknown question category {question!r}")
        try:
            pool.remove(label)
        except ValueError:
            raise ValueError(f"no {label} question left to reveal") from None
        return
    p = float(question)
    for i, remaining in enumerate(pool):
        if isinstance(remaining, str):
            raise ValueError("category profiles take category letters, not probabilities")
        if math.isclose(remaining, p, rel_tol=0.0, abs_tol=_PROB_MATCH_TOL):
            del pool[i]
            return
    raise ValueError(f"no remaining question with probability {p}")


def question_probability(question) -> float:
    """Success probability of a question reference (category letter or float)."""
    if isinstance(question, str):
        try:
            return CATEGORY_PROB[question.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown question category {question!r}") from None
    return float(question)


def remaining_after(profile: QuestionProfile, reveals) -> tuple[list, int]:
    """Pool of unrevealed questions and the number of correct reveals so far.

    Raises if a reveal references a question no longer in the pool, or claims
    an incorrect answer on a probability-1 question (a null event under the
    model, so the conditional distribution would be undefined).
    """
    pool = profile.question_pool()
    correct = 0
    for question, was_correct in reveals:
        if not pool:
            raise ValueError("more reveals than questions")
        p = question_probability(question)
        if not was_correct and p >= 1.0:
            raise ValueError(
                "cannot reveal an incorrect answer on a probability-1 question"
            )
        _remove_question(pool, question)
        if was_correct:
            correct += 1
    return pool, correct


def condition_on_reveals(profile: QuestionProfile, reveals) -> Pmf13:
    """PMF of the final total given revealed outcomes so far.

    ``reveals`` is a sequence of ``(question, correct)`` pairs where
    ``question`` is a category letter for count profiles or a probability for
    vector profiles.  Independence makes this a shift of the remaining
    questions' distribution by the observed correct count.
    """
    pool, correct = remaining_after(profile, reveals)
    mass = _poisson_binomial(question_probability(q) for q in pool)
    shifted = np.zeros(N_QUESTIONS + 1)
    shifted[correct : correct + (len(pool) + 1)] = mass[: len(pool) + 1]
    return Pmf13(shifted)


def darroch_mode(probs) -> ModeResult:
    """Candidate modes of a Poisson binomial variable from its mean alone.

    Writing mu for the mean and k for its integer part, the most likely
    outcome is pinned to a single value on the outer parts of each unit
    interval and to the pair {k, k+1} on the middle band; every candidate is
    within 1 of mu.
    """
    p = [float(x) for x in probs]
    if not p:
        raise ValueError("probability vector must be nonempty")
    if len(p) > N_QUESTIONS:
        raise ValueError(f"at most {N_QUESTIONS} probabilities supported")
    if any(x < 0.0 or x > 1.0 for x in p):
        raise ValueError("probabilities must lie in [0, 1]")
    n = len(p)
    mu = float(sum(p))
    k = math.floor(mu)
    if k >= n:
        return ModeResult(modes=(n,), mean=mu)
    two_mode_low = k + 1.0 / (k + 2)
    two_mode_high = k + 1.0 - 1.0 / (n - k + 1)
    if mu < two_mode_low:
        modes: tuple[int, ...] = (k,)
    elif mu <= two_mode_high:
        modes = (k, k + 1)
    else:
        modes = (k + 1,)
    return ModeResult(modes=modes, mean=mu)


def pick_nearest_mean(candidates, mean: float) -> int:
    """Tie-break a set of equally likely values: nearest the mean, upward on ties."""
    return min(candidates, key=lambda k: (abs(k - mean), -k))


def mode_in_range(pmf: Pmf13, lucky_range: LuckyRange) -> ModeInRange:
    """Argmax of the PMF restricted to a range, reporting all tied values.

    Exact ties are real here: category profiles produce dyadic masses, so
    equal probabilities compare equal in floating point.  ``number`` is the
    tied value closest to the distribution mean, the higher one when
    equidistant.
    """
    members = list(lucky_range.members())
    masses = pmf.mass[members]
    best = float(masses.max())
    candidates = tuple(k for k, m in zip(members, masses) if m >= best - _TIE_TOL)
    return ModeInRange(
        number=pick_nearest_mean(candidates, pmf.mean()), candidates=candidates
    )
