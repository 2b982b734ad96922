"""Seeded Monte Carlo engines: profile verification and the population model.

Two interchangeable backends produce bit-identical histograms: a numba
one compiled from the scalar kernels in ``_kernels``, and a pure-numpy
vectorized one in this module.  Selection order is the ``backend``
argument, then the ``LUCKY13_BACKEND`` environment variable (``numba``
or ``numpy``), then numba when importable.

Determinism contract: every trial draws from a counter-based stream
keyed by (seed, trial index) with fixed draw slots, so a histogram
depends only on (model, trials, seed) -- never on backend, chunking, or
worker count.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._kernels import HAVE_NUMBA, population_histogram, profile_histogram
from ._rng import draw_offsets, mask_seed, trial_bases, uniforms
from .distributions import CATEGORY_PROB, N_QUESTIONS, QuestionProfile

logger = logging.getLogger(__name__)

NUMPY_BACKEND = "numpy"
NUMBA_BACKEND = "numba"
BACKEND_ENV_VAR = "LUCKY13_BACKEND"

#: Name whose questions can be drawn but never count as an expertise.
CATCH_ALL_CATEGORY = "Other"

#: Published question-category frequencies.  The printed values sum to
#: 1.01 (rounded survey data); samplers normalize them internally.
TABLE_CATEGORIES = (
    ("Celebrities", 0.12),
    ("Movies/TV", 0.08),
    ("Animals/Biology", 0.08),
    ("History", 0.07),
    ("Sports", 0.07),
    ("Geography", 0.07),
    ("Words", 0.05),
    ("Musicians", 0.05),
    ("Food", 0.04),
    ("US Politicians", 0.04),
    ("Inventions", 0.03),
    ("U.S. States", 0.03),
    ("Space", 0.03),
    ("U.S. Gov./Laws", 0.03),
    ("Holidays", 0.02),
    ("Literature/Magazines", 0.02),
    ("Theater", 0.02),
    ("Landmarks", 0.02),
    ("Periodic Table of Elements", 0.02),
    ("Business", 0.02),
    (CATCH_ALL_CATEGORY, 0.10),
)

_ROUNDING_SLACK = 0.02
_BLOCK = 16_384


@dataclass(frozen=True)
class SimConfig:
    """Trial count and master seed for a simulation run."""

    trials: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "seed", mask_seed(self.seed))


@dataclass(frozen=True)
class PopulationModel:
    """Average-contestant model: category mix plus expertise behavior.

    A player holds expertise in 1 + Binom(expertise_trials, success_p)
    categories sampled without replacement from the non-catch-all names.
    A question on an expertise category is Sure with probability
    ``expertise_sure_p`` (correct outright) and otherwise Unsure,
    correct at the usual 0.75; any other question is correct with
    probability ``non_expert_p``.
    """

    categories: tuple[tuple[str, float], ...] = TABLE_CATEGORIES
    expertise_trials: int = 20
    expertise_success_p: float = 0.075
    expertise_sure_p: float = 0.4
    expertise_unsure_p: float = 0.6
    non_expert_p: float = 0.5
    weighted_expertise: bool = False

    def __post_init__(self) -> None:
        cats = tuple((str(name), float(p)) for name, p in self.categories)
        if not cats:
            raise ValueError("model needs at least one category")
        if any(p <= 0.0 for _, p in cats):
            raise ValueError("category probabilities must be positive")
        total = sum(p for _, p in cats)
        if abs(total - 1.0) > _ROUNDING_SLACK:
            raise ValueError(
                f"category probabilities must sum to 1 (within published "
                f"rounding), got {total!r}"
            )
        if len({name for name, _ in cats}) != len(cats):
            raise ValueError("category names must be distinct")
        if not self.eligible_names(cats):
            raise ValueError("model needs at least one expertise-eligible category")
        if int(self.expertise_trials) != self.expertise_trials or self.expertise_trials < 1:
            raise ValueError("expertise_trials must be a positive integer")
        for label in ("expertise_success_p", "expertise_sure_p", "expertise_unsure_p", "non_expert_p"):
            value = getattr(self, label)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{label} must lie in [0, 1], got {value!r}")
        if abs(self.expertise_sure_p + self.expertise_unsure_p - 1.0) > 1e-12:
            raise ValueError("sure and unsure shares of an expert answer must sum to 1")
        object.__setattr__(self, "categories", cats)
        object.__setattr__(self, "expertise_trials", int(self.expertise_trials))

    @staticmethod
    def eligible_names(categories) -> tuple[str, ...]:
        return tuple(n for n, _ in categories if n != CATCH_ALL_CATEGORY)

    @property
    def expertise_pool(self) -> tuple[str, ...]:
        """Category names an expertise can be drawn from."""
        return self.eligible_names(self.categories)

    def normalized_weights(self) -> np.ndarray:
        """Category probabilities rescaled to sum to exactly 1."""
        raw = np.array([p for _, p in self.categories], dtype=np.float64)
        return raw / raw.sum()

    @classmethod
    def from_json(cls, path: str | Path) -> "PopulationModel":
        """Load a model from a JSON file of name/probability pairs."""
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        try:
            categories = tuple(
                (str(entry["name"]), float(entry["probability"]))
                for entry in data["categories"]
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed population model: {exc}") from None
        fields = (
            "expertise_trials",
            "expertise_success_p",
            "expertise_sure_p",
            "expertise_unsure_p",
            "non_expert_p",
            "weighted_expertise",
        )
        kwargs = {name: data[name] for name in fields if name in data}
        if "expertise_trials" not in kwargs:
            eligible = cls.eligible_names(categories)
            if not eligible:
                raise ValueError("model needs at least one expertise-eligible category")
            kwargs["expertise_trials"] = len(eligible)
        return cls(categories=categories, **kwargs)

    def _sampler_arrays(self):
        """Kernel-ready arrays with expertise-eligible categories leading."""
        eligible = [(n, p) for n, p in self.categories if n != CATCH_ALL_CATEGORY]
        rest = [(n, p) for n, p in self.categories if n == CATCH_ALL_CATEGORY]
        ordered = eligible + rest
        weights = np.array([p for _, p in ordered], dtype=np.float64)
        weights /= weights.sum()
        cdf = np.cumsum(weights)
        cdf[-1] = 1.0
        inv_w = 1.0 / weights[: len(eligible)]
        names = tuple(n for n, _ in ordered)
        return names, len(eligible), weights, cdf, inv_w


DEFAULT_POPULATION = PopulationModel()


@dataclass(frozen=True, eq=False)
class Histogram14:
    """Empirical distribution of correct-answer totals over 0..13."""

    counts: np.ndarray
    total: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.counts, dtype=np.int64)
        if arr.shape != (N_QUESTIONS + 1,):
            raise ValueError(f"counts must have shape (14,), got {arr.shape}")
        if np.any(arr < 0):
            raise ValueError("counts must be nonnegative")
        if int(arr.sum()) != self.total:
            raise ValueError("histogram total must equal the sum of counts")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)

    @classmethod
    def from_counts(cls, counts) -> "Histogram14":
        arr = np.asarray(counts, dtype=np.int64)
        return cls(counts=arr, total=int(arr.sum()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Histogram14):
            return NotImplemented
        return self.total == other.total and bool(
            np.array_equal(self.counts, other.counts)
        )

    def frequencies(self) -> np.ndarray:
        return self.counts / self.total

    def frequency(self, low: int, high: int | None = None) -> float:
        """Empirical probability of a count, or of an inclusive band."""
        high = low if high is None else high
        return float(self.counts[low : high + 1].sum()) / self.total

    def mean(self) -> float:
        return float(np.dot(np.arange(N_QUESTIONS + 1), self.counts)) / self.total

    def mode(self) -> int:
        """Most frequent count (smallest on ties)."""
        return int(np.argmax(self.counts))

    def to_csv(self) -> str:
        lines = ["k,count,frequency"]
        for k in range(N_QUESTIONS + 1):
            lines.append(f"{k},{int(self.counts[k])},{self.counts[k] / self.total:.4f}")
        return "\n".join(lines) + "\n"

    def to_text(self, width: int = 50) -> str:
        peak = max(int(self.counts.max()), 1)
        lines = []
        for k in range(N_QUESTIONS + 1):
            count = int(self.counts[k])
            bar = "#" * round(width * count / peak)
            lines.append(f"{k:>2}  {count:>8}  {bar}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Backend selection
# ---------------------------------------------------------------------------

def available_backends() -> tuple[str, ...]:
    if HAVE_NUMBA:
        return (NUMPY_BACKEND, NUMBA_BACKEND)
    return (NUMPY_BACKEND,)


def resolve_backend(backend: str | None = None) -> str:
    """Pick the backend: argument, then environment, then best available."""
    chosen = backend or os.environ.get(BACKEND_ENV_VAR)
    if chosen is None:
        return NUMBA_BACKEND if HAVE_NUMBA else NUMPY_BACKEND
    if chosen not in (NUMPY_BACKEND, NUMBA_BACKEND):
        raise ValueError(f"unknown simulation backend {chosen!r}")
    if chosen == NUMBA_BACKEND and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return chosen


def _partition(trials: int, workers: int):
    if int(workers) != workers or workers < 1:
        raise ValueError(f"workers must be a positive integer, got {workers!r}")
    workers = min(int(workers), trials)
    step, extra = divmod(trials, workers)
    start = 0
    for i in range(workers):
        count = step + (1 if i < extra else 0)
        yield start, count
        start += count


def _run_partitioned(chunk_fn, trials: int, workers: int):
    parts = list(_partition(trials, workers))
    if len(parts) == 1:
        return [chunk_fn(*parts[0])]
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        return list(pool.map(lambda p: chunk_fn(*p), parts))


# ---------------------------------------------------------------------------
# Profile simulation
# ---------------------------------------------------------------------------

def _profile_chunk_numpy(seed: int, probs: np.ndarray, start: int, count: int):
    counts = np.zeros(N_QUESTIONS + 1, dtype=np.int64)
    offsets = draw_offsets(len(probs))
    for block_start in range(start, start + count, _BLOCK):
        n = min(_BLOCK, start + count - block_start)
        u = uniforms(trial_bases(seed, block_start, n), offsets)
        totals = (u < probs[np.newaxis, :]).sum(axis=1)
        counts += np.bincount(totals, minlength=N_QUESTIONS + 1)
    return counts


def _profile_chunk_numba(seed: int, probs: np.ndarray, start: int, count: int):
    counts = np.zeros(N_QUESTIONS + 1, dtype=np.int64)
    profile_histogram(np.uint64(seed), start, count, probs, counts)
    return counts


def simulate_profile(
    profile: QuestionProfile,
    config: SimConfig = SimConfig(),
    backend: str | None = None,
    workers: int = 1,
) -> Histogram14:
    """Empirical distribution of the total correct count for one profile."""
    chosen = resolve_backend(backend)
    probs = np.array(profile.prob_vector(), dtype=np.float64)
    chunk = _profile_chunk_numba if chosen == NUMBA_BACKEND else _profile_chunk_numpy

    def run(start, count):
        return chunk(config.seed, probs, start, count)

    pieces = _run_partitioned(run, config.trials, workers)
    return Histogram14.from_counts(sum(pieces))


# ---------------------------------------------------------------------------
# Population simulation
# ---------------------------------------------------------------------------

def _population_chunk_numpy(seed, model_arrays, model, start, count):
    _, named, _, cdf, inv_w = model_arrays
    e_trials = model.expertise_trials
    n_cat = len(cdf)
    counts = np.zeros(N_QUESTIONS + 1, dtype=np.int64)
    capped = 0
    offsets = draw_offsets(e_trials + named + 3 * N_QUESTIONS)
    key_lo, key_hi = e_trials, e_trials + named
    cat_hi = key_hi + N_QUESTIONS
    sure_hi = cat_hi + N_QUESTIONS
    for block_start in range(start, start + count, _BLOCK):
        n = min(_BLOCK, start + count - block_start)
        u = uniforms(trial_bases(seed, block_start, n), offsets)
        raw_q = (u[:, :e_trials] < model.expertise_success_p).sum(axis=1) + 1
        q = np.minimum(raw_q, named)
        capped += int((raw_q > named).sum())
        keys = u[:, key_lo:key_hi]
        if model.weighted_expertise:
            keys = -(keys ** inv_w[np.newaxis, :])
        order = np.argsort(keys, axis=1, kind="stable")
        ranks = np.empty_like(order)
        np.put_along_axis(
            ranks, order, np.broadcast_to(np.arange(named), order.shape), axis=1
        )
        expert = np.zeros((n, n_cat), dtype=bool)
        expert[:, :named] = ranks < q[:, np.newaxis]
        cat_u = u[:, key_hi:cat_hi]
        category = np.searchsorted(cdf, cat_u.ravel(), side="right").reshape(n, -1)
        np.minimum(category, n_cat - 1, out=category)
        on_expert = np.take_along_axis(expert, category, axis=1)
        sure = u[:, cat_hi:sure_hi] < model.expertise_sure_p
        answer = u[:, sure_hi:]
        correct = np.where(
            on_expert,
            sure | (answer < CATEGORY_PROB["U"]),
            answer < model.non_expert_p,
        )
        counts += np.bincount(correct.sum(axis=1), minlength=N_QUESTIONS + 1)
    return counts, capped


def _population_chunk_numba(seed, model_arrays, model, start, count):
    _, named, _, cdf, inv_w = model_arrays
    counts = np.zeros(N_QUESTIONS + 1, dtype=np.int64)
    capped = population_histogram(
        np.uint64(seed),
        start,
        count,
        cdf,
        named,
        model.expertise_trials,
        model.expertise_success_p,
        inv_w,
        model.weighted_expertise,
        model.expertise_sure_p,
        CATEGORY_PROB["U"],
        model.non_expert_p,
        counts,
    )
    return counts, int(capped)


def run_population(
    model: PopulationModel = DEFAULT_POPULATION,
    config: SimConfig = SimConfig(),
    backend: str | None = None,
    workers: int = 1,
) -> Histogram14:
    """Histogram of correct totals over independently simulated players."""
    chosen = resolve_backend(backend)
    arrays = model._sampler_arrays()
    chunk = (
        _population_chunk_numba if chosen == NUMBA_BACKEND else _population_chunk_numpy
    )

    def run(start, count):
        return chunk(config.seed, arrays, model, start, count)

    pieces = _run_partitioned(run, config.trials, workers)
    counts = sum(part for part, _ in pieces)
    capped = sum(capped for _, capped in pieces)
    if capped:
        logger.warning(
            "expertise count exceeded the %d available categories in %d of %d "
            "trials; capped at the full set",
            len(model.expertise_pool),
            capped,
            config.trials,
        )
    return Histogram14.from_counts(counts)


# ---------------------------------------------------------------------------
# Single-player inspection helpers
# ---------------------------------------------------------------------------

def sample_expertise(model: PopulationModel, rng: np.random.Generator) -> set[str]:
    """Draw one player's expertise set: 1 + Binom(trials, p) distinct names."""
    names = model.expertise_pool
    count = 1 + int(rng.binomial(model.expertise_trials, model.expertise_success_p))
    if count > len(names):
        logger.warning(
            "expertise count %d exceeds the %d available categories; capping",
            count,
            len(names),
        )
        count = len(names)
    if model.weighted_expertise:
        raw = np.array(
            [p for n, p in model.categories if n != CATCH_ALL_CATEGORY],
            dtype=np.float64,
        )
        picked = rng.choice(len(names), size=count, replace=False, p=raw / raw.sum())
    else:
        picked = rng.choice(len(names), size=count, replace=False)
    return {names[i] for i in picked}


def simulate_contestant(model: PopulationModel, rng: np.random.Generator) -> int:
    """One player's total correct answers over 13 sampled questions."""
    expertise = sample_expertise(model, rng)
    names = tuple(n for n, _ in model.categories)
    weights = model.normalized_weights()
    total = 0
    for category in rng.choice(len(names), size=N_QUESTIONS, p=weights):
        if names[category] in expertise:
            if rng.random() < model.expertise_sure_p:
                total += 1
            elif rng.random() < CATEGORY_PROB["U"]:
                total += 1
        elif rng.random() < model.non_expert_p:
            total += 1
    return total
