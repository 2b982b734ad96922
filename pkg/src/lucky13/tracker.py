"""Live game state: bet, reveals, conditional expectations, quit offers.

A :class:`GameState` is an immutable value; ``reveal`` and ``evaluate_offer``
return new states, so concurrent sessions can never corrupt each other.
Conditional expectations are recomputed exactly from the remaining question
pool on every step, which keeps the whole trajectory a pure function of the
reveal history.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .distributions import (
    N_QUESTIONS,
    LuckyRange,
    Pmf13,
    QuestionProfile,
    condition_on_reveals,
    range_probability,
    remaining_after,
)
from .strategy import (
    DEFAULT_SCHEDULE,
    PrizeSchedule,
    UtilityFunction,
    expected_winnings,
)

ACCEPT = "accept"
REJECT = "reject"


@dataclass(frozen=True)
class TrajectoryPoint:
    """Conditional bet statistics after a given number of reveals."""

    reveal_index: int
    correct_so_far: int
    expected_winnings: float
    range_probability: float
    number_probability: float


@dataclass(frozen=True)
class OfferRecord:
    """A quit offer as logged in the game state."""

    after_reveal: int
    amount: float
    decision: str


@dataclass(frozen=True)
class OfferEvaluation:
    """Risk-neutral comparison of a quit offer against continuing to play.

    ``advice`` is accept exactly when the offer matches or beats the
    conditional expected winnings; a tie takes the risk-free cash.
    """

    offer: float
    continuation_value: float
    advice: str
    margin: float
    range_probability: float
    number_probability: float


@dataclass(frozen=True)
class GameState:
    """A contestant's bet plus everything revealed so far."""

    profile: QuestionProfile
    lucky_range: LuckyRange
    number: int | None
    reveals: tuple[tuple[object, bool], ...] = field(default=())
    offer_log: tuple[OfferRecord, ...] = field(default=())
    schedule: PrizeSchedule = field(default=DEFAULT_SCHEDULE)

    @property
    def reveal_count(self) -> int:
        return len(self.reveals)

    @property
    def correct_count(self) -> int:
        return sum(1 for _, correct in self.reveals if correct)

    @property
    def is_complete(self) -> bool:
        return self.reveal_count == N_QUESTIONS

    def current_pmf(self) -> Pmf13:
        """Exact conditional distribution of the final total."""
        return condition_on_reveals(self.profile, self.reveals)

    def point(self) -> TrajectoryPoint:
        return _point_for(self, self.lucky_range, self.number)


def _point_for(
    state: GameState, lucky_range: LuckyRange, number: int | None
) -> TrajectoryPoint:
    pmf = condition_on_reveals(state.profile, state.reveals)
    return TrajectoryPoint(
        reveal_index=state.reveal_count,
        correct_so_far=state.correct_count,
        expected_winnings=expected_winnings(pmf, lucky_range, number, state.schedule),
        range_probability=range_probability(pmf, lucky_range),
        number_probability=pmf.p(number) if number is not None else 0.0,
    )


def new_game(
    profile: QuestionProfile,
    lucky_range: LuckyRange,
    number: int | None = None,
    schedule: PrizeSchedule = DEFAULT_SCHEDULE,
) -> GameState:
    """Start a game with a fixed bet.

    Raises for bets the show does not allow: a number outside the chosen
    range, or any number alongside the top range.
    """
    state = GameState(
        profile=profile, lucky_range=lucky_range, number=number, schedule=schedule
    )
    expected_winnings(state.current_pmf(), lucky_range, number, schedule)
    return state


def reveal(state: GameState, question, correct: bool) -> GameState:
    """Record one revealed answer, returning the new state."""
    updated = state.reveals + ((question, bool(correct)),)
    remaining_after(state.profile, updated)
    return replace(state, reveals=updated)


def evaluate_offer(
    state: GameState,
    offer: float,
    utility: UtilityFunction | None = None,
) -> tuple[OfferEvaluation, GameState]:
    """Advise on a quit offer and log it into a new state.

    The default comparison is risk-neutral (offer vs conditional expected
    winnings).  Passing a custom utility switches the advice to a
    certainty-equivalent test; the utility must then cover the offer amount
    as well as the attainable outcomes.
    """
    offer = float(offer)
    if offer < 0.0:
        raise ValueError("offer must be nonnegative")
    if state.is_complete:
        raise ValueError("game is fully revealed; nothing left to quit")
    point = state.point()
    if utility is None:
        accept = offer >= point.expected_winnings
    else:
        prize = state.schedule.prize(state.lucky_range)
        win_p, hit_p = point.range_probability, point.number_probability
        continue_utility = utility.of(0.0) * (1.0 - win_p) + utility.of(prize) * (
            win_p - hit_p
        )
        if state.number is not None:
            continue_utility += utility.of(prize + state.schedule.number_bonus) * hit_p
        accept = utility.of(offer) >= continue_utility
    decision = ACCEPT if accept else REJECT
    evaluation = OfferEvaluation(
        offer=offer,
        continuation_value=point.expected_winnings,
        advice=decision,
        margin=offer - point.expected_winnings,
        range_probability=point.range_probability,
        number_probability=point.number_probability,
    )
    record = OfferRecord(
        after_reveal=state.reveal_count, amount=offer, decision=decision
    )
    return evaluation, replace(state, offer_log=state.offer_log + (record,))


def trajectory(state: GameState) -> list[TrajectoryPoint]:
    """Expected winnings after each reveal, starting before any reveal."""
    return what_if(state, state.lucky_range, state.number)


def what_if(
    state: GameState, lucky_range: LuckyRange, number: int | None
) -> list[TrajectoryPoint]:
    """Replay the recorded history under an alternative bet."""
    expected_winnings(
        condition_on_reveals(state.profile, ()), lucky_range, number, state.schedule
    )
    base = GameState(
        profile=state.profile,
        lucky_range=lucky_range,
        number=number,
        schedule=state.schedule,
    )
    points = [_point_for(base, lucky_range, number)]
    for count in range(1, state.reveal_count + 1):
        partial = replace(base, reveals=state.reveals[:count])
        points.append(_point_for(partial, lucky_range, number))
    return points


def trajectory_csv(points: list[TrajectoryPoint]) -> str:
    """CSV rendering of a trajectory, one line per reveal."""
    lines = ["reveal_index,correct_so_far,expected_winnings,range_prob,number_prob"]
    for p in points:
        lines.append(
            f"{p.reveal_index},{p.correct_so_far},{p.expected_winnings:.2f},"
            f"{p.range_probability:.4f},{p.number_probability:.4f}"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Replay files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Replay:
    """A full recorded game: profile, bet, reveal history, and quit offers."""

    profile: QuestionProfile
    lucky_range: LuckyRange
    number: int | None
    reveals: tuple[tuple[object, bool], ...]
    offers: tuple[tuple[int, float], ...] = field(default=())


@dataclass(frozen=True)
class ReplayResult:
    """Outcome of running a replay: final state and each offer's evaluation."""

    state: GameState
    offers: tuple[OfferEvaluation, ...]

    def trajectory(self) -> list[TrajectoryPoint]:
        return trajectory(self.state)


def _profile_from_dict(raw: dict) -> QuestionProfile:
    if "p" in raw:
        return QuestionProfile.from_probs(raw["p"])
    try:
        return QuestionProfile.from_counts(int(raw["s"]), int(raw["u"]), int(raw["g"]))
    except KeyError as missing:
        raise ValueError(f"profile is missing {missing}") from None


def parse_replay(data: dict) -> Replay:
    """Validate a replay dictionary (the JSON object form)."""
    try:
        profile = _profile_from_dict(data["profile"])
        bet = data["bet"]
        lucky_range = LuckyRange.from_label(bet["range"])
        number = bet.get("number")
        reveals = []
        for entry in data.get("reveals", ()):
            question = entry["p"] if "p" in entry else entry["category"]
            reveals.append((question, bool(entry["correct"])))
        offers = [
            (int(offer["after_reveal"]), float(offer["amount"]))
            for offer in data.get("offers", ())
        ]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed replay: {exc}") from None
    if number is not None:
        number = int(number)
    return Replay(
        profile=profile,
        lucky_range=lucky_range,
        number=number,
        reveals=tuple(reveals),
        offers=tuple(offers),
    )


def load_replay(path: str | Path) -> Replay:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    return parse_replay(data)


def run_replay(replay: Replay, schedule: PrizeSchedule = DEFAULT_SCHEDULE) -> ReplayResult:
    """Play a replay through, evaluating offers at their recorded spots."""
    offers_by_index: dict[int, list[float]] = {}
    for after_reveal, amount in replay.offers:
        offers_by_index.setdefault(after_reveal, []).append(amount)

    state = new_game(replay.profile, replay.lucky_range, replay.number, schedule)
    evaluations: list[OfferEvaluation] = []
    for amount in offers_by_index.get(0, ()):
        evaluation, state = evaluate_offer(state, amount)
        evaluations.append(evaluation)
    for index, (question, correct) in enumerate(replay.reveals, start=1):
        state = reveal(state, question, correct)
        for amount in offers_by_index.get(index, ()):
            evaluation, state = evaluate_offer(state, amount)
            evaluations.append(evaluation)
    return ReplayResult(state=state, offers=tuple(evaluations))


def bundled_replay(name: str) -> Replay:
    """Load one of the packaged example games (``case_b`` or ``case_c``)."""
    from importlib import resources

    resource = resources.files("lucky13").joinpath(f"data/{name}.json")
    try:
        text = resource.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ValueError(f"no bundled replay named {name!r}") from None
    return parse_replay(json.loads(text))
