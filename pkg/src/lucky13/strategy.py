"""Utility-based selection of the Lucky Range and Lucky Number.

Two built-in utilities mirror the extremes of risk tolerance: a constant
utility (maximize the chance of winning anything) and a linear utility
(maximize expected dollars).  Both follow a two-stage rule: pick the range
first, then the most likely value inside it -- the $25,000 exact-count bonus
never influences the range choice.  ``joint_recommend`` is the bonus-aware
alternative that optimizes the full bet in one pass; it can disagree with
the two-stage rule and is exposed separately for that reason.

Tie-breaking everywhere: prefer the higher-prize range; a tied number goes
to the value nearest the distribution mean, upward when equidistant.  Every
equally-optimal bet is reported, never dropped.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

from .distributions import (
    LUCKY_RANGES,
    LuckyRange,
    Pmf13,
    QuestionProfile,
    exact_pmf,
    mode_in_range,
    range_probability,
)

NUMBER_BONUS = 25_000

_REL_TOL = 1e-12
_ABS_TOL = 1e-15


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=_REL_TOL, abs_tol=_ABS_TOL)


@dataclass(frozen=True)
class PrizeSchedule:
    """Lucky Range payouts plus the exact-count bonus.

    ``ranges`` must be disjoint, ascending, cover 1..13, and pay strictly
    increasing prizes.
    """

    ranges: tuple[tuple[LuckyRange, int], ...] = (
        (LuckyRange(1, 3), 5_000),
        (LuckyRange(4, 6), 15_000),
        (LuckyRange(7, 9), 25_000),
        (LuckyRange(10, 12), 100_000),
        (LuckyRange(13, 13), 1_000_000),
    )
    number_bonus: int = NUMBER_BONUS

    def __post_init__(self) -> None:
        covered: list[int] = []
        prev_prize = -1
        prev_high = 0
        for lucky_range, prize in self.ranges:
            if lucky_range.low != prev_high + 1:
                raise ValueError("ranges must be ascending and cover 1..13")
            if prize <= prev_prize:
                raise ValueError("prizes must strictly increase with range")
            covered.extend(lucky_range.members())
            prev_prize = prize
            prev_high = lucky_range.high
        if covered != list(range(1, 14)):
            raise ValueError("ranges must cover exactly 1..13")

    def prize(self, lucky_range: LuckyRange) -> int:
        for candidate, prize in self.ranges:
            if candidate == lucky_range:
                return prize
        raise ValueError(f"range {lucky_range.label} not in schedule")

    @property
    def top_range(self) -> LuckyRange:
        return self.ranges[-1][0]

    def scaled(self, factor: float) -> "PrizeSchedule":
        return PrizeSchedule(
            ranges=tuple((r, prize * factor) for r, prize in self.ranges),
            number_bonus=self.number_bonus * factor,
        )


DEFAULT_SCHEDULE = PrizeSchedule()

WIN_PROBABILITY = "winprob"
EXPECTED_WINNINGS = "winnings"


@dataclass(frozen=True)
class UtilityFunction:
    """Personal value of dollar outcomes.

    ``winprob`` is the constant utility (any win counts the same), and
    ``winnings`` the linear one.  A custom mapping must assign a
    non-decreasing utility to every attainable dollar outcome of the
    schedule in play: 0, each prize, and each prize plus the bonus.
    """

    kind: str
    mapping: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in (WIN_PROBABILITY, EXPECTED_WINNINGS, "custom"):
            raise ValueError(f"unknown utility kind {self.kind!r}")
        if (self.kind == "custom") != (self.mapping is not None):
            raise ValueError("custom utilities need a mapping; built-ins take none")
        if self.mapping is not None:
            pairs = tuple(sorted((float(d), float(u)) for d, u in self.mapping))
            values = [u for _, u in pairs]
            if any(b < a for a, b in zip(values, values[1:])):
                raise ValueError("utility must be non-decreasing in dollars")
            object.__setattr__(self, "mapping", pairs)

    @classmethod
    def win_probability(cls) -> "UtilityFunction":
        return cls(kind=WIN_PROBABILITY)

    @classmethod
    def expected_winnings(cls) -> "UtilityFunction":
        return cls(kind=EXPECTED_WINNINGS)

    @classmethod
    def custom(cls, mapping) -> "UtilityFunction":
        if hasattr(mapping, "items"):
            mapping = tuple(mapping.items())
        return cls(kind="custom", mapping=tuple(mapping))

    def of(self, dollars: float) -> float:
        """Utility of an exact dollar outcome (custom utilities only)."""
        for amount, value in self.mapping or ():
            if _close(amount, dollars):
                return value
        raise ValueError(f"custom utility undefined for outcome ${dollars:g}")


def parse_utility(name: str) -> UtilityFunction:
    try:
        return {
            WIN_PROBABILITY: UtilityFunction.win_probability(),
            EXPECTED_WINNINGS: UtilityFunction.expected_winnings(),
        }[name]
    except KeyError:
        raise ValueError(f"unknown utility {name!r}") from None


@dataclass(frozen=True)
class Recommendation:
    """A chosen bet with its headline statistics and any equally-good bets."""

    range: LuckyRange
    number: int | None
    win_probability: float
    expected_winnings: float
    number_hit_probability: float
    ties: tuple[tuple[LuckyRange, int | None], ...] = field(default=())

    @property
    def bet(self) -> tuple[LuckyRange, int | None]:
        return (self.range, self.number)


def expected_winnings(
    pmf: Pmf13,
    lucky_range: LuckyRange,
    number: int | None,
    schedule: PrizeSchedule = DEFAULT_SCHEDULE,
) -> float:
    """Expected dollars for a fixed bet: prize x P(in range) + bonus x P(exact)."""
    if number is not None:
        if lucky_range == schedule.top_range:
            raise ValueError("the top range takes no exact-number bet")
        if number not in lucky_range:
            raise ValueError(f"number {number} outside range {lucky_range.label}")
    value = schedule.prize(lucky_range) * range_probability(pmf, lucky_range)
    if number is not None:
        value += schedule.number_bonus * pmf.p(number)
    return value


def _bet_stats(
    pmf: Pmf13,
    lucky_range: LuckyRange,
    number: int | None,
    schedule: PrizeSchedule,
) -> tuple[float, float, float]:
    win_p = range_probability(pmf, lucky_range)
    hit_p = pmf.p(number) if number is not None else 0.0
    return win_p, expected_winnings(pmf, lucky_range, number, schedule), hit_p


def _pick_number(pmf: Pmf13, lucky_range: LuckyRange, schedule: PrizeSchedule):
    if lucky_range == schedule.top_range:
        return None, ()
    picked = mode_in_range(pmf, lucky_range)
    return picked.number, picked.candidates


def _two_stage(pmf: Pmf13, schedule: PrizeSchedule, weigh_prize: bool) -> Recommendation:
    scores = [
        (range_probability(pmf, r) * (schedule.prize(r) if weigh_prize else 1.0), r)
        for r, _ in schedule.ranges
    ]
    best_score = max(score for score, _ in scores)
    tied_ranges = [r for score, r in scores if _close(score, best_score)]
    chosen_range = tied_ranges[-1]  # schedule order is ascending prize

    number, candidates = _pick_number(pmf, chosen_range, schedule)
    ties: list[tuple[LuckyRange, int | None]] = [
        (chosen_range, other) for other in candidates if other != number
    ]
    for other_range in tied_ranges[:-1]:
        other_number, _ = _pick_number(pmf, other_range, schedule)
        ties.append((other_range, other_number))

    win_p, dollars, hit_p = _bet_stats(pmf, chosen_range, number, schedule)
    return Recommendation(
        range=chosen_range,
        number=number,
        win_probability=win_p,
        expected_winnings=dollars,
        number_hit_probability=hit_p,
        ties=tuple(ties),
    )


def _all_bets(schedule: PrizeSchedule):
    for lucky_range, _ in schedule.ranges:
        if lucky_range == schedule.top_range:
            yield lucky_range, None
        else:
            for number in lucky_range.members():
                yield lucky_range, number


def _best_bet(pmf: Pmf13, schedule: PrizeSchedule, objective) -> Recommendation:
    """Maximize ``objective(range, number)`` over every admissible bet."""
    mean = pmf.mean()
    scored = [(objective(r, m), r, m) for r, m in _all_bets(schedule)]
    best = max(score for score, _, _ in scored)
    tied = [(r, m) for score, r, m in scored if _close(score, best)]

    def preference(bet: tuple[LuckyRange, int | None]):
        lucky_range, number = bet
        prize = schedule.prize(lucky_range)
        if number is None:
            return (prize, 0.0, 0)
        return (prize, -abs(number - mean), number)

    chosen_range, number = max(tied, key=preference)
    win_p, dollars, hit_p = _bet_stats(pmf, chosen_range, number, schedule)
    return Recommendation(
        range=chosen_range,
        number=number,
        win_probability=win_p,
        expected_winnings=dollars,
        number_hit_probability=hit_p,
        ties=tuple(bet for bet in tied if bet != (chosen_range, number)),
    )


def recommend(
    pmf: Pmf13,
    utility: UtilityFunction,
    schedule: PrizeSchedule = DEFAULT_SCHEDULE,
) -> Recommendation:
    """Best bet under a utility function.

    The built-in utilities use the two-stage rule (range by probability or by
    prize-weighted probability, number as the in-range mode).  Custom
    utilities are evaluated jointly over every (range, number) pair.
    """
    if utility.kind == WIN_PROBABILITY:
        return _two_stage(pmf, schedule, weigh_prize=False)
    if utility.kind == EXPECTED_WINNINGS:
        return _two_stage(pmf, schedule, weigh_prize=True)

    bonus = schedule.number_bonus

    def objective(lucky_range: LuckyRange, number: int | None) -> float:
        prize = schedule.prize(lucky_range)
        win_p = range_probability(pmf, lucky_range)
        hit_p = pmf.p(number) if number is not None else 0.0
        return (
            utility.of(0.0) * (1.0 - win_p)
            + utility.of(prize) * (win_p - hit_p)
            + utility.of(prize + bonus) * hit_p
        )

    return _best_bet(pmf, schedule, objective)


def joint_recommend(
    pmf: Pmf13, schedule: PrizeSchedule = DEFAULT_SCHEDULE
) -> Recommendation:
    """Bonus-inclusive optimum: maximize total expected dollars over all bets.

    Dominates the two-stage rule by construction and sometimes picks a
    different range, e.g. a mid band whose bonus-rich mode beats a higher
    prize with thin coverage.
    """

    def objective(lucky_range: LuckyRange, number: int | None) -> float:
        return expected_winnings(pmf, lucky_range, number, schedule)

    return _best_bet(pmf, schedule, objective)


# ---------------------------------------------------------------------------
# Strategy tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrategyRow:
    """One knowledge profile with its recommendation under both utilities."""

    sure: int
    unsure: int
    guess: int
    by_utility: tuple[tuple[str, Recommendation], ...]

    def rec(self, utility: str) -> Recommendation:
        for name, recommendation in self.by_utility:
            if name == utility:
                return recommendation
        raise KeyError(utility)


def _row(s: int, u: int, g: int, schedule: PrizeSchedule) -> StrategyRow:
    pmf = exact_pmf(QuestionProfile.from_counts(s, u, g))
    return StrategyRow(
        sure=s,
        unsure=u,
        guess=g,
        by_utility=(
            (WIN_PROBABILITY, recommend(pmf, UtilityFunction.win_probability(), schedule)),
            (EXPECTED_WINNINGS, recommend(pmf, UtilityFunction.expected_winnings(), schedule)),
        ),
    )


def strategy_table_two_category(
    schedule: PrizeSchedule = DEFAULT_SCHEDULE,
) -> list[StrategyRow]:
    """14 rows: sure = 0..13 with the rest guesses, under both utilities."""
    return [_row(s, 0, 13 - s, schedule) for s in range(14)]


def strategy_table_three_category(
    schedule: PrizeSchedule = DEFAULT_SCHEDULE,
) -> list[StrategyRow]:
    """All 105 sure/unsure/guess splits, ordered by sure then unsure."""
    return [
        _row(s, u, 13 - s - u, schedule)
        for s in range(14)
        for u in range(14 - s)
    ]


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _fmt_number(number: int | None) -> str:
    return "NA" if number is None else str(number)


def _fmt_ties(ties, prefix: str = "") -> str:
    return ";".join(
        f"{prefix}{r.label}/{_fmt_number(m)}" for r, m in ties
    )


def render_table_csv(rows: list[StrategyRow], utility: str = "both") -> str:
    """CSV rendering; one line per profile.

    Single-utility output uses the columns
    s,u,g,range,number,win_prob,expected_winnings,ties; the combined form
    puts both utilities side by side.
    """
    out = io.StringIO()
    if utility == "both":
        out.write(
            "s,u,g,winprob_range,winprob_number,winnings_range,winnings_number,ties\n"
        )
        for row in rows:
            wp = row.rec(WIN_PROBABILITY)
            ew = row.rec(EXPECTED_WINNINGS)
            ties = ";".join(
                part
                for part in (
                    _fmt_ties(wp.ties, "wp:"),
                    _fmt_ties(ew.ties, "ew:"),
                )
                if part
            )
            out.write(
                f"{row.sure},{row.unsure},{row.guess},"
                f"{wp.range.label},{_fmt_number(wp.number)},"
                f"{ew.range.label},{_fmt_number(ew.number)},{ties}\n"
            )
    else:
        out.write("s,u,g,range,number,win_prob,expected_winnings,ties\n")
        for row in rows:
            rec = row.rec(utility)
            out.write(
                f"{row.sure},{row.unsure},{row.guess},"
                f"{rec.range.label},{_fmt_number(rec.number)},"
                f"{rec.win_probability:.4f},{rec.expected_winnings:.2f},"
                f"{_fmt_ties(rec.ties)}\n"
            )
    return out.getvalue()


def render_table_text(rows: list[StrategyRow], utility: str = "both") -> str:
    """Aligned, human-readable table."""
    if utility == "both":
        header = ["S/U/G", "WinProb Range", "WinProb Number", "Winnings Range", "Winnings Number", "Ties"]
        data = []
        for row in rows:
            wp = row.rec(WIN_PROBABILITY)
            ew = row.rec(EXPECTED_WINNINGS)
            ties = ";".join(
                part
                for part in (_fmt_ties(wp.ties, "wp:"), _fmt_ties(ew.ties, "ew:"))
                if part
            )
            data.append(
                [
                    f"{row.sure}/{row.unsure}/{row.guess}",
                    wp.range.label,
                    _fmt_number(wp.number),
                    ew.range.label,
                    _fmt_number(ew.number),
                    ties or "-",
                ]
            )
    else:
        header = ["S/U/G", "Range", "Number", "WinProb", "ExpWinnings", "Ties"]
        data = []
        for row in rows:
            rec = row.rec(utility)
            data.append(
                [
                    f"{row.sure}/{row.unsure}/{row.guess}",
                    rec.range.label,
                    _fmt_number(rec.number),
                    f"{rec.win_probability:.4f}",
                    f"${rec.expected_winnings:,.2f}",
                    _fmt_ties(rec.ties) or "-",
                ]
            )
    widths = [max(len(h), *(len(r[i]) for r in data)) for i, h in enumerate(header)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for entry in data:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(entry, widths)).rstrip())
    return "\n".join(lines) + "\n"
