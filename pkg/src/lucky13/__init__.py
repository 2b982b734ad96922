"""Decision analysis and live advice for the Lucky 13 game show.

The package splits into exact probability machinery (``distributions``),
bet selection (``strategy``), in-game tracking and offer evaluation
(``tracker``), seeded Monte Carlo engines (``simulation``), and two
front ends (``cli``, ``service``).  The names re-exported here cover the
everyday API.
"""

from .distributions import (
    LUCKY_RANGES,
    N_QUESTIONS,
    LuckyRange,
    Pmf13,
    QuestionProfile,
    binomial_pmf,
    condition_on_reveals,
    darroch_mode,
    exact_pmf,
    mode_in_range,
    range_probability,
)
from .simulation import (
    DEFAULT_POPULATION,
    Histogram14,
    PopulationModel,
    SimConfig,
    run_population,
    sample_expertise,
    simulate_contestant,
    simulate_profile,
)
from .strategy import (
    DEFAULT_SCHEDULE,
    NUMBER_BONUS,
    PrizeSchedule,
    Recommendation,
    UtilityFunction,
    expected_winnings,
    joint_recommend,
    recommend,
    strategy_table_three_category,
    strategy_table_two_category,
)
from .tracker import (
    GameState,
    evaluate_offer,
    load_replay,
    new_game,
    reveal,
    run_replay,
    trajectory,
    what_if,
)

__version__ = "0.1.0"

__all__ = [
    "LUCKY_RANGES",
    "N_QUESTIONS",
    "LuckyRange",
    "Pmf13",
    "QuestionProfile",
    "binomial_pmf",
    "condition_on_reveals",
    "darroch_mode",
    "exact_pmf",
    "mode_in_range",
    "range_probability",
    "DEFAULT_POPULATION",
    "Histogram14",
    "PopulationModel",
    "SimConfig",
    "run_population",
    "sample_expertise",
    "simulate_contestant",
    "simulate_profile",
    "DEFAULT_SCHEDULE",
    "NUMBER_BONUS",
    "PrizeSchedule",
    "Recommendation",
    "UtilityFunction",
    "expected_winnings",
    "joint_recommend",
    "recommend",
    "strategy_table_three_category",
    "strategy_table_two_category",
    "GameState",
    "evaluate_offer",
    "load_replay",
    "new_game",
    "reveal",
    "run_replay",
    "trajectory",
    "what_if",
    "__version__",
]
