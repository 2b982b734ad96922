"""Command-line front end: tables, advice, replays, simulation, service.

Exit codes follow the usual convention: 0 on success, 2 for bad flags or
malformed inputs caught before work starts, 1 for runtime failures such
as an unreadable replay file.  Machine-readable output (CSV) goes to
stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from .distributions import (
    LuckyRange,
    QuestionProfile,
    darroch_mode,
    exact_pmf,
)
from .simulation import (
    NUMBA_BACKEND,
    NUMPY_BACKEND,
    PopulationModel,
    SimConfig,
    run_population,
    simulate_profile,
)
from .strategy import (
    Recommendation,
    joint_recommend,
    parse_utility,
    recommend,
    render_table_csv,
    render_table_text,
    strategy_table_three_category,
    strategy_table_two_category,
)
from .tracker import (
    bundled_replay,
    load_replay,
    run_replay,
    trajectory_csv,
    what_if,
)

SEED_ENV_VAR = "LUCKY13_SEED"
PORT_ENV_VAR = "LUCKY13_PORT"


def format_money(amount: float) -> str:
    return f"${amount:.2f}"


def format_prob(p: float) -> str:
    return f"{p:.4f}"


def bet_label(lucky_range: LuckyRange, number: int | None) -> str:
    if number is None:
        return lucky_range.label
    return f"{lucky_range.label}/{number}"


def _add_profile_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--sure", type=int, default=None, help="count of Sure questions")
    sub.add_argument("--unsure", type=int, default=None, help="count of Unsure questions")
    sub.add_argument("--guess", type=int, default=None, help="count of Guess questions")
    sub.add_argument(
        "--probs",
        type=float,
        nargs="+",
        default=None,
        metavar="P",
        help="13 per-question success probabilities, each in [0.5, 1]",
    )


def _profile_from_args(args, parser: argparse.ArgumentParser) -> QuestionProfile:
    counts_given = any(v is not None for v in (args.sure, args.unsure, args.guess))
    if args.probs is not None:
        if counts_given:
            parser.error("give either category counts or --probs, not both")
        if len(args.probs) != 13:
            parser.error(f"--probs needs exactly 13 values, got {len(args.probs)}")
        try:
            return QuestionProfile.from_probs(args.probs)
        except ValueError as exc:
            parser.error(str(exc))
    if not counts_given:
        parser.error("a profile is required: --sure/--unsure/--guess or --probs")
    try:
        return QuestionProfile.from_counts(
            sure=args.sure or 0, unsure=args.unsure or 0, guess=args.guess or 0
        )
    except ValueError as exc:
        parser.error(str(exc))


def _seed_from_args(args, parser: argparse.ArgumentParser) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        parser.error(f"{SEED_ENV_VAR} must be an integer, got {raw!r}")


def _sim_config(args, parser: argparse.ArgumentParser) -> SimConfig:
    if args.trials < 1:
        parser.error("--trials must be at least 1")
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    return SimConfig(trials=args.trials, seed=_seed_from_args(args, parser))


def _add_sim_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--trials", type=int, default=10_000)
    sub.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV_VAR} or 0")
    sub.add_argument("--backend", choices=[NUMPY_BACKEND, NUMBA_BACKEND], default=None)
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--format", choices=["csv", "text"], default="text")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_tables(args, parser: argparse.ArgumentParser) -> int:
    if args.model == "two":
        rows = strategy_table_two_category()
    else:
        rows = strategy_table_three_category()
    render = render_table_csv if args.format == "csv" else render_table_text
    sys.stdout.write(render(rows, utility=args.utility))
    return 0


def _print_recommendation(rec: Recommendation) -> None:
    print(f"range: {rec.range.label}")
    print(f"number: {rec.number if rec.number is not None else 'none'}")
    print(f"win probability: {format_prob(rec.win_probability)}")
    print(f"number hit probability: {format_prob(rec.number_hit_probability)}")
    print(f"expected winnings: {format_money(rec.expected_winnings)}")
    if rec.ties:
        labels = ", ".join(bet_label(r, n) for r, n in rec.ties)
        print(f"ties: {labels}")


def cmd_advise(args, parser: argparse.ArgumentParser) -> int:
    profile = _profile_from_args(args, parser)
    pmf = exact_pmf(profile)
    if args.joint:
        rec = joint_recommend(pmf)
    else:
        rec = recommend(pmf, parse_utility(args.utility))
    _print_recommendation(rec)
    if not profile.is_counts:
        guide = darroch_mode(profile.prob_vector())
        print(f"mean correct: {guide.mean:.4f}")
        print(f"likely modes: {', '.join(str(m) for m in guide.modes)}")
    return 0


def _parse_what_if(text: str, parser: argparse.ArgumentParser):
    range_part, slash, number_part = text.partition("/")
    try:
        lucky_range = LuckyRange.from_label(range_part)
        number = int(number_part) if slash else None
    except ValueError as exc:
        parser.error(f"bad --what-if bet {text!r}: {exc}")
    return lucky_range, number


def cmd_replay(args, parser: argparse.ArgumentParser) -> int:
    path = Path(args.file)
    try:
        if path.exists():
            replay = load_replay(path)
        else:
            replay = bundled_replay(path.stem)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    result = run_replay(replay)
    if args.what_if is not None:
        lucky_range, number = _parse_what_if(args.what_if, parser)
        try:
            points = what_if(result.state, lucky_range, number)
        except ValueError as exc:
            parser.error(str(exc))
        sys.stdout.write(trajectory_csv(points))
        return 0
    sys.stdout.write(trajectory_csv(result.trajectory()))
    for (after_reveal, amount), evaluation in zip(replay.offers, result.offers):
        print(
            f"offer {format_money(amount)} after reveal {after_reveal}: "
            f"{evaluation.advice} (margin {format_money(evaluation.margin)})"
        )
    return 0


def _print_histogram(hist, fmt: str) -> None:
    sys.stdout.write(hist.to_csv() if fmt == "csv" else hist.to_text())


def cmd_simulate(args, parser: argparse.ArgumentParser) -> int:
    profile = _profile_from_args(args, parser)
    config = _sim_config(args, parser)
    try:
        hist = simulate_profile(
            profile, config, backend=args.backend, workers=args.workers
        )
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _print_histogram(hist, args.format)
    return 0


def cmd_population(args, parser: argparse.ArgumentParser) -> int:
    config = _sim_config(args, parser)
    try:
        if args.model is not None:
            model = PopulationModel.from_json(args.model)
        else:
            model = PopulationModel()
        if args.weighted:
            model = replace(model, weighted_expertise=True)
        hist = run_population(model, config, backend=args.backend, workers=args.workers)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _print_histogram(hist, args.format)
    return 0


def cmd_serve(args, parser: argparse.ArgumentParser) -> int:
    port = args.port
    if port is None:
        raw = os.environ.get(PORT_ENV_VAR, "8000")
        try:
            port = int(raw)
        except ValueError:
            parser.error(f"{PORT_ENV_VAR} must be an integer, got {raw!r}")

    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lucky13",
        description="Bet selection and live advice for the Lucky 13 game.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    tables = sub.add_parser("tables", help="print a precomputed strategy table")
    tables.add_argument("--model", choices=["two", "three"], required=True)
    tables.add_argument(
        "--utility", choices=["winprob", "winnings", "both"], default="both"
    )
    tables.add_argument("--format", choices=["csv", "text"], default="text")
    tables.set_defaults(handler=cmd_tables)

    advise = sub.add_parser("advise", help="recommend a bet for one profile")
    _add_profile_flags(advise)
    advise.add_argument("--utility", choices=["winprob", "winnings"], default="winnings")
    advise.add_argument(
        "--joint",
        action="store_true",
        help="maximize total expected dollars including the number bonus "
        "(overrides --utility)",
    )
    advise.set_defaults(handler=cmd_advise)

    replay = sub.add_parser("replay", help="replay a recorded game")
    replay.add_argument("file", help="replay JSON path or a bundled name (case_b, case_c)")
    replay.add_argument(
        "--what-if",
        dest="what_if",
        default=None,
        metavar="RANGE[/NUMBER]",
        help="rerun the history under an alternative bet, e.g. 10-12/10",
    )
    replay.set_defaults(handler=cmd_replay)

    simulate = sub.add_parser("simulate", help="Monte Carlo check of one profile")
    _add_profile_flags(simulate)
    _add_sim_flags(simulate)
    simulate.set_defaults(handler=cmd_simulate)

    population = sub.add_parser("population", help="simulate the average contestant")
    _add_sim_flags(population)
    population.add_argument("--model", default=None, help="JSON file of category weights")
    population.add_argument(
        "--weighted",
        action="store_true",
        help="draw expertise frequency-weighted instead of uniformly",
    )
    population.set_defaults(handler=cmd_population)

    serve = sub.add_parser("serve", help="run the HTTP advice service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--port", type=int, default=None, help=f"defaults to ${PORT_ENV_VAR} or 8000"
    )
    serve.set_defaults(handler=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args, parser)


if __name__ == "__main__":
    sys.exit(main())
