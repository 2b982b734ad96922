"""Tests for the exact PMF engine: binomials, category models, conditioning, modes."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lucky13.distributions import (
    LUCKY_RANGES,
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

from conftest import all_category_splits, enumerate_pmf


# ---------------------------------------------------------------------------
# binomial_pmf
# ---------------------------------------------------------------------------

def test_binomial_all_guess_perfect_score():
    pmf = binomial_pmf(13, 0.5)
    assert pmf.p(13) == pytest.approx(1 / 8192, abs=1e-15)


def test_binomial_empty_is_point_mass_at_zero():
    pmf = binomial_pmf(0, 0.5)
    assert pmf.p(0) == 1.0
    assert pmf.mass[1:].sum() == 0.0


def test_binomial_ten_fair_coins_central_band():
    # Oracle: direct summation of binomial coefficients for k = 4, 5, 6.
    expected = (math.comb(10, 4) + math.comb(10, 5) + math.comb(10, 6)) / 1024
    pmf = binomial_pmf(10, 0.5)
    assert float(pmf.mass[4:7].sum()) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(672 / 1024, abs=0)


@pytest.mark.parametrize("n, p", [(-1, 0.5), (14, 0.5), (5, -0.1), (5, 1.5)])
def test_binomial_rejects_bad_arguments(n, p):
    with pytest.raises(ValueError):
        binomial_pmf(n, p)


def test_binomial_matches_enumeration():
    for n in (0, 1, 5, 13):
        for p in (0.0, 0.3, 0.5, 0.75, 1.0):
            got = binomial_pmf(n, p).mass
            want = enumerate_pmf([p] * n)
            assert np.allclose(got, want, rtol=0.0, atol=1e-12)


# ---------------------------------------------------------------------------
# exact_pmf
# ---------------------------------------------------------------------------

def test_ten_sure_two_unsure_one_guess():
    pmf = exact_pmf(QuestionProfile.from_counts(10, 2, 1))
    assert pmf.p(13) == pytest.approx(9 / 32, abs=1e-12)
    assert float(pmf.mass[10:13].sum()) == pytest.approx(23 / 32, abs=1e-12)
    assert float(pmf.mass[:10].sum()) == 0.0
    assert pmf.p(10) == pytest.approx(1 / 32, abs=1e-12)
    assert pmf.p(11) == pytest.approx(7 / 32, abs=1e-12)
    assert pmf.p(12) == pytest.approx(15 / 32, abs=1e-12)


def test_all_sure_is_point_mass():
    pmf = exact_pmf(QuestionProfile.from_counts(13, 0, 0))
    assert pmf.p(13) == 1.0


def test_all_guess_symmetric_bands():
    pmf = exact_pmf(QuestionProfile.from_counts(0, 0, 13))
    mid_low = float(pmf.mass[4:7].sum())
    mid_high = float(pmf.mass[7:10].sum())
    assert mid_low == pytest.approx(3718 / 8192, abs=1e-12)
    assert mid_high == pytest.approx(3718 / 8192, abs=1e-12)
    assert mid_low == pytest.approx(0.4539, abs=5e-5)


def test_profile_validation():
    with pytest.raises(ValueError):
        QuestionProfile.from_counts(7, 7, 0)
    with pytest.raises(ValueError):
        QuestionProfile.from_probs([0.4] * 13)
    with pytest.raises(ValueError):
        QuestionProfile.from_probs([0.9] * 12)
    with pytest.raises(ValueError):
        QuestionProfile()


def test_reduction_to_binomial():
    # A constant probability vector is just a binomial on 13 trials.
    for p in (0.5, 0.6, 0.75, 0.9, 1.0):
        vec = exact_pmf(QuestionProfile.from_probs([p] * 13))
        assert np.allclose(vec.mass, binomial_pmf(13, p).mass, rtol=0.0, atol=1e-12)


def test_category_and_vector_routes_agree_for_all_105_splits():
    for s, u, g in all_category_splits():
        via_counts = exact_pmf(QuestionProfile.from_counts(s, u, g))
        via_probs = exact_pmf(
            QuestionProfile.from_probs((1.0,) * s + (0.75,) * u + (0.5,) * g)
        )
        assert via_counts.allclose(via_probs, atol=1e-12), (s, u, g)


def test_vector_pmf_matches_enumeration_oracle():
    rng = np.random.default_rng(20240813)
    for n in (1, 2, 5, 9, 13):
        probs = 0.5 + 0.5 * rng.random(n)
        padded = list(probs) + [1.0] * (13 - n)  # fill to 13 to fit the profile type
        got = exact_pmf(QuestionProfile.from_probs(padded)).mass
        want = enumerate_pmf(padded)
        assert np.allclose(got, want, rtol=0.0, atol=1e-10)


@settings(max_examples=60, deadline=None)
@given(
    s=st.integers(min_value=0, max_value=13),
    u_frac=st.floats(min_value=0.0, max_value=1.0),
)
def test_count_profiles_always_produce_valid_pmfs(s, u_frac):
    u = round(u_frac * (13 - s))
    pmf = exact_pmf(QuestionProfile.from_counts(s, u, 13 - s - u))
    assert np.all(pmf.mass >= 0.0)
    assert float(pmf.mass.sum()) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(min_value=0.5, max_value=1.0), min_size=13, max_size=13))
def test_vector_profiles_always_produce_valid_pmfs(probs):
    pmf = exact_pmf(QuestionProfile.from_probs(probs))
    assert np.all(pmf.mass >= 0.0)
    assert float(pmf.mass.sum()) == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# range_probability
# ---------------------------------------------------------------------------

def test_range_probabilities_three_sure_ten_guess():
    pmf = exact_pmf(QuestionProfile.from_counts(3, 0, 10))
    assert range_probability(pmf, LuckyRange(7, 9)) == pytest.approx(0.6563, abs=5e-5)
    assert range_probability(pmf, LuckyRange(10, 12)) == pytest.approx(0.1709, abs=5e-5)


def test_range_probability_point_mass():
    assert range_probability(Pmf13.point(13), LuckyRange(13, 13)) == 1.0


def test_low_range_never_counts_zero_correct():
    # All mass a contestant cannot bet on (N = 0) stays outside every range.
    pmf = binomial_pmf(13, 0.1)
    total = sum(range_probability(pmf, r) for r in LUCKY_RANGES)
    assert total == pytest.approx(1.0 - pmf.p(0), abs=1e-12)


def test_lucky_range_validation_and_labels():
    with pytest.raises(ValueError):
        LuckyRange(2, 5)
    assert LuckyRange.from_label("10-12") == LuckyRange(10, 12)
    assert LuckyRange.from_label("13").label == "13"
    with pytest.raises(ValueError):
        LuckyRange.from_label("nope")


# ---------------------------------------------------------------------------
# condition_on_reveals
# ---------------------------------------------------------------------------

def test_contestant_with_nine_correct_reveals():
    profile = QuestionProfile.from_counts(3, 8, 2)
    reveals = [("S", True)] * 3 + [("U", True)] * 5 + [("G", True)]
    pmf = condition_on_reveals(profile, reveals)
    assert pmf.p(11) == pytest.approx(9 / 32, abs=1e-12)
    assert float(pmf.mass[10:13].sum()) == pytest.approx(25 / 32, abs=1e-12)


def test_fully_revealed_game_is_point_mass():
    profile = QuestionProfile.from_counts(3, 8, 2)
    reveals = (
        [("S", True)] * 3 + [("U", True)] * 6 + [("U", False)] * 2 + [("G", True)] * 2
    )
    pmf = condition_on_reveals(profile, reveals)
    assert pmf.p(11) == 1.0


def test_four_correct_reveals_midgame():
    profile = QuestionProfile.from_counts(1, 7, 5)
    reveals = [("U", True)] * 3 + [("G", True)]
    pmf = condition_on_reveals(profile, reveals)
    assert float(pmf.mass[7:10].sum()) == pytest.approx(0.34, abs=0.005)
    assert pmf.p(9) == pytest.approx(0.22, abs=0.005)
    # Exact dyadic values behind the rounded checkpoints.
    assert float(pmf.mass[7:10].sum()) == pytest.approx(1394 / 4096, abs=1e-12)
    assert pmf.p(9) == pytest.approx(886 / 4096, abs=1e-12)


def test_zero_reveals_equals_unconditioned_pmf():
    for profile in (
        QuestionProfile.from_counts(3, 8, 2),
        QuestionProfile.from_probs([0.5, 0.6, 0.7, 0.8, 0.9, 1.0] + [0.75] * 7),
    ):
        assert condition_on_reveals(profile, []).allclose(exact_pmf(profile))


def test_correct_sure_reveal_leaves_distribution_unchanged():
    profile = QuestionProfile.from_counts(3, 8, 2)
    before = exact_pmf(profile)
    after = condition_on_reveals(profile, [("S", True)])
    assert after.allclose(before)


def test_reveal_errors():
    profile = QuestionProfile.from_counts(13, 0, 0)
    with pytest.raises(ValueError):
        condition_on_reveals(profile, [("G", True)])
    with pytest.raises(ValueError):
        condition_on_reveals(profile, [("S", False)])
    with pytest.raises(ValueError):
        condition_on_reveals(profile, [("S", True)] * 14)
    vec = QuestionProfile.from_probs([0.75] * 13)
    with pytest.raises(ValueError):
        condition_on_reveals(vec, [(0.9, True)])


def test_vector_profile_conditioning():
    probs = [1.0, 0.9, 0.8] + [0.5] * 10
    profile = QuestionProfile.from_probs(probs)
    conditioned = condition_on_reveals(profile, [(0.9, True), (0.5, False)])
    want = enumerate_pmf([1.0, 0.8] + [0.5] * 9)
    shifted = np.zeros(14)
    shifted[1:13] = want[:12]
    assert np.allclose(conditioned.mass, shifted, rtol=0.0, atol=1e-10)


def test_law_of_total_probability_over_one_reveal():
    profile = QuestionProfile.from_counts(2, 6, 5)
    base = exact_pmf(profile)
    q = 0.75
    on_correct = condition_on_reveals(profile, [("U", True)]).mass
    on_wrong = condition_on_reveals(profile, [("U", False)]).mass
    assert np.allclose(q * on_correct + (1 - q) * on_wrong, base.mass, atol=1e-12)


# ---------------------------------------------------------------------------
# darroch_mode
# ---------------------------------------------------------------------------

def test_mode_pair_high_mean():
    probs = [12.3 / 13] * 13
    result = darroch_mode(probs)
    assert result.mean == pytest.approx(12.3, abs=1e-9)
    assert result.modes == (12, 13)


def test_mode_degenerate_all_certain():
    result = darroch_mode([1.0] * 13)
    assert result.modes == (13,)
    assert result.mean == 13.0


def test_mode_fair_coins_matches_argmax():
    result = darroch_mode([0.5] * 13)
    assert result.modes == (6, 7)
    assert binomial_pmf(13, 0.5).argmax_set() == (6, 7)


def test_mode_rejects_bad_input():
    with pytest.raises(ValueError):
        darroch_mode([])
    with pytest.raises(ValueError):
        darroch_mode([0.5] * 14)
    with pytest.raises(ValueError):
        darroch_mode([1.2])


def test_mode_candidates_cover_argmax_on_random_vectors():
    rng = np.random.default_rng(1728)
    for _ in range(1000):
        n = int(rng.integers(1, 14))
        probs = rng.random(n)
        result = darroch_mode(probs)
        assert all(abs(m - result.mean) <= 1.0 + 1e-9 for m in result.modes)
        exact = enumerate_pmf(probs)
        argmax = set(np.flatnonzero(exact >= exact.max() - 1e-12).tolist())
        assert argmax <= set(result.modes), (probs, argmax, result)


# ---------------------------------------------------------------------------
# mode_in_range
# ---------------------------------------------------------------------------

def test_in_range_mode_unique():
    pmf = exact_pmf(QuestionProfile.from_counts(10, 2, 1))
    picked = mode_in_range(pmf, LuckyRange(10, 12))
    assert picked.number == 12
    assert picked.candidates == (12,)


def test_in_range_mode_reports_ties():
    # Binom(5, 0.5) puts equal mass 10/32 on 2 and 3 successes.
    pmf = exact_pmf(QuestionProfile.from_counts(8, 0, 5))
    picked = mode_in_range(pmf, LuckyRange(10, 12))
    assert picked.candidates == (10, 11)
    assert picked.number == 11


def test_in_range_mode_point_mass():
    picked = mode_in_range(Pmf13.point(11), LuckyRange(10, 12))
    assert picked.number == 11
    assert picked.candidates == (11,)
