"""Tests for n-fold sum distributions: the series density, the Erlang mixture
representation, tails, and moments.

The n = 2 and n = 3 densities are re-derived here by expanding the convolution
by hand for each family member, giving polynomial-bracket oracles that share no
code with the implementation.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from lindsum.family import (
    AKASH,
    ISHITA,
    LINDLEY,
    MEMBERS,
    PRANAV,
    RAM_AWADH,
    RANI,
    SHANKER,
    DistSpec,
)
from lindsum.numerics import integrate
from lindsum.sums import ErlangMixture, SumSpec

# Hand-expanded convolution brackets: pdf = c^n * exp(-theta x) * bracket(theta, x).
BRACKETS = {
    (LINDLEY.name, 2): lambda th, x: x + x**2 + x**3 / 6,
    (LINDLEY.name, 3): lambda th, x: x**2 / 2 + x**3 / 2 + x**4 / 8 + x**5 / 120,
    (SHANKER.name, 2): lambda th, x: th**2 * x + th * x**2 + x**3 / 6,
    (SHANKER.name, 3): lambda th, x: th**3 * x**2 / 2 + th**2 * x**3 / 2 + th * x**4 / 8 + x**5 / 120,
    (AKASH.name, 2): lambda th, x: x + 2 * x**3 / 3 + x**5 / 30,
    (AKASH.name, 3): lambda th, x: x**2 / 2 + x**4 / 4 + x**6 / 60 + x**8 / 5040,
    (ISHITA.name, 2): lambda th, x: th**2 * x + 2 * th * x**3 / 3 + x**5 / 30,
    (ISHITA.name, 3): lambda th, x: th**3 * x**2 / 2 + th**2 * x**4 / 4 + th * x**6 / 60 + x**8 / 5040,
    (PRANAV.name, 2): lambda th, x: th**2 * x + th * x**4 / 2 + x**7 / 140,
    (PRANAV.name, 3): lambda th, x: th**3 * x**2 / 2 + 3 * th**2 * x**5 / 20 + 3 * th * x**8 / 1120 + x**11 / 184800,
    (RANI.name, 2): lambda th, x: th**2 * x + 2 * th * x**5 / 5 + x**9 / 630,
    (RANI.name, 3): lambda th, x: th**3 * x**2 / 2 + th**2 * x**6 / 10 + th * x**10 / 2100 + x**14 / 6306300,
    (RAM_AWADH.name, 2): lambda th, x: th**2 * x + th * x**6 / 3 + x**11 / 2772,
    (RAM_AWADH.name, 3): lambda th, x: th**3 * x**2 / 2 + th**2 * x**7 / 14 + th * x**12 / 11088 + x**17 / 205837632,
}


class TestErlangMixtureValidation:
    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            ErlangMixture(1.0, (0.5, 0.5), (1, 2, 3))

    def test_rejects_unsorted_shapes(self):
        with pytest.raises(ValueError):
            ErlangMixture(1.0, (0.5, 0.5), (2, 1))

    def test_rejects_weights_off_unity(self):
        with pytest.raises(ValueError):
            ErlangMixture(1.0, (0.6, 0.5), (1, 2))

    def test_rejects_nonpositive_rate(self):
        with pytest.raises(ValueError):
            ErlangMixture(0.0, (1.0,), (1,))

    def test_components_pairs(self):
        mixture = ErlangMixture(2.0, (0.25, 0.75), (1, 3))
        assert mixture.components == ((0.25, 1), (0.75, 3))


class TestSumSpecValidation:
    def test_rejects_nonpositive_n(self):
        with pytest.raises(ValueError):
            SumSpec(DistSpec(LINDLEY, 1.0), 0)

    def test_rejects_non_integer_n(self):
        with pytest.raises(TypeError):
            SumSpec(DistSpec(LINDLEY, 1.0), 2.5)


class TestSingleTermReduction:
    def test_density_matches_base_distribution(self):
        xs = np.linspace(0.0, 25.0, 101)
        for member in MEMBERS:
            for theta in (0.5, 1.0, 2.0):
                dist = DistSpec(member, theta)
                summed = SumSpec(dist, 1)
                base = dist.pdf(xs)
                series = summed.pdf(xs)
                np.testing.assert_allclose(series, base, rtol=1e-12, atol=1e-300)

    def test_tail_matches_base_distribution(self):
        for member in MEMBERS:
            dist = DistSpec(member, 1.0)
            summed = SumSpec(dist, 1)
            for x in (0.0, 0.3, 2.0, 9.0):
                np.testing.assert_allclose(summed.survival(x), dist.survival(x), rtol=1e-12)

    def test_moments_match_base_distribution(self):
        for member in MEMBERS:
            dist = DistSpec(member, 1.3)
            summed = SumSpec(dist, 1)
            for m in range(5):
                np.testing.assert_allclose(summed.moment(m), dist.moment(m), rtol=1e-12)


class TestDensityAgainstHandExpansion:
    def test_all_members_n2_n3(self):
        for member in MEMBERS:
            for n in (2, 3):
                bracket = BRACKETS[(member.name, n)]
                for theta in (0.5, 1.0, 2.0):
                    dist = DistSpec(member, theta)
                    spec = SumSpec(dist, n)
                    c = dist.norm_const
                    for x in np.linspace(0.1, 8.0 / theta, 13):
                        expected = c**n * math.exp(-theta * x) * bracket(theta, float(x))
                        np.testing.assert_allclose(spec.pdf(float(x)), expected, rtol=1e-11)

    def test_frozen_value_shanker_pair(self):
        # theta=1: c=1/2, bracket(1,1) = 1 + 1 + 1/6 = 13/6
        value = SumSpec(DistSpec(SHANKER, 1.0), 2).pdf(1.0)
        np.testing.assert_allclose(value, 0.25 * math.exp(-1.0) * (13.0 / 6.0), rtol=1e-13)

    def test_frozen_value_ram_awadh_triple(self):
        # theta=1: c=1/121, bracket(1,2) = 2 + 2^7/14 + 2^12/11088 + 2^17/205837632
        bracket = 2.0 + 128.0 / 14.0 + 4096.0 / 11088.0 + 131072.0 / 205837632.0
        value = SumSpec(DistSpec(RAM_AWADH, 1.0), 3).pdf(2.0)
        np.testing.assert_allclose(value, (1.0 / 121.0) ** 3 * math.exp(-2.0) * bracket, rtol=1e-13)

    def test_zero_and_negative_arguments(self):
        spec = SumSpec(DistSpec(AKASH, 1.0), 3)
        assert spec.pdf(-1.0) == 0.0
        assert spec.pdf(0.0) == 0.0
        single = SumSpec(DistSpec(LINDLEY, 2.0), 1)
        np.testing.assert_allclose(single.pdf(0.0), DistSpec(LINDLEY, 2.0).pdf(0.0), rtol=1e-15)


class TestMixtureRepresentation:
    def test_frozen_weights_single_lindley(self):
        mixture = SumSpec(DistSpec(LINDLEY, 1.0), 1).mixture()
        np.testing.assert_allclose(mixture.weights, (0.5, 0.5), rtol=1e-14)
        assert mixture.shapes == (1, 2)
        assert mixture.rate == 1.0

    def test_frozen_weights_lindley_pair(self):
        mixture = SumSpec(DistSpec(LINDLEY, 1.0), 2).mixture()
        np.testing.assert_allclose(mixture.weights, (0.25, 0.5, 0.25), rtol=1e-14)
        assert mixture.shapes == (2, 3, 4)

    def test_shapes_step_by_degree(self):
        mixture = SumSpec(DistSpec(RAM_AWADH, 1.0), 4).mixture()
        assert mixture.shapes == (4, 9, 14, 19, 24)

    def test_weights_sum_to_one_up_to_twenty_terms(self):
        for member in MEMBERS:
            for theta in (0.5, 1.0, 2.0):
                for n in range(1, 21):
                    weights = SumSpec(DistSpec(member, theta), n).mixture().weights
                    assert abs(math.fsum(weights) - 1.0) <= 1e-10, (member.name, theta, n)

    def test_mixture_density_equals_series_density(self):
        for member in MEMBERS:
            for n in (1, 2, 5, 10):
                dist = DistSpec(member, 1.0)
                spec = SumSpec(dist, n)
                mixture = spec.mixture()
                xs = np.linspace(0.05, 6.0 * spec.mean(), 40)
                np.testing.assert_allclose(mixture.pdf(xs), spec.pdf(xs), rtol=1e-10, atol=1e-280)


class TestTailFunctions:
    def test_boundaries(self):
        spec = SumSpec(DistSpec(ISHITA, 1.0), 3)
        assert spec.survival(0.0) == 1.0
        assert spec.survival(-4.0) == 1.0
        assert spec.cdf(0.0) == 0.0

    def test_against_density_quadrature(self):
        for member, n in [(LINDLEY, 2), (AKASH, 3), (RAM_AWADH, 2)]:
            spec = SumSpec(DistSpec(member, 1.0), n)
            for x in (1.0, spec.mean(), 3.0 * spec.mean()):
                mass = integrate(lambda u: float(spec.pdf(u)), 0.0, float(x), 1e-12).value
                np.testing.assert_allclose(spec.survival(x), 1.0 - mass, atol=1e-10)

    def test_complementarity_and_monotonicity(self):
        spec = SumSpec(DistSpec(PRANAV, 0.5), 4)
        xs = np.linspace(0.0, 12.0 * spec.mean(), 300)
        tail = spec.survival(xs)
        assert np.all(np.abs(tail + spec.cdf(xs) - 1.0) <= 1e-12)
        assert np.all(np.diff(tail) <= 1e-12)
        assert np.all((tail >= 0.0) & (tail <= 1.0))


class TestMoments:
    def test_zeroth_is_one(self):
        for member in MEMBERS:
            np.testing.assert_allclose(SumSpec(DistSpec(member, 0.8), 6).moment(0), 1.0, rtol=1e-12)

    def test_mean_is_n_times_base_mean(self):
        for member in MEMBERS:
            for theta in (0.5, 1.0, 2.0):
                dist = DistSpec(member, theta)
                for n in (1, 2, 5, 10):
                    np.testing.assert_allclose(
                        SumSpec(dist, n).mean(), n * dist.moment(1), rtol=1e-12
                    )

    def test_frozen_mean_lindley_five(self):
        np.testing.assert_allclose(SumSpec(DistSpec(LINDLEY, 1.0), 5).mean(), 7.5, rtol=1e-13)

    def test_variance_is_n_times_base_variance(self):
        for member in (SHANKER, RANI):
            dist = DistSpec(member, 1.0)
            base_var = dist.moment(2) - dist.moment(1) ** 2
            for n in (2, 7):
                np.testing.assert_allclose(
                    SumSpec(dist, n).variance(), n * base_var, rtol=1e-10
                )

    def test_series_form_matches_mixture_form(self):
        for member in MEMBERS:
            for theta in (0.5, 1.0, 2.0):
                for n in (1, 2, 3, 5, 10):
                    spec = SumSpec(DistSpec(member, theta), n)
                    for m in range(5):
                        np.testing.assert_allclose(
                            spec.moment_series(m), spec.moment(m), rtol=1e-10
                        )

    def test_against_quadrature(self):
        spec = SumSpec(DistSpec(ISHITA, 1.0), 4)
        for m in range(1, 5):
            numeric = integrate(
                lambda x: x**m * float(spec.pdf(x)),
                0.0,
                math.inf,
                1e-11,
                scale=spec.mean() * (m + 1),
            ).value
            np.testing.assert_allclose(spec.moment(m), numeric, rtol=1e-8)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            SumSpec(DistSpec(LINDLEY, 1.0), 2).moment(-1)


class TestLargeN:
    def test_ram_awadh_fifty_terms_stable(self):
        spec = SumSpec(DistSpec(RAM_AWADH, 1.0), 50)
        xs = np.linspace(1.0, 500.0, 250)
        density = spec.pdf(xs)
        tail = spec.survival(xs)
        assert np.all(np.isfinite(density)) and np.all(density >= 0.0)
        assert np.all(np.isfinite(tail))
        mass = integrate(
            lambda x: float(spec.pdf(x)), 0.0, math.inf, 1e-9, scale=spec.mean()
        ).value
        np.testing.assert_allclose(mass, 1.0, atol=1e-6)

    def test_peak_location_near_mean(self):
        spec = SumSpec(DistSpec(RAM_AWADH, 1.0), 50)
        xs = np.linspace(200.0, 400.0, 2001)
        peak = float(xs[int(np.argmax(spec.pdf(xs)))])
        assert abs(peak - spec.mean()) <= 10.0
