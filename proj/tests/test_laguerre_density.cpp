// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include <milb/laguerre.hpp>
#include <milb/wishart_density.hpp>

using namespace milb;

TEST_CASE("generalized Laguerre recurrence matches low-order closed forms")
{
    REQUIRE(laguerre(0, 0, 1.7) == 1.0);
    REQUIRE(laguerre(0, 12, 0.3) == 1.0);
    // L_1^(r)(x) = 1 + r - x
    REQUIRE(laguerre(1, 2, 1.0) == Catch::Approx(2.0).epsilon(1e-14));
    REQUIRE(laguerre(1, 5, 2.5) == Catch::Approx(3.5).epsilon(1e-14));
    // L_2^(0)(x) = 1 - 2x + x^2/2
    REQUIRE(laguerre(2, 0, 3.0) == Catch::Approx(1.0 - 6.0 + 4.5).epsilon(1e-14));
}

TEST_CASE("generalized Laguerre recurrence matches the binomial sum")
{
    // L_m^(r)(x) = sum_i (-1)^i C(m+r, m-i) x^i / i!, assembled here through
    // lgamma as an independent path
    const int m = 5, r = 30;
    const double x = 3.0;
    double expected = 0.0;
    for (int i = 0; i <= m; ++i)
    {
        const double log_binom =
            std::lgamma(m + r + 1.0) - std::lgamma(m - i + 1.0) - std::lgamma(r + i + 1.0);
        const double term = std::exp(log_binom + i * std::log(x) - std::lgamma(i + 1.0));
        expected += (i % 2 == 0) ? term : -term;
    }
    REQUIRE(expected == Catch::Approx(194443.1).epsilon(1e-10));
    REQUIRE(laguerre(m, r, x) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("generalized Laguerre rejects negative orders")
{
    REQUIRE_THROWS_AS(laguerre(-1, 0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(laguerre(0, -1, 1.0), std::invalid_argument);
}

TEST_CASE("eigenvalue density validates its arguments")
{
    REQUIRE_THROWS_AS(EigDensity(30, 60), std::invalid_argument); // needs N >= L
    REQUIRE_THROWS_AS(EigDensity(60, 0), std::invalid_argument);
    EigDensity d(60, 30);
    REQUIRE(d.n() == 60);
    REQUIRE(d.l() == 30);
    REQUIRE_THROWS_AS(d(-1.0), std::invalid_argument);
}

TEST_CASE("eigenvalue density pins reference points")
{
    REQUIRE(EigDensity(4, 2)(2.0) == Catch::Approx(0.18044704431548359).epsilon(1e-12));
    REQUIRE(EigDensity(6, 3)(5.0) == Catch::Approx(0.087733684883925353).epsilon(1e-12));
    REQUIRE(EigDensity(60, 30)(30.0) == Catch::Approx(0.010730340074706578).epsilon(1e-12));
    REQUIRE(EigDensity(60, 30)(60.0) == Catch::Approx(0.0070320110132074603).epsilon(1e-12));
}

TEST_CASE("eigenvalue density handles the lambda -> 0 boundary")
{
    // N > L: the lam^(N-L) factor sends the density to zero
    REQUIRE(EigDensity(60, 30)(0.0) == 0.0);
    // N == L: every Laguerre factor is 1 at the origin and the density is 1
    REQUIRE(EigDensity(30, 30)(0.0) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigenvalue density reduces to Gamma(N,1) for a single column")
{
    const int N = 60;
    EigDensity d(N, 1);
    for (int i = 0; i < 20; ++i)
    {
        const double lam = 20.0 + 5.0 * i;
        const double gamma_pdf = std::exp((N - 1) * std::log(lam) - lam - std::lgamma(N));
        REQUIRE(d(lam) == Catch::Approx(gamma_pdf).epsilon(1e-10));
    }
}

TEST_CASE("eigenvalue density scaled recurrence matches direct assembly")
{
    // direct formula (1/L) sum_m m!/(m+r)! [L_m^(r)(lam)]^2 lam^r e^-lam,
    // feasible in double at these sizes; the class keeps the same value with
    // overflow-safe scaling
    const int N = 60, L = 30, r = N - L;
    EigDensity d(N, L);
    for (double lam : {5.0, 30.0, 60.0, 100.0, 150.0})
    {
        double acc = 0.0;
        for (int m = 0; m < L; ++m)
        {
            const double lg = laguerre(m, r, lam);
            const double c = std::exp(std::lgamma(m + 1.0) - std::lgamma(m + r + 1.0));
            acc += c * lg * lg * std::pow(lam, r) * std::exp(-lam);
        }
        acc /= L;
        REQUIRE(d(lam) == Catch::Approx(acc).epsilon(1e-11));
    }
}
