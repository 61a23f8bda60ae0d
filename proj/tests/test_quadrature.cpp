// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include <milb/gauss_legendre.hpp>
#include <milb/mutual_info.hpp>
#include <milb/wishart_density.hpp>

using namespace milb;

TEST_CASE("Gauss-Legendre rules reproduce the low-order tables")
{
    const GaussLegendre &r1 = gl_rule(1);
    REQUIRE(r1.x.size() == 1);
    REQUIRE(r1.x[0] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(r1.w[0] == Catch::Approx(2.0).epsilon(1e-15));

    const GaussLegendre &r2 = gl_rule(2);
    REQUIRE(r2.x[0] == Catch::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    REQUIRE(r2.x[1] == Catch::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    REQUIRE(r2.w[0] == Catch::Approx(1.0).epsilon(1e-15));
    REQUIRE(r2.w[1] == Catch::Approx(1.0).epsilon(1e-15));

    REQUIRE_THROWS_AS(gl_rule(0), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rule cache returns stable references")
{
    const GaussLegendre *a = &gl_rule(64);
    const GaussLegendre *b = &gl_rule(64);
    REQUIRE(a == b);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly")
{
    // order 3 handles x^5 on [0,1]
    const double v = gl_integrate([](double x) { return x * x * x * x * x; }, 0.0, 1.0, 3);
    REQUIRE(v == Catch::Approx(1.0 / 6.0).epsilon(1e-14));

    const double s = gl_integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 32);
    REQUIRE(s == Catch::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("milb integral matches the analytic single-antenna value")
{
    // N=2, width=1: integral of ln(1+lam) lam e^-lam dlam = 1 exactly
    // (integrate by parts with v = -(lam+1) e^-lam). A truncated quadrature
    // without tail extension misses this by ~4e-3, so the band is sharp.
    const double v = milb_integral(1.0, 2, 1);
    REQUIRE(std::abs(v - 1.0) < 1e-8);
}

TEST_CASE("milb integral pins a small-dimension reference value")
{
    REQUIRE(milb_integral(0.5, 4, 2) == Catch::Approx(1.9830765237008228).epsilon(1e-7));
}

TEST_CASE("milb integral handles the zero-SNR edge and bad inputs")
{
    REQUIRE(milb_integral(0.0, 60, 30) == 0.0);
    REQUIRE_THROWS_AS(milb_integral(-0.1, 60, 30), std::domain_error);
    REQUIRE_THROWS_AS(milb_integral(std::nan(""), 60, 30), std::domain_error);
    REQUIRE_THROWS_AS(milb_integral(HUGE_VAL, 60, 30), std::domain_error);
}

TEST_CASE("milb integral grows with the SNR coefficient")
{
    const double lo = milb_integral(0.1, 60, 30);
    const double hi = milb_integral(0.2, 60, 30);
    REQUIRE(lo > 0.0);
    REQUIRE(hi > lo);
}

TEST_CASE("density normalization and first moment hit their known values")
{
    struct Pair
    {
        int n, l;
    };
    for (const Pair p : {Pair{60, 30}, Pair{60, 29}, Pair{60, 1}, Pair{31, 30}, Pair{4, 2}})
    {
        const EigDensity dens(p.n, p.l);
        REQUIRE(std::abs(density_norm(dens) - 1.0) < 1e-8);
        REQUIRE(std::abs(density_mean(dens) - p.n) < 1e-6 * p.n);
    }
}
