// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include <milb/analysis.hpp>
#include <milb/mutual_info.hpp>

using namespace milb;

namespace
{

SystemConfig sp_base()
{
    SystemConfig cfg;
    cfg.K = 40;
    cfg.L = 30;
    cfg.N = 60;
    cfg.P = 1.0;
    cfg.sigma2 = 1.0;
    cfg.scheme = Scheme::sp;
    cfg.alpha = 0.5;
    return cfg;
}

} // namespace

TEST_CASE("SP effective SNR and its denominator hit exact rationals")
{
    // alpha=1/2, P=1, K=40, L=30, sigma2=1: gamma = 17781/41, rho = 410/17781
    const auto [rho, gamma] = rho_gamma_sp(0.5, 1.0, 40.0, 30.0, 1.0);
    REQUIRE(gamma == Catch::Approx(17781.0 / 41.0).epsilon(1e-13));
    REQUIRE(rho == Catch::Approx(410.0 / 17781.0).epsilon(1e-13));
}

TEST_CASE("gamma equals c times the residual variance")
{
    std::mt19937_64 eng(31415);
    std::uniform_real_distribution<double> ua(0.01, 0.99);
    std::uniform_real_distribution<double> ulogp(std::log(1e-2), std::log(1e2));
    std::uniform_real_distribution<double> us(0.1, 10.0);
    for (int i = 0; i < 200; ++i)
    {
        const double L = 2 + static_cast<double>(eng() % 39);
        const double K = L + static_cast<double>(eng() % static_cast<int>(3 * L + 1));
        const double alpha = ua(eng);
        const double P = std::exp(ulogp(eng));
        const double sigma2 = us(eng);
        const double c = P * K + sigma2;
        const double gamma = rho_gamma_sp(alpha, P, K, L, sigma2).second;
        REQUIRE(gamma == Catch::Approx(c * sigma_v2_sp(alpha, P, K, L, sigma2)).epsilon(1e-12));
    }
}

TEST_CASE("gamma endpoints follow the variance limits")
{
    const double P = 3.0, K = 50.0, L = 20.0, sigma2 = 2.0;
    const double c = P * K + sigma2;
    const auto [rho0, gamma0] = rho_gamma_sp(0.0, P, K, L, sigma2);
    REQUIRE(rho0 == 0.0);
    REQUIRE(gamma0 == Catch::Approx(c * c).epsilon(1e-14));
    const auto [rho1, gamma1] = rho_gamma_sp(1.0, P, K, L, sigma2);
    REQUIRE(rho1 == 0.0);
    REQUIRE(gamma1 == Catch::Approx(sigma2 * sigma2).epsilon(1e-9));
}

TEST_CASE("gamma stays positive across the high-power K < L regime")
{
    // K=10 users against L=30 symbols at 40 dB is the harshest sweep point
    for (int i = 1; i < 100; ++i)
    {
        const double alpha = i / 100.0;
        REQUIRE(rho_gamma_sp(alpha, 1e4, 10.0, 30.0, 1.0).second > 0.0);
    }
}

TEST_CASE("RP effective SNR hits its rational reference point")
{
    REQUIRE(rho_rp(1.0, 40.0, 10.0, 1.0) == Catch::Approx(40.0 / 1281.0).epsilon(1e-14));
    REQUIRE(rho_rp(0.0, 40.0, 10.0, 1.0) == 0.0);
    // Lp = K removes the inter-user term entirely
    REQUIRE(rho_rp(2.0, 10.0, 10.0, 1.0) ==
            Catch::Approx(4.0 * 10.0 / (1.0 + 2.0 * 2.0 * 10.0)).epsilon(1e-14));
}

TEST_CASE("SP bound matches its frozen reference value")
{
    const MilbPoint pt = milb_sp(sp_base());
    REQUIRE(pt.rho == Catch::Approx(410.0 / 17781.0).epsilon(1e-13));
    REQUIRE(pt.milb_nats == Catch::Approx(23.613981246725938).epsilon(1e-7));
    REQUIRE(pt.milb_bits == pt.milb_nats / M_LN2);
    REQUIRE(pt.method == "closed-form");
    REQUIRE(pt.stderr_ == 0.0);
    REQUIRE(pt.trials == 0);
    REQUIRE(pt.scheme == Scheme::sp);
}

TEST_CASE("RP bound matches its frozen reference value")
{
    SystemConfig cfg = sp_base();
    cfg.Lp = 10;
    const MilbPoint pt = milb_rp(cfg);
    REQUIRE(pt.rho == Catch::Approx(40.0 / 1281.0).epsilon(1e-13));
    REQUIRE(pt.milb_nats == Catch::Approx(6.8015254085149142).epsilon(1e-7));
    REQUIRE(pt.milb_bits == pt.milb_nats / M_LN2);
    REQUIRE(pt.scheme == Scheme::rp);
}

TEST_CASE("both bounds vanish at zero power")
{
    SystemConfig cfg = sp_base();
    cfg.P = 0.0;
    const MilbPoint sp = milb_sp(cfg);
    REQUIRE(sp.rho == 0.0);
    REQUIRE(sp.milb_nats == 0.0);
    cfg.Lp = 10;
    const MilbPoint rp = milb_rp(cfg);
    REQUIRE(rp.rho == 0.0);
    REQUIRE(rp.milb_nats == 0.0);
}

TEST_CASE("RP bound never drops when power doubles")
{
    SystemConfig cfg = sp_base();
    cfg.Lp = 10;
    double prev = 0.0;
    for (double P : {0.5, 1.0, 2.0, 4.0, 8.0})
    {
        cfg.P = P;
        const double cur = milb_rp(cfg).milb_nats;
        REQUIRE(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("bound evaluation validates the configuration")
{
    SystemConfig cfg = sp_base();
    cfg.N = 20; // fewer antennas than symbols
    REQUIRE_THROWS_AS(milb_sp(cfg), std::invalid_argument);

    cfg = sp_base();
    cfg.alpha = 1.0;
    REQUIRE_THROWS_AS(milb_sp(cfg), std::invalid_argument);

    cfg = sp_base();
    cfg.Lp = 30; // must stay below L
    REQUIRE_THROWS_AS(milb_rp(cfg), std::invalid_argument);

    // feasible per the config rules but with nonpositive effective SNR
    cfg = sp_base();
    cfg.K = 10;
    cfg.Lp = 25;
    cfg.P = 100.0;
    REQUIRE_THROWS_AS(milb_rp(cfg), std::domain_error);
}
