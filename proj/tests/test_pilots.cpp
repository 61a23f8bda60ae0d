// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include <milb/pilots.hpp>

using namespace milb;

TEST_CASE("pilot entries follow the DFT phase convention")
{
    // K=4, len=2: user row 1 (0-based) is [1, exp(-2*pi*j/4)] = [1, -j]
    const PilotMatrix p = gen_mwbe_pilots(4, 2);
    REQUIRE(std::abs(p.entries(1, 0) - std::complex<double>(1.0, 0.0)) < 1e-12);
    REQUIRE(std::abs(p.entries(1, 1) - std::complex<double>(0.0, -1.0)) < 1e-12);

    const PilotMatrix one = gen_mwbe_pilots(1, 1);
    REQUIRE(std::abs(one.entries(0, 0) - std::complex<double>(1.0, 0.0)) < 1e-12);
}

TEST_CASE("pilot columns are orthogonal with Gram K*I")
{
    const PilotMatrix p = gen_mwbe_pilots(40, 30);
    const Eigen::MatrixXcd G = p.entries.adjoint() * p.entries;
    const Eigen::MatrixXcd D = G - 40.0 * Eigen::MatrixXcd::Identity(30, 30);
    REQUIRE(D.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pilot entries have unit modulus for random dimensions")
{
    std::mt19937_64 eng(12345);
    for (int s = 0; s < 100; ++s)
    {
        const int K = 1 + static_cast<int>(eng() % 128);
        const int len = 1 + static_cast<int>(eng() % K);
        const PilotMatrix p = gen_mwbe_pilots(K, len);
        double worst = 0.0;
        for (int k = 0; k < K; ++k)
            for (int n = 0; n < len; ++n)
                worst = std::max(worst, std::abs(std::abs(p.entries(k, n)) - 1.0));
        REQUIRE(worst < 1e-12);

        const Eigen::MatrixXcd D = p.entries.adjoint() * p.entries -
                                   static_cast<double>(K) *
                                       Eigen::MatrixXcd::Identity(len, len);
        REQUIRE(D.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("row Gram matches the geometric-series closed form")
{
    const int K = 40, len = 30;
    const PilotMatrix p = gen_mwbe_pilots(K, len);
    const Eigen::MatrixXcd R = gram_rows(p);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
        {
            std::complex<double> expected;
            if ((i - j) % K == 0)
                expected = len;
            else
            {
                const std::complex<double> w = std::polar(1.0, -2.0 * M_PI * (i - j) / K);
                expected = (1.0 - std::pow(w, len)) / (1.0 - w);
            }
            REQUIRE(std::abs(R(i, j) - expected) < 1e-10);
        }
    for (int i = 0; i < K; ++i)
        REQUIRE(R(i, i).real() == Catch::Approx(len).margin(1e-10));
}

TEST_CASE("RP pilots are a column prefix of the SP pilots")
{
    const PilotMatrix sp = gen_mwbe_pilots(40, 30);
    const PilotMatrix rp = gen_mwbe_pilots(40, 10);
    REQUIRE((sp.entries.leftCols(10) - rp.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pilot dimensions are validated")
{
    REQUIRE_THROWS_AS(gen_mwbe_pilots(10, 11), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_mwbe_pilots(0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_mwbe_pilots(4, 0), std::invalid_argument);
}

TEST_CASE("pilot CSV dump is row-major re,im")
{
    REQUIRE(pilot_csv(gen_mwbe_pilots(1, 1)) == "re,im\n1,0\n");

    // K=2, len=2: rows are [1,1] and [1,-1]
    const std::string csv = pilot_csv(gen_mwbe_pilots(2, 2));
    REQUIRE(csv.substr(0, 6) == "re,im\n");
    REQUIRE(csv.find("1,0\n1,0\n1,0\n-1,") != std::string::npos);
}
