// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace milb
{

enum class Scheme
{
    sp, // superimposed pilot: pilot and data overlaid over the whole block, power split by alpha
    rp  // regular pilot: Lp pilot symbols followed by L - Lp data symbols
};

inline const char *scheme_name(Scheme s)
{
    return s == Scheme::sp ? "sp" : "rp";
}

// Scalar scenario parameters. K users, coherence length L, N BS antennas,
// per-user transmit power P (linear), noise variance sigma2. The scheme
// parameter is alpha for SP and Lp for RP; the unused one is ignored.
struct SystemConfig
{
    int K = 0;
    int L = 0;
    int N = 0;
    double P = 0.0;
    double sigma2 = 1.0;
    Scheme scheme = Scheme::sp;
    double alpha = 0.5; // SP only, 0 < alpha < 1
    int Lp = 1;         // RP only, 1 <= Lp <= L-1
};

// Validates a config. Violations that make evaluation impossible throw
// std::invalid_argument. The massive-connectivity condition K >= L is not a
// hard error for the closed-form path (the scalar formulas are total in K);
// it is returned as a warning and enforced separately by the pilot
// constructor wherever an actual pilot matrix is needed.
inline std::vector<std::string> check_config(const SystemConfig &cfg)
{
    if (cfg.K < 1)
        throw std::invalid_argument("K must be >= 1");
    if (cfg.L < 1)
        throw std::invalid_argument("L must be >= 1");
    if (cfg.N < cfg.L)
        throw std::invalid_argument("N must be >= L (eigenvalue density requires it)");
    if (cfg.P < 0.0)
        throw std::invalid_argument("P must be >= 0");
    if (!(cfg.sigma2 > 0.0))
        throw std::invalid_argument("sigma2 must be > 0");
    if (cfg.scheme == Scheme::sp)
    {
        if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
            throw std::invalid_argument("alpha must be in (0,1)");
    }
    else
    {
        if (cfg.Lp < 1 || cfg.Lp > cfg.L - 1)
            throw std::invalid_argument("Lp must satisfy 1 <= Lp <= L-1");
    }

    std::vector<std::string> warnings;
    if (cfg.K < cfg.L)
        warnings.push_back("K < L violates the massive-connectivity premise K >= L; "
                           "closed forms are formal extensions and link-level simulation is undefined");
    return warnings;
}

} // namespace milb
