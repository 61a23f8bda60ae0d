// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "analysis.hpp"
#include "linklevel.hpp"
#include "mutual_info.hpp"
#include "pilots.hpp"
#include "rng.hpp"
#include "system_config.hpp"

namespace milb
{

// Empirical estimate of one scalar quantity: sample mean and standard error
// (sample std / sqrt(trials)) over independent trials. Identical
// (config, seed, trials) reproduce the mean bit-for-bit: every trial derives
// its own sub-seed from (seed, trial index) and partial sums are combined in
// trial-index order.
struct TrialStats
{
    std::string quantity;
    long trials = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t seed = 0;
    SystemConfig cfg;
};

enum class McMode
{
    gaussian_equivalent, // i.i.d. Gaussian G in place of the scaled estimate
    full_linklevel       // estimate built from simulated frames
};

inline const char *mc_mode_name(McMode m)
{
    return m == McMode::gaussian_equivalent ? "gaussian-equivalent" : "full-linklevel";
}

namespace detail
{

// ln det(I + c G G^H) through the smaller Gram side, Cholesky factorized.
inline double lndet_i_plus_gram(const Eigen::MatrixXcd &G, double c)
{
    const bool tall = G.rows() >= G.cols();
    const Eigen::Index m = tall ? G.cols() : G.rows();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(m, m);
    if (tall)
        M.noalias() += c * (G.adjoint() * G);
    else
        M.noalias() += c * (G * G.adjoint());
    Eigen::LLT<Eigen::MatrixXcd> llt(M);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("log-det argument not positive definite");
    return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
}

// Serial mean/stderr accumulator in trial order.
template <typename PerTrial>
TrialStats accumulate(const SystemConfig &cfg, const std::string &quantity, long trials,
                      std::uint64_t seed, PerTrial &&per_trial)
{
    if (trials < 100)
        throw std::invalid_argument("trials must be >= 100");
    double sum = 0.0, sumsq = 0.0;
    for (long t = 0; t < trials; ++t)
    {
        const double x = per_trial(trial_seed(seed, static_cast<std::uint64_t>(t)));
        sum += x;
        sumsq += x * x;
    }
    TrialStats st;
    st.quantity = quantity;
    st.trials = trials;
    st.seed = seed;
    st.cfg = cfg;
    st.mean = sum / trials;
    const double var = (sumsq - trials * st.mean * st.mean) / (trials - 1);
    st.stderr_ = std::sqrt(std::max(var, 0.0) / trials);
    return st;
}

} // namespace detail

// Empirical (1/(NK)) ||H - Hhat||_F^2 for the scheme in cfg.
inline TrialStats mc_error_variance(const SystemConfig &cfg, long trials, std::uint64_t seed)
{
    check_config(cfg);
    const bool sp = cfg.scheme == Scheme::sp;
    const PilotMatrix pilots = gen_mwbe_pilots(cfg.K, sp ? cfg.L : cfg.Lp);
    const double scale = 1.0 / (static_cast<double>(cfg.N) * cfg.K);
    return detail::accumulate(cfg, "error_variance", trials, seed, [&](std::uint64_t s) {
        const FrameRealization f =
            sp ? simulate_sp_frame(cfg, pilots, s) : simulate_rp_frame(cfg, pilots, s);
        return scale * (f.H - f.Hhat).squaredNorm();
    });
}

// Empirical (1/(N * width)) ||V||_F^2, width = L for SP and L - Lp for RP.
inline TrialStats mc_sigma_v2(const SystemConfig &cfg, long trials, std::uint64_t seed)
{
    check_config(cfg);
    const bool sp = cfg.scheme == Scheme::sp;
    const PilotMatrix pilots = gen_mwbe_pilots(cfg.K, sp ? cfg.L : cfg.Lp);
    const int width = sp ? cfg.L : cfg.L - cfg.Lp;
    const double scale = 1.0 / (static_cast<double>(cfg.N) * width);
    return detail::accumulate(cfg, "sigma_v2", trials, seed, [&](std::uint64_t s) {
        const FrameRealization f =
            sp ? simulate_sp_frame(cfg, pilots, s) : simulate_rp_frame(cfg, pilots, s);
        return scale * f.V.squaredNorm();
    });
}

// Empirical traces of the six covariance pieces of V for SP. With
// Ht = H - Hhat, A = Ht*Phi, B = Ht*S, W = noise:
//   r1 = ||W||^2                      r4 = sqrt(aP)       Re tr(A W^H)
//   r2 = (1-a)P ||B||^2               r5 = sqrt((1-a)P)   Re tr(B W^H)
//   r3 = aP ||A||^2                   r6 = sqrt(a(1-a)) P Re tr(A B^H)
// so that ||V||^2 = r1 + r2 + r3 + 2 r4 + 2 r5 + 2 r6 identically per trial.
inline std::array<TrialStats, 6> mc_trace_terms(const SystemConfig &cfg, long trials,
                                                std::uint64_t seed)
{
    check_config(cfg);
    if (cfg.scheme != Scheme::sp)
        throw std::invalid_argument("trace decomposition is defined for the SP scheme");
    if (trials < 100)
        throw std::invalid_argument("trials must be >= 100");
    const PilotMatrix pilots = gen_mwbe_pilots(cfg.K, cfg.L);
    const double a = cfg.alpha, P = cfg.P;

    std::array<double, 6> sum{}, sumsq{};
    for (long t = 0; t < trials; ++t)
    {
        const FrameRealization f =
            simulate_sp_frame(cfg, pilots, trial_seed(seed, static_cast<std::uint64_t>(t)));
        const Eigen::MatrixXcd Ht = f.H - f.Hhat;
        const Eigen::MatrixXcd A = Ht * pilots.entries;
        const Eigen::MatrixXcd B = Ht * f.S;
        const std::array<double, 6> r = {
            f.noise.squaredNorm(),
            (1.0 - a) * P * B.squaredNorm(),
            a * P * A.squaredNorm(),
            std::sqrt(a * P) * (A.array() * f.noise.array().conjugate()).sum().real(),
            std::sqrt((1.0 - a) * P) * (B.array() * f.noise.array().conjugate()).sum().real(),
            std::sqrt(a * (1.0 - a)) * P * (A.array() * B.array().conjugate()).sum().real()};
        for (int i = 0; i < 6; ++i)
        {
            sum[i] += r[i];
            sumsq[i] += r[i] * r[i];
        }
    }

    std::array<TrialStats, 6> out;
    for (int i = 0; i < 6; ++i)
    {
        out[i].quantity = "tr_r" + std::to_string(i + 1);
        out[i].trials = trials;
        out[i].seed = seed;
        out[i].cfg = cfg;
        out[i].mean = sum[i] / trials;
        const double var = (sumsq[i] - trials * out[i].mean * out[i].mean) / (trials - 1);
        out[i].stderr_ = std::sqrt(std::max(var, 0.0) / trials);
    }
    return out;
}

// Empirical MILB. gaussian-equivalent draws i.i.d. CN(0,1) G of width L (SP)
// or Lp (RP) and averages the prefactored ln det(I + rho G G^H);
// full-linklevel builds Hhat from simulated frames and averages
// ln det(I + (data power / sigma_v2) Hhat Hhat^H) with the closed-form
// sigma_v2 inside (the bound treats V as white at that deterministic
// variance).
inline TrialStats mc_milb(const SystemConfig &cfg, long trials, std::uint64_t seed, McMode mode)
{
    check_config(cfg);
    const bool sp = cfg.scheme == Scheme::sp;
    const std::string tag =
        std::string("milb_") + (mode == McMode::gaussian_equivalent ? "ge" : "fl");

    if (mode == McMode::gaussian_equivalent)
    {
        const double rho = sp ? (cfg.P == 0.0 ? 0.0
                                              : rho_gamma_sp(cfg.alpha, cfg.P, cfg.K, cfg.L,
                                                             cfg.sigma2)
                                                    .first)
                              : rho_rp(cfg.P, cfg.K, cfg.Lp, cfg.sigma2);
        const int width = sp ? cfg.L : cfg.Lp;
        const double pre = sp ? 1.0 : static_cast<double>(cfg.L - cfg.Lp) / cfg.L;
        return detail::accumulate(cfg, tag, trials, seed, [&](std::uint64_t s) {
            ComplexGauss rng(s);
            return pre * detail::lndet_i_plus_gram(rng.matrix(cfg.N, width), rho);
        });
    }

    const PilotMatrix pilots = gen_mwbe_pilots(cfg.K, sp ? cfg.L : cfg.Lp);
    const double sv2 = sp ? sigma_v2_sp(cfg.alpha, cfg.P, cfg.K, cfg.L, cfg.sigma2)
                          : sigma_v2_rp(cfg.P, cfg.K, cfg.Lp, cfg.sigma2);
    const double snr = (sp ? (1.0 - cfg.alpha) * cfg.P : cfg.P) / sv2;
    const double pre = sp ? 1.0 : static_cast<double>(cfg.L - cfg.Lp) / cfg.L;
    return detail::accumulate(cfg, tag, trials, seed, [&](std::uint64_t s) {
        const FrameRealization f =
            sp ? simulate_sp_frame(cfg, pilots, s) : simulate_rp_frame(cfg, pilots, s);
        return pre * detail::lndet_i_plus_gram(f.Hhat, snr);
    });
}

} // namespace milb
