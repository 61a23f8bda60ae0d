// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "pilots.hpp"
#include "rng.hpp"
#include "system_config.hpp"

namespace milb
{

// One simulated coherence block. S and V have L columns for SP and L - Lp
// columns for RP; Y and noise always span the whole block. Y reconstructs
// from (H, S, noise) and V satisfies the residual decomposition
// Y_d = sqrt(data power) * Hhat * S + V by construction.
struct FrameRealization
{
    Eigen::MatrixXcd H;     // N x K channel
    Eigen::MatrixXcd S;     // data symbols
    Eigen::MatrixXcd noise; // N x L
    Eigen::MatrixXcd Y;     // N x L received block
    Eigen::MatrixXcd Hhat;  // N x K MMSE estimate
    Eigen::MatrixXcd V;     // residual interference plus noise
};

namespace detail
{

inline void require_dims(bool ok, const char *what)
{
    if (!ok)
        throw std::invalid_argument(std::string("dimension mismatch: ") + what);
}

} // namespace detail

// i.i.d. CN(0,1) channel, N x K.
inline Eigen::MatrixXcd sample_channel(const SystemConfig &cfg, ComplexGauss &rng)
{
    check_config(cfg);
    return rng.matrix(cfg.N, cfg.K);
}

// Y = sqrt(alpha P) H Phi + sqrt((1-alpha) P) H S + noise.
inline Eigen::MatrixXcd transmit_sp(const Eigen::MatrixXcd &H, const PilotMatrix &pilots,
                                    const Eigen::MatrixXcd &S, double alpha, double P,
                                    const Eigen::MatrixXcd &noise)
{
    detail::require_dims(H.cols() == pilots.users, "H columns vs pilot users");
    detail::require_dims(S.rows() == pilots.users && S.cols() == pilots.len,
                         "S vs pilot dimensions");
    detail::require_dims(noise.rows() == H.rows() && noise.cols() == pilots.len,
                         "noise vs frame dimensions");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0,1)");
    return std::sqrt(alpha * P) * H * pilots.entries +
           std::sqrt((1.0 - alpha) * P) * H * S + noise;
}

// Y = [ sqrt(P) H Phi_rp, sqrt(P) H S_rp ] + noise.
inline Eigen::MatrixXcd transmit_rp(const Eigen::MatrixXcd &H, const PilotMatrix &pilots_rp,
                                    const Eigen::MatrixXcd &S_rp, double P,
                                    const Eigen::MatrixXcd &noise)
{
    detail::require_dims(H.cols() == pilots_rp.users, "H columns vs pilot users");
    detail::require_dims(S_rp.rows() == pilots_rp.users, "S_rp rows vs pilot users");
    detail::require_dims(noise.rows() == H.rows() &&
                             noise.cols() == pilots_rp.len + S_rp.cols(),
                         "noise vs frame dimensions");
    Eigen::MatrixXcd Y(H.rows(), noise.cols());
    Y.leftCols(pilots_rp.len) = std::sqrt(P) * H * pilots_rp.entries;
    Y.rightCols(S_rp.cols()) = std::sqrt(P) * H * S_rp;
    return Y + noise;
}

// Hhat = (sqrt(alpha P)/(P K + s2)) Y Phi^H.
inline Eigen::MatrixXcd mmse_estimate_sp(const Eigen::MatrixXcd &Y, const PilotMatrix &pilots,
                                         double alpha, double P, double sigma2)
{
    detail::require_dims(Y.cols() == pilots.len, "Y columns vs pilot length");
    const double c = P * pilots.users + sigma2;
    return (std::sqrt(alpha * P) / c) * Y * pilots.entries.adjoint();
}

// Hhat = (sqrt(P)/(P K + s2)) Y_p Phi_rp^H.
inline Eigen::MatrixXcd mmse_estimate_rp(const Eigen::MatrixXcd &Yp, const PilotMatrix &pilots_rp,
                                         double P, double sigma2)
{
    detail::require_dims(Yp.cols() == pilots_rp.len, "Y_p columns vs pilot length");
    const double c = P * pilots_rp.users + sigma2;
    return (std::sqrt(P) / c) * Yp * pilots_rp.entries.adjoint();
}

// V = Y - sqrt(alpha P) Hhat Phi - sqrt((1-alpha) P) Hhat S. The receiver
// does not know S; the simulation does, and the oracle needs the exact
// residual decomposition.
inline Eigen::MatrixXcd residual_sp(const Eigen::MatrixXcd &Y, const Eigen::MatrixXcd &Hhat,
                                    const PilotMatrix &pilots, const Eigen::MatrixXcd &S,
                                    double alpha, double P)
{
    detail::require_dims(Y.cols() == pilots.len && Hhat.cols() == pilots.users,
                         "Y/Hhat vs pilot dimensions");
    return Y - std::sqrt(alpha * P) * Hhat * pilots.entries -
           std::sqrt((1.0 - alpha) * P) * Hhat * S;
}

// V = Y_d - sqrt(P) Hhat S_rp over the data phase only.
inline Eigen::MatrixXcd residual_rp(const Eigen::MatrixXcd &Yd, const Eigen::MatrixXcd &Hhat,
                                    const Eigen::MatrixXcd &S_rp, double P)
{
    detail::require_dims(Yd.cols() == S_rp.cols() && Hhat.cols() == S_rp.rows(),
                         "Y_d/Hhat vs data dimensions");
    return Yd - std::sqrt(P) * Hhat * S_rp;
}

// Full SP block from a per-frame seed. Variates are drawn in the fixed order
// H, S, noise (column-major within each), which is part of the
// reproducibility contract.
inline FrameRealization simulate_sp_frame(SystemConfig cfg, const PilotMatrix &pilots,
                                          std::uint64_t seed)
{
    cfg.scheme = Scheme::sp;
    check_config(cfg);
    detail::require_dims(pilots.users == cfg.K && pilots.len == cfg.L, "pilots vs config");
    ComplexGauss rng(seed);
    FrameRealization f;
    f.H = rng.matrix(cfg.N, cfg.K);
    f.S = rng.matrix(cfg.K, cfg.L);
    f.noise = std::sqrt(cfg.sigma2) * rng.matrix(cfg.N, cfg.L);
    f.Y = transmit_sp(f.H, pilots, f.S, cfg.alpha, cfg.P, f.noise);
    f.Hhat = mmse_estimate_sp(f.Y, pilots, cfg.alpha, cfg.P, cfg.sigma2);
    f.V = residual_sp(f.Y, f.Hhat, pilots, f.S, cfg.alpha, cfg.P);
    return f;
}

// Full RP block; the pilot phase occupies the first Lp symbols.
inline FrameRealization simulate_rp_frame(SystemConfig cfg, const PilotMatrix &pilots_rp,
                                          std::uint64_t seed)
{
    cfg.scheme = Scheme::rp;
    check_config(cfg);
    detail::require_dims(pilots_rp.users == cfg.K && pilots_rp.len == cfg.Lp, "pilots vs config");
    ComplexGauss rng(seed);
    FrameRealization f;
    const int Ld = cfg.L - cfg.Lp;
    f.H = rng.matrix(cfg.N, cfg.K);
    f.S = rng.matrix(cfg.K, Ld);
    f.noise = std::sqrt(cfg.sigma2) * rng.matrix(cfg.N, cfg.L);
    f.Y = transmit_rp(f.H, pilots_rp, f.S, cfg.P, f.noise);
    f.Hhat = mmse_estimate_rp(f.Y.leftCols(cfg.Lp), pilots_rp, cfg.P, cfg.sigma2);
    f.V = residual_rp(f.Y.rightCols(Ld), f.Hhat, f.S, cfg.P);
    return f;
}

} // namespace milb
