// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <cmath>

#include "system_config.hpp"

namespace milb
{

// Estimation-error variance per channel entry under SP, 1 - alpha*P*L/(P*K+sigma2).
// Total in its arguments; in the massive-connectivity regime K >= L the value
// lies in [1 - alpha*L/K, 1], for K < L it can go negative (no link realizes it).
inline double error_variance_sp(double alpha, double P, double K, double L, double sigma2)
{
    const double c = P * K + sigma2;
    return 1.0 - alpha * P * L / c;
}

// RP counterpart with pilot length Lp, 1 - P*Lp/(P*K+sigma2).
inline double error_variance_rp(double P, double K, double Lp, double sigma2)
{
    const double c = P * K + sigma2;
    return 1.0 - P * Lp / c;
}

// The six trace terms of the SP interference-plus-noise covariance
// decomposition. Cross terms (r4, r5, r6) are reported once; the assembly
// doubles them for their conjugate pairs.
struct VarianceBreakdown
{
    double tr_r1 = 0.0; // noise energy
    double tr_r2 = 0.0; // estimation error x data
    double tr_r3 = 0.0; // estimation error x pilot
    double tr_r4 = 0.0; // noise / pilot-error cross
    double tr_r5 = 0.0; // noise / data-error cross, identically zero
    double tr_r6 = 0.0; // pilot-error / data-error cross
    double sigma_v2 = 0.0;
    Scheme scheme = Scheme::sp;
};

inline VarianceBreakdown trace_terms_sp(double alpha, double P, double K, double L, double N,
                                        double sigma2)
{
    const double c = P * K + sigma2;
    VarianceBreakdown b;
    b.scheme = Scheme::sp;
    b.tr_r1 = L * N * sigma2;
    b.tr_r2 = (1.0 - alpha) * P * L * K * N * (1.0 - alpha * P * L / c);
    b.tr_r3 = alpha * P * K * L * N * (1.0 - alpha * P * K / c);
    b.tr_r4 = -(alpha * P / c) * K * L * N * sigma2;
    b.tr_r5 = 0.0;
    const double root = std::sqrt(alpha * (1.0 - alpha));
    b.tr_r6 = root * P * ((alpha * root * P * P / (c * c)) * K * K * L * L * N -
                          (root * P / c) * K * K * L * N);
    b.sigma_v2 = (b.tr_r1 + b.tr_r2 + b.tr_r3 + 2.0 * b.tr_r4 + 2.0 * b.tr_r5 + 2.0 * b.tr_r6) /
                 (N * L);
    return b;
}

// Per-entry variance of the residual interference-plus-noise V for SP, the
// six-term closed form. Evaluated with the common factor c = P*K+sigma2
// computed once and no re-association, since P spans 0..40 dB.
inline double sigma_v2_sp(double alpha, double P, double K, double L, double sigma2)
{
    const double c = P * K + sigma2;
    return sigma2 + (1.0 - alpha) * P * K * (1.0 - alpha * P * L / c) +
           alpha * P * K * (1.0 - alpha * P * K / c) - 2.0 * alpha * P * K * sigma2 / c +
           2.0 * alpha * alpha * (1.0 - alpha) * P * P * P * K * K * L / (c * c) -
           2.0 * alpha * (1.0 - alpha) * P * P * K * K / c;
}

// RP counterpart: P*K*err_var_rp + sigma2.
inline double sigma_v2_rp(double P, double K, double Lp, double sigma2)
{
    const double c = P * K + sigma2;
    return P * K * (1.0 - P * Lp / c) + sigma2;
}

} // namespace milb
