// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "gauss_legendre.hpp"
#include "system_config.hpp"
#include "wishart_density.hpp"

namespace milb
{

// One evaluated MILB value. milb_nats is per coherence block as the SP/RP
// expressions are written (the RP one carries its (L-Lp)/L prefactor, the SP
// one does not); milb_bits is always milb_nats/ln 2. stderr and trials are 0
// for the closed-form path.
struct MilbPoint
{
    Scheme scheme = Scheme::sp;
    SystemConfig cfg;
    double rho = 0.0;
    double milb_nats = 0.0;
    double milb_bits = 0.0;
    std::string method = "closed-form";
    double stderr_ = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

// Effective-SNR coefficient for SP and the cubic gamma(alpha) it divides by:
//   gamma = -(2K^2LP^3/c) a^3 + (2K^2LP^3/c + KLP^2 + K^2P^2) a^2
//           + (-KLP^2 - 2K^2P^2 - 2KPs2) a + c^2,            c = s2 + KP
//   rho   = a(1-a) P^2 K / gamma.
// gamma equals (PK+s2)*sigma_v2_sp identically; that consistency is the
// strongest internal transcription check and is asserted by the tests.
//
// Near alpha = 1 the alpha-basis Horner cancels from O(c^2) coefficients down
// to O(s2^2), so for alpha > 1/2 the same cubic is evaluated in the 1-alpha
// basis, whose constant term is exactly s2^2.
inline std::pair<double, double> rho_gamma_sp(double alpha, double P, double K, double L,
                                              double sigma2)
{
    const double c = P * K + sigma2;
    const double t = 2.0 * K * K * L * P * P * P / c;
    double gamma;
    if (alpha <= 0.5)
        gamma = ((-t * alpha + (t + K * L * P * P + K * K * P * P)) * alpha +
                 (-K * L * P * P - 2.0 * K * K * P * P - 2.0 * K * P * sigma2)) *
                    alpha +
                c * c;
    else
    {
        const double b = 1.0 - alpha;
        const double d1 = K * L * P * P * (K * P - sigma2) / c + 2.0 * K * P * sigma2;
        const double d2 = K * K * P * P + K * L * P * P * (sigma2 - 3.0 * K * P) / c;
        gamma = ((t * b + d2) * b + d1) * b + sigma2 * sigma2;
    }
    if (!(gamma > 0.0))
        throw std::domain_error("gamma(alpha) <= 0: inadmissible parameters");
    return {alpha * (1.0 - alpha) * P * P * K / gamma, gamma};
}

// Effective-SNR coefficient for RP: P^2 K / (P^2 K (K-Lp) + s2^2 + 2 P K s2).
// The denominator is positive whenever Lp <= K; for Lp > K (outside the
// admissible regime) it can go nonpositive, which callers must treat as
// infeasible.
inline double rho_rp(double P, double K, double Lp, double sigma2)
{
    return P * P * K / (P * P * K * (K - Lp) + sigma2 * sigma2 + 2.0 * P * K * sigma2);
}

namespace detail
{

// Upper bound on the integral of g beyond lam_max, assuming the integrand is
// dominated by lam^(N+L-2+eps) * exp(-lam) there: g decays at least like
// exp(-(1 - (N+L+2)/lam) * (lam - lam_max)). Valid once lam_max clears the
// polynomial turnover, which the caller guarantees by extension.
template <typename F> double tail_bound(F &&g, double lam_max, int N, int L)
{
    const double rate = 1.0 - (N + L + 2.0) / lam_max;
    if (rate <= 0.1)
        return HUGE_VAL;
    return g(lam_max) / rate;
}

} // namespace detail

// width * integral of ln(1+rho*lam) f_width(lam) dlam over [0, inf).
//
// Gauss-Legendre on [0, lam_max], lam_max starting from the
// Marchenko-Pastur-style bound 1.5*(sqrt(N)+sqrt(width))^2 and extended until
// the exp(-lam)-factor tail bound drops below 1e-10 of the integral; the
// order is doubled until successive values agree to 1e-8 relative.
inline double milb_integral(double rho, int N, int width)
{
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw std::domain_error("rho must be finite and >= 0");
    if (rho == 0.0)
        return 0.0;

    const EigDensity dens(N, width);
    const auto g = [&](double lam) { return std::log1p(rho * lam) * dens(lam); };

    double lam_max = 1.5 * std::pow(std::sqrt(static_cast<double>(N)) + std::sqrt(static_cast<double>(width)), 2);
    double coarse = gl_integrate(g, 0.0, lam_max, 128);
    while (detail::tail_bound(g, lam_max, N, width) > 1e-10 * coarse)
    {
        lam_max *= 1.2;
        coarse = gl_integrate(g, 0.0, lam_max, 128);
    }

    double prev = coarse;
    for (int order = 256; order <= 16384; order *= 2)
    {
        const double cur = gl_integrate(g, 0.0, lam_max, order);
        if (std::abs(cur - prev) <= 1e-8 * std::abs(cur))
        {
            assert(detail::tail_bound(g, lam_max, N, width) <= 1e-10 * std::abs(cur));
            return width * cur;
        }
        prev = cur;
    }
    throw std::runtime_error("milb_integral: quadrature did not converge");
}

// Integral of the bare density and of lam * density, for the normalization
// and first-moment checks. Same adaptive scheme as milb_integral.
template <typename W> double density_moment(const EigDensity &dens, W &&weight)
{
    const auto g = [&](double lam) { return weight(lam) * dens(lam); };
    const int N = dens.n(), L = dens.l();
    double lam_max = 1.5 * std::pow(std::sqrt(static_cast<double>(N)) + std::sqrt(static_cast<double>(L)), 2);
    double coarse = gl_integrate(g, 0.0, lam_max, 128);
    while (detail::tail_bound(g, lam_max, N, L) > 1e-10 * coarse)
    {
        lam_max *= 1.2;
        coarse = gl_integrate(g, 0.0, lam_max, 128);
    }
    double prev = coarse;
    for (int order = 256; order <= 16384; order *= 2)
    {
        const double cur = gl_integrate(g, 0.0, lam_max, order);
        if (std::abs(cur - prev) <= 1e-9 * std::abs(cur))
            return cur;
        prev = cur;
    }
    throw std::runtime_error("density_moment: quadrature did not converge");
}

inline double density_norm(const EigDensity &dens)
{
    return density_moment(dens, [](double) { return 1.0; });
}

inline double density_mean(const EigDensity &dens)
{
    return density_moment(dens, [](double lam) { return lam; });
}

// Closed-form SP MILB: L * integral ln(1+rho*lam) f_L(lam) dlam.
inline MilbPoint milb_sp(SystemConfig cfg)
{
    cfg.scheme = Scheme::sp;
    check_config(cfg);
    MilbPoint pt;
    pt.scheme = Scheme::sp;
    pt.cfg = cfg;
    if (cfg.P == 0.0)
    {
        pt.rho = 0.0;
        return pt;
    }
    pt.rho = rho_gamma_sp(cfg.alpha, cfg.P, cfg.K, cfg.L, cfg.sigma2).first;
    pt.milb_nats = milb_integral(pt.rho, cfg.N, cfg.L);
    pt.milb_bits = pt.milb_nats / M_LN2;
    return pt;
}

// Closed-form RP MILB: ((L-Lp)/L) * Lp * integral ln(1+rho_rp*lam) f_Lp dlam.
inline MilbPoint milb_rp(SystemConfig cfg)
{
    cfg.scheme = Scheme::rp;
    check_config(cfg);
    MilbPoint pt;
    pt.scheme = Scheme::rp;
    pt.cfg = cfg;
    pt.rho = rho_rp(cfg.P, cfg.K, cfg.Lp, cfg.sigma2);
    if (!(pt.rho > 0.0) || !std::isfinite(pt.rho))
    {
        if (cfg.P == 0.0)
        {
            pt.rho = 0.0;
            return pt;
        }
        throw std::domain_error("rho_rp not positive: Lp exceeds the feasible range for this K");
    }
    pt.milb_nats = (static_cast<double>(cfg.L - cfg.Lp) / cfg.L) * milb_integral(pt.rho, cfg.N, cfg.Lp);
    pt.milb_bits = pt.milb_nats / M_LN2;
    return pt;
}

} // namespace milb
