// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mutual_info.hpp"
#include "system_config.hpp"

namespace milb
{

// Numerator polynomial of d rho/d alpha for SP, descending degree:
//   d rho/d alpha = P^2 K g(alpha) / gamma(alpha)^2.
// g(0) = c0 = (s2+KP)^2 > 0 and g(1) = -s2^2 < 0, so a root is bracketed in
// (0,1); c3 = -2 c4 structurally.
struct QuarticG
{
    double c4 = 0.0, c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

    double operator()(double a) const
    {
        return (((c4 * a + c3) * a + c2) * a + c1) * a + c0;
    }
};

inline QuarticG quartic_g(double P, double K, double L, double sigma2)
{
    if (!(P > 0.0))
        throw std::invalid_argument("quartic_g: P must be > 0 (no pilot/data trade-off at P = 0)");
    const double c = sigma2 + K * P;
    QuarticG g;
    g.c4 = -2.0 * K * K * L * P * P * P / c;
    g.c3 = -2.0 * g.c4;
    g.c2 = -(2.0 * K * K * L * P * P * P / c - K * K * P * P - 2.0 * K * P * sigma2);
    g.c1 = -2.0 * c * c;
    g.c0 = c * c;
    return g;
}

// Result of the alpha search. roots holds every sign-change root found on the
// scan (usually exactly one); multiple_roots flags the ambiguous case, in
// which alpha_star is the rho-maximizing root.
struct AlphaSearch
{
    double alpha_star = 0.0;
    double rho_star = 0.0;
    double residual = 0.0;
    QuarticG g;
    std::vector<double> roots;
    bool multiple_roots = false;
};

namespace detail
{

inline double bisect_root(const QuarticG &g, double lo, double hi, double tol)
{
    double flo = g(lo);
    while (hi - lo > tol)
    {
        const double mid = 0.5 * (lo + hi);
        const double fmid = g(mid);
        if (fmid == 0.0)
            return mid;
        if ((flo > 0.0) == (fmid > 0.0))
        {
            lo = mid;
            flo = fmid;
        }
        else
        {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

// Locates alpha* maximizing rho (equivalently the MILB, which is strictly
// increasing in rho at fixed N, L). A 1000-point scan of (0,1) brackets every
// sign change of g; each bracket is bisected to tol. With several roots all
// are pushed through rho and the maximizer wins.
inline AlphaSearch alpha_search(double P, double K, double L, double sigma2, double tol = 1e-10)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("alpha_search: tol must be > 0");
    AlphaSearch res;
    res.g = quartic_g(P, K, L, sigma2);

    constexpr int scan = 1000;
    double prev_a = 0.0;
    double prev_f = res.g(0.0);
    for (int i = 1; i <= scan; ++i)
    {
        const double a = static_cast<double>(i) / scan;
        const double f = res.g(a);
        if ((prev_f > 0.0) != (f > 0.0) || f == 0.0)
            res.roots.push_back(detail::bisect_root(res.g, prev_a, a, tol));
        prev_a = a;
        prev_f = f;
    }
    if (res.roots.empty())
        throw std::runtime_error("alpha_search: no sign change of g on (0,1) despite bracket");

    res.multiple_roots = res.roots.size() > 1;
    res.alpha_star = res.roots.front();
    res.rho_star = rho_gamma_sp(res.alpha_star, P, K, L, sigma2).first;
    for (std::size_t i = 1; i < res.roots.size(); ++i)
    {
        const double r = rho_gamma_sp(res.roots[i], P, K, L, sigma2).first;
        if (r > res.rho_star)
        {
            res.rho_star = r;
            res.alpha_star = res.roots[i];
        }
    }
    res.residual = res.g(res.alpha_star);
    assert(res.alpha_star > tol && res.alpha_star < 1.0 - tol);
    return res;
}

inline double optimal_alpha(double P, double K, double L, double sigma2, double tol = 1e-10)
{
    return alpha_search(P, K, L, sigma2, tol).alpha_star;
}

// Exhaustive RP pilot-length search over {1, ..., min(L-1, K)}. Lengths above
// K have no orthogonal pilot matrix and the closed form is meaningless there,
// so they are never candidates (reachable only outside the K >= L premise).
// The full table is kept for audit/display. Ties break toward smaller Lp:
// more data symbols at equal MILB.
struct LpSearch
{
    int lp_star = 0;
    MilbPoint best;
    std::vector<MilbPoint> table;
};

inline LpSearch optimal_lp(double P, int K, int L, int N, double sigma2)
{
    SystemConfig cfg;
    cfg.K = K;
    cfg.L = L;
    cfg.N = N;
    cfg.P = P;
    cfg.sigma2 = sigma2;
    cfg.scheme = Scheme::rp;

    LpSearch res;
    const int lp_max = std::min(L - 1, K);
    for (int lp = 1; lp <= lp_max; ++lp)
    {
        cfg.Lp = lp;
        const MilbPoint pt = milb_rp(cfg);
        res.table.push_back(pt);
        if (res.lp_star == 0 || pt.milb_nats > res.best.milb_nats)
        {
            res.lp_star = lp;
            res.best = pt;
        }
    }
    if (res.lp_star == 0)
        throw std::runtime_error("optimal_lp: no feasible pilot length in {1,...,min(L-1,K)}");
    return res;
}

} // namespace milb
