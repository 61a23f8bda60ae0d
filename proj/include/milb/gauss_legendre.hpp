// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace milb
{

// Nodes and weights on the reference interval [-1, 1].
struct GaussLegendre
{
    std::vector<double> x;
    std::vector<double> w;
};

namespace detail
{

inline GaussLegendre make_gl_rule(int n)
{
    GaussLegendre rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i)
    {
        // Newton iteration on P_n from the standard cosine initial guess
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it)
        {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j)
            {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

} // namespace detail

// Process-wide rule cache keyed by order. Rules are immutable once built;
// the returned reference stays valid for the process lifetime.
inline const GaussLegendre &gl_rule(int n)
{
    if (n < 1)
        throw std::invalid_argument("quadrature order must be positive");
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<GaussLegendre>(detail::make_gl_rule(n))).first;
    return *it->second;
}

template <typename F> double gl_integrate(F &&f, double a, double b, int order)
{
    const GaussLegendre &rule = gl_rule(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < order; ++i)
        acc += rule.w[i] * f(mid + half * rule.x[i]);
    return half * acc;
}

} // namespace milb
