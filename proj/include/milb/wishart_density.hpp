// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "laguerre.hpp"

namespace milb
{

// Marginal eigenvalue density of a complex Wishart matrix G^H G with G of
// size N x L, i.i.d. CN(0,1) entries, N >= L:
//
//   f_L(lam) = (1/L) * sum_{m=0}^{L-1} m!/(m+N-L)! * (La_m^{(N-L)}(lam))^2
//              * lam^(N-L) * exp(-lam)
//
// Each summand is assembled as (La_m * s_m)^2 with
// s_m = exp(0.5*(lgamma(m+1) - lgamma(m+N-L+1)) + 0.5*((N-L)*log(lam) - lam)),
// so the factorial ratio is exponentiated once per term and no intermediate
// overflows at the supported sizes.
class EigDensity
{
  public:
    EigDensity(int N, int L) : N_(N), L_(L), r_(N - L)
    {
        if (L < 1)
            throw std::invalid_argument("density needs L >= 1");
        if (N < L)
            throw std::invalid_argument("density needs N >= L (contains lam^(N-L))");
        half_log_ratio_.resize(L_);
        for (int m = 0; m < L_; ++m)
            half_log_ratio_[m] = 0.5 * (std::lgamma(m + 1.0) - std::lgamma(m + r_ + 1.0));
    }

    double operator()(double lam) const
    {
        if (lam < 0.0)
            throw std::invalid_argument("density argument must be >= 0");
        if (lam == 0.0 && r_ > 0)
            return 0.0;
        const double half_weight = 0.5 * ((r_ > 0 ? r_ * std::log(lam) : 0.0) - lam);
        double acc = 0.0;
        double prev = 0.0;
        double cur = 1.0; // La_0
        for (int m = 0; m < L_; ++m)
        {
            if (m == 1)
            {
                prev = cur;
                cur = 1.0 + r_ - lam;
            }
            else if (m >= 2)
            {
                const double next = ((2.0 * m - 1.0 + r_ - lam) * cur - (m - 1.0 + r_) * prev) / m;
                prev = cur;
                cur = next;
            }
            const double q = cur * std::exp(half_log_ratio_[m] + half_weight);
            acc += q * q;
        }
        return acc / L_;
    }

    int n() const { return N_; }
    int l() const { return L_; }

  private:
    int N_, L_, r_;
    std::vector<double> half_log_ratio_;
};

} // namespace milb
