// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <stdexcept>

namespace milb
{

// Generalized Laguerre polynomial La_m^{(r)}(x) by the three-term recurrence
//   m * La_m = (2m - 1 + r - x) * La_{m-1} - (m - 1 + r) * La_{m-2},
// which is stable for x >= 0, unlike the alternating binomial sum.
inline double laguerre(int m, int r, double x)
{
    if (m < 0 || r < 0)
        throw std::invalid_argument("laguerre: order and parameter must be nonnegative");
    if (m == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 1.0 + r - x;
    for (int i = 2; i <= m; ++i)
    {
        const double next = ((2.0 * i - 1.0 + r - x) * cur - (i - 1.0 + r) * prev) / i;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace milb
