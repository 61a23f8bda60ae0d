// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace milb
{

// K x len matrix of DFT-phase MWBE sequences, one user per row:
//   entry(k, n) = exp(-2*pi*j * k*n / K),  k = 0..K-1, n = 0..len-1.
// Rows have squared norm len (no unitary normalization); columns are
// orthogonal with Gram K*I_len, which requires len <= K.
struct PilotMatrix
{
    Eigen::MatrixXcd entries;
    int users = 0;
    int len = 0;
};

inline PilotMatrix gen_mwbe_pilots(int K, int len)
{
    if (K < 1 || len < 1)
        throw std::invalid_argument("pilot dimensions must be positive");
    if (len > K)
        throw std::invalid_argument("pilot length " + std::to_string(len) + " exceeds user count " +
                                    std::to_string(K) + "; column orthogonality needs len <= K");

    PilotMatrix p;
    p.users = K;
    p.len = len;
    p.entries.resize(K, len);
    for (int k = 0; k < K; ++k)
        for (int n = 0; n < len; ++n)
        {
            // phase from the exact residue so large k*n products do not
            // accumulate argument error; residue 0 is exactly 1 (polar would
            // leave a -0 imaginary part)
            const long long q = static_cast<long long>(k) * n % K;
            p.entries(k, n) =
                q == 0 ? 1.0 : std::polar(1.0, -2.0 * M_PI * static_cast<double>(q) / K);
        }
    return p;
}

// Row Gram Phi * Phi^H; entry (i,j) equals the geometric sum
// sum_{n=0}^{len-1} exp(-2*pi*j*(i-j)*n/K), diagonal equals len.
inline Eigen::MatrixXcd gram_rows(const PilotMatrix &p)
{
    return p.entries * p.entries.adjoint();
}

// CSV dump, one line per entry in row-major order, columns re,im.
inline std::string pilot_csv(const PilotMatrix &p, int precision = 17)
{
    std::ostringstream os;
    os.precision(precision);
    os << "re,im\n";
    for (int k = 0; k < p.users; ++k)
        for (int n = 0; n < p.len; ++n)
            os << p.entries(k, n).real() << "," << p.entries(k, n).imag() << "\n";
    return os.str();
}

} // namespace milb
