// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace milb
{

// splitmix64 finalizer, used to decorrelate per-trial seeds derived from a
// single master seed. Trials seeded this way are independent of scheduling,
// so serial and worker-parallel runs accumulate identical statistics.
inline std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial_index)
{
    return splitmix64(master + 0x9E3779B97F4A7C15ull * (trial_index + 1));
}

// Standard complex Gaussian sampler, CN(0,1): real and imaginary parts each
// N(0, 1/2). Built on mt19937_64 (output sequence fixed by the C++ standard)
// with an explicit Box-Muller transform; std::normal_distribution is not
// portable bit-for-bit across standard libraries and is deliberately avoided.
class ComplexGauss
{
  public:
    explicit ComplexGauss(std::uint64_t seed) : eng_(seed) {}

    std::complex<double> operator()()
    {
        // u1 in (0,1] so the log never sees zero; u2 in [0,1)
        const double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1p-53;
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1p-53;
        const double r = std::sqrt(-std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // Fills in storage order (column-major); the order is part of the
    // reproducibility contract.
    void fill(Eigen::Ref<Eigen::MatrixXcd> m)
    {
        std::complex<double> *p = m.data();
        const Eigen::Index n = m.size();
        for (Eigen::Index i = 0; i < n; ++i)
            p[i] = (*this)();
    }

    Eigen::MatrixXcd matrix(Eigen::Index rows, Eigen::Index cols)
    {
        Eigen::MatrixXcd m(rows, cols);
        fill(m);
        return m;
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace milb
