// SPDX-License-Identifier: Apache-2.0
//
// gpsmsec - secrecy capacity simulation for pre-coded spatial modulation
// Copyright (C) 2026 The gpsmsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "gpsmsec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gpsmsec
{
    namespace
    {
        constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

        // MurmurHash3 / SplitMix64 finalizer
        constexpr std::uint64_t fmix64(std::uint64_t z)
        {
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }

        constexpr double kBesselCrossover = 20.0;

        // ln I0(x) by the power series sum_k ((x/2)^k / k!)^2; all terms positive.
        double log_bessel_i0_series(double x)
        {
            const double q = 0.25 * x * x;
            double term = 1.0;
            double sum = 1.0;
            for (int k = 1; k < 500; ++k)
            {
                term *= q / (double(k) * double(k));
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return std::log(sum);
        }

        // ln I0(x) - x from the large-argument expansion
        // I0(x) ~ e^x / sqrt(2 pi x) * sum_k ((2k-1)!!)^2 / (k! (8x)^k).
        double log_bessel_i0_scaled_asymptotic(double x)
        {
            double term = 1.0;
            double sum = 1.0;
            for (int k = 1; k < 200; ++k)
            {
                const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * x * k);
                if (next >= term) // series is asymptotic; stop at the smallest term
                    break;
                term = next;
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return -0.5 * std::log(2.0 * kPi * x) + std::log(sum);
        }
    } // namespace

    Rng::Rng(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_(stream_id)
    {
        key_a_ = fmix64(seed ^ fmix64(stream_id + kGolden));
        key_b_ = fmix64(key_a_ ^ (stream_id * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    }

    Rng::Rng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t key_a, std::uint64_t key_b)
        : seed_(seed), stream_(stream_id), key_a_(key_a), key_b_(key_b)
    {
    }

    Rng Rng::substream(std::uint64_t id) const
    {
        const std::uint64_t a = fmix64(key_a_ ^ fmix64(id + 0x632BE59BD9B4E019ULL));
        const std::uint64_t b = fmix64(key_b_ + (id + 1) * kGolden);
        return Rng(seed_, id, a, b);
    }

    std::uint64_t Rng::next_u64()
    {
        const std::uint64_t c = counter_++;
        return fmix64(fmix64(c * kGolden + key_a_) ^ key_b_);
    }

    double Rng::uniform()
    {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    double Rng::normal()
    {
        if (has_cached_)
        {
            has_cached_ = false;
            return cached_normal_;
        }
        // 1 - u lies in (0, 1], so the log is finite
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        cached_normal_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

    CVector sample_complex_gaussian(Rng &rng, std::size_t n, double variance)
    {
        if (!(variance >= 0.0))
            throw std::invalid_argument("sample_complex_gaussian: variance must be non-negative.");
        CVector w(static_cast<Eigen::Index>(n));
        const double scale = std::sqrt(0.5 * variance);
        for (Eigen::Index i = 0; i < w.size(); ++i)
        {
            const double re = rng.normal();
            const double im = rng.normal();
            w(i) = cplx(scale * re, scale * im);
        }
        return w;
    }

    CVector sample_unit_circle(Rng &rng, std::size_t n)
    {
        CVector e(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < e.size(); ++i)
        {
            const double phase = 2.0 * kPi * rng.uniform();
            e(i) = cplx(std::cos(phase), std::sin(phase));
        }
        return e;
    }

    double log_bessel_i0(double x)
    {
        if (!(x >= 0.0))
            throw std::invalid_argument("log_bessel_i0: argument must be non-negative.");
        if (x < kBesselCrossover)
            return log_bessel_i0_series(x);
        if (std::isinf(x))
            return x;
        return x + log_bessel_i0_scaled_asymptotic(x);
    }

    double log_bessel_i0_scaled(double x)
    {
        if (!(x >= 0.0))
            throw std::invalid_argument("log_bessel_i0_scaled: argument must be non-negative.");
        if (x < kBesselCrossover)
            return log_bessel_i0_series(x) - x;
        return log_bessel_i0_scaled_asymptotic(x);
    }

    LogProb noncentral_chi2_df2_logpdf(double x, double lambda)
    {
        if (!(x >= 0.0) || !(lambda >= 0.0))
            throw std::invalid_argument("noncentral_chi2_df2_logpdf: x and lambda must be non-negative.");
        // -(x + lambda)/2 + z = -(sqrt(x) - sqrt(lambda))^2 / 2 with z = sqrt(lambda x)
        const double z = std::sqrt(lambda * x);
        const double d = std::sqrt(x) - std::sqrt(lambda);
        return {-kLn2 - 0.5 * d * d + log_bessel_i0_scaled(z)};
    }

    double log_sum_exp(std::span<const double> values)
    {
        if (values.empty())
            throw std::invalid_argument("log_sum_exp: empty input.");
        if (values.size() == 1)
            return values[0];
        const double m = *std::max_element(values.begin(), values.end());
        if (std::isinf(m))
            return m; // all -inf, or any +inf
        double acc = 0.0;
        for (double v : values)
            acc += std::exp(v - m);
        return m + std::log(acc);
    }

} // namespace gpsmsec
