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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gpsmsec
{
    using cplx = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;
    using RMatrix = Eigen::MatrixXd;

    // ---------- Error types ----------
    // Invalid arguments are reported with std::invalid_argument.

    /// Matrix does not have the rank an operation needs (e.g. fewer rows than columns).
    class RankDeficientError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    /// Matrix has full rank but its condition number exceeds the usable limit.
    class IllConditionedError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    /// The requested kernel or mode combination has no tractable likelihood.
    class UnsupportedModeError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    // ---------- Random numbers ----------

    /// Counter-based random stream.
    ///
    /// The n-th output of a stream is a pure function of (seed, stream_id, n), so a
    /// Monte Carlo trial keyed by its index draws the same numbers no matter which
    /// worker runs it or in what order. Streams are cheap values and may be copied
    /// freely; a copy continues from the same position independently.
    class Rng
    {
    public:
        Rng(std::uint64_t seed, std::uint64_t stream_id);

        std::uint64_t seed() const { return seed_; }
        std::uint64_t stream_id() const { return stream_; }
        std::uint64_t position() const { return counter_; }

        /// Child stream whose key depends on this stream's key and `id` (not on position).
        Rng substream(std::uint64_t id) const;

        std::uint64_t next_u64();

        /// Uniform on [0, 1) with 53 random bits.
        double uniform();

        /// Standard normal via Box-Muller.
        double normal();

    private:
        Rng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t key_a, std::uint64_t key_b);

        std::uint64_t seed_;
        std::uint64_t stream_;
        std::uint64_t key_a_;
        std::uint64_t key_b_;
        std::uint64_t counter_ = 0;
        double cached_normal_ = 0.0;
        bool has_cached_ = false;
    };

    /// Natural-log probability (or log-ratio). Finite or -inf, never NaN on valid input.
    struct LogProb
    {
        double value = 0.0;
    };

    /// Circularly symmetric complex Gaussian vector with E|w_i|^2 = variance.
    CVector sample_complex_gaussian(Rng &rng, std::size_t n, double variance);

    /// Unit-modulus entries with phases uniform on [0, 2*pi).
    CVector sample_unit_circle(Rng &rng, std::size_t n);

    // ---------- Special functions ----------

    /// ln I0(x) for x >= 0. Power series below x = 20, asymptotic expansion above.
    double log_bessel_i0(double x);

    /// ln I0(x) - x, which stays O(ln x) for large x.
    double log_bessel_i0_scaled(double x);

    /// Log density of the noncentral chi-square distribution with two degrees of freedom,
    /// f(x; lambda) = 1/2 exp(-(x + lambda)/2) I0(sqrt(lambda x)).
    LogProb noncentral_chi2_df2_logpdf(double x, double lambda);

    /// ln sum_i exp(v_i) with max subtraction. Throws on an empty input.
    double log_sum_exp(std::span<const double> values);

    constexpr double kLn2 = 0.693147180559945309417232121458176568;
    constexpr double kPi = 3.14159265358979323846264338327950288;

} // namespace gpsmsec
