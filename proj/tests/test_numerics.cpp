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
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace gpsmsec;

namespace
{
    bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

    std::vector<double> log_grid(double lo, double hi, int n)
    {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
        return v;
    }
} // namespace

TEST_SUITE("numerics")
{
    TEST_CASE("rng is reproducible per (seed, stream)")
    {
        Rng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
        bool differs_c = false, differs_d = false;
        for (int i = 0; i < 100; ++i)
        {
            const auto x = a.next_u64();
            CHECK(x == b.next_u64());
            differs_c |= x != c.next_u64();
            differs_d |= x != d.next_u64();
        }
        CHECK(differs_c);
        CHECK(differs_d);
        CHECK(a.position() == 100);
    }

    TEST_CASE("copies continue independently from the same position")
    {
        Rng a(1, 0);
        a.normal();
        Rng b = a;
        CHECK(a.normal() == b.normal());
        CHECK(a.uniform() == b.uniform());
    }

    TEST_CASE("substreams depend on key, not on position")
    {
        Rng a(5, 1);
        const Rng s1 = a.substream(3);
        a.next_u64();
        Rng s2 = a.substream(3);
        Rng s1c = s1;
        CHECK(s1c.next_u64() == s2.next_u64());
        Rng other = Rng(5, 1).substream(4);
        Rng s1d = s1;
        CHECK(s1d.next_u64() != other.next_u64());
    }

    TEST_CASE("distinct streams are uncorrelated")
    {
        Rng a(9, 0), b(9, 1);
        const int n = 100000;
        double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
        for (int i = 0; i < n; ++i)
        {
            const double x = a.uniform(), y = b.uniform();
            sab += x * y, sa += x, sb += y, saa += x * x, sbb += y * y;
        }
        const double cov = sab / n - (sa / n) * (sb / n);
        const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
        CHECK(std::abs(corr) < 0.02);
    }

    TEST_CASE("uniform stays in [0, 1) and normal has unit variance")
    {
        Rng r(3, 3);
        double s = 0, ss = 0;
        const int n = 200000;
        for (int i = 0; i < n; ++i)
        {
            const double u = r.uniform();
            REQUIRE(u >= 0.0);
            REQUIRE(u < 1.0);
            const double z = r.normal();
            s += z, ss += z * z;
        }
        CHECK(std::abs(s / n) < 0.01);
        CHECK(std::abs(ss / n - 1.0) < 0.01);
    }

    TEST_CASE("sample_complex_gaussian")
    {
        Rng r(1, 0);
        CHECK(sample_complex_gaussian(r, 3, 0.0).squaredNorm() == 0.0);
        const CVector w = sample_complex_gaussian(r, 100000, 2.0);
        CHECK(std::abs(w.squaredNorm() / 1e5 - 2.0) < 2e-2);
        // real and imaginary parts each carry half
        double re = 0;
        for (Eigen::Index i = 0; i < w.size(); ++i)
            re += w(i).real() * w(i).real();
        CHECK(std::abs(re / 1e5 - 1.0) < 2e-2);
        Rng p(11, 4), q(11, 4);
        CHECK(sample_complex_gaussian(p, 5, 1.0) == sample_complex_gaussian(q, 5, 1.0));
        CHECK_THROWS_AS(sample_complex_gaussian(r, 2, -1.0), std::invalid_argument);
    }

    TEST_CASE("sample_unit_circle")
    {
        Rng r(2, 0);
        const CVector one = sample_unit_circle(r, 1);
        CHECK(std::abs(std::abs(one(0)) - 1.0) < 1e-15);
        const int n = 100000;
        const CVector e = sample_unit_circle(r, n);
        const cplx mean = e.mean();
        CHECK(std::abs(mean.real()) < 1e-2);
        CHECK(std::abs(mean.imag()) < 1e-2);
        std::vector<int> bins(8, 0);
        for (Eigen::Index i = 0; i < e.size(); ++i)
        {
            REQUIRE(std::abs(std::abs(e(i)) - 1.0) < 1e-15);
            double ph = std::arg(e(i));
            if (ph < 0)
                ph += 2 * kPi;
            bins[std::min(7, int(ph / (2 * kPi) * 8))]++;
        }
        double chi2 = 0;
        for (int b : bins)
            chi2 += (b - n / 8.0) * (b - n / 8.0) / (n / 8.0);
        CHECK(chi2 < 18.475); // chi-square, 7 dof, 1% level
    }

    TEST_CASE("log_bessel_i0 against the power series")
    {
        CHECK(log_bessel_i0(0.0) == 0.0);
        CHECK(log_bessel_i0(1.0) == doctest::Approx(0.235914358).epsilon(1e-9));
        for (double x : {1e-6, 0.1, 0.5, 1.0, 2.5, 7.0, 15.0, 19.999, 20.0, 20.001, 25.0, 40.0, 80.0, 150.0, 300.0,
                         500.0, 700.0})
        {
            INFO("x = " << x);
            CHECK(close_rel(log_bessel_i0(x), oracle::log_i0_series(x), 1e-10));
        }
        const double big = log_bessel_i0(500.0);
        CHECK(std::isfinite(big));
        CHECK(std::abs(big - (500.0 - 0.5 * std::log(1000.0 * kPi))) < 1e-3);
        CHECK(std::isfinite(log_bessel_i0(1e6)));
        CHECK_THROWS_AS(log_bessel_i0(-1.0), std::invalid_argument);
    }

    TEST_CASE("log_bessel_i0 is monotone and the scaled form agrees")
    {
        double prev = -1.0;
        for (double x = 0.0; x < 60.0; x += 0.013)
        {
            const double v = log_bessel_i0(x);
            REQUIRE(v > prev);
            prev = v;
            REQUIRE(std::abs(log_bessel_i0_scaled(x) - (v - x)) <= 1e-12 * std::max(1.0, x));
        }
    }

    TEST_CASE("chi-square density special cases")
    {
        CHECK(noncentral_chi2_df2_logpdf(0.0, 0.0).value == doctest::Approx(std::log(0.5)).epsilon(1e-15));
        CHECK(noncentral_chi2_df2_logpdf(2.0, 0.0).value == doctest::Approx(std::log(0.5) - 1.0).epsilon(1e-15));
        CHECK(close_rel(noncentral_chi2_df2_logpdf(3.0, 4.0).value, oracle::chi2_df2_logpdf_mixture(3.0, 4.0), 1e-10));
        CHECK_THROWS_AS(noncentral_chi2_df2_logpdf(-1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(noncentral_chi2_df2_logpdf(1.0, -1.0), std::invalid_argument);
        for (double big : {1e5, 1e6})
        {
            CHECK(std::isfinite(noncentral_chi2_df2_logpdf(big, big).value));
            CHECK(std::isfinite(noncentral_chi2_df2_logpdf(1.0, big).value));
            CHECK(std::isfinite(noncentral_chi2_df2_logpdf(big, 0.0).value));
        }
    }

    TEST_CASE("chi-square density matches the Poisson mixture on a log grid")
    {
        const auto xs = log_grid(1e-3, 1e3, 20);
        const auto ls = log_grid(1e-3, 1e3, 20);
        int bad = 0;
        for (double x : xs)
            for (double l : ls)
            {
                const double a = noncentral_chi2_df2_logpdf(x, l).value;
                const double b = oracle::chi2_df2_logpdf_mixture(x, l);
                if (!close_rel(a, b, 1e-10))
                {
                    ++bad;
                    MESSAGE("x=" << x << " lambda=" << l << " got " << a << " want " << b);
                }
            }
        CHECK(bad == 0);
    }

    TEST_CASE("chi-square density integrates to one")
    {
        for (double l : {0.0, 1.0, 10.0, 100.0})
        {
            const double total = oracle::simpson(
                [l](double x) { return std::exp(noncentral_chi2_df2_logpdf(x, l).value); }, 0.0, l + 200.0, 400000);
            INFO("lambda = " << l);
            CHECK(std::abs(total - 1.0) < 1e-6);
        }
    }

    TEST_CASE("log_sum_exp")
    {
        const std::vector<double> one{-3.25};
        CHECK(log_sum_exp(one) == -3.25);
        const std::vector<double> two{0.0, 0.0};
        CHECK(log_sum_exp(two) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
        const std::vector<double> big{1000.0, 1000.0};
        CHECK(log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
        const std::vector<double> ninf{-INFINITY, 2.0};
        CHECK(log_sum_exp(ninf) == 2.0);
        CHECK_THROWS_AS(log_sum_exp(std::vector<double>{}), std::invalid_argument);

        Rng r(4, 4);
        for (int t = 0; t < 200; ++t)
        {
            std::vector<double> v(1 + t % 7);
            for (double &x : v)
                x = 50.0 * (r.uniform() - 0.5);
            REQUIRE(log_sum_exp(v) >= *std::max_element(v.begin(), v.end()));
        }
    }
}
