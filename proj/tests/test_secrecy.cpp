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


#include "gpsmsec/secrecy.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace gpsmsec;

namespace
{
    CMatrix random_matrix(Rng &rng, Eigen::Index r, Eigen::Index c) { return rayleigh(rng, std::size_t(r), std::size_t(c)); }

    // ln N_C(y; m, sigma2 I) up to the shared normalization
    double log_gauss(const CVector &y, const CVector &m, double sigma2) { return -(y - m).squaredNorm() / sigma2; }

    Scenario scenario(PayloadMode mode, SystemDims dims, EveReceiver eve = EveReceiver::Auto)
    {
        Scenario s;
        s.mode = mode;
        s.dims = dims;
        s.eve = eve;
        return s;
    }

    // mean of exp(ln Theta(eps, tau)) under tau; integrates p(y|eps) / p(y|tau) against p(y|tau)
    double theta_mean(const LikelihoodModel &m, std::size_t tau, std::size_t eps, std::size_t n, std::uint64_t seed)
    {
        Rng rng(seed, 0);
        std::vector<double> out(m.alphabet_size());
        double acc = 0;
        for (std::size_t t = 0; t < n; ++t)
        {
            m.sample_log_theta(tau, rng, out);
            acc += std::exp(out[eps]);
        }
        return acc / double(n);
    }
} // namespace

TEST_SUITE("secrecy")
{
    TEST_CASE("coherent kernel")
    {
        CMatrix g = CMatrix::Identity(1, 1);
        CVector p(1), m(1), w(1);
        p << 1.0;
        m << -1.0;
        w << 0.0;
        CHECK(log_theta_coherent(g, p, m, w, 1.0).value == doctest::Approx(-4.0));
        CHECK(log_theta_coherent(g, p, p, w, 1.0).value == 0.0);
        w << cplx(-2.0, 0.0); // y sits exactly at the eps point
        CHECK(log_theta_coherent(g, p, m, w, 0.5).value == doctest::Approx(8.0));

        Rng rng(1, 0);
        for (int t = 0; t < 50; ++t)
        {
            const CMatrix gg = random_matrix(rng, 3, 4);
            const CVector st = sample_complex_gaussian(rng, 4, 1.0);
            const CVector se = sample_complex_gaussian(rng, 4, 1.0);
            const CVector ww = sample_complex_gaussian(rng, 3, 0.3);
            const CVector y = gg * st + ww;
            const double ref = log_gauss(y, gg * se, 0.3) - log_gauss(y, gg * st, 0.3);
            CHECK(log_theta_coherent(gg, st, se, ww, 0.3).value == doctest::Approx(ref).epsilon(1e-10));
            CHECK(log_theta_coherent(gg, st, st, ww, 0.3).value == 0.0);
        }
    }

    TEST_CASE("noncoherent_receive")
    {
        CMatrix g = CMatrix::Identity(2, 2);
        CVector one(1);
        one << cplx(0.0, 1.0);
        const RVector r = noncoherent_receive(g, {0}, one, CVector::Zero(2));
        CHECK(r(0) == doctest::Approx(1.0));
        CHECK(r(1) == 0.0);

        CVector w(2);
        w << cplx(0.5, 0), cplx(0, 2);
        const RVector r2 = noncoherent_receive(g, {1}, one, w);
        CHECK(r2(0) == doctest::Approx(0.25));
        CHECK(r2(1) == doctest::Approx(9.0));
    }

    TEST_CASE("normalized statistic has mean 2 + lambda")
    {
        Rng rng(2, 0);
        const CMatrix g = random_matrix(rng, 3, 3);
        const double sigma2 = 0.4, s0 = sigma2 / 2;
        const std::size_t n = 200000;
        RVector acc = RVector::Zero(3);
        for (std::size_t t = 0; t < n; ++t)
            acc += noncoherent_receive(g, {1}, sample_unit_circle(rng, 1), sample_complex_gaussian(rng, 3, sigma2)) / s0;
        for (Eigen::Index i = 0; i < 3; ++i)
        {
            const double lambda = std::norm(g(i, 1)) / s0;
            // sd of one sample is 2 sqrt(1 + lambda)
            CHECK(std::abs(acc(i) / double(n) - (2 + lambda)) < 5 * 2 * std::sqrt(1 + lambda) / std::sqrt(double(n)));
        }
    }

    TEST_CASE("cas general kernel against the mixture density")
    {
        Rng rng(3, 0);
        const PatternSet ps = build_pattern_set(4, 1);
        const double s0 = 0.35;
        for (int t = 0; t < 20; ++t)
        {
            const CMatrix g = random_matrix(rng, 4, 4);
            const RVector r =
                noncoherent_receive(g, {2}, sample_unit_circle(rng, 1), sample_complex_gaussian(rng, 4, 2 * s0));
            for (std::size_t tau = 0; tau < 4; ++tau)
                for (std::size_t eps = 0; eps < 4; ++eps)
                {
                    double ref = 0;
                    for (Eigen::Index i = 0; i < 4; ++i)
                        ref += oracle::chi2_df2_logpdf_mixture(r(i) / s0, std::norm(g(i, Eigen::Index(eps))) / s0) -
                               oracle::chi2_df2_logpdf_mixture(r(i) / s0, std::norm(g(i, Eigen::Index(tau))) / s0);
                    const double v = log_theta_cas_general(g, r, ps, tau, eps, s0).value;
                    CHECK(std::abs(v - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
                    if (tau == eps)
                        CHECK(v == 0.0);
                }
        }
        CHECK_THROWS_AS(log_theta_cas_general(CMatrix::Identity(4, 4), RVector::Ones(4), build_pattern_set(4, 2), 0, 1, 1.0),
                        UnsupportedModeError);
    }

    TEST_CASE("cas kernel is blind to per-column phase")
    {
        Rng rng(4, 0);
        const PatternSet ps = build_pattern_set(4, 1);
        for (int t = 0; t < 20; ++t)
        {
            const CMatrix g = random_matrix(rng, 4, 4);
            CMatrix rotated = g;
            for (Eigen::Index c = 0; c < 4; ++c)
                rotated.col(c) *= std::polar(1.0, 2 * kPi * rng.uniform());
            const RVector r = noncoherent_receive(g, {0}, sample_unit_circle(rng, 1), sample_complex_gaussian(rng, 4, 1.0));
            for (std::size_t eps = 1; eps < 4; ++eps)
            {
                const double a = log_theta_cas_general(g, r, ps, 0, eps, 0.5).value;
                const double b = log_theta_cas_general(rotated, r, ps, 0, eps, 0.5).value;
                CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
            }
        }
    }

    TEST_CASE("cas identity kernel")
    {
        const PatternSet ps = build_pattern_set(2, 1);
        const double beta = 3.0, s0 = 0.5;
        RVector r(2);
        r << 4.0, 0.5;
        // patterns {0} and {1}: only the two antennas swap roles
        const auto a = [&](double x) {
            return oracle::chi2_df2_logpdf_mixture(x / s0, beta / s0) - oracle::chi2_df2_logpdf_mixture(x / s0, 0.0);
        };
        const double want = a(r(1)) - a(r(0));
        CHECK(log_theta_cas_identity(r, 0, 1, beta, 1, s0, ps).value == doctest::Approx(want).epsilon(1e-10));
        CHECK(log_theta_cas_identity(r, 1, 0, beta, 1, s0, ps).value == doctest::Approx(-want).epsilon(1e-10));
        CHECK(log_theta_cas_identity(r, 1, 1, beta, 1, s0, ps).value == 0.0);

        // with G = sqrt(beta) I the general kernel gives the same numbers
        const PatternSet p41 = build_pattern_set(4, 1);
        Rng rng(5, 0);
        const CMatrix g = std::sqrt(beta) * CMatrix::Identity(4, 4);
        for (int t = 0; t < 20; ++t)
        {
            const RVector rr =
                noncoherent_receive(g, {3}, sample_unit_circle(rng, 1), sample_complex_gaussian(rng, 4, 2 * s0));
            for (std::size_t eps = 0; eps < 4; ++eps)
            {
                const double gen = log_theta_cas_general(g, rr, p41, 3, eps, s0).value;
                const double id = log_theta_cas_identity(rr, 3, eps, beta, 1, s0, p41).value;
                const double idv = log_theta_cas_identity(rr, 3, eps, beta, 1, RVector::Constant(4, s0), p41).value;
                CHECK(std::abs(gen - id) <= 1e-10 * std::max(1.0, std::abs(gen)));
                CHECK(id == idv);
            }
        }
    }

    TEST_CASE("gas kernel")
    {
        Rng rng(6, 0);
        const PatternSet ps = build_pattern_set(4, 2);
        for (int t = 0; t < 20; ++t)
        {
            const CMatrix g = random_matrix(rng, 4, 4);
            const CVector y = sample_complex_gaussian(rng, 4, 1.0);
            RVector nv(4);
            nv << 0.1, 0.2, 0.3, 0.4;
            for (std::size_t tau = 0; tau < ps.size(); ++tau)
                for (std::size_t eps = 0; eps < ps.size(); ++eps)
                {
                    double ref = 0;
                    for (Eigen::Index i = 0; i < 4; ++i)
                    {
                        double vt = nv(i), ve = nv(i);
                        for (std::size_t a : ps[tau])
                            vt += std::norm(g(i, Eigen::Index(a)));
                        for (std::size_t a : ps[eps])
                            ve += std::norm(g(i, Eigen::Index(a)));
                        // ln CN(y; 0, ve) - ln CN(y; 0, vt)
                        ref += (-std::norm(y(i)) / ve - std::log(ve)) - (-std::norm(y(i)) / vt - std::log(vt));
                    }
                    const double v = log_theta_gas(g, y, ps, tau, eps, nv).value;
                    CHECK(std::abs(v - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
                }
            CHECK(log_theta_gas(g, y, ps, 1, 2, 0.25).value ==
                  doctest::Approx(log_theta_gas(g, y, ps, 1, 2, RVector::Constant(4, 0.25)).value));
        }
    }

    TEST_CASE("likelihood ratios average to one under the true hypothesis")
    {
        // identity channel keeps the second moment of every ratio finite
        const PatternSet ps = build_pattern_set(3, 1);
        const CMatrix g = CMatrix::Identity(3, 3);
        const std::size_t n = 100000;
        const double sigma2 = 2.0;

        const auto coherent = make_coherent_model(g, modulated_alphabet(ps, 2), sigma2);
        const auto gas = make_gas_model(ObservationModel{g, {}, sigma2}, ps, g, RVector::Constant(3, sigma2));
        const auto cas = make_cas_general_model(ObservationModel{g, {}, sigma2}, ps, g, RVector::Constant(3, sigma2 / 2));
        const auto ident = make_cas_identity_model(ObservationModel{g, {}, sigma2}, ps, 1.0,
                                                   RVector::Constant(3, sigma2 / 2));
        for (const LikelihoodModel *m : {coherent.get(), gas.get(), cas.get(), ident.get()})
            for (std::size_t eps = 0; eps < 2; ++eps)
                CHECK(theta_mean(*m, 1, eps, n, 11 + eps) == doctest::Approx(1.0).epsilon(0.05));
    }

    TEST_CASE("eve projection")
    {
        Rng rng(8, 0);
        const CMatrix hb = random_matrix(rng, 4, 8);
        // Eve holding the identity channel: T = H_B and y_tilde = H_B x exactly
        const EveProjection id = eve_projection(hb, CMatrix::Identity(8, 8));
        CHECK((id.t - hb).norm() < 1e-12);
        for (Eigen::Index i = 0; i < 4; ++i)
            CHECK(id.amplification(i) == doctest::Approx(hb.row(i).squaredNorm()));

        const CMatrix he = random_matrix(rng, 12, 8);
        const CVector x = sample_complex_gaussian(rng, 8, 1.0);
        const PostProcessed pp = eve_postprocess(hb, he, he * x, 0.1);
        CHECK((pp.y_tilde - hb * x).norm() < 1e-10);
        const EveProjection proj = eve_projection(hb, he);
        CHECK((pp.noise_variance - 0.1 * proj.amplification).norm() < 1e-14);
        CHECK((proj.t * he - hb).norm() < 1e-10);

        CHECK_THROWS_AS(eve_projection(hb, random_matrix(rng, 6, 8)), RankDeficientError);
    }

    TEST_CASE("post-processing amplifies noise")
    {
        // diag(T T^H) = h_i^H (H_E^H H_E)^{-1} h_i; with N_e = N_t the inverse Wishart is heavy
        Rng rng(9, 0);
        int amplified = 0;
        const int draws = 1000;
        for (int t = 0; t < draws; ++t)
        {
            const EveProjection p = eve_projection(random_matrix(rng, 4, 8), random_matrix(rng, 8, 8));
            amplified += p.amplification.mean() > 1.0;
        }
        CHECK(amplified >= draws * 95 / 100);
    }

    TEST_CASE("gas capacity limits")
    {
        const McBudget budget{20, 100};
        const Scenario s = scenario(PayloadMode::Gas, {8, 4, 2, 8});
        const SecrecyResult hi = estimate_secrecy(s, NoiseSpec::from_snr_db(40), budget, 1);
        const SecrecyResult lo = estimate_secrecy(s, NoiseSpec::from_snr_db(-40), budget, 1);
        // [8,4,2]: 6 patterns, 4 kept
        CHECK(hi.c_bob.bits == doctest::Approx(2.0).epsilon(0.02));
        CHECK(lo.c_bob.bits < 0.01);
        CHECK(lo.c_eve.bits < 0.01);
    }

    TEST_CASE("per-channel capacities stay inside [0, log2 |B|]")
    {
        const McBudget budget{10, 20};
        for (PayloadMode mode : {PayloadMode::Modulated, PayloadMode::Cas, PayloadMode::Gas})
        {
            const Scenario s = scenario(mode, {8, 4, 1, 8});
            const double top = std::log2(double(s.alphabet_size()));
            for (double snr : {-10.0, 10.0, 30.0})
            {
                const SecrecyResult r = estimate_secrecy(s, NoiseSpec::from_snr_db(snr), budget, 2);
                for (double v : r.per_channel_bob)
                    CHECK((v >= 0.0 && v <= top));
                for (double v : r.per_channel_eve)
                    CHECK((v >= 0.0 && v <= top));
            }
        }
    }

    TEST_CASE("bob capacity grows with snr")
    {
        const McBudget budget{10, 100};
        for (PayloadMode mode : {PayloadMode::Cas, PayloadMode::Gas})
        {
            const Scenario s = scenario(mode, {8, 4, 1, 8});
            double prev = -1;
            for (double snr : {-10.0, 0.0, 10.0, 20.0})
            {
                const double c = estimate_secrecy(s, NoiseSpec::from_snr_db(snr), budget, 3).c_bob.bits;
                CHECK(c > prev - 0.02);
                prev = c;
            }
        }
    }

    TEST_CASE("estimate_secrecy shapes and determinism")
    {
        const McBudget budget{7, 30};
        const Scenario s = scenario(PayloadMode::Gas, {8, 4, 2, 10});
        const SecrecyResult one = estimate_secrecy(s, NoiseSpec::from_snr_db(10), budget, 5, {1, 0.0});
        const SecrecyResult three = estimate_secrecy(s, NoiseSpec::from_snr_db(10), budget, 5, {3, 0.0});
        CHECK(one.per_channel_bob.size() == 7);
        CHECK(one.per_channel_eve.size() == 7);
        CHECK(one.c_sec == one.c_bob.bits - one.c_eve.bits);
        CHECK(one.per_channel_bob == three.per_channel_bob);
        CHECK(one.per_channel_eve == three.per_channel_eve);
        CHECK(one.c_bob.bits == three.c_bob.bits);
        CHECK(one.c_bob.n_channels == 7);
        CHECK(one.c_bob.n_noise == 30);
        CHECK_FALSE(one.eve_blind);
        const auto sec = one.per_channel_secrecy();
        for (std::size_t c = 0; c < 7; ++c)
            CHECK(sec[c] == one.per_channel_bob[c] - one.per_channel_eve[c]);

        const SecrecyResult other = estimate_secrecy(s, NoiseSpec::from_snr_db(10), budget, 6);
        CHECK(other.per_channel_bob != one.per_channel_bob);
    }

    TEST_CASE("eve with fewer antennas than alice is blind")
    {
        const SecrecyResult r =
            estimate_secrecy(scenario(PayloadMode::Gas, {8, 4, 2, 6}), NoiseSpec::from_snr_db(20), {5, 20}, 1);
        CHECK(r.eve_blind);
        CHECK(r.c_eve.bits == 0.0);
        CHECK(r.c_sec == r.c_bob.bits);

        // the direct receiver needs no projection
        const SecrecyResult d = estimate_secrecy(scenario(PayloadMode::Gas, {8, 4, 2, 6}, EveReceiver::Direct),
                                                 NoiseSpec::from_snr_db(20), {5, 20}, 1);
        CHECK_FALSE(d.eve_blind);
        CHECK(d.c_eve.bits > 0.0);

        // single-activation CAS scores Eve on her own channel
        const SecrecyResult c =
            estimate_secrecy(scenario(PayloadMode::Cas, {8, 4, 1, 2}), NoiseSpec::from_snr_db(20), {5, 20}, 1);
        CHECK_FALSE(c.eve_blind);
    }

    TEST_CASE("scenario validation")
    {
        Scenario s = scenario(PayloadMode::Gas, {16, 8, 2, 16});
        CHECK(s.is_valid().empty());
        s.rho = 1.0;
        CHECK_FALSE(s.is_valid().empty());
        s.rho = 0.5;
        s.csit_sigma_i = 1.5;
        CHECK_FALSE(s.is_valid().empty());
        s.csit_sigma_i = 0.3;
        CHECK(s.is_valid().empty());
        s.mode = PayloadMode::Cas;
        CHECK_FALSE(s.is_valid().empty());
        s.csit_sigma_i = 0;
        CHECK(s.is_valid().empty());
        s.eve = EveReceiver::Direct;
        CHECK_FALSE(s.is_valid().empty());
        s.dims.n_active = 1;
        CHECK(s.is_valid().empty());

        Scenario m = scenario(PayloadMode::Modulated, {8, 4, 2, 8});
        m.m_ary = 4;
        CHECK(m.is_valid().empty());
        CHECK(m.alphabet_size() == 64);
        m.m_ary = 6;
        CHECK_FALSE(m.is_valid().empty());
        m.m_ary = 4;
        m.dims = {16, 8, 4, 16}; // 2^6 * 4^4 symbols
        CHECK_FALSE(m.is_valid().empty());

        CHECK(scenario(PayloadMode::Gas, {16, 8, 2, 16}).alphabet_size() == 16);
        CHECK_THROWS_AS(estimate_secrecy(m, NoiseSpec::from_snr_db(0), {2, 2}, 1), std::invalid_argument);
        CHECK_THROWS(estimate_secrecy(s, NoiseSpec::from_snr_db(0), {0, 2}, 1));
    }

    TEST_CASE("outage_cdf")
    {
        const std::vector<double> v{3.0, 1.0, 4.0, 2.0};
        const auto cdf = outage_cdf(v, 4);
        REQUIRE(cdf.size() == 4);
        CHECK(cdf[0] == std::pair<double, double>{1.0, 0.25});
        CHECK(cdf[1] == std::pair<double, double>{2.0, 0.5});
        CHECK(cdf[2] == std::pair<double, double>{3.0, 0.75});
        CHECK(cdf[3] == std::pair<double, double>{4.0, 1.0});

        const std::vector<double> flat{0.7, 0.7};
        CHECK(outage_cdf(flat) == std::vector<std::pair<double, double>>{{0.7, 1.0}});
        CHECK(outage_cdf(v).size() == 101);
        CHECK_THROWS(outage_cdf(std::vector<double>{}));
        CHECK_THROWS(outage_cdf(v, 1));
    }

    TEST_CASE("gpsm qpsk reaches full rate at high snr")
    {
        // [8,4,2]: 4 patterns and two QPSK symbols, 6 bits
        const Scenario s = scenario(PayloadMode::Modulated, {8, 4, 2, 8});
        const SecrecyResult r = estimate_secrecy(s, NoiseSpec::from_snr_db(30), {10, 20}, 1);
        CHECK(r.c_bob.bits == doctest::Approx(6.0).epsilon(0.01));
        const SecrecyResult q = estimate_secrecy(s, NoiseSpec::from_snr_db(-40), {10, 20}, 1);
        CHECK(q.c_bob.bits < 0.01);
    }

    TEST_CASE("monte carlo bpsk matches a dense integral")
    {
        CMatrix alphabet(1, 2);
        alphabet << 1.0, -1.0;
        const CapacityEstimate est =
            dcmc_capacity([&](std::size_t) { return make_coherent_model(CMatrix::Identity(1, 1), alphabet, 2.0); }, 2,
                          {40, 2500}, 9);
        const double ref = oracle::biawgn_bits(1.0);
        CHECK(ref == doctest::Approx(0.4859).epsilon(1e-3));
        CHECK(std::abs(est.bits - ref) < 3 * est.std_err);
    }

    TEST_CASE("log theta bias shifts capacity by its size")
    {
        Rng rng(10, 0);
        const PatternSet ps = build_pattern_set(4, 1);
        const auto model = make_coherent_model(random_matrix(rng, 4, 4), modulated_alphabet(ps, 4), 0.5);
        Rng a(3, 3), b(3, 3);
        const double plain = channel_dcmc(*model, 200, a);
        const double biased = channel_dcmc(*model, 200, b, std::log(1.01));
        CHECK(std::abs((biased - plain) + std::log2(1.01)) < 1e-12);
    }
}
