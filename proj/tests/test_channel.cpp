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


#include "gpsmsec/channel.hpp"

#include <doctest.h>

#include <cmath>

using namespace gpsmsec;

TEST_SUITE("channel")
{
    TEST_CASE("SystemDims constraints")
    {
        CHECK(SystemDims{8, 4, 1, 4}.is_valid().empty());
        CHECK(SystemDims{16, 8, 2, 24}.is_valid().empty());
        CHECK(SystemDims{8, 4, 1, 1}.is_valid().empty()); // n_eve unconstrained vs n_tx
        CHECK_FALSE(SystemDims{4, 8, 1, 4}.is_valid().empty());
        CHECK_FALSE(SystemDims{8, 4, 4, 4}.is_valid().empty());
        CHECK_FALSE(SystemDims{8, 4, 0, 4}.is_valid().empty());
        CHECK_FALSE(SystemDims{8, 4, 1, 0}.is_valid().empty());
        CHECK_THROWS_AS(SystemDims({8, 4, 4, 4}).validate(), std::invalid_argument);
    }

    TEST_CASE("rayleigh entries have unit variance and an exponential power tail")
    {
        Rng r(1, 0);
        const CMatrix h = rayleigh(r, 4, 8);
        CHECK(h.rows() == 4);
        CHECK(h.cols() == 8);
        Rng a(5, 5), b(5, 5);
        CHECK(rayleigh(a, 3, 2) == rayleigh(b, 3, 2));

        double power = 0;
        int tail = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
        {
            const double p = std::norm(rayleigh(r, 1, 1)(0, 0));
            power += p;
            tail += p > 1.0;
        }
        CHECK(std::abs(power / n - 1.0) < 1e-2);
        CHECK(std::abs(double(tail) / n - std::exp(-1.0)) < 1e-2);
    }

    TEST_CASE("exp_correlation")
    {
        CHECK(exp_correlation(3, 0.0) == RMatrix::Identity(3, 3));
        RMatrix want(2, 2);
        want << 1.0, 0.5, 0.5, 1.0;
        CHECK(exp_correlation(2, 0.5) == want);
        Eigen::SelfAdjointEigenSolver<RMatrix> es(exp_correlation(4, 0.3));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
        CHECK_THROWS_AS(exp_correlation(3, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(exp_correlation(3, -0.1), std::invalid_argument);
    }

    TEST_CASE("matrix_sqrt_psd")
    {
        CHECK((matrix_sqrt_psd(RMatrix::Identity(3, 3)) - RMatrix::Identity(3, 3)).norm() < 1e-14);
        RMatrix d = RMatrix::Zero(2, 2);
        d(0, 0) = 4, d(1, 1) = 9;
        const RMatrix s = matrix_sqrt_psd(d);
        CHECK(s(0, 0) == doctest::Approx(2.0));
        CHECK(s(1, 1) == doctest::Approx(3.0));
        CHECK(std::abs(s(0, 1)) < 1e-14);
        const RMatrix r = exp_correlation(4, 0.5);
        const RMatrix sr = matrix_sqrt_psd(r);
        CHECK((sr * sr.transpose() - r).norm() < 1e-10);

        RMatrix asym(2, 2);
        asym << 1.0, 0.2, 0.0, 1.0;
        CHECK_THROWS_AS(matrix_sqrt_psd(asym), std::invalid_argument);
        RMatrix indef(2, 2);
        indef << 1.0, 2.0, 2.0, 1.0;
        CHECK_THROWS_AS(matrix_sqrt_psd(indef), std::invalid_argument);
        RMatrix singular(2, 2);
        singular << 1.0, 1.0, 1.0, 1.0;
        const RMatrix ss = matrix_sqrt_psd(singular);
        CHECK((ss * ss.transpose() - singular).norm() < 1e-10);
    }

    TEST_CASE("apply_kronecker")
    {
        Rng rng(2, 0);
        const CMatrix h0 = rayleigh(rng, 3, 5);
        CHECK(apply_kronecker(h0, RMatrix::Identity(3, 3), RMatrix::Identity(5, 5)) == h0);

        // hand-computed square root of [[1, .5], [.5, 1]]: eigenvalues 1.5 and 0.5
        const double a = (std::sqrt(1.5) + std::sqrt(0.5)) / 2.0;
        const double b = (std::sqrt(1.5) - std::sqrt(0.5)) / 2.0;
        RMatrix s(2, 2);
        s << a, b, b, a;
        RMatrix r(2, 2);
        r << 1.0, 0.5, 0.5, 1.0;
        const CMatrix ones = CMatrix::Ones(2, 2);
        const CMatrix want = s.cast<cplx>() * ones * s.transpose().cast<cplx>();
        CHECK((apply_kronecker(ones, r, r) - want).norm() < 1e-12);

        CHECK_THROWS_AS(apply_kronecker(h0, RMatrix::Identity(2, 2), RMatrix::Identity(5, 5)), std::invalid_argument);
    }

    TEST_CASE("correlated rows reproduce the receive correlation")
    {
        Rng rng(3, 0);
        const RMatrix r_rx = exp_correlation(3, 0.5);
        const RMatrix r_tx = RMatrix::Identity(1, 1);
        CMatrix acc = CMatrix::Zero(3, 3);
        const int n = 100000;
        for (int i = 0; i < n; ++i)
        {
            const CMatrix h = apply_kronecker(rayleigh(rng, 3, 1), r_rx, r_tx);
            acc += h * h.adjoint();
        }
        acc /= double(n);
        CHECK((acc - r_rx.cast<cplx>()).cwiseAbs().maxCoeff() < 2e-2);
    }

    TEST_CASE("split_csit")
    {
        Rng rng(4, 0);
        const CsitSplit perfect = split_csit(rng, 4, 8, 0.0);
        CHECK(perfect.h_true == perfect.h_alice_view);

        double err = 0, total = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
        {
            const CsitSplit s = split_csit(rng, 1, 1, 0.5);
            err += std::norm(s.h_true(0, 0) - s.h_alice_view(0, 0));
            total += std::norm(s.h_true(0, 0));
        }
        CHECK(std::abs(err / n - 0.25) < 1e-2);
        CHECK(std::abs(total / n - 1.0) < 2e-2);

        const CsitSplit blind = split_csit(rng, 3, 3, 1.0);
        CHECK(blind.h_alice_view.norm() == 0.0);

        CHECK_THROWS_AS(split_csit(rng, 2, 2, 1.5), std::invalid_argument);
        CHECK_THROWS_AS(split_csit(rng, 2, 2, -0.1), std::invalid_argument);
    }

    TEST_CASE("h_true keeps unit variance for every sigma_i")
    {
        Rng rng(6, 0);
        for (double s : {0.0, 0.3, 0.7, 1.0})
        {
            double total = 0;
            const int n = 100000;
            for (int i = 0; i < n / 10; ++i)
                total += split_csit(rng, 2, 5, s).h_true.squaredNorm();
            CHECK(std::abs(total / n - 1.0) < 2e-2);
        }
    }

    TEST_CASE("left_pseudo_inverse")
    {
        Rng rng(7, 0);
        const CMatrix g = rayleigh(rng, 4, 4);
        const CMatrix q = Eigen::HouseholderQR<CMatrix>(g).householderQ();
        CHECK((left_pseudo_inverse(q) - q.adjoint()).norm() < 1e-12);

        for (int t = 0; t < 20; ++t)
        {
            const CMatrix h = rayleigh(rng, 8, 4);
            CHECK((left_pseudo_inverse(h) * h - CMatrix::Identity(4, 4)).norm() < 1e-8);
        }
        CHECK_THROWS_AS(left_pseudo_inverse(rayleigh(rng, 2, 4)), RankDeficientError);

        CMatrix ill = rayleigh(rng, 4, 2);
        ill.col(1) = ill.col(0) * cplx(1.0, 0.0) + ill.col(1) * 1e-7;
        CHECK_THROWS_AS(left_pseudo_inverse(ill), IllConditionedError);
        CMatrix zero_col = rayleigh(rng, 4, 2);
        zero_col.col(1).setZero();
        CHECK_THROWS_AS(left_pseudo_inverse(zero_col), RankDeficientError);
    }

    TEST_CASE("draw_channel")
    {
        const Rng base(9, 0);
        ChannelModel m{SystemDims{8, 4, 1, 6}, 0.0, {}};
        const ChannelRealization ch = draw_channel(m, base);
        CHECK(ch.h_bob.rows() == 4);
        CHECK(ch.h_bob.cols() == 8);
        CHECK(ch.h_eve.rows() == 6);
        CHECK(ch.h_eve.cols() == 8);
        CHECK(ch.h_bob_alice_view == ch.h_bob);

        // Bob's channel does not depend on Eve's size
        ChannelModel m2 = m;
        m2.dims.n_eve = 9;
        const ChannelRealization ch2 = draw_channel(m2, base);
        CHECK(ch2.h_bob == ch.h_bob);

        // CSIT error only changes Alice's view and the true Bob channel, not Eve
        ChannelModel m3 = m;
        m3.csit_sigma_i = 0.4;
        const ChannelRealization ch3 = draw_channel(m3, base);
        CHECK(ch3.h_eve == ch.h_eve);
        CHECK(ch3.h_bob_alice_view != ch3.h_bob);

        // rho = 0 is bit-identical to the uncorrelated draw
        ChannelModel m4 = m;
        m4.correlation.rho = 0.0;
        CHECK(draw_channel(m4, base).h_bob == ch.h_bob);
        m4.correlation.rho = 0.5;
        CHECK(draw_channel(m4, base).h_bob != ch.h_bob);
    }
}
