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

#include <cmath>

namespace gpsmsec
{
    namespace
    {
        constexpr double kMaxGramCondition = 1e12;

        // substream ids inside one channel realization
        constexpr std::uint64_t kStreamBob = 1;
        constexpr std::uint64_t kStreamEve = 2;
        constexpr std::uint64_t kStreamCsit = 3;
    } // namespace

    std::string SystemDims::is_valid() const
    {
        if (n_rx == 0 || n_tx == 0)
            return "n_tx and n_rx must be at least 1";
        if (n_tx < n_rx)
            return "n_tx (" + std::to_string(n_tx) + ") must be >= n_rx (" + std::to_string(n_rx) + ")";
        if (n_active < 1 || n_active >= n_rx)
            return "n_active (" + std::to_string(n_active) + ") must satisfy 1 <= n_active < n_rx (" +
                   std::to_string(n_rx) + ")";
        if (n_eve < 1)
            return "n_eve must be at least 1";
        return "";
    }

    void SystemDims::validate() const
    {
        const auto msg = is_valid();
        if (!msg.empty())
            throw std::invalid_argument("SystemDims: " + msg);
    }

    CMatrix rayleigh(Rng &rng, std::size_t rows, std::size_t cols)
    {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("rayleigh: dimensions must be at least 1.");
        CMatrix h(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        const double scale = std::sqrt(0.5);
        // column-major fill keeps the draw order independent of Eigen's storage choice
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            for (Eigen::Index r = 0; r < h.rows(); ++r)
            {
                const double re = rng.normal();
                const double im = rng.normal();
                h(r, c) = cplx(scale * re, scale * im);
            }
        return h;
    }

    RMatrix exp_correlation(std::size_t n, double rho)
    {
        if (!(rho >= 0.0 && rho < 1.0))
            throw std::invalid_argument("exp_correlation: rho must lie in [0, 1).");
        RMatrix R(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < R.rows(); ++i)
            for (Eigen::Index j = 0; j < R.cols(); ++j)
                R(i, j) = (i == j) ? 1.0 : std::pow(rho, double(std::abs(i - j)));
        return R;
    }

    RMatrix matrix_sqrt_psd(const RMatrix &R)
    {
        if (R.rows() != R.cols())
            throw std::invalid_argument("matrix_sqrt_psd: matrix must be square.");
        if (R.size() == 0)
            return R;
        const double scale = std::max(1.0, R.cwiseAbs().maxCoeff());
        if ((R - R.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::invalid_argument("matrix_sqrt_psd: matrix is not symmetric.");

        Eigen::SelfAdjointEigenSolver<RMatrix> eig(R);
        if (eig.info() != Eigen::Success)
            throw std::invalid_argument("matrix_sqrt_psd: eigen-decomposition failed.");
        RVector lambda = eig.eigenvalues();
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
        {
            if (lambda(i) < -1e-12 * scale)
                throw std::invalid_argument("matrix_sqrt_psd: matrix is indefinite.");
            lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
        }
        const RMatrix &V = eig.eigenvectors();
        return V * lambda.asDiagonal() * V.transpose();
    }

    CMatrix apply_kronecker(const CMatrix &h0, const RMatrix &r_rx, const RMatrix &r_tx)
    {
        if (r_rx.rows() != h0.rows() || r_rx.cols() != h0.rows() || r_tx.rows() != h0.cols() ||
            r_tx.cols() != h0.cols())
            throw std::invalid_argument("apply_kronecker: correlation matrices do not conform to the channel.");
        const RMatrix s_rx = matrix_sqrt_psd(r_rx);
        const RMatrix s_tx = matrix_sqrt_psd(r_tx);
        return s_rx.cast<cplx>() * h0 * s_tx.transpose().cast<cplx>();
    }

    CsitSplit split_csit(Rng &rng, std::size_t rows, std::size_t cols, double sigma_i)
    {
        if (!(sigma_i >= 0.0 && sigma_i <= 1.0))
            throw std::invalid_argument("split_csit: sigma_i must lie in [0, 1].");
        const CMatrix avg = rayleigh(rng, rows, cols);
        const CMatrix err = rayleigh(rng, rows, cols);
        CsitSplit out;
        out.h_alice_view = std::sqrt(1.0 - sigma_i * sigma_i) * avg;
        if (sigma_i == 0.0)
            out.h_true = out.h_alice_view;
        else
            out.h_true = out.h_alice_view + sigma_i * err;
        return out;
    }

    CMatrix left_pseudo_inverse(const CMatrix &h)
    {
        if (h.rows() < h.cols())
            throw RankDeficientError("left_pseudo_inverse: matrix has fewer rows (" + std::to_string(h.rows()) +
                                     ") than columns (" + std::to_string(h.cols()) + ").");
        Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVector &sv = svd.singularValues();
        const double smax = sv(0);
        const double smin = sv(sv.size() - 1);
        if (!(smin > 0.0))
            throw RankDeficientError("left_pseudo_inverse: matrix does not have full column rank.");
        const double gram_condition = (smax / smin) * (smax / smin);
        if (!(gram_condition < kMaxGramCondition))
            throw IllConditionedError("left_pseudo_inverse: condition number of h^H h is " +
                                      std::to_string(gram_condition) + ".");
        return svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
    }

    ChannelRealization draw_channel(const ChannelModel &model, const Rng &rng)
    {
        const SystemDims &d = model.dims;
        d.validate();
        if (!(model.csit_sigma_i >= 0.0 && model.csit_sigma_i <= 1.0))
            throw std::invalid_argument("draw_channel: csit_sigma_i must lie in [0, 1].");
        if (!(model.correlation.rho >= 0.0 && model.correlation.rho < 1.0))
            throw std::invalid_argument("draw_channel: rho must lie in [0, 1).");

        ChannelRealization ch;
        Rng bob_rng = rng.substream(kStreamBob);
        Rng eve_rng = rng.substream(kStreamEve);

        // Perfect-CSIT draws reuse the "average CSI" draw of the split so that a zero
        // CSIT error reproduces the baseline bit for bit.
        CMatrix hb;
        CMatrix hb_alice;
        if (model.csit_sigma_i == 0.0)
        {
            hb = rayleigh(bob_rng, d.n_rx, d.n_tx);
            hb_alice = hb;
        }
        else
        {
            // average part from the Bob stream, error part from its own stream
            const double s = model.csit_sigma_i;
            hb_alice = std::sqrt(1.0 - s * s) * rayleigh(bob_rng, d.n_rx, d.n_tx);
            Rng err_rng = rng.substream(kStreamCsit);
            hb = hb_alice + s * rayleigh(err_rng, d.n_rx, d.n_tx);
        }
        CMatrix he = rayleigh(eve_rng, d.n_eve, d.n_tx);

        const double rho = model.correlation.rho;
        if (rho > 0.0)
        {
            const RMatrix r_tx = exp_correlation(d.n_tx, rho);
            const RMatrix r_bob = exp_correlation(d.n_rx, rho);
            const RMatrix r_eve = exp_correlation(d.n_eve, rho);
            hb = apply_kronecker(hb, r_bob, r_tx);
            he = apply_kronecker(he, r_eve, r_tx);
            hb_alice = apply_kronecker(hb_alice, r_bob, r_tx);
        }

        ch.h_bob = std::move(hb);
        ch.h_eve = std::move(he);
        ch.h_bob_alice_view = std::move(hb_alice);
        return ch;
    }

} // namespace gpsmsec
