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

#include "gpsmsec/numerics.hpp"

#include <cstddef>
#include <string>

namespace gpsmsec
{
    /// Antenna geometry of the Alice/Bob/Eve link.
    struct SystemDims
    {
        std::size_t n_tx = 8;     // Alice transmit antennas
        std::size_t n_rx = 4;     // Bob receive antennas
        std::size_t n_active = 1; // activated receive antennas per pattern
        std::size_t n_eve = 4;    // Eve receive antennas

        /// Empty when valid, otherwise a description of the first violated constraint.
        std::string is_valid() const;

        /// Throws std::invalid_argument when is_valid() is non-empty.
        void validate() const;

        bool operator==(const SystemDims &) const = default;
    };

    /// One draw of the Bob and Eve channels plus Alice's view of the Bob channel.
    struct ChannelRealization
    {
        CMatrix h_bob;            // n_rx x n_tx
        CMatrix h_eve;            // n_eve x n_tx
        CMatrix h_bob_alice_view; // n_rx x n_tx, equals h_bob under perfect CSIT
    };

    /// Exponential antenna correlation, the same rho at every array.
    struct CorrelationSpec
    {
        double rho = 0.0;
    };

    /// rows x cols matrix of iid CN(0, 1) entries.
    CMatrix rayleigh(Rng &rng, std::size_t rows, std::size_t cols);

    /// R(i, j) = rho^|i - j|, for 0 <= rho < 1.
    RMatrix exp_correlation(std::size_t n, double rho);

    /// Symmetric square root S of a symmetric PSD matrix, S * S^T = R.
    ///
    /// Eigenvalues down to -1e-12 (relative to the largest) are clamped to zero;
    /// anything more negative, or a non-symmetric input, throws std::invalid_argument.
    RMatrix matrix_sqrt_psd(const RMatrix &R);

    /// Kronecker-correlated channel R_rx^{1/2} * h0 * (R_tx^{1/2})^T.
    ///
    /// Both correlation matrices are taken as given (not square-rooted by the caller).
    CMatrix apply_kronecker(const CMatrix &h0, const RMatrix &r_rx, const RMatrix &r_tx);

    struct CsitSplit
    {
        CMatrix h_true;
        CMatrix h_alice_view;
    };

    /// Splits a unit-variance channel into Alice's average part and the estimation error.
    ///
    /// h_alice_view has entry variance 1 - sigma_i^2, the error has sigma_i^2, and the
    /// true channel is their sum. With sigma_i == 0 both outputs are bit-identical.
    CsitSplit split_csit(Rng &rng, std::size_t rows, std::size_t cols, double sigma_i);

    /// (h^H h)^{-1} h^H computed from the thin SVD of h.
    ///
    /// Throws RankDeficientError when h has fewer rows than columns or a zero singular
    /// value, and IllConditionedError when cond(h^H h) >= 1e12.
    CMatrix left_pseudo_inverse(const CMatrix &h);

    /// Parameters for drawing a full channel realization.
    struct ChannelModel
    {
        SystemDims dims;
        double csit_sigma_i = 0.0;
        CorrelationSpec correlation;
    };

    /// Draws (H_B, H_E, H_B,a).
    ///
    /// The Bob channel, Eve channel and CSIT error come from separate substreams of
    /// `rng`, so scenarios that differ only in n_eve, csit_sigma_i or rho reuse the
    /// same underlying Gaussian draws. CSIT error only affects Alice's view.
    ChannelRealization draw_channel(const ChannelModel &model, const Rng &rng);

} // namespace gpsmsec
