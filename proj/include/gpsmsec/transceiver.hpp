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

// GPSM transceiver: receive-antenna activation patterns, channel-inversion
// precoding, super-symbol construction and the two reference detectors.

#include "gpsmsec/numerics.hpp"

#include <optional>
#include <vector>

namespace gpsmsec
{
    /// What the active antennas carry.
    enum class PayloadMode
    {
        Modulated, // Gray-mapped M-PSK symbols
        Cas,       // circular antenna scrambling, unit-modulus random phases
        Gas        // Gaussian antenna scrambling, CN(0, 1) draws
    };

    const char *to_string(PayloadMode mode);

    /// Selected activation patterns.
    ///
    /// All C(n_rx, n_active) combinations are enumerated in lexicographic order and
    /// the first 2^k_ant are kept, k_ant = floor(log2 C(n_rx, n_active)).
    struct PatternSet
    {
        std::size_t n_rx = 0;
        std::size_t n_active = 0;
        std::vector<std::vector<std::size_t>> patterns;
        unsigned k_ant = 0;

        std::size_t size() const { return patterns.size(); }
        const std::vector<std::size_t> &operator[](std::size_t k) const { return patterns[k]; }
        /// true when antenna i is active in pattern k
        bool contains(std::size_t k, std::size_t antenna) const;
    };

    PatternSet build_pattern_set(std::size_t n_rx, std::size_t n_active);

    /// Bits per super-symbol. Scrambled modes carry information only through the pattern.
    unsigned k_eff(const PatternSet &patterns, PayloadMode mode, unsigned m_ary);

    struct Payload
    {
        PayloadMode mode = PayloadMode::Modulated;
        CVector values; // length n_active
    };

    /// Unit-energy M-PSK point for Gray label `label`. Label 0 sits at pi/M for M >= 4
    /// (so QPSK label 0 is (1 + j)/sqrt(2)) and at +1 for BPSK.
    cplx psk_symbol(unsigned label, unsigned m_ary);

    /// The M-PSK alphabet indexed by Gray label.
    std::vector<cplx> psk_constellation(unsigned m_ary);

    /// Builds a payload. Modulated mode needs `symbol_indices` (Gray labels, one per
    /// active antenna); scrambled modes draw fresh values from `rng`.
    Payload make_payload(Rng &rng, PayloadMode mode, std::size_t n_active, unsigned m_ary,
                         std::optional<std::vector<unsigned>> symbol_indices = std::nullopt);

    /// Channel-inversion precoder P = H^H (H H^H)^{-1} with beta = n_rx / Tr[(H H^H)^{-1}].
    struct Precoder
    {
        CMatrix p; // n_tx x n_rx
        double beta = 1.0;
    };

    /// Builds the CI precoder from Alice's view of the Bob channel via its SVD.
    /// Throws RankDeficientError/IllConditionedError when H is not usable.
    Precoder ci_precoder(const CMatrix &h_alice_view);

    struct SuperSymbol
    {
        std::size_t pattern_index = 0;
        Payload payload;
        CVector s; // length n_rx, nonzero only on the pattern's antennas
    };

    SuperSymbol super_symbol(const PatternSet &patterns, std::size_t pattern_index, Payload payload);

    /// x = sqrt(beta / n_active) * P * s
    CVector transmit(const Precoder &precoder, const CVector &s, std::size_t n_active);

    /// Equivalent channel G = sqrt(beta / n_active) * H * P.
    ///
    /// This is the only place where sqrt(beta / n_active) is applied on the receive
    /// side; detectors and likelihood kernels take G as given.
    CMatrix equivalent_channel(const CMatrix &h, const Precoder &precoder, std::size_t n_active);

    struct Detection
    {
        std::size_t pattern_index = 0;
        std::vector<unsigned> symbol_indices;

        bool operator==(const Detection &) const = default;
    };

    /// Joint ML detection over the full super-alphabet, minimizing ||y - G s||^2.
    /// Ties resolve to the lexicographically smallest (pattern, labels).
    Detection ml_detect(const CVector &y, const CMatrix &g, const PatternSet &patterns, unsigned m_ary);

    /// Pattern by largest energy on its antennas, then per-antenna nearest symbol using
    /// the diagonal of G. Ties resolve to the lowest index.
    Detection decoupled_detect(const CVector &y, const CMatrix &g, const PatternSet &patterns, unsigned m_ary);

    /// Enumerates every modulated super-symbol (pattern-major, labels lexicographic)
    /// as columns of an n_rx x (|C| * M^n_active) matrix.
    CMatrix modulated_alphabet(const PatternSet &patterns, unsigned m_ary);

    bool is_power_of_two(unsigned v);

} // namespace gpsmsec
