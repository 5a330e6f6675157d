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

#include "gpsmsec/transceiver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gpsmsec
{
    namespace
    {
        constexpr double kMaxPrecoderCondition = 1e12; // on H H^H

        unsigned gray_to_position(unsigned label)
        {
            unsigned pos = label;
            for (unsigned g = label >> 1; g != 0; g >>= 1)
                pos ^= g;
            return pos;
        }

        unsigned floor_log2(unsigned long long v)
        {
            unsigned k = 0;
            while (v > 1)
            {
                v >>= 1;
                ++k;
            }
            return k;
        }

        unsigned log2_exact(unsigned m_ary)
        {
            if (!is_power_of_two(m_ary) || m_ary < 2)
                throw std::invalid_argument("m_ary must be a power of two >= 2, got " + std::to_string(m_ary) + ".");
            return floor_log2(m_ary);
        }
    } // namespace

    bool is_power_of_two(unsigned v)
    {
        return v != 0 && (v & (v - 1)) == 0;
    }

    const char *to_string(PayloadMode mode)
    {
        switch (mode)
        {
        case PayloadMode::Modulated:
            return "modulated";
        case PayloadMode::Cas:
            return "cas";
        case PayloadMode::Gas:
            return "gas";
        }
        return "unknown";
    }

    bool PatternSet::contains(std::size_t k, std::size_t antenna) const
    {
        const auto &p = patterns.at(k);
        return std::binary_search(p.begin(), p.end(), antenna);
    }

    PatternSet build_pattern_set(std::size_t n_rx, std::size_t n_active)
    {
        if (n_active < 1 || n_active >= n_rx)
            throw std::invalid_argument("build_pattern_set: need 1 <= n_active < n_rx.");
        if (n_rx > 62)
            throw std::invalid_argument("build_pattern_set: n_rx too large.");

        unsigned long long total = 1; // C(n_rx, n_active), exact by the multiplicative formula
        for (std::size_t i = 1; i <= n_active; ++i)
            total = total * (n_rx - n_active + i) / i;

        PatternSet set;
        set.n_rx = n_rx;
        set.n_active = n_active;
        set.k_ant = floor_log2(total);
        const std::size_t keep = std::size_t(1) << set.k_ant;
        set.patterns.reserve(keep);

        std::vector<std::size_t> comb(n_active);
        for (std::size_t i = 0; i < n_active; ++i)
            comb[i] = i;
        while (set.patterns.size() < keep)
        {
            set.patterns.push_back(comb);
            // next combination in lexicographic order
            std::size_t i = n_active;
            while (i > 0 && comb[i - 1] == n_rx - n_active + (i - 1))
                --i;
            if (i == 0)
                break;
            ++comb[i - 1];
            for (std::size_t j = i; j < n_active; ++j)
                comb[j] = comb[j - 1] + 1;
        }
        return set;
    }

    unsigned k_eff(const PatternSet &patterns, PayloadMode mode, unsigned m_ary)
    {
        if (mode != PayloadMode::Modulated)
            return patterns.k_ant;
        return patterns.k_ant + unsigned(patterns.n_active) * log2_exact(m_ary);
    }

    cplx psk_symbol(unsigned label, unsigned m_ary)
    {
        log2_exact(m_ary);
        if (label >= m_ary)
            throw std::invalid_argument("psk_symbol: label " + std::to_string(label) + " out of range for " +
                                        std::to_string(m_ary) + "-PSK.");
        const double offset = (m_ary >= 4) ? kPi / m_ary : 0.0;
        const double angle = offset + 2.0 * kPi * gray_to_position(label) / m_ary;
        if (m_ary == 2)
            return cplx(label == 0 ? 1.0 : -1.0, 0.0);
        return std::polar(1.0, angle);
    }

    std::vector<cplx> psk_constellation(unsigned m_ary)
    {
        std::vector<cplx> out(m_ary);
        for (unsigned m = 0; m < m_ary; ++m)
            out[m] = psk_symbol(m, m_ary);
        return out;
    }

    Payload make_payload(Rng &rng, PayloadMode mode, std::size_t n_active, unsigned m_ary,
                         std::optional<std::vector<unsigned>> symbol_indices)
    {
        Payload p;
        p.mode = mode;
        switch (mode)
        {
        case PayloadMode::Modulated:
        {
            if (!symbol_indices || symbol_indices->size() != n_active)
                throw std::invalid_argument("make_payload: modulated mode needs one symbol index per active antenna.");
            p.values.resize(static_cast<Eigen::Index>(n_active));
            for (std::size_t i = 0; i < n_active; ++i)
                p.values(static_cast<Eigen::Index>(i)) = psk_symbol((*symbol_indices)[i], m_ary);
            break;
        }
        case PayloadMode::Cas:
            p.values = sample_unit_circle(rng, n_active);
            break;
        case PayloadMode::Gas:
            p.values = sample_complex_gaussian(rng, n_active, 1.0);
            break;
        }
        return p;
    }

    Precoder ci_precoder(const CMatrix &h)
    {
        if (h.rows() > h.cols())
            throw RankDeficientError("ci_precoder: channel has more receive (" + std::to_string(h.rows()) +
                                     ") than transmit (" + std::to_string(h.cols()) + ") antennas.");
        // H = U S V^H, so P = V S^-1 U^H and Tr[(H H^H)^-1] = sum 1/s^2
        Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVector &sv = svd.singularValues();
        const double smax = sv(0);
        const double smin = sv(sv.size() - 1);
        if (!(smin > 0.0))
            throw RankDeficientError("ci_precoder: channel does not have full row rank.");
        if (!((smax / smin) * (smax / smin) < kMaxPrecoderCondition))
            throw IllConditionedError("ci_precoder: channel is too ill-conditioned to invert.");

        Precoder pre;
        pre.p = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
        const double trace_inv = sv.cwiseAbs2().cwiseInverse().sum();
        pre.beta = double(h.rows()) / trace_inv;
        return pre;
    }

    SuperSymbol super_symbol(const PatternSet &patterns, std::size_t pattern_index, Payload payload)
    {
        if (pattern_index >= patterns.size())
            throw std::invalid_argument("super_symbol: pattern index " + std::to_string(pattern_index) +
                                        " out of range.");
        const auto &pat = patterns[pattern_index];
        if (static_cast<std::size_t>(payload.values.size()) != pat.size())
            throw std::invalid_argument("super_symbol: payload length does not match n_active.");
        SuperSymbol out;
        out.pattern_index = pattern_index;
        out.s = CVector::Zero(static_cast<Eigen::Index>(patterns.n_rx));
        for (std::size_t v = 0; v < pat.size(); ++v)
            out.s(static_cast<Eigen::Index>(pat[v])) = payload.values(static_cast<Eigen::Index>(v));
        out.payload = std::move(payload);
        return out;
    }

    CVector transmit(const Precoder &precoder, const CVector &s, std::size_t n_active)
    {
        if (precoder.p.cols() != s.size())
            throw std::invalid_argument("transmit: super-symbol length does not match the precoder.");
        if (n_active == 0)
            throw std::invalid_argument("transmit: n_active must be positive.");
        return std::sqrt(precoder.beta / double(n_active)) * (precoder.p * s);
    }

    CMatrix equivalent_channel(const CMatrix &h, const Precoder &precoder, std::size_t n_active)
    {
        if (h.cols() != precoder.p.rows())
            throw std::invalid_argument("equivalent_channel: channel and precoder do not conform.");
        if (n_active == 0)
            throw std::invalid_argument("equivalent_channel: n_active must be positive.");
        return std::sqrt(precoder.beta / double(n_active)) * (h * precoder.p);
    }

    CMatrix modulated_alphabet(const PatternSet &patterns, unsigned m_ary)
    {
        const unsigned bits = log2_exact(m_ary);
        const std::size_t na = patterns.n_active;
        if (bits * na > 20)
            throw std::invalid_argument("modulated_alphabet: alphabet too large to enumerate.");
        const std::size_t per_pattern = std::size_t(1) << (bits * na);
        const auto constellation = psk_constellation(m_ary);

        CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(patterns.n_rx),
                                    static_cast<Eigen::Index>(patterns.size() * per_pattern));
        Eigen::Index col = 0;
        for (std::size_t k = 0; k < patterns.size(); ++k)
            for (std::size_t m = 0; m < per_pattern; ++m, ++col)
            {
                // labels of the active antennas, first antenna most significant
                for (std::size_t v = 0; v < na; ++v)
                {
                    const unsigned label = unsigned(m >> (bits * (na - 1 - v))) & (m_ary - 1);
                    out(static_cast<Eigen::Index>(patterns[k][v]), col) = constellation[label];
                }
            }
        return out;
    }

    Detection ml_detect(const CVector &y, const CMatrix &g, const PatternSet &patterns, unsigned m_ary)
    {
        if (g.rows() != y.size() || static_cast<std::size_t>(g.cols()) != patterns.n_rx)
            throw std::invalid_argument("ml_detect: dimensions do not conform.");
        const unsigned bits = log2_exact(m_ary);
        const std::size_t na = patterns.n_active;
        const std::size_t per_pattern = std::size_t(1) << (bits * na);
        const auto constellation = psk_constellation(m_ary);

        double best = std::numeric_limits<double>::infinity();
        std::size_t best_k = 0;
        std::size_t best_m = 0;
        CVector r(y.size());
        for (std::size_t k = 0; k < patterns.size(); ++k)
            for (std::size_t m = 0; m < per_pattern; ++m)
            {
                r = y;
                for (std::size_t v = 0; v < na; ++v)
                {
                    const unsigned label = unsigned(m >> (bits * (na - 1 - v))) & (m_ary - 1);
                    r.noalias() -= g.col(static_cast<Eigen::Index>(patterns[k][v])) * constellation[label];
                }
                const double d = r.squaredNorm();
                if (d < best) // strict: first minimum in lexicographic order wins
                {
                    best = d;
                    best_k = k;
                    best_m = m;
                }
            }

        Detection det;
        det.pattern_index = best_k;
        det.symbol_indices.resize(na);
        for (std::size_t v = 0; v < na; ++v)
            det.symbol_indices[v] = unsigned(best_m >> (bits * (na - 1 - v))) & (m_ary - 1);
        return det;
    }

    Detection decoupled_detect(const CVector &y, const CMatrix &g, const PatternSet &patterns, unsigned m_ary)
    {
        if (static_cast<std::size_t>(y.size()) != patterns.n_rx || g.rows() != g.cols() || g.rows() != y.size())
            throw std::invalid_argument("decoupled_detect: needs a square n_rx x n_rx equivalent channel.");
        const auto constellation = psk_constellation(m_ary);

        Detection det;
        double best_energy = -1.0;
        for (std::size_t k = 0; k < patterns.size(); ++k)
        {
            double energy = 0.0;
            for (std::size_t a : patterns[k])
                energy += std::norm(y(static_cast<Eigen::Index>(a)));
            if (energy > best_energy)
            {
                best_energy = energy;
                det.pattern_index = k;
            }
        }

        for (std::size_t a : patterns[det.pattern_index])
        {
            const auto i = static_cast<Eigen::Index>(a);
            double best = std::numeric_limits<double>::infinity();
            unsigned best_label = 0;
            for (unsigned m = 0; m < m_ary; ++m)
            {
                const double d = std::norm(y(i) - g(i, i) * constellation[m]);
                if (d < best)
                {
                    best = d;
                    best_label = m;
                }
            }
            det.symbol_indices.push_back(best_label);
        }
        return det;
    }

} // namespace gpsmsec
