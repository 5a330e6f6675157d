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

// Likelihood-ratio kernels and Monte Carlo DCMC capacity estimators.
//
// Every kernel returns ln Theta(eps, tau) = ln p(obs | eps) - ln p(obs | tau) in
// natural-log units; conversion to bits happens only when a capacity is formed.
// Capacity of a finite alphabet B with equiprobable inputs:
//
//   C = log2|B| - 1/|B| sum_tau E[ log2 sum_eps Theta(eps, tau) ]

#include "gpsmsec/channel.hpp"
#include "gpsmsec/numerics.hpp"
#include "gpsmsec/transceiver.hpp"

#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace gpsmsec
{
    /// Per-entry receiver noise. SNR = 1 / sigma2 under E||x||^2 = 1.
    struct NoiseSpec
    {
        double sigma2_bob = 1.0;
        double sigma2_eve = 1.0;
        double snr_db = 0.0;

        /// Equal noise at Bob and Eve, sigma2 = 10^(-snr_db / 10).
        static NoiseSpec from_snr_db(double snr_db);

        /// Halved variances used to normalize the non-coherent chi-square statistic.
        double sigma2_bob_0() const { return 0.5 * sigma2_bob; }
        double sigma2_eve_0() const { return 0.5 * sigma2_eve; }
    };

    /// Monte Carlo sample counts: outer channel realizations, inner noise draws per hypothesis.
    struct McBudget
    {
        std::size_t n_channels = 100;
        std::size_t n_noise = 200;

        void validate() const;
        bool operator==(const McBudget &) const = default;
    };

    struct CapacityEstimate
    {
        double bits = 0.0;    // mean of the per-channel capacities
        double std_err = 0.0; // standard error of that mean across channels
        std::size_t n_channels = 0;
        std::size_t n_noise = 0;
    };

    struct SecrecyResult
    {
        CapacityEstimate c_bob;
        CapacityEstimate c_eve;
        double c_sec = 0.0; // c_bob.bits - c_eve.bits, not clamped

        /// Eve has fewer antennas than Alice and cannot post-process; C_E is forced to 0.
        bool eve_blind = false;

        std::vector<double> per_channel_bob;
        std::vector<double> per_channel_eve;

        /// Per-realization secrecy capacity C_B - C_E, the input to outage_cdf.
        std::vector<double> per_channel_secrecy() const;
    };

    // ---------- Likelihood kernels ----------

    /// Coherent kernel (-||g (s_tau - s_eps) + w||^2 + ||w||^2) / sigma2.
    LogProb log_theta_coherent(const CMatrix &g, const CVector &s_tau, const CVector &s_eps, const CVector &w,
                               double sigma2);

    /// Non-coherent statistic r_i = |sum_v g(i, pattern[v]) payload_v + w_i|^2.
    RVector noncoherent_receive(const CMatrix &g, const std::vector<std::size_t> &pattern, const CVector &payload,
                                const CVector &w);

    /// Single-activation CAS kernel for an arbitrary equivalent channel g.
    ///
    /// Each entry of r / sigma2_0 is noncentral chi-square with two degrees of freedom
    /// and noncentrality |g(i, C(k, 0))|^2 / sigma2_0. Throws UnsupportedModeError
    /// when the pattern set activates more than one antenna.
    LogProb log_theta_cas_general(const CMatrix &g, const RVector &r, const PatternSet &patterns, std::size_t tau,
                                  std::size_t eps, double sigma2_0);

    /// CAS kernel for a receiver whose equivalent channel is sqrt(beta / n_active) I.
    ///
    /// Noncentrality is beta / (n_active sigma2_0_i) on active antennas and zero
    /// elsewhere. `sigma2_0` is per entry (Eve's post-processed noise is unequal).
    LogProb log_theta_cas_identity(const RVector &r, std::size_t tau, std::size_t eps, double beta,
                                   std::size_t n_active, const RVector &sigma2_0, const PatternSet &patterns);
    LogProb log_theta_cas_identity(const RVector &r, std::size_t tau, std::size_t eps, double beta,
                                   std::size_t n_active, double sigma2_0, const PatternSet &patterns);

    /// GAS kernel with exact Gaussian normalization.
    ///
    /// y_i ~ CN(0, V_i(k)) with V_i(k) = sum_v |g(i, C(k, v))|^2 + noise_variance_i, and
    /// ln Theta = sum_i |y_i|^2 / V_i(tau) - |y_i|^2 / V_i(eps) + ln V_i(tau) - ln V_i(eps).
    LogProb log_theta_gas(const CMatrix &g, const CVector &y, const PatternSet &patterns, std::size_t tau,
                          std::size_t eps, const RVector &noise_variance);
    LogProb log_theta_gas(const CMatrix &g, const CVector &y, const PatternSet &patterns, std::size_t tau,
                          std::size_t eps, double sigma2);

    /// Eve's projection T = H_B (H_E^H H_E)^{-1} H_E^H and its per-entry noise gain diag(T T^H).
    struct EveProjection
    {
        CMatrix t;             // n_rx x n_eve
        RVector amplification; // length n_rx
    };

    /// Throws RankDeficientError when n_eve < n_tx.
    EveProjection eve_projection(const CMatrix &h_bob, const CMatrix &h_eve);

    struct PostProcessed
    {
        CVector y_tilde;
        RVector noise_variance; // sigma2_eve * diag(T T^H)
    };

    /// Eve impersonates Bob: y_tilde = T y_eve. Off-diagonal noise correlation is not reported.
    PostProcessed eve_postprocess(const CMatrix &h_bob, const CMatrix &h_eve, const CVector &y_eve,
                                  double sigma2_eve);

    // ---------- Monte Carlo machinery ----------

    /// One receiver on one channel realization.
    class LikelihoodModel
    {
    public:
        virtual ~LikelihoodModel() = default;

        virtual std::size_t alphabet_size() const = 0;

        /// Draws one observation under hypothesis `tau` and writes ln Theta(eps, tau)
        /// for every eps into `out` (size alphabet_size()). out[tau] is exactly 0.
        virtual void sample_log_theta(std::size_t tau, Rng &rng, std::span<double> out) const = 0;
    };

    /// How observations are generated: y = signal * Omega_tau * payload + mix * w,
    /// w ~ CN(0, sigma2 I). An empty `mix` means the identity.
    struct ObservationModel
    {
        CMatrix signal; // n_obs x n_rx
        CMatrix mix;    // n_obs x n_noise or empty
        double sigma2 = 1.0;

        std::size_t n_obs() const { return std::size_t(signal.rows()); }
        std::size_t n_noise() const { return mix.size() == 0 ? std::size_t(signal.rows()) : std::size_t(mix.cols()); }
    };

    /// Coherent finite-alphabet receiver. `alphabet` holds one super-symbol per column.
    std::unique_ptr<LikelihoodModel> make_coherent_model(CMatrix g, const CMatrix &alphabet, double sigma2);

    /// CAS receiver, single activation, arbitrary kernel channel.
    std::unique_ptr<LikelihoodModel> make_cas_general_model(ObservationModel obs, PatternSet patterns,
                                                            const CMatrix &g_kernel, RVector sigma2_0);

    /// CAS receiver with identity-structured equivalent channel.
    std::unique_ptr<LikelihoodModel> make_cas_identity_model(ObservationModel obs, PatternSet patterns, double beta,
                                                             RVector sigma2_0);

    /// GAS receiver; kernel variances from `g_kernel` and per-entry `noise_variance`.
    std::unique_ptr<LikelihoodModel> make_gas_model(ObservationModel obs, PatternSet patterns,
                                                    const CMatrix &g_kernel, RVector noise_variance);

    /// Zero-mean Gaussian hypotheses with arbitrary diagonal variances, variances(k, i).
    /// Used for tiny oracle instances; generation and scoring share the variances.
    std::unique_ptr<LikelihoodModel> make_diagonal_gaussian_model(RMatrix variances);

    /// Unclamped capacity estimate in bits for one channel realization.
    ///
    /// `log_theta_bias` is added to every ln Theta (a test hook; 0 in normal use).
    double channel_dcmc(const LikelihoodModel &model, std::size_t n_noise, Rng &rng, double log_theta_bias = 0.0);

    /// Builds the receiver model for channel realization `channel_index`.
    using ModelProvider = std::function<std::unique_ptr<LikelihoodModel>(std::size_t channel_index)>;

    /// Ergodic DCMC capacity: per-channel estimates clamped to [0, log2 |B|], then averaged.
    ///
    /// Channel c draws its noise from Rng(seed, c), so the result does not depend on
    /// `workers`.
    CapacityEstimate dcmc_capacity(const ModelProvider &provider, std::size_t alphabet_size, const McBudget &budget,
                                   std::uint64_t seed, unsigned workers = 1, double log_theta_bias = 0.0);

    // ---------- Secrecy estimation ----------

    /// Which Eve receiver to evaluate.
    enum class EveReceiver
    {
        Auto,  // mode-dependent choice (post-processing where the mode needs it)
        Direct // Eve scores y_E against G_E without post-processing
    };

    struct Scenario
    {
        PayloadMode mode = PayloadMode::Gas;
        SystemDims dims;
        unsigned m_ary = 4;
        double csit_sigma_i = 0.0;
        double rho = 0.0;
        EveReceiver eve = EveReceiver::Auto;

        /// Empty when the combination is supported, otherwise the reason.
        std::string is_valid() const;
        std::size_t alphabet_size() const;
    };

    struct SecrecyOptions
    {
        unsigned workers = 1;
        double log_theta_bias = 0.0;
    };

    /// C_B and C_E on the same channel realizations, C_S = C_B - C_E.
    ///
    /// Kernel pairs by mode:
    ///   modulated          coherent / coherent
    ///   CAS, n_active = 1  chi-square with general g (Bob G_B, Eve G_E)
    ///   CAS, n_active > 1  identity-structured chi-square (Eve post-processed)
    ///   GAS                Gaussian (Bob G_B, Eve post-processed; or direct G_E)
    /// Post-processing needs n_eve >= n_tx; otherwise C_E = 0 and eve_blind is set.
    /// Channel realization c is drawn from Rng(seed, c) independently of the SNR, so a
    /// sweep over SNR reuses the same channels and noise sequences.
    SecrecyResult estimate_secrecy(const Scenario &scenario, const NoiseSpec &noise, const McBudget &budget,
                                   std::uint64_t seed, const SecrecyOptions &options = {});

    /// Empirical CDF evaluated on `n_thresholds` evenly spaced points over [min, max].
    std::vector<std::pair<double, double>> outage_cdf(std::span<const double> samples, std::size_t n_thresholds = 101);

    // ---------- Brute-force oracle ----------

    /// Tiny instance evaluated by quadrature: at most two receive entries, at most four
    /// hypotheses.
    struct TinyScenario
    {
        enum class Kind
        {
            Coherent,        // y = g * s_k + w, w ~ CN(0, sigma2 I)
            DiagonalGaussian // y_i ~ CN(0, variances(k, i))
        };
        Kind kind = Kind::Coherent;
        CMatrix g;          // coherent: n x d
        CMatrix alphabet;   // coherent: d x |B|
        double sigma2 = 1.0;
        RMatrix variances;  // diagonal Gaussian: |B| x n

        std::size_t alphabet_size() const;
        std::size_t n_obs() const;
    };

    struct QuadratureGrid
    {
        std::size_t nodes_per_dim = 0; // 0 picks 48 for one receive entry, 20 for two
    };

    /// Mutual information of equiprobable inputs by tensor Gauss-Hermite quadrature
    /// over the receive space. Throws UnsupportedModeError when the instance is too big.
    double brute_force_dcmc(const TinyScenario &scenario, const QuadratureGrid &grid = {});

    /// Monte Carlo model matching a TinyScenario.
    std::unique_ptr<LikelihoodModel> make_tiny_model(const TinyScenario &scenario);

} // namespace gpsmsec
