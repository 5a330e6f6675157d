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

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gpsmsec
{
    namespace
    {
        // substreams of Rng(seed, channel_index)
        constexpr std::uint64_t kStreamChannel = 0;
        constexpr std::uint64_t kStreamBobNoise = 10;
        constexpr std::uint64_t kStreamEveNoise = 11;

        constexpr std::size_t kMaxCoherentAlphabet = 4096;

        void check_pair(const PatternSet &patterns, std::size_t tau, std::size_t eps)
        {
            if (tau >= patterns.size() || eps >= patterns.size())
                throw std::invalid_argument("hypothesis index out of range.");
        }

        // y = signal * Omega_tau * payload + mix * w
        CVector observe(const ObservationModel &obs, const std::vector<std::size_t> &pattern, const CVector &payload,
                        Rng &rng)
        {
            CVector y = CVector::Zero(obs.signal.rows());
            for (std::size_t v = 0; v < pattern.size(); ++v)
                y.noalias() += obs.signal.col(static_cast<Eigen::Index>(pattern[v])) * payload(static_cast<Eigen::Index>(v));
            const CVector w = sample_complex_gaussian(rng, obs.n_noise(), obs.sigma2);
            if (obs.mix.size() == 0)
                y += w;
            else
                y.noalias() += obs.mix * w;
            return y;
        }

        void check_observation(const ObservationModel &obs, const PatternSet &patterns)
        {
            if (static_cast<std::size_t>(obs.signal.cols()) != patterns.n_rx)
                throw std::invalid_argument("observation model: signal matrix must have n_rx columns.");
            if (obs.mix.size() != 0 && obs.mix.rows() != obs.signal.rows())
                throw std::invalid_argument("observation model: noise mixing matrix has the wrong row count.");
            if (!(obs.sigma2 >= 0.0))
                throw std::invalid_argument("observation model: sigma2 must be non-negative.");
        }

        // V(k, i) = sum_v |g(i, C(k, v))|^2 + noise_i
        RMatrix pattern_variances(const CMatrix &g, const PatternSet &patterns, const RVector &noise)
        {
            RMatrix V(static_cast<Eigen::Index>(patterns.size()), g.rows());
            const RMatrix power = g.cwiseAbs2();
            for (std::size_t k = 0; k < patterns.size(); ++k)
            {
                auto row = V.row(static_cast<Eigen::Index>(k));
                row = noise.transpose();
                for (std::size_t a : patterns[k])
                    row += power.col(static_cast<Eigen::Index>(a)).transpose();
            }
            return V;
        }

        // ---------------------------------------------------------------------

        class CoherentModel final : public LikelihoodModel
        {
        public:
            CoherentModel(CMatrix points, double sigma2) : points_(std::move(points)), sigma2_(sigma2) {}

            std::size_t alphabet_size() const override { return std::size_t(points_.cols()); }

            void sample_log_theta(std::size_t tau, Rng &rng, std::span<double> out) const override
            {
                const auto t = static_cast<Eigen::Index>(tau);
                y_ = points_.col(t) + sample_complex_gaussian(rng, std::size_t(points_.rows()), sigma2_);
                const double inv = 1.0 / sigma2_;
                for (Eigen::Index e = 0; e < points_.cols(); ++e)
                    out[std::size_t(e)] = -(y_ - points_.col(e)).squaredNorm() * inv;
                const double ref = out[tau];
                for (double &v : out)
                    v -= ref;
            }

        private:
            CMatrix points_; // G * s for every super-symbol
            double sigma2_;
            mutable CVector y_;
        };

        class CasGeneralModel final : public LikelihoodModel
        {
        public:
            CasGeneralModel(ObservationModel obs, PatternSet patterns, const CMatrix &g_kernel, RVector sigma2_0)
                : obs_(std::move(obs)), patterns_(std::move(patterns)), sigma2_0_(std::move(sigma2_0))
            {
                check_observation(obs_, patterns_);
                if (patterns_.n_active != 1)
                    throw UnsupportedModeError("CAS kernel with a general equivalent channel needs n_active == 1; "
                                               "use the identity-structured kernel.");
                if (sigma2_0_.size() != g_kernel.rows() || g_kernel.rows() != obs_.signal.rows())
                    throw std::invalid_argument("CAS general model: dimension mismatch.");
                lambda_.resize(static_cast<Eigen::Index>(patterns_.size()), g_kernel.rows());
                for (std::size_t k = 0; k < patterns_.size(); ++k)
                    for (Eigen::Index i = 0; i < g_kernel.rows(); ++i)
                        lambda_(static_cast<Eigen::Index>(k), i) =
                            std::norm(g_kernel(i, static_cast<Eigen::Index>(patterns_[k][0]))) / sigma2_0_(i);
            }

            std::size_t alphabet_size() const override { return patterns_.size(); }

            void sample_log_theta(std::size_t tau, Rng &rng, std::span<double> out) const override
            {
                const CVector e = sample_unit_circle(rng, 1);
                const CVector y = observe(obs_, patterns_[tau], e, rng);
                for (std::size_t k = 0; k < patterns_.size(); ++k)
                {
                    double q = 0.0;
                    for (Eigen::Index i = 0; i < y.size(); ++i)
                        q += noncentral_chi2_df2_logpdf(std::norm(y(i)) / sigma2_0_(i),
                                                        lambda_(static_cast<Eigen::Index>(k), i))
                                 .value;
                    out[k] = q;
                }
                const double ref = out[tau];
                for (double &v : out)
                    v -= ref;
            }

        private:
            ObservationModel obs_;
            PatternSet patterns_;
            RVector sigma2_0_;
            RMatrix lambda_;
        };

        class CasIdentityModel final : public LikelihoodModel
        {
        public:
            CasIdentityModel(ObservationModel obs, PatternSet patterns, double beta, RVector sigma2_0)
                : obs_(std::move(obs)), patterns_(std::move(patterns)), sigma2_0_(std::move(sigma2_0))
            {
                check_observation(obs_, patterns_);
                if (static_cast<std::size_t>(obs_.signal.rows()) != patterns_.n_rx ||
                    static_cast<std::size_t>(sigma2_0_.size()) != patterns_.n_rx)
                    throw std::invalid_argument("CAS identity model: observation must have n_rx entries.");
                lambda_active_ = (beta / double(patterns_.n_active)) * sigma2_0_.cwiseInverse();
            }

            std::size_t alphabet_size() const override { return patterns_.size(); }

            void sample_log_theta(std::size_t tau, Rng &rng, std::span<double> out) const override
            {
                const CVector e = sample_unit_circle(rng, patterns_.n_active);
                const CVector y = observe(obs_, patterns_[tau], e, rng);
                // entries outside both patterns cancel, so only the active-vs-idle
                // log-likelihood difference per antenna is needed
                gain_.resize(y.size());
                for (Eigen::Index i = 0; i < y.size(); ++i)
                {
                    const double x = std::norm(y(i)) / sigma2_0_(i);
                    gain_(i) = noncentral_chi2_df2_logpdf(x, lambda_active_(i)).value -
                               noncentral_chi2_df2_logpdf(x, 0.0).value;
                }
                for (std::size_t k = 0; k < patterns_.size(); ++k)
                {
                    double q = 0.0;
                    for (std::size_t a : patterns_[k])
                        q += gain_(static_cast<Eigen::Index>(a));
                    out[k] = q;
                }
                const double ref = out[tau];
                for (double &v : out)
                    v -= ref;
            }

        private:
            ObservationModel obs_;
            PatternSet patterns_;
            RVector sigma2_0_;
            RVector lambda_active_;
            mutable RVector gain_;
        };

        // Scores zero-mean Gaussian hypotheses with diagonal variances V(k, i).
        void score_diagonal_gaussian(const RMatrix &V, const RMatrix &log_v, const CVector &y, std::size_t tau,
                                     std::span<double> out)
        {
            for (Eigen::Index k = 0; k < V.rows(); ++k)
            {
                double q = 0.0;
                for (Eigen::Index i = 0; i < y.size(); ++i)
                    q += std::norm(y(i)) / V(k, i) + log_v(k, i);
                out[std::size_t(k)] = q;
            }
            // ln Theta(eps, tau) = q_tau - q_eps
            const double ref = out[tau];
            for (double &v : out)
                v = ref - v;
        }

        class GasModel final : public LikelihoodModel
        {
        public:
            GasModel(ObservationModel obs, PatternSet patterns, const CMatrix &g_kernel, const RVector &noise_variance)
                : obs_(std::move(obs)), patterns_(std::move(patterns))
            {
                check_observation(obs_, patterns_);
                if (noise_variance.size() != g_kernel.rows() || g_kernel.rows() != obs_.signal.rows() ||
                    static_cast<std::size_t>(g_kernel.cols()) != patterns_.n_rx)
                    throw std::invalid_argument("GAS model: dimension mismatch.");
                V_ = pattern_variances(g_kernel, patterns_, noise_variance);
                log_v_ = V_.array().log().matrix();
            }

            std::size_t alphabet_size() const override { return patterns_.size(); }

            void sample_log_theta(std::size_t tau, Rng &rng, std::span<double> out) const override
            {
                const CVector n = sample_complex_gaussian(rng, patterns_.n_active, 1.0);
                const CVector y = observe(obs_, patterns_[tau], n, rng);
                score_diagonal_gaussian(V_, log_v_, y, tau, out);
            }

        private:
            ObservationModel obs_;
            PatternSet patterns_;
            RMatrix V_;
            RMatrix log_v_;
        };

        class DiagonalGaussianModel final : public LikelihoodModel
        {
        public:
            explicit DiagonalGaussianModel(RMatrix variances) : V_(std::move(variances))
            {
                if (V_.rows() == 0 || V_.cols() == 0 || !(V_.minCoeff() > 0.0))
                    throw std::invalid_argument("diagonal Gaussian model: variances must be positive.");
                log_v_ = V_.array().log().matrix();
            }

            std::size_t alphabet_size() const override { return std::size_t(V_.rows()); }

            void sample_log_theta(std::size_t tau, Rng &rng, std::span<double> out) const override
            {
                CVector y(V_.cols());
                for (Eigen::Index i = 0; i < V_.cols(); ++i)
                    y(i) = sample_complex_gaussian(rng, 1, V_(static_cast<Eigen::Index>(tau), i))(0);
                score_diagonal_gaussian(V_, log_v_, y, tau, out);
            }

        private:
            RMatrix V_;
            RMatrix log_v_;
        };

        double clamp_capacity(double bits, std::size_t alphabet_size)
        {
            return std::clamp(bits, 0.0, std::log2(double(alphabet_size)));
        }

        CapacityEstimate summarize(const std::vector<double> &values, std::size_t n_noise)
        {
            CapacityEstimate est;
            est.n_channels = values.size();
            est.n_noise = n_noise;
            if (values.empty())
                return est;
            double sum = 0.0;
            for (double v : values)
                sum += v;
            est.bits = sum / double(values.size());
            if (values.size() > 1)
            {
                double ss = 0.0;
                for (double v : values)
                    ss += (v - est.bits) * (v - est.bits);
                est.std_err = std::sqrt(ss / double(values.size() - 1) / double(values.size()));
            }
            return est;
        }
    } // namespace

    // -------------------------------------------------------------------------

    NoiseSpec NoiseSpec::from_snr_db(double snr_db)
    {
        NoiseSpec n;
        n.snr_db = snr_db;
        n.sigma2_bob = std::pow(10.0, -snr_db / 10.0);
        n.sigma2_eve = n.sigma2_bob;
        return n;
    }

    void McBudget::validate() const
    {
        if (n_channels < 1 || n_noise < 1)
            throw std::invalid_argument("McBudget: n_channels and n_noise must be at least 1.");
    }

    std::vector<double> SecrecyResult::per_channel_secrecy() const
    {
        std::vector<double> out(per_channel_bob.size());
        for (std::size_t c = 0; c < out.size(); ++c)
            out[c] = per_channel_bob[c] - (c < per_channel_eve.size() ? per_channel_eve[c] : 0.0);
        return out;
    }

    LogProb log_theta_coherent(const CMatrix &g, const CVector &s_tau, const CVector &s_eps, const CVector &w,
                               double sigma2)
    {
        if (g.cols() != s_tau.size() || g.cols() != s_eps.size() || g.rows() != w.size())
            throw std::invalid_argument("log_theta_coherent: dimensions do not conform.");
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("log_theta_coherent: sigma2 must be positive.");
        const CVector d = g * (s_tau - s_eps) + w;
        return {(-d.squaredNorm() + w.squaredNorm()) / sigma2};
    }

    RVector noncoherent_receive(const CMatrix &g, const std::vector<std::size_t> &pattern, const CVector &payload,
                                const CVector &w)
    {
        if (static_cast<std::size_t>(payload.size()) != pattern.size() || w.size() != g.rows())
            throw std::invalid_argument("noncoherent_receive: dimensions do not conform.");
        CVector y = w;
        for (std::size_t v = 0; v < pattern.size(); ++v)
        {
            if (static_cast<Eigen::Index>(pattern[v]) >= g.cols())
                throw std::invalid_argument("noncoherent_receive: pattern index out of range.");
            y.noalias() += g.col(static_cast<Eigen::Index>(pattern[v])) * payload(static_cast<Eigen::Index>(v));
        }
        return y.cwiseAbs2();
    }

    LogProb log_theta_cas_general(const CMatrix &g, const RVector &r, const PatternSet &patterns, std::size_t tau,
                                  std::size_t eps, double sigma2_0)
    {
        if (patterns.n_active != 1)
            throw UnsupportedModeError("log_theta_cas_general: only tractable for n_active == 1; "
                                       "use log_theta_cas_identity for identity-structured channels.");
        check_pair(patterns, tau, eps);
        if (r.size() != g.rows())
            throw std::invalid_argument("log_theta_cas_general: r must have one entry per row of g.");
        if (!(sigma2_0 > 0.0))
            throw std::invalid_argument("log_theta_cas_general: sigma2_0 must be positive.");
        if (tau == eps)
            return {0.0};
        const auto ct = static_cast<Eigen::Index>(patterns[tau][0]);
        const auto ce = static_cast<Eigen::Index>(patterns[eps][0]);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < r.size(); ++i)
        {
            const double x = r(i) / sigma2_0;
            acc += noncentral_chi2_df2_logpdf(x, std::norm(g(i, ce)) / sigma2_0).value -
                   noncentral_chi2_df2_logpdf(x, std::norm(g(i, ct)) / sigma2_0).value;
        }
        return {acc};
    }

    LogProb log_theta_cas_identity(const RVector &r, std::size_t tau, std::size_t eps, double beta,
                                   std::size_t n_active, const RVector &sigma2_0, const PatternSet &patterns)
    {
        check_pair(patterns, tau, eps);
        if (static_cast<std::size_t>(r.size()) != patterns.n_rx || sigma2_0.size() != r.size())
            throw std::invalid_argument("log_theta_cas_identity: r and sigma2_0 need n_rx entries.");
        if (n_active == 0 || !(beta > 0.0))
            throw std::invalid_argument("log_theta_cas_identity: beta and n_active must be positive.");
        if (tau == eps)
            return {0.0};
        double acc = 0.0;
        for (Eigen::Index i = 0; i < r.size(); ++i)
        {
            const auto a = std::size_t(i);
            const double x = r(i) / sigma2_0(i);
            const double lambda = beta / (double(n_active) * sigma2_0(i));
            const double l_eps = patterns.contains(eps, a) ? lambda : 0.0;
            const double l_tau = patterns.contains(tau, a) ? lambda : 0.0;
            if (l_eps == l_tau)
                continue;
            acc += noncentral_chi2_df2_logpdf(x, l_eps).value - noncentral_chi2_df2_logpdf(x, l_tau).value;
        }
        return {acc};
    }

    LogProb log_theta_cas_identity(const RVector &r, std::size_t tau, std::size_t eps, double beta,
                                   std::size_t n_active, double sigma2_0, const PatternSet &patterns)
    {
        return log_theta_cas_identity(r, tau, eps, beta, n_active, RVector::Constant(r.size(), sigma2_0), patterns);
    }

    LogProb log_theta_gas(const CMatrix &g, const CVector &y, const PatternSet &patterns, std::size_t tau,
                          std::size_t eps, const RVector &noise_variance)
    {
        check_pair(patterns, tau, eps);
        if (y.size() != g.rows() || noise_variance.size() != g.rows() ||
            static_cast<std::size_t>(g.cols()) != patterns.n_rx)
            throw std::invalid_argument("log_theta_gas: dimensions do not conform.");
        if (tau == eps)
            return {0.0};
        double acc = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i)
        {
            double v_tau = noise_variance(i);
            double v_eps = noise_variance(i);
            for (std::size_t a : patterns[tau])
                v_tau += std::norm(g(i, static_cast<Eigen::Index>(a)));
            for (std::size_t a : patterns[eps])
                v_eps += std::norm(g(i, static_cast<Eigen::Index>(a)));
            const double p = std::norm(y(i));
            acc += p / v_tau - p / v_eps + std::log(v_tau) - std::log(v_eps);
        }
        return {acc};
    }

    LogProb log_theta_gas(const CMatrix &g, const CVector &y, const PatternSet &patterns, std::size_t tau,
                          std::size_t eps, double sigma2)
    {
        return log_theta_gas(g, y, patterns, tau, eps, RVector::Constant(g.rows(), sigma2));
    }

    EveProjection eve_projection(const CMatrix &h_bob, const CMatrix &h_eve)
    {
        if (h_bob.cols() != h_eve.cols())
            throw std::invalid_argument("eve_projection: Bob and Eve channels need the same transmit dimension.");
        if (h_eve.rows() < h_eve.cols())
            throw RankDeficientError("eve_projection: Eve has " + std::to_string(h_eve.rows()) +
                                     " antennas but needs at least n_tx = " + std::to_string(h_eve.cols()) +
                                     " to post-process.");
        EveProjection p;
        p.t = h_bob * left_pseudo_inverse(h_eve);
        p.amplification = p.t.rowwise().squaredNorm();
        return p;
    }

    PostProcessed eve_postprocess(const CMatrix &h_bob, const CMatrix &h_eve, const CVector &y_eve,
                                  double sigma2_eve)
    {
        if (y_eve.size() != h_eve.rows())
            throw std::invalid_argument("eve_postprocess: y_eve length does not match n_eve.");
        if (!(sigma2_eve >= 0.0))
            throw std::invalid_argument("eve_postprocess: sigma2_eve must be non-negative.");
        const EveProjection proj = eve_projection(h_bob, h_eve);
        PostProcessed out;
        out.y_tilde = proj.t * y_eve;
        out.noise_variance = sigma2_eve * proj.amplification;
        return out;
    }

    // -------------------------------------------------------------------------

    std::unique_ptr<LikelihoodModel> make_coherent_model(CMatrix g, const CMatrix &alphabet, double sigma2)
    {
        if (g.cols() != alphabet.rows())
            throw std::invalid_argument("make_coherent_model: channel and alphabet do not conform.");
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("make_coherent_model: sigma2 must be positive.");
        return std::make_unique<CoherentModel>(g * alphabet, sigma2);
    }

    std::unique_ptr<LikelihoodModel> make_cas_general_model(ObservationModel obs, PatternSet patterns,
                                                            const CMatrix &g_kernel, RVector sigma2_0)
    {
        return std::make_unique<CasGeneralModel>(std::move(obs), std::move(patterns), g_kernel, std::move(sigma2_0));
    }

    std::unique_ptr<LikelihoodModel> make_cas_identity_model(ObservationModel obs, PatternSet patterns, double beta,
                                                             RVector sigma2_0)
    {
        return std::make_unique<CasIdentityModel>(std::move(obs), std::move(patterns), beta, std::move(sigma2_0));
    }

    std::unique_ptr<LikelihoodModel> make_gas_model(ObservationModel obs, PatternSet patterns,
                                                    const CMatrix &g_kernel, RVector noise_variance)
    {
        return std::make_unique<GasModel>(std::move(obs), std::move(patterns), g_kernel, noise_variance);
    }

    std::unique_ptr<LikelihoodModel> make_diagonal_gaussian_model(RMatrix variances)
    {
        return std::make_unique<DiagonalGaussianModel>(std::move(variances));
    }

    double channel_dcmc(const LikelihoodModel &model, std::size_t n_noise, Rng &rng, double log_theta_bias)
    {
        const std::size_t size = model.alphabet_size();
        if (size == 0 || n_noise == 0)
            throw std::invalid_argument("channel_dcmc: empty alphabet or zero noise draws.");
        std::vector<double> log_theta(size);
        double acc = 0.0;
        for (std::size_t tau = 0; tau < size; ++tau)
            for (std::size_t d = 0; d < n_noise; ++d)
            {
                model.sample_log_theta(tau, rng, log_theta);
                if (log_theta_bias != 0.0)
                    for (double &v : log_theta)
                        v += log_theta_bias;
                acc += log_sum_exp(log_theta);
            }
        return std::log2(double(size)) - acc / (double(size) * double(n_noise) * kLn2);
    }

    CapacityEstimate dcmc_capacity(const ModelProvider &provider, std::size_t alphabet_size, const McBudget &budget,
                                   std::uint64_t seed, unsigned workers, double log_theta_bias)
    {
        budget.validate();
        std::vector<double> per_channel(budget.n_channels);
        detail::parallel_for(budget.n_channels, workers, [&](std::size_t c) {
            const auto model = provider(c);
            if (model->alphabet_size() != alphabet_size)
                throw std::invalid_argument("dcmc_capacity: model alphabet size differs from the declared size.");
            Rng rng = Rng(seed, c).substream(kStreamBobNoise);
            per_channel[c] = clamp_capacity(channel_dcmc(*model, budget.n_noise, rng, log_theta_bias), alphabet_size);
        });
        return summarize(per_channel, budget.n_noise);
    }

    // -------------------------------------------------------------------------

    std::string Scenario::is_valid() const
    {
        const auto dims_msg = dims.is_valid();
        if (!dims_msg.empty())
            return dims_msg;
        if (!(csit_sigma_i >= 0.0 && csit_sigma_i <= 1.0))
            return "csit_sigma_i must lie in [0, 1]";
        if (!(rho >= 0.0 && rho < 1.0))
            return "rho must lie in [0, 1)";
        if (mode == PayloadMode::Modulated)
        {
            if (m_ary < 2 || !is_power_of_two(m_ary))
                return "m_ary must be a power of two >= 2";
            const auto patterns = build_pattern_set(dims.n_rx, dims.n_active);
            const double log2_size = double(patterns.k_ant) + double(dims.n_active) * std::log2(double(m_ary));
            if (log2_size > std::log2(double(kMaxCoherentAlphabet)) + 1e-9)
                return "modulated super-alphabet has 2^" + std::to_string(int(log2_size)) +
                       " symbols; at most " + std::to_string(kMaxCoherentAlphabet) + " are supported";
        }
        if (mode == PayloadMode::Cas && csit_sigma_i > 0.0)
            return "CAS needs perfect CSIT (its kernels rely on the identity equivalent channel); "
                   "use GAS for CSIT-error studies";
        if (mode == PayloadMode::Cas && dims.n_active > 1 && eve == EveReceiver::Direct)
            return "CAS with n_active > 1 has no tractable direct Eve kernel";
        return "";
    }

    std::size_t Scenario::alphabet_size() const
    {
        const auto patterns = build_pattern_set(dims.n_rx, dims.n_active);
        return std::size_t(1) << k_eff(patterns, mode, m_ary);
    }

    SecrecyResult estimate_secrecy(const Scenario &scenario, const NoiseSpec &noise, const McBudget &budget,
                                   std::uint64_t seed, const SecrecyOptions &options)
    {
        const auto msg = scenario.is_valid();
        if (!msg.empty())
            throw std::invalid_argument("estimate_secrecy: " + msg);
        budget.validate();
        if (!(noise.sigma2_bob > 0.0) || !(noise.sigma2_eve > 0.0))
            throw std::invalid_argument("estimate_secrecy: noise variances must be positive.");

        const SystemDims &dims = scenario.dims;
        const PatternSet patterns = build_pattern_set(dims.n_rx, dims.n_active);
        const std::size_t alphabet = scenario.alphabet_size();
        const bool cas_single = scenario.mode == PayloadMode::Cas && dims.n_active == 1;
        const bool needs_postprocessing =
            (scenario.mode == PayloadMode::Gas && scenario.eve == EveReceiver::Auto) ||
            (scenario.mode == PayloadMode::Cas && dims.n_active > 1);
        const bool eve_blind = needs_postprocessing && dims.n_eve < dims.n_tx;

        CMatrix symbols;
        if (scenario.mode == PayloadMode::Modulated)
            symbols = modulated_alphabet(patterns, scenario.m_ary);

        const ChannelModel channel_model{dims, scenario.csit_sigma_i, CorrelationSpec{scenario.rho}};
        const std::size_t n_rx = dims.n_rx;
        const std::size_t n_eve = dims.n_eve;

        SecrecyResult result;
        result.eve_blind = eve_blind;
        result.per_channel_bob.assign(budget.n_channels, 0.0);
        result.per_channel_eve.assign(budget.n_channels, 0.0);

        detail::parallel_for(budget.n_channels, options.workers, [&](std::size_t c) {
            const Rng base(seed, c);
            const ChannelRealization ch = draw_channel(channel_model, base.substream(kStreamChannel));
            const Precoder pre = ci_precoder(ch.h_bob_alice_view);
            const CMatrix g_bob = equivalent_channel(ch.h_bob, pre, dims.n_active);
            const CMatrix g_eve = equivalent_channel(ch.h_eve, pre, dims.n_active);

            std::unique_ptr<LikelihoodModel> bob;
            std::unique_ptr<LikelihoodModel> eve;
            switch (scenario.mode)
            {
            case PayloadMode::Modulated:
                bob = make_coherent_model(g_bob, symbols, noise.sigma2_bob);
                eve = make_coherent_model(g_eve, symbols, noise.sigma2_eve);
                break;
            case PayloadMode::Cas:
                if (cas_single)
                {
                    bob = make_cas_general_model(ObservationModel{g_bob, {}, noise.sigma2_bob}, patterns, g_bob,
                                                 RVector::Constant(Eigen::Index(n_rx), noise.sigma2_bob_0()));
                    eve = make_cas_general_model(ObservationModel{g_eve, {}, noise.sigma2_eve}, patterns, g_eve,
                                                 RVector::Constant(Eigen::Index(n_eve), noise.sigma2_eve_0()));
                }
                else
                {
                    bob = make_cas_identity_model(ObservationModel{g_bob, {}, noise.sigma2_bob}, patterns, pre.beta,
                                                  RVector::Constant(Eigen::Index(n_rx), noise.sigma2_bob_0()));
                    if (!eve_blind)
                    {
                        const EveProjection proj = eve_projection(ch.h_bob, ch.h_eve);
                        eve = make_cas_identity_model(ObservationModel{proj.t * g_eve, proj.t, noise.sigma2_eve},
                                                      patterns, pre.beta,
                                                      0.5 * noise.sigma2_eve * proj.amplification);
                    }
                }
                break;
            case PayloadMode::Gas:
                bob = make_gas_model(ObservationModel{g_bob, {}, noise.sigma2_bob}, patterns, g_bob,
                                     RVector::Constant(Eigen::Index(n_rx), noise.sigma2_bob));
                if (scenario.eve == EveReceiver::Direct)
                {
                    eve = make_gas_model(ObservationModel{g_eve, {}, noise.sigma2_eve}, patterns, g_eve,
                                         RVector::Constant(Eigen::Index(n_eve), noise.sigma2_eve));
                }
                else if (!eve_blind)
                {
                    // Eve's projected observation carries Bob's signal part exactly
                    const EveProjection proj = eve_projection(ch.h_bob, ch.h_eve);
                    eve = make_gas_model(ObservationModel{proj.t * g_eve, proj.t, noise.sigma2_eve}, patterns, g_bob,
                                         noise.sigma2_eve * proj.amplification);
                }
                break;
            }

            Rng bob_rng = base.substream(kStreamBobNoise);
            result.per_channel_bob[c] =
                clamp_capacity(channel_dcmc(*bob, budget.n_noise, bob_rng, options.log_theta_bias), alphabet);
            if (eve)
            {
                Rng eve_rng = base.substream(kStreamEveNoise);
                result.per_channel_eve[c] =
                    clamp_capacity(channel_dcmc(*eve, budget.n_noise, eve_rng, options.log_theta_bias), alphabet);
            }
        });

        result.c_bob = summarize(result.per_channel_bob, budget.n_noise);
        result.c_eve = summarize(result.per_channel_eve, budget.n_noise);
        result.c_sec = result.c_bob.bits - result.c_eve.bits;
        return result;
    }

    std::vector<std::pair<double, double>> outage_cdf(std::span<const double> samples, std::size_t n_thresholds)
    {
        if (samples.empty())
            throw std::invalid_argument("outage_cdf: no samples.");
        if (n_thresholds < 2)
            throw std::invalid_argument("outage_cdf: need at least two thresholds.");
        std::vector<double> sorted(samples.begin(), samples.end());
        std::sort(sorted.begin(), sorted.end());
        const double lo = sorted.front();
        const double hi = sorted.back();
        const double n = double(sorted.size());

        std::vector<std::pair<double, double>> cdf;
        if (lo == hi)
        {
            cdf.emplace_back(lo, 1.0);
            return cdf;
        }
        cdf.reserve(n_thresholds);
        for (std::size_t j = 0; j < n_thresholds; ++j)
        {
            const double t = (j + 1 == n_thresholds) ? hi : lo + (hi - lo) * double(j) / double(n_thresholds - 1);
            const auto count = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
            cdf.emplace_back(t, double(count) / n);
        }
        return cdf;
    }

} // namespace gpsmsec
