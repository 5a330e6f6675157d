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

// Deterministic capacity of tiny instances by tensor quadrature.

#include "gpsmsec/secrecy.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace gpsmsec
{
    namespace
    {
        constexpr std::size_t kMaxObs = 2;
        constexpr std::size_t kMaxAlphabet = 4;

        struct Rule
        {
            std::vector<double> nodes;
            std::vector<double> weights;
        };

        // Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix,
        // weights are mu0 times the squared first eigenvector components.
        Rule golub_welsch(const RVector &diag, const RVector &off, double mu0)
        {
            const Eigen::Index n = diag.size();
            RMatrix j = RMatrix::Zero(n, n);
            j.diagonal() = diag;
            for (Eigen::Index k = 0; k + 1 < n; ++k)
                j(k, k + 1) = j(k + 1, k) = off(k);
            Eigen::SelfAdjointEigenSolver<RMatrix> es(j);
            Rule r;
            for (Eigen::Index k = 0; k < n; ++k)
            {
                r.nodes.push_back(es.eigenvalues()(k));
                r.weights.push_back(mu0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k));
            }
            return r;
        }

        // weight exp(-t^2) on the real line
        Rule gauss_hermite(std::size_t n)
        {
            RVector diag = RVector::Zero(Eigen::Index(n));
            RVector off(Eigen::Index(n > 0 ? n - 1 : 0));
            for (Eigen::Index k = 0; k < off.size(); ++k)
                off(k) = std::sqrt(double(k + 1) / 2.0);
            return golub_welsch(diag, off, std::sqrt(kPi));
        }

        // weight exp(-u) on [0, inf)
        Rule gauss_laguerre(std::size_t n)
        {
            RVector diag(static_cast<Eigen::Index>(n));
            RVector off(Eigen::Index(n > 0 ? n - 1 : 0));
            for (Eigen::Index k = 0; k < diag.size(); ++k)
                diag(k) = 2.0 * double(k) + 1.0;
            for (Eigen::Index k = 0; k < off.size(); ++k)
                off(k) = double(k + 1);
            return golub_welsch(diag, off, 1.0);
        }

        // Visits every point of the tensor grid of `dims` copies of `rule`.
        template <class F>
        void for_each_tensor_point(const Rule &rule, std::size_t dims, F &&f)
        {
            const std::size_t n = rule.nodes.size();
            std::vector<std::size_t> idx(dims, 0);
            std::vector<double> point(dims);
            for (;;)
            {
                double w = 1.0;
                for (std::size_t d = 0; d < dims; ++d)
                {
                    point[d] = rule.nodes[idx[d]];
                    w *= rule.weights[idx[d]];
                }
                f(point, w);
                std::size_t d = 0;
                while (d < dims && ++idx[d] == n)
                    idx[d++] = 0;
                if (d == dims)
                    return;
            }
        }

        void check_tiny(const TinyScenario &sc)
        {
            if (sc.alphabet_size() < 1 || sc.n_obs() < 1)
                throw std::invalid_argument("tiny scenario is empty.");
            if (sc.alphabet_size() > kMaxAlphabet || sc.n_obs() > kMaxObs)
                throw UnsupportedModeError("brute-force oracle handles at most " + std::to_string(kMaxObs) +
                                           " receive entries and " + std::to_string(kMaxAlphabet) + " hypotheses.");
            if (sc.kind == TinyScenario::Kind::Coherent)
            {
                if (sc.g.cols() != sc.alphabet.rows())
                    throw std::invalid_argument("tiny scenario: g and alphabet do not conform.");
                if (!(sc.sigma2 > 0.0))
                    throw std::invalid_argument("tiny scenario: sigma2 must be positive.");
            }
            else if (!(sc.variances.minCoeff() > 0.0))
                throw std::invalid_argument("tiny scenario: variances must be positive.");
        }

        std::size_t default_nodes(std::size_t n_obs, const QuadratureGrid &grid)
        {
            if (grid.nodes_per_dim != 0)
                return grid.nodes_per_dim;
            return n_obs == 1 ? 48 : 20;
        }

        double coherent_dcmc(const TinyScenario &sc, std::size_t nodes)
        {
            const std::size_t size = sc.alphabet_size();
            const std::size_t n = sc.n_obs();
            const CMatrix points = sc.g * sc.alphabet;
            const Rule rule = gauss_hermite(nodes);
            // w = sqrt(sigma2) * t, each real part N(0, sigma2 / 2) with t ~ exp(-t^2)/sqrt(pi)
            const double scale = std::sqrt(sc.sigma2);
            const double norm = std::pow(kPi, -double(n));
            std::vector<double> terms(size);
            double acc = 0.0;
            for (std::size_t tau = 0; tau < size; ++tau)
            {
                for_each_tensor_point(rule, 2 * n, [&](const std::vector<double> &t, double w) {
                    CVector noise(static_cast<Eigen::Index>(n));
                    for (std::size_t i = 0; i < n; ++i)
                        noise(Eigen::Index(i)) = cplx(scale * t[2 * i], scale * t[2 * i + 1]);
                    const double ref = noise.squaredNorm();
                    for (std::size_t e = 0; e < size; ++e)
                    {
                        const CVector d = points.col(Eigen::Index(tau)) - points.col(Eigen::Index(e)) + noise;
                        terms[e] = (ref - d.squaredNorm()) / sc.sigma2;
                    }
                    acc += w * norm * log_sum_exp(terms);
                });
            }
            return std::log2(double(size)) - acc / (double(size) * kLn2);
        }

        double diagonal_dcmc(const TinyScenario &sc, std::size_t nodes)
        {
            const std::size_t size = sc.alphabet_size();
            const std::size_t n = sc.n_obs();
            const RMatrix &V = sc.variances;
            const Rule rule = gauss_laguerre(nodes);
            // |y_i|^2 / V(tau, i) is exponential with unit mean
            std::vector<double> terms(size);
            double acc = 0.0;
            for (std::size_t tau = 0; tau < size; ++tau)
            {
                const auto t = Eigen::Index(tau);
                for_each_tensor_point(rule, n, [&](const std::vector<double> &u, double w) {
                    for (std::size_t e = 0; e < size; ++e)
                    {
                        double v = 0.0;
                        for (std::size_t i = 0; i < n; ++i)
                        {
                            const auto ii = Eigen::Index(i);
                            const double p = u[i] * V(t, ii);
                            const double ve = V(Eigen::Index(e), ii);
                            v += p / V(t, ii) - p / ve + std::log(V(t, ii)) - std::log(ve);
                        }
                        terms[e] = v;
                    }
                    acc += w * log_sum_exp(terms);
                });
            }
            return std::log2(double(size)) - acc / (double(size) * kLn2);
        }
    } // namespace

    std::size_t TinyScenario::alphabet_size() const
    {
        return kind == Kind::Coherent ? std::size_t(alphabet.cols()) : std::size_t(variances.rows());
    }

    std::size_t TinyScenario::n_obs() const
    {
        return kind == Kind::Coherent ? std::size_t(g.rows()) : std::size_t(variances.cols());
    }

    double brute_force_dcmc(const TinyScenario &scenario, const QuadratureGrid &grid)
    {
        check_tiny(scenario);
        const std::size_t nodes = default_nodes(scenario.n_obs(), grid);
        if (nodes < 2 || nodes > 200)
            throw std::invalid_argument("brute_force_dcmc: nodes_per_dim must lie in [2, 200].");
        return scenario.kind == TinyScenario::Kind::Coherent ? coherent_dcmc(scenario, nodes)
                                                              : diagonal_dcmc(scenario, nodes);
    }

    std::unique_ptr<LikelihoodModel> make_tiny_model(const TinyScenario &scenario)
    {
        check_tiny(scenario);
        if (scenario.kind == TinyScenario::Kind::Coherent)
            return make_coherent_model(scenario.g, scenario.alphabet, scenario.sigma2);
        return make_diagonal_gaussian_model(scenario.variances);
    }

} // namespace gpsmsec
