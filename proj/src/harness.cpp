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

#include "gpsmsec/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace gpsmsec
{
    using json = nlohmann::ordered_json;

    namespace
    {
        std::string fmt17(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string fmt_short(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%g", v);
            return buf;
        }

        const char *mode_name(PayloadMode m)
        {
            switch (m)
            {
            case PayloadMode::Modulated:
                return "gpsm";
            case PayloadMode::Cas:
                return "cas";
            case PayloadMode::Gas:
                return "gas";
            }
            return "?";
        }

        PayloadMode parse_mode(const std::string &s)
        {
            if (s == "gpsm")
                return PayloadMode::Modulated;
            if (s == "cas")
                return PayloadMode::Cas;
            if (s == "gas")
                return PayloadMode::Gas;
            throw ConfigError("mode must be one of gpsm, cas, gas (got \"" + s + "\")");
        }

        const char *eve_name(EveReceiver e) { return e == EveReceiver::Direct ? "direct" : "auto"; }

        EveReceiver parse_eve(const std::string &s)
        {
            if (s == "auto")
                return EveReceiver::Auto;
            if (s == "direct")
                return EveReceiver::Direct;
            throw ConfigError("eve_receiver must be auto or direct (got \"" + s + "\")");
        }

        const std::set<std::string> &known_fields()
        {
            static const std::set<std::string> fields{
                "name",         "mode",        "n_tx",       "n_rx",          "n_active",       "n_eve",
                "m_ary",        "snr_grid_db", "csit_sigma_i", "rho",         "n_channels",     "n_noise",
                "seed",         "workers",     "eve_receiver", "sigma_list",  "rho_list",       "n_eve_list",
                "outage_snr_db", "scatter_snr_db", "n_scatter"};
            return fields;
        }

        json config_object(const ExperimentConfig &c)
        {
            json j;
            j["name"] = c.name;
            j["mode"] = mode_name(c.mode);
            j["n_tx"] = c.dims.n_tx;
            j["n_rx"] = c.dims.n_rx;
            j["n_active"] = c.dims.n_active;
            j["n_eve"] = c.dims.n_eve;
            j["m_ary"] = c.m_ary;
            j["snr_grid_db"] = c.snr_grid_db;
            j["csit_sigma_i"] = c.csit_sigma_i;
            j["rho"] = c.rho;
            j["n_channels"] = c.budget.n_channels;
            j["n_noise"] = c.budget.n_noise;
            j["seed"] = c.seed;
            j["workers"] = c.workers;
            j["eve_receiver"] = eve_name(c.eve_receiver);
            j["sigma_list"] = c.sigma_list;
            j["rho_list"] = c.rho_list;
            j["n_eve_list"] = c.n_eve_list;
            j["outage_snr_db"] = c.outage_snr_db;
            j["scatter_snr_db"] = c.scatter_snr_db;
            j["n_scatter"] = c.n_scatter;
            return j;
        }

        template <class T>
        T get_unsigned(const json &v, const std::string &key)
        {
            if (!v.is_number_unsigned())
                throw ConfigError(key + " must be a non-negative integer");
            return v.get<T>();
        }

        double get_real(const json &v, const std::string &key)
        {
            if (!v.is_number())
                throw ConfigError(key + " must be a number");
            return v.get<double>();
        }

        std::string get_string(const json &v, const std::string &key)
        {
            if (!v.is_string())
                throw ConfigError(key + " must be a string");
            return v.get<std::string>();
        }

        std::vector<double> get_real_list(const json &v, const std::string &key)
        {
            if (!v.is_array())
                throw ConfigError(key + " must be an array of numbers");
            std::vector<double> out;
            for (const auto &e : v)
                out.push_back(get_real(e, key + "[]"));
            return out;
        }

        ExperimentConfig config_from_object(const json &j)
        {
            if (!j.is_object())
                throw ConfigError("config must be a JSON object");
            ExperimentConfig c;
            for (const auto &[key, v] : j.items())
            {
                if (!known_fields().count(key))
                    throw ConfigError("unknown config field \"" + key + "\"");
                if (key == "name")
                    c.name = get_string(v, key);
                else if (key == "mode")
                    c.mode = parse_mode(get_string(v, key));
                else if (key == "n_tx")
                    c.dims.n_tx = get_unsigned<std::size_t>(v, key);
                else if (key == "n_rx")
                    c.dims.n_rx = get_unsigned<std::size_t>(v, key);
                else if (key == "n_active")
                    c.dims.n_active = get_unsigned<std::size_t>(v, key);
                else if (key == "n_eve")
                    c.dims.n_eve = get_unsigned<std::size_t>(v, key);
                else if (key == "m_ary")
                    c.m_ary = get_unsigned<unsigned>(v, key);
                else if (key == "snr_grid_db")
                    c.snr_grid_db = get_real_list(v, key);
                else if (key == "csit_sigma_i")
                    c.csit_sigma_i = get_real(v, key);
                else if (key == "rho")
                    c.rho = get_real(v, key);
                else if (key == "n_channels")
                    c.budget.n_channels = get_unsigned<std::size_t>(v, key);
                else if (key == "n_noise")
                    c.budget.n_noise = get_unsigned<std::size_t>(v, key);
                else if (key == "seed")
                    c.seed = get_unsigned<std::uint64_t>(v, key);
                else if (key == "workers")
                    c.workers = get_unsigned<unsigned>(v, key);
                else if (key == "eve_receiver")
                    c.eve_receiver = parse_eve(get_string(v, key));
                else if (key == "sigma_list")
                    c.sigma_list = get_real_list(v, key);
                else if (key == "rho_list")
                    c.rho_list = get_real_list(v, key);
                else if (key == "n_eve_list")
                {
                    if (!v.is_array())
                        throw ConfigError("n_eve_list must be an array of integers");
                    c.n_eve_list.clear();
                    for (const auto &e : v)
                        c.n_eve_list.push_back(get_unsigned<std::size_t>(e, "n_eve_list[]"));
                }
                else if (key == "outage_snr_db")
                    c.outage_snr_db = get_real(v, key);
                else if (key == "scatter_snr_db")
                    c.scatter_snr_db = get_real(v, key);
                else if (key == "n_scatter")
                    c.n_scatter = get_unsigned<std::size_t>(v, key);
            }
            return c;
        }

        json record_object(const ResultRecord &r)
        {
            json j;
            j["version"] = r.version;
            j["tag"] = r.tag;
            j["config"] = config_object(r.config);
            j["eve_blind"] = r.eve_blind;
            j["wall_clock_s"] = r.wall_clock_s;
            json rows = json::array();
            for (const auto &row : r.rows)
                rows.push_back({{"snr_db", row.snr_db},
                                {"c_bob", row.c_bob},
                                {"c_eve", row.c_eve},
                                {"c_sec", row.c_sec},
                                {"se_bob", row.se_bob},
                                {"se_eve", row.se_eve}});
            j["rows"] = rows;
            if (!r.outage.empty())
            {
                j["outage_snr_db"] = r.outage_snr_db;
                j["secrecy_samples"] = r.secrecy_samples;
                json cdf = json::array();
                for (const auto &[t, p] : r.outage)
                    cdf.push_back({{"threshold", t}, {"probability", p}});
                j["outage"] = cdf;
            }
            return j;
        }

        json matrix_json(const CMatrix &m)
        {
            json rows = json::array();
            for (Eigen::Index i = 0; i < m.rows(); ++i)
            {
                json row = json::array();
                for (Eigen::Index k = 0; k < m.cols(); ++k)
                    row.push_back({m(i, k).real(), m(i, k).imag()});
                rows.push_back(row);
            }
            return rows;
        }

        json matrix_json(const RMatrix &m)
        {
            json rows = json::array();
            for (Eigen::Index i = 0; i < m.rows(); ++i)
            {
                json row = json::array();
                for (Eigen::Index k = 0; k < m.cols(); ++k)
                    row.push_back(m(i, k));
                rows.push_back(row);
            }
            return rows;
        }

        void require_gas(const ExperimentConfig &c, const char *what)
        {
            if (c.mode != PayloadMode::Gas)
                throw UnsupportedModeError(std::string(what) + " runs in GAS mode only; mode \"" + mode_name(c.mode) +
                                           "\" is unsupported here (CAS kernels need perfect CSIT and an "
                                           "uncorrelated identity channel)");
        }

        double seconds_since(std::chrono::steady_clock::time_point t0)
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }

        void fill_outage(ResultRecord &rec, const ExperimentConfig &c, double snr_db)
        {
            const SecrecyResult res =
                estimate_secrecy(c.scenario(), NoiseSpec::from_snr_db(snr_db), c.budget, c.seed, {c.workers, 0.0});
            rec.outage_snr_db = snr_db;
            rec.secrecy_samples = res.per_channel_secrecy();
            rec.outage = outage_cdf(rec.secrecy_samples);
        }
    } // namespace

    // -------------------------------------------------------------------------

    std::vector<double> ExperimentConfig::default_snr_grid() { return snr_range(-10.0, 40.0, 2.0); }

    std::string ExperimentConfig::is_valid() const
    {
        if (name.empty())
            return "name must not be empty";
        for (char ch : name)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'))
                return "name may only contain letters, digits, '_', '-' and '.'";
        const auto scenario_msg = scenario().is_valid();
        if (!scenario_msg.empty())
            return scenario_msg;
        if (snr_grid_db.empty())
            return "snr_grid_db must not be empty";
        for (double s : snr_grid_db)
            if (!std::isfinite(s))
                return "snr_grid_db entries must be finite";
        if (budget.n_channels < 1 || budget.n_noise < 1)
            return "n_channels and n_noise must be at least 1";
        if (workers < 1 || workers > 1024)
            return "workers must lie in [1, 1024]";
        for (double s : sigma_list)
            if (!(s >= 0.0 && s <= 1.0))
                return "sigma_list entries must lie in [0, 1]";
        for (double r : rho_list)
            if (!(r >= 0.0 && r < 1.0))
                return "rho_list entries must lie in [0, 1)";
        for (std::size_t n : n_eve_list)
            if (n < 1)
                return "n_eve_list entries must be at least 1";
        if (!std::isfinite(outage_snr_db) || !std::isfinite(scatter_snr_db))
            return "outage_snr_db and scatter_snr_db must be finite";
        if (n_scatter < 1)
            return "n_scatter must be at least 1";
        return "";
    }

    void ExperimentConfig::validate() const
    {
        const auto msg = is_valid();
        if (!msg.empty())
            throw ConfigError("invalid config: " + msg);
    }

    Scenario ExperimentConfig::scenario() const
    {
        Scenario s;
        s.mode = mode;
        s.dims = dims;
        s.m_ary = m_ary;
        s.csit_sigma_i = csit_sigma_i;
        s.rho = rho;
        s.eve = eve_receiver;
        return s;
    }

    std::vector<double> snr_range(double start, double stop, double step)
    {
        if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step))
            throw ConfigError("SNR range needs finite start/stop and a positive step");
        if (stop < start)
            throw ConfigError("SNR range stop must not be below start");
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (n > 100000)
            throw ConfigError("SNR range has too many points");
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = start + double(i) * step;
        return out;
    }

    std::string config_to_json(const ExperimentConfig &config) { return config_object(config).dump(2); }

    ExperimentConfig config_from_json(std::string_view text)
    {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded())
            throw ConfigError("config is not valid JSON");
        return config_from_object(j);
    }

    void config_set_field(ExperimentConfig &config, std::string_view field, std::string_view value)
    {
        const std::string key(field);
        if (!known_fields().count(key))
            throw ConfigError("unknown config field \"" + key + "\"");
        json v = json::parse(value, nullptr, false);
        if (v.is_discarded())
            v = std::string(value);
        json j = config_object(config);
        j[key] = v;
        config = config_from_object(j);
    }

    std::string config_get_field(const ExperimentConfig &config, std::string_view field)
    {
        const std::string key(field);
        if (!known_fields().count(key))
            throw ConfigError("unknown config field \"" + key + "\"");
        return config_object(config).at(key).dump();
    }

    // -------------------------------------------------------------------------

    ResultRecord cmd_capacity(const ExperimentConfig &config)
    {
        config.validate();
        const auto t0 = std::chrono::steady_clock::now();
        const Scenario scenario = config.scenario();
        ResultRecord rec;
        rec.config = config;
        for (double snr : config.snr_grid_db)
        {
            const SecrecyResult res = estimate_secrecy(scenario, NoiseSpec::from_snr_db(snr), config.budget,
                                                       config.seed, {config.workers, 0.0});
            rec.rows.push_back({snr, res.c_bob.bits, res.c_eve.bits, res.c_sec, res.c_bob.std_err, res.c_eve.std_err});
            rec.eve_blind = rec.eve_blind || res.eve_blind;
        }
        rec.wall_clock_s = seconds_since(t0);
        return rec;
    }

    std::vector<ResultRecord> cmd_sweep_csit(const ExperimentConfig &config, const std::vector<double> &sigma_list)
    {
        require_gas(config, "sweep-csit");
        config.validate();
        std::vector<ResultRecord> out;
        for (double s : sigma_list)
        {
            ExperimentConfig c = config;
            c.csit_sigma_i = s;
            c.validate();
            out.push_back(cmd_capacity(c));
            out.back().tag = "sigma" + fmt_short(s);
        }
        return out;
    }

    std::vector<ResultRecord> cmd_sweep_corr(const ExperimentConfig &config, const std::vector<double> &rho_list)
    {
        require_gas(config, "sweep-corr");
        config.validate();
        std::vector<ResultRecord> out;
        for (double r : rho_list)
        {
            ExperimentConfig c = config;
            c.rho = r;
            c.validate();
            out.push_back(cmd_capacity(c));
            out.back().tag = "rho" + fmt_short(r);
        }
        return out;
    }

    std::vector<ResultRecord> cmd_sweep_eve(const ExperimentConfig &config, const std::vector<std::size_t> &n_eve_list,
                                            double outage_snr_db)
    {
        require_gas(config, "sweep-eve");
        config.validate();
        if (!std::isfinite(outage_snr_db))
            throw ConfigError("outage SNR must be finite");
        std::vector<ResultRecord> out;
        for (std::size_t n : n_eve_list)
        {
            ExperimentConfig c = config;
            c.dims.n_eve = n;
            c.validate();
            const auto t0 = std::chrono::steady_clock::now();
            ResultRecord rec = cmd_capacity(c);
            rec.tag = "ne" + std::to_string(n);
            fill_outage(rec, c, outage_snr_db);
            rec.wall_clock_s = seconds_since(t0);
            out.push_back(std::move(rec));
        }
        return out;
    }

    ResultRecord cmd_outage(const ExperimentConfig &config, double snr_db)
    {
        config.validate();
        if (!std::isfinite(snr_db))
            throw ConfigError("outage SNR must be finite");
        const auto t0 = std::chrono::steady_clock::now();
        ResultRecord rec;
        rec.config = config;
        const SecrecyResult res = estimate_secrecy(config.scenario(), NoiseSpec::from_snr_db(snr_db), config.budget,
                                                   config.seed, {config.workers, 0.0});
        rec.rows.push_back({snr_db, res.c_bob.bits, res.c_eve.bits, res.c_sec, res.c_bob.std_err, res.c_eve.std_err});
        rec.eve_blind = res.eve_blind;
        rec.outage_snr_db = snr_db;
        rec.secrecy_samples = res.per_channel_secrecy();
        rec.outage = outage_cdf(rec.secrecy_samples);
        rec.wall_clock_s = seconds_since(t0);
        return rec;
    }

    std::vector<ScatterSample> cmd_scatter(const ExperimentConfig &config, std::size_t n_samples)
    {
        if (n_samples < 1)
            throw ConfigError("scatter needs at least one sample");
        SystemDims dims = config.dims;
        dims.n_active = 1;
        const auto msg = dims.is_valid();
        if (!msg.empty())
            throw ConfigError("invalid config: " + msg);
        if (dims.n_rx < 3)
            throw ConfigError("scatter needs n_rx >= 3 so that two antennas can be active");
        if (!std::isfinite(config.scatter_snr_db))
            throw ConfigError("scatter_snr_db must be finite");

        const Rng base(config.seed, 0);
        const ChannelRealization ch =
            draw_channel(ChannelModel{dims, 0.0, CorrelationSpec{config.rho}}, base.substream(0));
        const Precoder pre = ci_precoder(ch.h_bob_alice_view);
        const double sigma2 = NoiseSpec::from_snr_db(config.scatter_snr_db).sigma2_bob;

        struct Case
        {
            const char *name;
            PayloadMode mode;
            std::vector<std::size_t> pattern;
        };
        const std::vector<Case> cases{{"cas1", PayloadMode::Cas, {0}},
                                      {"cas2", PayloadMode::Cas, {0, 1}},
                                      {"gas", PayloadMode::Gas, {0, 1}}};

        std::vector<ScatterSample> out;
        out.reserve(cases.size() * n_samples * (dims.n_rx + dims.n_eve));
        for (std::size_t c = 0; c < cases.size(); ++c)
        {
            const Case &cs = cases[c];
            const std::size_t na = cs.pattern.size();
            const CMatrix g_bob = equivalent_channel(ch.h_bob, pre, na);
            const CMatrix g_eve = equivalent_channel(ch.h_eve, pre, na);
            Rng rng = base.substream(20 + c);
            for (std::size_t j = 0; j < n_samples; ++j)
            {
                const Payload payload = make_payload(rng, cs.mode, na, 2);
                CVector s = CVector::Zero(Eigen::Index(dims.n_rx));
                for (std::size_t v = 0; v < na; ++v)
                    s(Eigen::Index(cs.pattern[v])) = payload.values(Eigen::Index(v));
                const CVector y_bob = g_bob * s + sample_complex_gaussian(rng, dims.n_rx, sigma2);
                const CVector y_eve = g_eve * s + sample_complex_gaussian(rng, dims.n_eve, sigma2);
                for (Eigen::Index i = 0; i < y_bob.size(); ++i)
                    out.push_back({cs.name, "bob", std::size_t(i), y_bob(i)});
                for (Eigen::Index i = 0; i < y_eve.size(); ++i)
                    out.push_back({cs.name, "eve", std::size_t(i), y_eve(i)});
            }
        }
        return out;
    }

    // -------------------------------------------------------------------------

    bool OracleReport::passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const OracleCheck &c) { return c.passed; });
    }

    std::vector<std::pair<std::string, TinyScenario>> oracle_instances()
    {
        using Kind = TinyScenario::Kind;
        std::vector<std::pair<std::string, TinyScenario>> out;

        // binary input on a real-valued unit-variance AWGN channel per dimension
        TinyScenario bpsk;
        bpsk.g = CMatrix::Ones(1, 1);
        bpsk.alphabet.resize(1, 2);
        bpsk.alphabet << cplx(1.0, 0.0), cplx(-1.0, 0.0);
        bpsk.sigma2 = 2.0;
        out.emplace_back("bpsk_awgn_0db", bpsk);

        TinyScenario qpsk;
        qpsk.g = CMatrix::Ones(1, 1);
        qpsk.alphabet.resize(1, 4);
        const auto points = psk_constellation(4);
        for (Eigen::Index k = 0; k < 4; ++k)
            qpsk.alphabet(0, k) = points[std::size_t(k)];
        qpsk.sigma2 = 1.0;
        out.emplace_back("qpsk_awgn", qpsk);

        TinyScenario gpsm;
        gpsm.g.resize(2, 2);
        gpsm.g << cplx(0.9, 0.2), cplx(0.3, -0.4), cplx(-0.2, 0.5), cplx(1.1, -0.1);
        gpsm.alphabet = modulated_alphabet(build_pattern_set(2, 1), 2);
        gpsm.sigma2 = 0.5;
        out.emplace_back("gpsm_2x2_bpsk", gpsm);

        TinyScenario gas2;
        gas2.kind = Kind::DiagonalGaussian;
        gas2.variances.resize(2, 2);
        gas2.variances << 2.0, 0.5, 0.5, 2.0;
        out.emplace_back("gaussian_2hyp_2rx", gas2);

        TinyScenario gas4;
        gas4.kind = Kind::DiagonalGaussian;
        gas4.variances.resize(4, 2);
        gas4.variances << 3.0, 0.4, 0.4, 3.0, 1.5, 1.5, 0.4, 0.4;
        out.emplace_back("gaussian_4hyp_2rx", gas4);

        return out;
    }

    McBudget oracle_budget() { return McBudget{40, 2500}; }

    OracleReport cmd_oracle_check(const OracleOptions &options)
    {
        OracleReport report;
        const McBudget budget = oracle_budget();
        for (const auto &[name, inst] : oracle_instances())
        {
            const double exact = brute_force_dcmc(inst);
            const TinyScenario copy = inst;
            const CapacityEstimate mc = dcmc_capacity([&copy](std::size_t) { return make_tiny_model(copy); },
                                                      inst.alphabet_size(), budget, options.seed, options.workers,
                                                      options.log_theta_bias);
            OracleCheck chk;
            chk.name = "quadrature:" + name;
            chk.deviation = std::abs(mc.bits - exact);
            chk.tolerance = 3.0 * mc.std_err;
            chk.passed = chk.deviation <= chk.tolerance;
            json inst_json;
            inst_json["kind"] = inst.kind == TinyScenario::Kind::Coherent ? "coherent" : "diagonal_gaussian";
            if (inst.kind == TinyScenario::Kind::Coherent)
            {
                inst_json["g"] = matrix_json(inst.g);
                inst_json["alphabet"] = matrix_json(inst.alphabet);
                inst_json["sigma2"] = inst.sigma2;
            }
            else
                inst_json["variances"] = matrix_json(inst.variances);
            inst_json["quadrature_bits"] = exact;
            inst_json["mc_bits"] = mc.bits;
            inst_json["mc_std_err"] = mc.std_err;
            inst_json["n_channels"] = budget.n_channels;
            inst_json["n_noise"] = budget.n_noise;
            inst_json["seed"] = options.seed;
            inst_json["log_theta_bias"] = options.log_theta_bias;
            chk.instance = inst_json.dump();
            report.checks.push_back(std::move(chk));
        }

        if (options.include_direct_eve)
        {
            Scenario sc;
            sc.mode = PayloadMode::Gas;
            sc.dims = SystemDims{16, 8, 2, 16};
            sc.eve = EveReceiver::Direct;
            const McBudget direct_budget{};
            for (double snr : {0.0, 10.0, 20.0, 30.0})
            {
                const SecrecyResult res = estimate_secrecy(sc, NoiseSpec::from_snr_db(snr), direct_budget, options.seed,
                                                           {options.workers, options.log_theta_bias});
                OracleCheck chk;
                chk.name = "gas_direct_eve_zero:" + fmt_short(snr) + "dB";
                chk.deviation = std::abs(res.c_eve.bits);
                chk.tolerance = 0.05;
                chk.passed = chk.deviation <= chk.tolerance;
                json inst_json{{"mode", "gas"},
                               {"n_tx", 16},
                               {"n_rx", 8},
                               {"n_active", 2},
                               {"n_eve", 16},
                               {"eve_receiver", "direct"},
                               {"snr_db", snr},
                               {"n_channels", direct_budget.n_channels},
                               {"n_noise", direct_budget.n_noise},
                               {"seed", options.seed},
                               {"c_eve", res.c_eve.bits},
                               {"c_eve_std_err", res.c_eve.std_err},
                               {"log_theta_bias", options.log_theta_bias}};
                chk.instance = inst_json.dump();
                report.checks.push_back(std::move(chk));
            }
        }
        return report;
    }

    // -------------------------------------------------------------------------

    std::string capacity_csv(const ResultRecord &record)
    {
        std::string out = "# gpsmsec-capacity-csv v1\nsnr_db,c_bob,c_eve,c_sec,se_bob,se_eve\n";
        for (const auto &r : record.rows)
            out += fmt17(r.snr_db) + ',' + fmt17(r.c_bob) + ',' + fmt17(r.c_eve) + ',' + fmt17(r.c_sec) + ',' +
                   fmt17(r.se_bob) + ',' + fmt17(r.se_eve) + '\n';
        return out;
    }

    std::string outage_csv(const std::vector<ResultRecord> &records, bool with_n_eve)
    {
        std::string out = "# gpsmsec-outage-csv v1\n";
        out += with_n_eve ? "n_eve,threshold,probability\n" : "threshold,probability\n";
        for (const auto &rec : records)
            for (const auto &[t, p] : rec.outage)
            {
                if (with_n_eve)
                    out += std::to_string(rec.config.dims.n_eve) + ',';
                out += fmt17(t) + ',' + fmt17(p) + '\n';
            }
        return out;
    }

    std::string scatter_csv(const std::vector<ScatterSample> &samples)
    {
        std::string out = "# gpsmsec-scatter-csv v1\ncase,node,antenna,re,im\n";
        for (const auto &s : samples)
            out += s.case_name + ',' + s.node + ',' + std::to_string(s.antenna) + ',' + fmt17(s.value.real()) + ',' +
                   fmt17(s.value.imag()) + '\n';
        return out;
    }

    std::string record_json(const ResultRecord &record) { return record_object(record).dump(2); }

    std::string records_json(const std::vector<ResultRecord> &records)
    {
        json arr = json::array();
        for (const auto &r : records)
            arr.push_back(record_object(r));
        return arr.dump(2);
    }

    std::string report_text(const OracleReport &report)
    {
        std::ostringstream os;
        for (const auto &c : report.checks)
        {
            os << (c.passed ? "PASS " : "FAIL ") << c.name << " deviation=" << fmt_short(c.deviation)
               << " tolerance=" << fmt_short(c.tolerance) << '\n';
            if (!c.passed)
                os << "  replay: " << c.instance << '\n';
        }
        os << (report.passed() ? "oracle-check: all checks passed\n" : "oracle-check: FAILED\n");
        return os.str();
    }

    std::string report_json(const OracleReport &report)
    {
        json arr = json::array();
        for (const auto &c : report.checks)
            arr.push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"deviation", c.deviation},
                           {"tolerance", c.tolerance},
                           {"instance", json::parse(c.instance)}});
        json j{{"version", kLibraryVersion}, {"passed", report.passed()}, {"checks", arr}};
        return j.dump(2);
    }

    void write_text_file(const std::string &dir, const std::string &file, const std::string &text)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        const auto path = std::filesystem::path(dir) / file;
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        os << text;
        if (!os)
            throw std::runtime_error("failed writing " + path.string());
    }

    void write_result_files(const std::string &dir, const std::string &name, const std::vector<ResultRecord> &records)
    {
        if (records.empty())
            return;
        bool any_outage = false;
        bool any_tag = false;
        for (const auto &r : records)
        {
            write_text_file(dir, r.tag.empty() ? name + ".csv" : name + "_" + r.tag + ".csv", capacity_csv(r));
            any_outage = any_outage || !r.outage.empty();
            any_tag = any_tag || !r.tag.empty();
        }
        write_text_file(dir, name + ".json", records.size() == 1 && !any_tag ? record_json(records[0])
                                                                             : records_json(records));
        if (any_outage)
            write_text_file(dir, name + "_outage.csv", outage_csv(records, any_tag));
    }

} // namespace gpsmsec
