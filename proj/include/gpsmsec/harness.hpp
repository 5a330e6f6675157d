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

// Experiment configuration, sweep drivers and result serialization.

#include "gpsmsec/secrecy.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gpsmsec
{
    inline constexpr const char *kLibraryVersion = "1.0.0";

    /// Invalid or unparsable experiment configuration.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// One experiment. Serialized as a flat JSON object whose keys are the field names
    /// below (dims and budget are flattened into n_tx, ..., n_noise).
    struct ExperimentConfig
    {
        std::string name = "gpsmsec";
        PayloadMode mode = PayloadMode::Gas;
        SystemDims dims{16, 8, 2, 16};
        unsigned m_ary = 4;
        std::vector<double> snr_grid_db = default_snr_grid();
        double csit_sigma_i = 0.0;
        double rho = 0.0;
        McBudget budget;
        std::uint64_t seed = 1;
        unsigned workers = 1;
        EveReceiver eve_receiver = EveReceiver::Auto;

        // sweep and export parameters
        std::vector<double> sigma_list{0.3, 0.4, 0.5};
        std::vector<double> rho_list{0.3, 0.4, 0.5};
        std::vector<std::size_t> n_eve_list{16, 18, 20, 22, 24};
        double outage_snr_db = 10.0;
        double scatter_snr_db = 30.0;
        std::size_t n_scatter = 1000;

        /// -10 dB to 40 dB in 2 dB steps.
        static std::vector<double> default_snr_grid();

        /// Empty when valid, otherwise the first problem found.
        std::string is_valid() const;
        /// Throws ConfigError when is_valid() is non-empty.
        void validate() const;

        Scenario scenario() const;

        bool operator==(const ExperimentConfig &) const = default;
    };

    /// start:stop:step, inclusive of stop when it falls on the grid.
    std::vector<double> snr_range(double start, double stop, double step);

    std::string config_to_json(const ExperimentConfig &config);
    /// Unknown keys and mistyped values raise ConfigError. Missing keys keep their defaults.
    /// No semantic validation; call validate().
    ExperimentConfig config_from_json(std::string_view text);
    /// Replaces one field. `value` is JSON text; a bare word is taken as a string.
    void config_set_field(ExperimentConfig &config, std::string_view field, std::string_view value);
    /// One field as JSON text.
    std::string config_get_field(const ExperimentConfig &config, std::string_view field);

    struct ResultRow
    {
        double snr_db = 0.0;
        double c_bob = 0.0;
        double c_eve = 0.0;
        double c_sec = 0.0;
        double se_bob = 0.0;
        double se_eve = 0.0;
    };

    struct ResultRecord
    {
        ExperimentConfig config; // echo, with any sweep override applied
        std::string tag;         // file-name suffix for sweep entries, e.g. "sigma0.3"; empty otherwise
        std::vector<ResultRow> rows;
        bool eve_blind = false;
        double wall_clock_s = 0.0;
        std::string version = kLibraryVersion;

        /// Outage data, filled by the outage and Eve-size drivers.
        double outage_snr_db = 0.0;
        std::vector<double> secrecy_samples;
        std::vector<std::pair<double, double>> outage;
    };

    /// Secrecy capacity over the configured SNR grid.
    ResultRecord cmd_capacity(const ExperimentConfig &config);

    /// One record per CSIT error level; GAS only. Channel seeds are shared across values.
    std::vector<ResultRecord> cmd_sweep_csit(const ExperimentConfig &config, const std::vector<double> &sigma_list);

    /// One record per Kronecker correlation coefficient; GAS only.
    std::vector<ResultRecord> cmd_sweep_corr(const ExperimentConfig &config, const std::vector<double> &rho_list);

    /// One record per Eve size, each with an outage CDF at `outage_snr_db`. Entries
    /// with n_eve < n_tx are flagged eve_blind.
    std::vector<ResultRecord> cmd_sweep_eve(const ExperimentConfig &config, const std::vector<std::size_t> &n_eve_list,
                                            double outage_snr_db);

    /// Per-channel secrecy capacity at one SNR and its empirical CDF.
    ResultRecord cmd_outage(const ExperimentConfig &config, double snr_db);

    struct ScatterSample
    {
        std::string case_name; // cas1, cas2, gas
        std::string node;      // bob, eve
        std::size_t antenna = 0;
        cplx value;
    };

    /// Received samples on one channel realization for three cases: CAS with one
    /// active antenna (pattern {0}), CAS and GAS with two (pattern {0, 1}). Uses the
    /// config's n_tx, n_rx, n_eve and scatter_snr_db.
    std::vector<ScatterSample> cmd_scatter(const ExperimentConfig &config, std::size_t n_samples);

    struct OracleCheck
    {
        std::string name;
        double tolerance = 0.0;
        double deviation = 0.0;
        bool passed = false;
        std::string instance; // JSON, enough to replay the check
    };

    struct OracleReport
    {
        std::vector<OracleCheck> checks;
        bool passed() const;
    };

    struct OracleOptions
    {
        double log_theta_bias = 0.0;    // added to every ln Theta; ln(1.01) scales Theta by 1.01
        bool include_direct_eve = true; // the direct-Eve GAS zero-capacity check
        std::uint64_t seed = 1;
        unsigned workers = 1;
    };

    /// The five tiny instances compared against quadrature.
    std::vector<std::pair<std::string, TinyScenario>> oracle_instances();

    /// Monte Carlo budget used for each tiny instance.
    McBudget oracle_budget();

    /// Brute-force vs Monte Carlo on tiny instances (3 standard errors) and, optionally,
    /// |C_E| <= 0.05 bits for direct-Eve GAS on [16, 8, 2], N_e = 16.
    OracleReport cmd_oracle_check(const OracleOptions &options = {});

    // ---------- serialization ----------

    /// Versioned comment line, header snr_db,c_bob,c_eve,c_sec,se_bob,se_eve, values in %.17g.
    std::string capacity_csv(const ResultRecord &record);
    /// threshold,probability (with an n_eve column first when `with_n_eve`).
    std::string outage_csv(const std::vector<ResultRecord> &records, bool with_n_eve);
    std::string scatter_csv(const std::vector<ScatterSample> &samples);
    std::string record_json(const ResultRecord &record);
    std::string records_json(const std::vector<ResultRecord> &records);
    std::string report_text(const OracleReport &report);
    std::string report_json(const OracleReport &report);

    /// Writes `text` to `dir/file`, creating `dir` when needed.
    void write_text_file(const std::string &dir, const std::string &file, const std::string &text);

    /// <name>.csv (or <name>_<tag>.csv per record), <name>.json, and <name>_outage.csv
    /// when the records carry outage data.
    void write_result_files(const std::string &dir, const std::string &name, const std::vector<ResultRecord> &records);

} // namespace gpsmsec
