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

// gpsmsec-cli: command-line front end. Talks to the library through the C API only.

#include "gpsmsec/gpsmsec.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace
{
    constexpr int kExitOk = 0;
    constexpr int kExitRuntime = 1;
    constexpr int kExitConfig = 2;
    constexpr int kExitCheckFailed = 3;

    // Config fields that can be overridden by a flag of the same name.
    const std::vector<std::string> kScalarFields{"name",         "mode",          "n_tx",           "n_rx",
                                                 "n_active",     "n_eve",         "m_ary",          "csit_sigma_i",
                                                 "rho",          "n_channels",    "n_noise",        "eve_receiver",
                                                 "outage_snr_db", "scatter_snr_db", "n_scatter"};
    const std::vector<std::string> kListFields{"snr_grid_db", "sigma_list", "rho_list", "n_eve_list"};

    struct CommonArgs
    {
        std::string config_path;
        std::string seed;
        std::string workers;
        std::string out_dir = ".";
        std::string snr;
        std::map<std::string, std::string> fields;
        bool dump_config = false;
    };

    struct ConfigDeleter
    {
        void operator()(gpsmsec_config *c) const { gpsmsec_config_destroy(c); }
    };
    struct ResultDeleter
    {
        void operator()(gpsmsec_result *r) const { gpsmsec_result_destroy(r); }
    };
    struct ReportDeleter
    {
        void operator()(gpsmsec_report *r) const { gpsmsec_report_destroy(r); }
    };
    using ConfigPtr = std::unique_ptr<gpsmsec_config, ConfigDeleter>;
    using ResultPtr = std::unique_ptr<gpsmsec_result, ResultDeleter>;
    using ReportPtr = std::unique_ptr<gpsmsec_report, ReportDeleter>;

    int exit_code_for(gpsmsec_status s)
    {
        switch (s)
        {
        case GPSMSEC_OK:
            return kExitOk;
        case GPSMSEC_ERR_CONFIG:
        case GPSMSEC_ERR_UNSUPPORTED:
        case GPSMSEC_ERR_INVALID_ARGUMENT:
            return kExitConfig;
        default:
            return kExitRuntime;
        }
    }

    int report_error(gpsmsec_status s)
    {
        std::fprintf(stderr, "error: %s\n", gpsmsec_last_error());
        return exit_code_for(s);
    }

    void add_common(CLI::App *sub, CommonArgs &args)
    {
        sub->add_option("--config", args.config_path, "JSON experiment config");
        sub->add_option("--seed", args.seed, "master seed (u64)");
        sub->add_option("--workers", args.workers, "worker threads");
        sub->add_option("--out", args.out_dir, "output directory")->capture_default_str();
        sub->add_option("--snr", args.snr, "SNR grid start:stop:step in dB");
        sub->add_flag("--dump-config", args.dump_config, "print the resolved config as JSON and exit");
        for (const auto &f : kScalarFields)
            sub->add_option("--" + f, args.fields[f], "config field " + f);
        for (const auto &f : kListFields)
            sub->add_option("--" + f, args.fields[f], "config field " + f + " (comma separated)");
    }

    bool parse_range(const std::string &text, double &a, double &b, double &c)
    {
        char tail = 0;
        return std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &c, &tail) == 3;
    }

    // Builds the config: file first, then every flag that was given.
    gpsmsec_status build_config(const CLI::App *sub, const CommonArgs &args, ConfigPtr &out)
    {
        gpsmsec_config *raw = nullptr;
        gpsmsec_status s = args.config_path.empty() ? gpsmsec_config_create(&raw)
                                                    : gpsmsec_config_load(args.config_path.c_str(), &raw);
        if (s != GPSMSEC_OK)
            return s;
        out.reset(raw);

        auto given = [&](const std::string &flag) { return sub->count(flag) > 0; };
        if (given("--seed") && (s = gpsmsec_config_set(out.get(), "seed", args.seed.c_str())) != GPSMSEC_OK)
            return s;
        if (given("--workers") && (s = gpsmsec_config_set(out.get(), "workers", args.workers.c_str())) != GPSMSEC_OK)
            return s;
        for (const auto &f : kScalarFields)
            if (given("--" + f) && (s = gpsmsec_config_set(out.get(), f.c_str(), args.fields.at(f).c_str())) != GPSMSEC_OK)
                return s;
        for (const auto &f : kListFields)
        {
            if (!given("--" + f))
                continue;
            std::string v = args.fields.at(f);
            if (v.empty() || v.front() != '[')
                v = "[" + v + "]";
            if ((s = gpsmsec_config_set(out.get(), f.c_str(), v.c_str())) != GPSMSEC_OK)
                return s;
        }
        if (given("--snr"))
        {
            double a = 0, b = 0, c = 0;
            if (!parse_range(args.snr, a, b, c))
            {
                std::fprintf(stderr, "error: --snr expects start:stop:step, got \"%s\"\n", args.snr.c_str());
                return GPSMSEC_ERR_CONFIG;
            }
            if ((s = gpsmsec_config_set_snr_range(out.get(), a, b, c)) != GPSMSEC_OK)
                return s;
        }
        return gpsmsec_config_validate(out.get());
    }

    std::string config_name(const gpsmsec_config *cfg)
    {
        char *json = nullptr;
        std::string name = "gpsmsec";
        if (gpsmsec_config_get(cfg, "name", &json) == GPSMSEC_OK)
        {
            const std::string quoted(json);
            gpsmsec_string_free(json);
            // names are restricted to [A-Za-z0-9_.-], so stripping the quotes is enough
            if (quoted.size() >= 2)
                name = quoted.substr(1, quoted.size() - 2);
        }
        return name;
    }

    int dump_config(const CLI::App *sub, const CommonArgs &args)
    {
        ConfigPtr cfg;
        gpsmsec_status s = build_config(sub, args, cfg);
        if (s != GPSMSEC_OK)
            return report_error(s);
        char *json = nullptr;
        if ((s = gpsmsec_config_to_json(cfg.get(), &json)) != GPSMSEC_OK)
            return report_error(s);
        std::printf("%s\n", json);
        gpsmsec_string_free(json);
        return kExitOk;
    }

    void print_rows(const gpsmsec_result *res)
    {
        for (size_t r = 0; r < gpsmsec_result_record_count(res); ++r)
        {
            const char *tag = gpsmsec_result_tag(res, r);
            if (*tag)
                std::printf("[%s]\n", tag);
            if (gpsmsec_result_eve_blind(res, r))
                std::printf("eve cannot post-process (n_eve < n_tx): C_E = 0\n");
            std::printf("%8s %10s %10s %10s\n", "snr_db", "c_bob", "c_eve", "c_sec");
            for (size_t i = 0; i < gpsmsec_result_row_count(res, r); ++i)
            {
                gpsmsec_row row{};
                gpsmsec_result_row(res, r, i, &row);
                std::printf("%8.2f %10.4f %10.4f %10.4f\n", row.snr_db, row.c_bob, row.c_eve, row.c_sec);
            }
        }
    }

    using Runner = gpsmsec_status (*)(const gpsmsec_config *, gpsmsec_result **);

    int run_result_command(const CLI::App *sub, const CommonArgs &args, Runner runner)
    {
        ConfigPtr cfg;
        gpsmsec_status s = build_config(sub, args, cfg);
        if (s != GPSMSEC_OK)
            return report_error(s);
        gpsmsec_result *raw = nullptr;
        if ((s = runner(cfg.get(), &raw)) != GPSMSEC_OK)
            return report_error(s);
        ResultPtr res(raw);
        const std::string name = config_name(cfg.get());
        if ((s = gpsmsec_result_write(res.get(), args.out_dir.c_str(), name.c_str())) != GPSMSEC_OK)
            return report_error(s);
        print_rows(res.get());
        std::printf("wrote %s/%s.json\n", args.out_dir.c_str(), name.c_str());
        return kExitOk;
    }

    gpsmsec_status run_sweep_csit(const gpsmsec_config *c, gpsmsec_result **o) { return gpsmsec_run_sweep_csit(c, nullptr, 0, o); }
    gpsmsec_status run_sweep_corr(const gpsmsec_config *c, gpsmsec_result **o) { return gpsmsec_run_sweep_corr(c, nullptr, 0, o); }
    gpsmsec_status run_sweep_eve(const gpsmsec_config *c, gpsmsec_result **o) { return gpsmsec_run_sweep_eve(c, nullptr, 0, o); }

    int run_scatter(const CLI::App *sub, const CommonArgs &args)
    {
        ConfigPtr cfg;
        gpsmsec_status s = build_config(sub, args, cfg);
        if (s != GPSMSEC_OK)
            return report_error(s);
        char *csv = nullptr;
        if ((s = gpsmsec_run_scatter(cfg.get(), 0, &csv)) != GPSMSEC_OK)
            return report_error(s);
        const std::string text(csv);
        gpsmsec_string_free(csv);
        std::error_code ec;
        std::filesystem::create_directories(args.out_dir, ec);
        const auto path = std::filesystem::path(args.out_dir) / (config_name(cfg.get()) + "_scatter.csv");
        std::ofstream os(path, std::ios::binary);
        os << text;
        if (!os)
        {
            std::fprintf(stderr, "error: cannot write %s\n", path.string().c_str());
            return kExitRuntime;
        }
        std::printf("wrote %s\n", path.string().c_str());
        return kExitOk;
    }

    int run_oracle(const CLI::App *sub, const CommonArgs &args, double bias, bool skip_direct_eve, bool as_json)
    {
        ConfigPtr cfg;
        gpsmsec_status s = build_config(sub, args, cfg);
        if (s != GPSMSEC_OK)
            return report_error(s);
        gpsmsec_report *raw = nullptr;
        if ((s = gpsmsec_run_oracle_check(cfg.get(), bias, skip_direct_eve ? 0 : 1, &raw)) != GPSMSEC_OK)
            return report_error(s);
        ReportPtr rep(raw);
        char *text = nullptr;
        s = as_json ? gpsmsec_report_json(rep.get(), &text) : gpsmsec_report_text(rep.get(), &text);
        if (s != GPSMSEC_OK)
            return report_error(s);
        std::fputs(text, stdout);
        if (as_json)
            std::fputc('\n', stdout);
        gpsmsec_string_free(text);
        return gpsmsec_report_passed(rep.get()) ? kExitOk : kExitCheckFailed;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"gpsmsec-cli: secrecy capacity of pre-coded spatial modulation with antenna scrambling"};
    app.set_version_flag("--version", std::string(gpsmsec_version()));
    app.require_subcommand(1);

    struct Sub
    {
        const char *name;
        const char *help;
        CLI::App *app = nullptr;
        CommonArgs args;
    };
    std::vector<Sub> subs{{"capacity", "secrecy capacity over the SNR grid", nullptr, {}},
                          {"scatter", "received-sample scatter export for one channel", nullptr, {}},
                          {"sweep-csit", "GAS capacity for each CSIT error in sigma_list", nullptr, {}},
                          {"sweep-corr", "GAS capacity for each correlation in rho_list", nullptr, {}},
                          {"sweep-eve", "GAS capacity and outage for each Eve size in n_eve_list", nullptr, {}},
                          {"outage", "per-channel secrecy CDF at outage_snr_db", nullptr, {}},
                          {"oracle-check", "Monte Carlo vs quadrature and the direct-Eve GAS check", nullptr, {}}};
    for (auto &s : subs)
    {
        s.app = app.add_subcommand(s.name, s.help);
        add_common(s.app, s.args);
    }

    double bias = 0.0;
    bool skip_direct_eve = false;
    bool as_json = false;
    CLI::App *oracle = subs.back().app;
    oracle->add_option("--bias", bias, "added to every ln Theta (sensitivity self-test)");
    oracle->add_flag("--skip-direct-eve", skip_direct_eve, "only run the quadrature comparisons");
    oracle->add_flag("--json", as_json, "print the report as JSON");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitConfig;
    }

    for (auto &s : subs)
    {
        if (!s.app->parsed())
            continue;
        const std::string name = s.name;
        if (s.args.dump_config)
            return dump_config(s.app, s.args);
        if (name == "capacity")
            return run_result_command(s.app, s.args, gpsmsec_run_capacity);
        if (name == "sweep-csit")
            return run_result_command(s.app, s.args, run_sweep_csit);
        if (name == "sweep-corr")
            return run_result_command(s.app, s.args, run_sweep_corr);
        if (name == "sweep-eve")
            return run_result_command(s.app, s.args, run_sweep_eve);
        if (name == "outage")
            return run_result_command(s.app, s.args, gpsmsec_run_outage);
        if (name == "scatter")
            return run_scatter(s.app, s.args);
        if (name == "oracle-check")
            return run_oracle(s.app, s.args, bias, skip_direct_eve, as_json);
    }
    return kExitConfig;
}
