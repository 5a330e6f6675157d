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

#include "gpsmsec/gpsmsec.h"
#include "gpsmsec/harness.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

struct gpsmsec_config
{
    gpsmsec::ExperimentConfig cfg;
};

struct gpsmsec_result
{
    std::vector<gpsmsec::ResultRecord> records;
};

struct gpsmsec_report
{
    gpsmsec::OracleReport report;
};

namespace
{
    thread_local std::string g_last_error;

    gpsmsec_status fail(gpsmsec_status s, const std::string &msg)
    {
        g_last_error = msg;
        return s;
    }

    // Runs f and converts any exception into a status code.
    template <class F>
    gpsmsec_status guarded(F &&f)
    {
        try
        {
            g_last_error.clear();
            f();
            return GPSMSEC_OK;
        }
        catch (const gpsmsec::ConfigError &e)
        {
            return fail(GPSMSEC_ERR_CONFIG, e.what());
        }
        catch (const gpsmsec::UnsupportedModeError &e)
        {
            return fail(GPSMSEC_ERR_UNSUPPORTED, e.what());
        }
        catch (const gpsmsec::RankDeficientError &e)
        {
            return fail(GPSMSEC_ERR_NUMERICAL, e.what());
        }
        catch (const gpsmsec::IllConditionedError &e)
        {
            return fail(GPSMSEC_ERR_NUMERICAL, e.what());
        }
        catch (const std::invalid_argument &e)
        {
            return fail(GPSMSEC_ERR_CONFIG, e.what());
        }
        catch (const std::runtime_error &e)
        {
            return fail(GPSMSEC_ERR_IO, e.what());
        }
        catch (const std::exception &e)
        {
            return fail(GPSMSEC_ERR_INTERNAL, e.what());
        }
        catch (...)
        {
            return fail(GPSMSEC_ERR_INTERNAL, "unknown error");
        }
    }

    char *dup_string(const std::string &s)
    {
        char *p = static_cast<char *>(std::malloc(s.size() + 1));
        if (!p)
            throw std::bad_alloc();
        std::memcpy(p, s.c_str(), s.size() + 1);
        return p;
    }

    const gpsmsec::ResultRecord *record_at(const gpsmsec_result *res, size_t record)
    {
        if (!res || record >= res->records.size())
            return nullptr;
        return &res->records[record];
    }

    gpsmsec_status null_arg(const char *what) { return fail(GPSMSEC_ERR_INVALID_ARGUMENT, std::string(what) + " is null"); }

    gpsmsec_status emit_result(std::vector<gpsmsec::ResultRecord> records, gpsmsec_result **out)
    {
        *out = new gpsmsec_result{std::move(records)};
        return GPSMSEC_OK;
    }
} // namespace

extern "C" {

const char *gpsmsec_version(void) { return gpsmsec::kLibraryVersion; }

const char *gpsmsec_last_error(void) { return g_last_error.c_str(); }

void gpsmsec_string_free(char *s) { std::free(s); }

gpsmsec_status gpsmsec_config_create(gpsmsec_config **out)
{
    if (!out)
        return null_arg("out");
    return guarded([&] { *out = new gpsmsec_config{}; });
}

gpsmsec_status gpsmsec_config_from_json(const char *json, gpsmsec_config **out)
{
    if (!json || !out)
        return null_arg("json/out");
    return guarded([&] { *out = new gpsmsec_config{gpsmsec::config_from_json(json)}; });
}

gpsmsec_status gpsmsec_config_load(const char *path, gpsmsec_config **out)
{
    if (!path || !out)
        return null_arg("path/out");
    std::ifstream is(path, std::ios::binary);
    if (!is)
        return fail(GPSMSEC_ERR_CONFIG, std::string("cannot read config file ") + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return guarded([&] { *out = new gpsmsec_config{gpsmsec::config_from_json(ss.str())}; });
}

void gpsmsec_config_destroy(gpsmsec_config *cfg) { delete cfg; }

gpsmsec_status gpsmsec_config_set(gpsmsec_config *cfg, const char *field, const char *value)
{
    if (!cfg || !field || !value)
        return null_arg("cfg/field/value");
    return guarded([&] { gpsmsec::config_set_field(cfg->cfg, field, value); });
}

gpsmsec_status gpsmsec_config_get(const gpsmsec_config *cfg, const char *field, char **out)
{
    if (!cfg || !field || !out)
        return null_arg("cfg/field/out");
    return guarded([&] { *out = dup_string(gpsmsec::config_get_field(cfg->cfg, field)); });
}

gpsmsec_status gpsmsec_config_set_snr_range(gpsmsec_config *cfg, double start, double stop, double step)
{
    if (!cfg)
        return null_arg("cfg");
    return guarded([&] { cfg->cfg.snr_grid_db = gpsmsec::snr_range(start, stop, step); });
}

gpsmsec_status gpsmsec_config_validate(const gpsmsec_config *cfg)
{
    if (!cfg)
        return null_arg("cfg");
    return guarded([&] { cfg->cfg.validate(); });
}

gpsmsec_status gpsmsec_config_to_json(const gpsmsec_config *cfg, char **out)
{
    if (!cfg || !out)
        return null_arg("cfg/out");
    return guarded([&] { *out = dup_string(gpsmsec::config_to_json(cfg->cfg)); });
}

gpsmsec_status gpsmsec_run_capacity(const gpsmsec_config *cfg, gpsmsec_result **out)
{
    if (!cfg || !out)
        return null_arg("cfg/out");
    return guarded([&] { emit_result({gpsmsec::cmd_capacity(cfg->cfg)}, out); });
}

gpsmsec_status gpsmsec_run_sweep_csit(const gpsmsec_config *cfg, const double *sigma, size_t n, gpsmsec_result **out)
{
    if (!cfg || !out)
        return null_arg("cfg/out");
    return guarded([&] {
        const std::vector<double> list = sigma ? std::vector<double>(sigma, sigma + n) : cfg->cfg.sigma_list;
        emit_result(gpsmsec::cmd_sweep_csit(cfg->cfg, list), out);
    });
}

gpsmsec_status gpsmsec_run_sweep_corr(const gpsmsec_config *cfg, const double *rho, size_t n, gpsmsec_result **out)
{
    if (!cfg || !out)
        return null_arg("cfg/out");
    return guarded([&] {
        const std::vector<double> list = rho ? std::vector<double>(rho, rho + n) : cfg->cfg.rho_list;
        emit_result(gpsmsec::cmd_sweep_corr(cfg->cfg, list), out);
    });
}

gpsmsec_status gpsmsec_run_sweep_eve(const gpsmsec_config *cfg, const size_t *n_eve, size_t n, gpsmsec_result **out)
{
    if (!cfg || !out)
        return null_arg("cfg/out");
    return guarded([&] {
        const std::vector<std::size_t> list = n_eve ? std::vector<std::size_t>(n_eve, n_eve + n) : cfg->cfg.n_eve_list;
        emit_result(gpsmsec::cmd_sweep_eve(cfg->cfg, list, cfg->cfg.outage_snr_db), out);
    });
}

gpsmsec_status gpsmsec_run_outage(const gpsmsec_config *cfg, gpsmsec_result **out)
{
    if (!cfg || !out)
        return null_arg("cfg/out");
    return guarded([&] { emit_result({gpsmsec::cmd_outage(cfg->cfg, cfg->cfg.outage_snr_db)}, out); });
}

gpsmsec_status gpsmsec_run_scatter(const gpsmsec_config *cfg, size_t n_samples, char **csv_out)
{
    if (!cfg || !csv_out)
        return null_arg("cfg/csv_out");
    return guarded([&] {
        const std::size_t n = n_samples ? n_samples : cfg->cfg.n_scatter;
        *csv_out = dup_string(gpsmsec::scatter_csv(gpsmsec::cmd_scatter(cfg->cfg, n)));
    });
}

gpsmsec_status gpsmsec_run_oracle_check(const gpsmsec_config *cfg, double log_theta_bias, int include_direct_eve,
                                        gpsmsec_report **out)
{
    if (!out)
        return null_arg("out");
    return guarded([&] {
        gpsmsec::OracleOptions opt;
        opt.log_theta_bias = log_theta_bias;
        opt.include_direct_eve = include_direct_eve != 0;
        if (cfg)
        {
            opt.seed = cfg->cfg.seed;
            opt.workers = cfg->cfg.workers;
        }
        *out = new gpsmsec_report{gpsmsec::cmd_oracle_check(opt)};
    });
}

size_t gpsmsec_result_record_count(const gpsmsec_result *res) { return res ? res->records.size() : 0; }

size_t gpsmsec_result_row_count(const gpsmsec_result *res, size_t record)
{
    const auto *r = record_at(res, record);
    return r ? r->rows.size() : 0;
}

gpsmsec_status gpsmsec_result_row(const gpsmsec_result *res, size_t record, size_t row, gpsmsec_row *out)
{
    const auto *r = record_at(res, record);
    if (!r || !out || row >= r->rows.size())
        return fail(GPSMSEC_ERR_INVALID_ARGUMENT, "result row index out of range");
    const auto &x = r->rows[row];
    *out = gpsmsec_row{x.snr_db, x.c_bob, x.c_eve, x.c_sec, x.se_bob, x.se_eve};
    return GPSMSEC_OK;
}

int gpsmsec_result_eve_blind(const gpsmsec_result *res, size_t record)
{
    const auto *r = record_at(res, record);
    return r && r->eve_blind ? 1 : 0;
}

const char *gpsmsec_result_tag(const gpsmsec_result *res, size_t record)
{
    const auto *r = record_at(res, record);
    return r ? r->tag.c_str() : "";
}

size_t gpsmsec_result_outage_count(const gpsmsec_result *res, size_t record)
{
    const auto *r = record_at(res, record);
    return r ? r->outage.size() : 0;
}

gpsmsec_status gpsmsec_result_outage_point(const gpsmsec_result *res, size_t record, size_t index, double *threshold,
                                           double *probability)
{
    const auto *r = record_at(res, record);
    if (!r || !threshold || !probability || index >= r->outage.size())
        return fail(GPSMSEC_ERR_INVALID_ARGUMENT, "outage index out of range");
    *threshold = r->outage[index].first;
    *probability = r->outage[index].second;
    return GPSMSEC_OK;
}

gpsmsec_status gpsmsec_result_csv(const gpsmsec_result *res, size_t record, char **out)
{
    const auto *r = record_at(res, record);
    if (!r || !out)
        return fail(GPSMSEC_ERR_INVALID_ARGUMENT, "result record index out of range");
    return guarded([&] { *out = dup_string(gpsmsec::capacity_csv(*r)); });
}

gpsmsec_status gpsmsec_result_json(const gpsmsec_result *res, char **out)
{
    if (!res || !out)
        return null_arg("res/out");
    return guarded([&] {
        *out = dup_string(res->records.size() == 1 && res->records[0].tag.empty()
                              ? gpsmsec::record_json(res->records[0])
                              : gpsmsec::records_json(res->records));
    });
}

gpsmsec_status gpsmsec_result_write(const gpsmsec_result *res, const char *out_dir, const char *name)
{
    if (!res || !out_dir || !name)
        return null_arg("res/out_dir/name");
    return guarded([&] { gpsmsec::write_result_files(out_dir, name, res->records); });
}

void gpsmsec_result_destroy(gpsmsec_result *res) { delete res; }

size_t gpsmsec_report_check_count(const gpsmsec_report *rep) { return rep ? rep->report.checks.size() : 0; }

gpsmsec_status gpsmsec_report_check(const gpsmsec_report *rep, size_t index, gpsmsec_check *out)
{
    if (!rep || !out || index >= rep->report.checks.size())
        return fail(GPSMSEC_ERR_INVALID_ARGUMENT, "check index out of range");
    const auto &c = rep->report.checks[index];
    *out = gpsmsec_check{c.name.c_str(), c.tolerance, c.deviation, c.passed ? 1 : 0, c.instance.c_str()};
    return GPSMSEC_OK;
}

int gpsmsec_report_passed(const gpsmsec_report *rep) { return rep && rep->report.passed() ? 1 : 0; }

gpsmsec_status gpsmsec_report_text(const gpsmsec_report *rep, char **out)
{
    if (!rep || !out)
        return null_arg("rep/out");
    return guarded([&] { *out = dup_string(gpsmsec::report_text(rep->report)); });
}

gpsmsec_status gpsmsec_report_json(const gpsmsec_report *rep, char **out)
{
    if (!rep || !out)
        return null_arg("rep/out");
    return guarded([&] { *out = dup_string(gpsmsec::report_json(rep->report)); });
}

void gpsmsec_report_destroy(gpsmsec_report *rep) { delete rep; }

} // extern "C"
