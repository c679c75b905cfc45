#include "shelter/shelter.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "shelter/config.hpp"
#include "shelter/experiment.hpp"
#include "shelter/report.hpp"

struct shelter_config {
    shelter::ScenarioConfig config;
};

struct shelter_summary {
    shelter::ScenarioSummary summary;
};

struct shelter_sweep {
    std::string parameter;
    std::vector<int> values;
    std::vector<shelter_summary> points;
};

namespace {

thread_local std::string g_last_error;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

shelter_status fail(shelter_status status, std::string message)
{
    g_last_error = std::move(message);
    return status;
}

/// Runs `fn`, translating exceptions into status codes.
template <class Fn>
shelter_status guarded(Fn&& fn) noexcept
{
    try {
        fn();
        return SHELTER_OK;
    } catch (const shelter::ConfigError& e) {
        std::string msg;
        for (const auto& issue : e.issues()) {
            msg += issue.path + ": " + issue.message + "\n";
        }
        if (!msg.empty()) {
            msg.pop_back();
        }
        return fail(SHELTER_ERR_CONFIG, msg);
    } catch (const IoError& e) {
        return fail(SHELTER_ERR_IO, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(SHELTER_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SHELTER_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(SHELTER_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(SHELTER_ERR_RUNTIME, "unknown error");
    }
}

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_or_nan(const std::optional<shelter::Estimate>& e, double scale = 1.0)
{
    return e ? e->mean * scale : kNaN;
}

double half_width_or_nan(const std::optional<shelter::Estimate>& e, double scale = 1.0)
{
    return e && e->half_width ? *e->half_width * scale : kNaN;
}

shelter_flow_value flow_value(const shelter::Estimate& e)
{
    return shelter_flow_value{e.mean, e.half_width ? *e.half_width : kNaN};
}

void write_atomically(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + path);
        }
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("failed writing " + path);
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot write " + path + ": " + ec.message());
    }
}

shelter::ScenarioConfig resolve(nlohmann::json doc, const char* const* overrides, size_t n_overrides)
{
    nlohmann::json effective = shelter::with_defaults(doc);
    for (size_t i = 0; i < n_overrides; ++i) {
        if (!overrides[i]) {
            throw std::invalid_argument("null override");
        }
        shelter::apply_override(effective, overrides[i]);
    }
    return shelter::config_from_json(effective);
}

#define SHELTER_REQUIRE(cond)                                                    \
    do {                                                                         \
        if (!(cond)) {                                                           \
            return fail(SHELTER_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
        }                                                                        \
    } while (0)

}  // namespace

extern "C" {

const char* shelter_version(void)
{
    return SHELTER_VERSION;
}

const char* shelter_last_error(void)
{
    return g_last_error.c_str();
}

void shelter_string_free(char* s)
{
    std::free(s);
}

shelter_status shelter_config_new_default(shelter_config** out)
{
    SHELTER_REQUIRE(out);
    return guarded([&] { *out = new shelter_config{shelter::ScenarioConfig{}}; });
}

shelter_status shelter_config_load(const char* path, const char* const* overrides, size_t n_overrides,
                                   shelter_config** out)
{
    SHELTER_REQUIRE(path && out);
    SHELTER_REQUIRE(overrides || n_overrides == 0);
    return guarded([&] {
        auto config = resolve(shelter::read_config_document(path), overrides, n_overrides);
        *out = new shelter_config{std::move(config)};
    });
}

shelter_status shelter_config_parse(const char* json_text, const char* const* overrides, size_t n_overrides,
                                    shelter_config** out)
{
    SHELTER_REQUIRE(json_text && out);
    SHELTER_REQUIRE(overrides || n_overrides == 0);
    return guarded([&] {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
        } catch (const nlohmann::json::parse_error& e) {
            throw shelter::ConfigError({{"<input>", std::string("parse error: ") + e.what()}});
        }
        *out = new shelter_config{resolve(std::move(doc), overrides, n_overrides)};
    });
}

shelter_status shelter_config_set(shelter_config* config, const char* assignment)
{
    SHELTER_REQUIRE(config && assignment);
    return guarded([&] {
        const char* overrides[] = {assignment};
        config->config = resolve(shelter::config_to_json(config->config), overrides, 1);
    });
}

shelter_status shelter_config_to_json(const shelter_config* config, char** out_json)
{
    SHELTER_REQUIRE(config && out_json);
    return guarded([&] { *out_json = dup_string(shelter::config_to_json(config->config).dump(2) + "\n"); });
}

shelter_status shelter_config_digest(const shelter_config* config, char out[65])
{
    SHELTER_REQUIRE(config && out);
    return guarded([&] {
        const std::string d = shelter::config_digest(config->config);
        std::snprintf(out, 65, "%s", d.c_str());
    });
}

shelter_status shelter_config_master_seed(const shelter_config* config, uint64_t* out)
{
    SHELTER_REQUIRE(config && out);
    *out = config->config.master_seed;
    return SHELTER_OK;
}

shelter_status shelter_config_replications(const shelter_config* config, int* out)
{
    SHELTER_REQUIRE(config && out);
    *out = config->config.replications;
    return SHELTER_OK;
}

void shelter_config_free(shelter_config* config)
{
    delete config;
}

shelter_status shelter_run_scenario(const shelter_config* config, unsigned jobs, shelter_summary** out)
{
    SHELTER_REQUIRE(config && out);
    return guarded([&] { *out = new shelter_summary{shelter::run_scenario(config->config, jobs)}; });
}

size_t shelter_summary_resource_count(const shelter_summary* summary)
{
    return summary ? summary->summary.resources.size() : 0;
}

shelter_status shelter_summary_resource(const shelter_summary* summary, size_t index, shelter_resource_stats* out)
{
    SHELTER_REQUIRE(summary && out);
    if (index >= summary->summary.resources.size()) {
        return fail(SHELTER_ERR_INVALID_ARGUMENT, "resource index out of range");
    }
    const auto& r = summary->summary.resources[index];
    out->name = r.name.c_str();
    out->capacity = r.capacity;
    out->avg_wait_days = mean_or_nan(r.avg_wait);
    out->avg_wait_ci_half_width = half_width_or_nan(r.avg_wait);
    out->max_wait_days = r.max_wait.value_or(kNaN);
    out->utilization = mean_or_nan(r.utilization);
    out->utilization_ci_half_width = half_width_or_nan(r.utilization);
    out->pct_reneged = mean_or_nan(r.pct_reneged);
    out->pct_reneged_ci_half_width = half_width_or_nan(r.pct_reneged);
    return SHELTER_OK;
}

shelter_status shelter_summary_flow(const shelter_summary* summary, shelter_flow_stats* out)
{
    SHELTER_REQUIRE(summary && out);
    const auto& f = summary->summary.flow;
    out->arrivals = flow_value(f.arrivals);
    out->bsy_arrivals = flow_value(f.bsy_arrivals);
    out->served = flow_value(f.served);
    out->left_unserved = flow_value(f.left_unserved);
    out->still_in_system = flow_value(f.still_in_system);
    out->bed_renege_exit = flow_value(f.bed_renege_exit);
    out->bed_renege_stayed = flow_value(f.bed_renege_stayed);
    return SHELTER_OK;
}

size_t shelter_summary_replication_count(const shelter_summary* summary)
{
    return summary ? summary->summary.replications.size() : 0;
}

shelter_status shelter_summary_csv(const shelter_summary* summary, char** out_csv)
{
    SHELTER_REQUIRE(summary && out_csv);
    return guarded([&] {
        std::ostringstream os;
        shelter::write_summary_csv(os, summary->summary);
        *out_csv = dup_string(os.str());
    });
}

shelter_status shelter_summary_table(const shelter_summary* summary, char** out_text)
{
    SHELTER_REQUIRE(summary && out_text);
    return guarded([&] { *out_text = dup_string(shelter::format_summary_table(summary->summary)); });
}

shelter_status shelter_summary_write_csv(const shelter_summary* summary, const char* path)
{
    SHELTER_REQUIRE(summary && path);
    return guarded([&] {
        std::ostringstream os;
        shelter::write_summary_csv(os, summary->summary);
        write_atomically(path, os.str());
    });
}

void shelter_summary_free(shelter_summary* summary)
{
    delete summary;
}

shelter_status shelter_parse_values(const char* text, int** out_values, size_t* out_count)
{
    SHELTER_REQUIRE(text && out_values && out_count);
    return guarded([&] {
        const auto values = shelter::parse_values(text);
        int* buf = static_cast<int*>(std::malloc(values.size() * sizeof(int)));
        if (!buf) {
            throw std::bad_alloc();
        }
        std::memcpy(buf, values.data(), values.size() * sizeof(int));
        *out_values = buf;
        *out_count = values.size();
    });
}

void shelter_values_free(int* values)
{
    std::free(values);
}

shelter_status shelter_run_sweep(const shelter_config* config, const char* parameter, const int* values,
                                 size_t n_values, unsigned jobs, shelter_sweep** out)
{
    SHELTER_REQUIRE(config && parameter && out);
    SHELTER_REQUIRE(values || n_values == 0);
    return guarded([&] {
        const auto param = shelter::SweepParameter::parse(parameter);
        std::vector<int> v(values, values + n_values);
        auto points = shelter::sweep(config->config, param, v, jobs);
        auto result = std::make_unique<shelter_sweep>();
        result->parameter = param.str();
        result->values = std::move(v);
        for (auto& p : points) {
            result->points.push_back(shelter_summary{std::move(p.summary)});
        }
        *out = result.release();
    });
}

size_t shelter_sweep_size(const shelter_sweep* sweep)
{
    return sweep ? sweep->points.size() : 0;
}

shelter_status shelter_sweep_value(const shelter_sweep* sweep, size_t index, int* out)
{
    SHELTER_REQUIRE(sweep && out);
    if (index >= sweep->values.size()) {
        return fail(SHELTER_ERR_INVALID_ARGUMENT, "sweep index out of range");
    }
    *out = sweep->values[index];
    return SHELTER_OK;
}

const shelter_summary* shelter_sweep_summary(const shelter_sweep* sweep, size_t index)
{
    if (!sweep || index >= sweep->points.size()) {
        return nullptr;
    }
    return &sweep->points[index];
}

namespace {

std::string sweep_csv(const shelter_sweep& sweep)
{
    std::vector<shelter::SweepPoint> points;
    points.reserve(sweep.points.size());
    for (size_t i = 0; i < sweep.points.size(); ++i) {
        points.push_back(shelter::SweepPoint{sweep.values[i], sweep.points[i].summary});
    }
    std::ostringstream os;
    shelter::write_sweep_csv(os, sweep.parameter, points);
    return os.str();
}

}  // namespace

shelter_status shelter_sweep_csv(const shelter_sweep* sweep, char** out_csv)
{
    SHELTER_REQUIRE(sweep && out_csv);
    return guarded([&] { *out_csv = dup_string(sweep_csv(*sweep)); });
}

shelter_status shelter_sweep_write_csv(const shelter_sweep* sweep, const char* path)
{
    SHELTER_REQUIRE(sweep && path);
    return guarded([&] { write_atomically(path, sweep_csv(*sweep)); });
}

void shelter_sweep_free(shelter_sweep* sweep)
{
    delete sweep;
}

}  // extern "C"
