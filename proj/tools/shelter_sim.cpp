// shelter-sim: run shelter scenarios and capacity sweeps from a JSON config.
//
//   shelter-sim validate --config configs/baseline.json
//   shelter-sim simulate --config configs/baseline.json --out results.csv --set bed_capacity=81
//   shelter-sim sweep --config configs/baseline.json --param service:psychiatric --values 56:168:16 --out psych.csv
//
// Exit codes: 0 success, 2 configuration or usage error, 3 runtime error.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shelter/shelter.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigDeleter {
    void operator()(shelter_config* c) const { shelter_config_free(c); }
};
struct SummaryDeleter {
    void operator()(shelter_summary* s) const { shelter_summary_free(s); }
};
struct SweepDeleter {
    void operator()(shelter_sweep* s) const { shelter_sweep_free(s); }
};
struct StringDeleter {
    void operator()(char* s) const { shelter_string_free(s); }
};

using ConfigPtr = std::unique_ptr<shelter_config, ConfigDeleter>;
using SummaryPtr = std::unique_ptr<shelter_summary, SummaryDeleter>;
using SweepPtr = std::unique_ptr<shelter_sweep, SweepDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Options {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    unsigned jobs = 1;
    std::vector<std::string> sets;
    std::string param;
    std::string values;
};

int exit_code_for(shelter_status status)
{
    switch (status) {
    case SHELTER_OK:
        return kExitOk;
    case SHELTER_ERR_CONFIG:
    case SHELTER_ERR_INVALID_ARGUMENT:
        return kExitConfig;
    default:
        return kExitRuntime;
    }
}

int report(shelter_status status, const std::string& what)
{
    std::cerr << "shelter-sim: " << what << ":\n";
    std::istringstream lines(shelter_last_error());
    for (std::string line; std::getline(lines, line);) {
        std::cerr << "  " << line << "\n";
    }
    return exit_code_for(status);
}

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Loads the config with --set, --seed and --reps applied, in that order.
shelter_status load_config(const Options& opt, ConfigPtr& out)
{
    std::vector<std::string> assignments = opt.sets;
    if (opt.seed) {
        assignments.push_back("master_seed=" + std::to_string(*opt.seed));
    }
    if (opt.reps) {
        assignments.push_back("replications=" + std::to_string(*opt.reps));
    }
    std::vector<const char*> ptrs;
    for (const auto& a : assignments) {
        ptrs.push_back(a.c_str());
    }
    shelter_config* raw = nullptr;
    const auto status = shelter_config_load(opt.config_path.c_str(), ptrs.data(), ptrs.size(), &raw);
    out.reset(raw);
    return status;
}

std::filesystem::path manifest_path(const std::string& out_path)
{
    return std::filesystem::path(out_path + ".manifest.json");
}

int write_manifest(const Options& opt, const shelter_config* config, const std::string& command,
                   const std::string& started)
{
    char digest[65];
    std::uint64_t seed = 0;
    char* json_raw = nullptr;
    shelter_config_digest(config, digest);
    shelter_config_master_seed(config, &seed);
    if (auto s = shelter_config_to_json(config, &json_raw); s != SHELTER_OK) {
        return report(s, "cannot serialize config");
    }
    StringPtr json_text(json_raw);

    nlohmann::json manifest = {
        {"tool", "shelter-sim"},
        {"tool_version", shelter_version()},
        {"command", command},
        {"config_path", opt.config_path},
        {"config_digest", digest},
        {"master_seed", seed},
        {"jobs", opt.jobs},
        {"started_at", started},
        {"finished_at", utc_now()},
        {"outputs", {{"csv", opt.out_path}}},
        {"effective_config", nlohmann::json::parse(json_text.get())},
    };
    if (!opt.param.empty()) {
        manifest["sweep"] = {{"param", opt.param}, {"values", opt.values}};
    }

    const auto path = manifest_path(opt.out_path);
    std::ofstream out(path);
    out << manifest.dump(2) << '\n';
    if (!out) {
        std::cerr << "shelter-sim: cannot write manifest " << path << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int print_owned(shelter_status status, char* text, std::ostream& os)
{
    StringPtr owned(text);
    if (status != SHELTER_OK) {
        return report(status, "cannot format results");
    }
    os << owned.get();
    return kExitOk;
}

int cmd_validate(const Options& opt)
{
    ConfigPtr config;
    if (auto s = load_config(opt, config); s != SHELTER_OK) {
        return report(s, "invalid config " + opt.config_path);
    }
    char* json_text = nullptr;
    const auto status = shelter_config_to_json(config.get(), &json_text);
    return print_owned(status, json_text, std::cout);
}

int cmd_simulate(const Options& opt)
{
    const std::string started = utc_now();
    ConfigPtr config;
    if (auto s = load_config(opt, config); s != SHELTER_OK) {
        return report(s, "invalid config " + opt.config_path);
    }
    shelter_summary* raw = nullptr;
    if (auto s = shelter_run_scenario(config.get(), opt.jobs, &raw); s != SHELTER_OK) {
        return report(s, "simulation failed");
    }
    SummaryPtr summary(raw);

    if (auto s = shelter_summary_write_csv(summary.get(), opt.out_path.c_str()); s != SHELTER_OK) {
        return report(s, "cannot write results");
    }
    char* table = nullptr;
    const auto status = shelter_summary_table(summary.get(), &table);
    if (int rc = print_owned(status, table, std::cout); rc != kExitOk) {
        return rc;
    }
    return write_manifest(opt, config.get(), "simulate", started);
}

int cmd_sweep(const Options& opt)
{
    const std::string started = utc_now();
    ConfigPtr config;
    if (auto s = load_config(opt, config); s != SHELTER_OK) {
        return report(s, "invalid config " + opt.config_path);
    }
    int* values_raw = nullptr;
    size_t n_values = 0;
    if (auto s = shelter_parse_values(opt.values.c_str(), &values_raw, &n_values); s != SHELTER_OK) {
        return report(s, "bad --values");
    }
    std::unique_ptr<int, decltype(&shelter_values_free)> values(values_raw, &shelter_values_free);

    shelter_sweep* raw = nullptr;
    if (auto s = shelter_run_sweep(config.get(), opt.param.c_str(), values.get(), n_values, opt.jobs, &raw);
        s != SHELTER_OK) {
        return report(s, "sweep failed");
    }
    SweepPtr sweep(raw);

    if (auto s = shelter_sweep_write_csv(sweep.get(), opt.out_path.c_str()); s != SHELTER_OK) {
        return report(s, "cannot write results");
    }
    for (size_t i = 0; i < shelter_sweep_size(sweep.get()); ++i) {
        int value = 0;
        shelter_sweep_value(sweep.get(), i, &value);
        std::cout << "== " << opt.param << " = " << value << "\n";
        char* table = nullptr;
        const auto status = shelter_summary_table(shelter_sweep_summary(sweep.get(), i), &table);
        if (int rc = print_owned(status, table, std::cout); rc != kExitOk) {
            return rc;
        }
        std::cout << "\n";
    }
    return write_manifest(opt, config.get(), "sweep", started);
}

void add_common(CLI::App* cmd, Options& opt)
{
    cmd->add_option("--config", opt.config_path, "Scenario config (JSON)")->required();
    cmd->add_option("--seed", opt.seed, "Override master_seed");
    cmd->add_option("--reps", opt.reps, "Override replications")->check(CLI::PositiveNumber);
    cmd->add_option("--set", opt.sets, "Override a config field: key=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Crisis shelter discrete-event simulation"};
    app.set_version_flag("--version", std::string(shelter_version()));
    app.require_subcommand(1);

    Options opt;

    auto* validate = app.add_subcommand("validate", "Check a config and print the effective config");
    add_common(validate, opt);

    auto* simulate = app.add_subcommand("simulate", "Run all replications of one scenario");
    add_common(simulate, opt);
    simulate->add_option("--out", opt.out_path, "Results CSV")->required();
    simulate->add_option("--jobs", opt.jobs, "Concurrent replications (0 = hardware threads)");

    auto* sweep = app.add_subcommand("sweep", "Run one scenario per capacity value");
    add_common(sweep, opt);
    sweep->add_option("--out", opt.out_path, "Results CSV")->required();
    sweep->add_option("--jobs", opt.jobs, "Concurrent replications (0 = hardware threads)");
    sweep->add_option("--param", opt.param, "bed_capacity or service:<name>")->required();
    sweep->add_option("--values", opt.values, "start:stop:step or a comma list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (validate->parsed()) {
        return cmd_validate(opt);
    }
    if (simulate->parsed()) {
        return cmd_simulate(opt);
    }
    return cmd_sweep(opt);
}
