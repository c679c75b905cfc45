#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shelter/config.hpp"
#include "shelter/shelter_model.hpp"

namespace shelter {

/// One resource's statistics over a replication's statistics window.
struct ResourceReplicationStats {
    std::string name;
    int capacity = 0;
    double utilization = 0.0;  // NaN for a zero-length window or zero capacity
    std::vector<Duration> served_waits;
    std::uint64_t renege_count = 0;
    std::uint64_t request_count = 0;
    std::uint64_t still_queued = 0;

    std::optional<double> avg_wait() const;
    std::optional<double> max_wait() const;
    /// Reneges as a percentage of requests issued in the window.
    std::optional<double> pct_reneged() const;

    friend bool operator==(const ResourceReplicationStats&, const ResourceReplicationStats&) = default;
};

struct ReplicationStats {
    std::uint64_t index = 0;
    std::vector<ResourceReplicationStats> resources;  // bed first, then services in config order
    FlowCounters flow;

    const ResourceReplicationStats* find(std::string_view name) const;

    friend bool operator==(const ReplicationStats&, const ReplicationStats&) = default;
};

/// Builds a fresh model for the replication, runs the warm-up, resets
/// statistics, and runs the statistics window.
ReplicationStats run_replication(const ScenarioConfig& config, std::uint64_t replication_index);

/// Sample mean across replications with its 95% Student-t half-width; the
/// half-width is absent with fewer than two observations.
struct Estimate {
    double mean = 0.0;
    std::optional<double> half_width;
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

/// Estimate over the present values; nullopt if none are.
std::optional<Estimate> estimate(const std::vector<std::optional<double>>& values);
Estimate estimate(const std::vector<double>& values);

/// Two-sided 95% Student-t critical value.
double t_critical_95(std::size_t degrees_of_freedom);

struct ResourceSummary {
    std::string name;
    int capacity = 0;
    std::optional<Estimate> avg_wait;  // over replications that served at least one request
    std::optional<double> max_wait;    // largest served wait in any replication
    std::optional<Estimate> utilization;
    std::optional<Estimate> pct_reneged;
};

struct FlowSummary {
    Estimate arrivals;
    Estimate bsy_arrivals;
    Estimate served;
    Estimate left_unserved;
    Estimate still_in_system;
    Estimate bed_renege_exit;
    Estimate bed_renege_stayed;
};

struct ScenarioSummary {
    ScenarioConfig config;
    std::vector<ResourceSummary> resources;
    FlowSummary flow;
    std::vector<ReplicationStats> replications;  // in index order

    const ResourceSummary* find(std::string_view name) const;
};

ScenarioSummary summarize(const ScenarioConfig& config, std::vector<ReplicationStats> replications);

/// Runs config.replications replications on up to `jobs` threads (0 means
/// one per hardware thread) and merges them in index order.
ScenarioSummary run_scenario(const ScenarioConfig& config, unsigned jobs = 1);

/// The capacity a sweep varies: the bed pool or one named service.
class SweepParameter {
public:
    /// `bed_capacity` or `service:<name>`. Throws std::invalid_argument otherwise.
    static SweepParameter parse(std::string_view text);

    static SweepParameter beds() { return SweepParameter(std::nullopt); }
    static SweepParameter service(std::string name) { return SweepParameter(std::move(name)); }

    /// Throws std::invalid_argument if the service is not in the config.
    void apply(ScenarioConfig& config, int value) const;
    std::string str() const;

    const std::optional<std::string>& service_name() const noexcept { return service_; }

private:
    explicit SweepParameter(std::optional<std::string> service) : service_(std::move(service)) {}

    std::optional<std::string> service_;
};

struct SweepPoint {
    int value = 0;
    ScenarioSummary summary;
};

/// One scenario per value with everything else fixed, including the master
/// seed, so arrivals and youth attributes are identical across points.
std::vector<SweepPoint> sweep(const ScenarioConfig& config, const SweepParameter& parameter,
                              const std::vector<int>& values, unsigned jobs = 1);

/// `start:stop:step` (stop inclusive when reached) or a comma list.
/// Throws std::invalid_argument on malformed or empty input.
std::vector<int> parse_values(std::string_view text);

}  // namespace shelter
