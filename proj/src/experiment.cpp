#include "shelter/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

namespace shelter {

std::optional<double> ResourceReplicationStats::avg_wait() const
{
    if (served_waits.empty()) {
        return std::nullopt;
    }
    return std::accumulate(served_waits.begin(), served_waits.end(), 0.0) / static_cast<double>(served_waits.size());
}

std::optional<double> ResourceReplicationStats::max_wait() const
{
    if (served_waits.empty()) {
        return std::nullopt;
    }
    return *std::max_element(served_waits.begin(), served_waits.end());
}

std::optional<double> ResourceReplicationStats::pct_reneged() const
{
    if (request_count == 0) {
        return std::nullopt;
    }
    return 100.0 * static_cast<double>(renege_count) / static_cast<double>(request_count);
}

const ResourceReplicationStats* ReplicationStats::find(std::string_view name) const
{
    for (const auto& r : resources) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

namespace {

ResourceReplicationStats collect(const des::Resource& r, SimTime window_start, SimTime window_end)
{
    ResourceReplicationStats out;
    out.name = r.name();
    out.capacity = r.capacity();
    out.utilization = (r.capacity() > 0 && window_end > window_start) ? r.utilization(window_start, window_end)
                                                                      : std::numeric_limits<double>::quiet_NaN();
    out.served_waits = r.stats().served_waits;
    out.renege_count = r.stats().renege_count;
    out.request_count = r.stats().request_count;
    out.still_queued = r.counted_in_queue();
    return out;
}

}  // namespace

ReplicationStats run_replication(const ScenarioConfig& config, std::uint64_t replication_index)
{
    auto issues = validate(config);
    // A zero-length window is allowed here; it yields empty statistics.
    std::erase_if(issues, [&](const ConfigIssue& i) {
        return i.path == "stats_window_days" && config.stats_window_days == 0.0;
    });
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }

    ShelterModel model(config, replication_index);
    model.run_until(config.warmup_days);
    model.reset_statistics();
    const SimTime horizon = config.horizon_days();
    model.run_until(horizon);

    ReplicationStats stats;
    stats.index = replication_index;
    stats.resources.push_back(collect(model.beds(), model.window_start(), horizon));
    for (std::size_t i = 0; i < model.service_count(); ++i) {
        stats.resources.push_back(collect(model.service(i), model.window_start(), horizon));
    }
    stats.flow = model.flow();
    return stats;
}

double t_critical_95(std::size_t degrees_of_freedom)
{
    if (degrees_of_freedom == 0) {
        throw std::invalid_argument("t critical value needs at least one degree of freedom");
    }
    boost::math::students_t dist(static_cast<double>(degrees_of_freedom));
    return boost::math::quantile(dist, 0.975);
}

Estimate estimate(const std::vector<double>& values)
{
    Estimate e;
    e.n = values.size();
    if (values.empty()) {
        return e;
    }
    e.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(e.n);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    e.min = *lo;
    e.max = *hi;
    // Rounding can push the mean a hair outside [min, max] for near-constant data.
    e.mean = std::clamp(e.mean, e.min, e.max);
    if (e.n >= 2) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - e.mean) * (v - e.mean);
        }
        const double sd = std::sqrt(ss / static_cast<double>(e.n - 1));
        e.half_width = t_critical_95(e.n - 1) * sd / std::sqrt(static_cast<double>(e.n));
    }
    return e;
}

std::optional<Estimate> estimate(const std::vector<std::optional<double>>& values)
{
    std::vector<double> present;
    for (const auto& v : values) {
        if (v && !std::isnan(*v)) {
            present.push_back(*v);
        }
    }
    if (present.empty()) {
        return std::nullopt;
    }
    return estimate(present);
}

ScenarioSummary summarize(const ScenarioConfig& config, std::vector<ReplicationStats> replications)
{
    ScenarioSummary summary;
    summary.config = config;
    if (replications.empty()) {
        throw std::invalid_argument("cannot summarize zero replications");
    }

    const std::size_t n_resources = replications.front().resources.size();
    for (std::size_t r = 0; r < n_resources; ++r) {
        ResourceSummary rs;
        rs.name = replications.front().resources[r].name;
        rs.capacity = replications.front().resources[r].capacity;
        std::vector<std::optional<double>> avg, util, pct;
        for (const auto& rep : replications) {
            const auto& s = rep.resources.at(r);
            avg.push_back(s.avg_wait());
            util.push_back(s.utilization);
            pct.push_back(s.pct_reneged());
            if (auto m = s.max_wait()) {
                rs.max_wait = std::max(rs.max_wait.value_or(*m), *m);
            }
        }
        rs.avg_wait = estimate(avg);
        rs.utilization = estimate(util);
        rs.pct_reneged = estimate(pct);
        summary.resources.push_back(std::move(rs));
    }

    auto flow_estimate = [&](auto field) {
        std::vector<double> v;
        for (const auto& rep : replications) {
            v.push_back(static_cast<double>(field(rep.flow)));
        }
        return estimate(v);
    };
    summary.flow.arrivals = flow_estimate([](const FlowCounters& f) { return f.arrivals; });
    summary.flow.bsy_arrivals = flow_estimate([](const FlowCounters& f) { return f.bsy_arrivals; });
    summary.flow.served = flow_estimate([](const FlowCounters& f) { return f.served; });
    summary.flow.left_unserved = flow_estimate([](const FlowCounters& f) { return f.left_unserved; });
    summary.flow.still_in_system = flow_estimate([](const FlowCounters& f) { return f.still_in_system(); });
    summary.flow.bed_renege_exit = flow_estimate([](const FlowCounters& f) { return f.bed_renege_exit; });
    summary.flow.bed_renege_stayed = flow_estimate([](const FlowCounters& f) { return f.bed_renege_stayed; });

    summary.replications = std::move(replications);
    return summary;
}

const ResourceSummary* ScenarioSummary::find(std::string_view name) const
{
    for (const auto& r : resources) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

ScenarioSummary run_scenario(const ScenarioConfig& config, unsigned jobs)
{
    if (auto issues = validate(config); !issues.empty()) {
        throw ConfigError(std::move(issues));
    }
    const auto n = static_cast<std::size_t>(config.replications);
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));

    std::vector<ReplicationStats> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                results[i] = run_replication(config, i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return summarize(config, std::move(results));
}

SweepParameter SweepParameter::parse(std::string_view text)
{
    if (text == "bed_capacity") {
        return beds();
    }
    constexpr std::string_view prefix = "service:";
    if (text.starts_with(prefix) && text.size() > prefix.size()) {
        return service(std::string(text.substr(prefix.size())));
    }
    throw std::invalid_argument("unknown sweep parameter '" + std::string(text) +
                                "' (expected bed_capacity or service:<name>)");
}

void SweepParameter::apply(ScenarioConfig& config, int value) const
{
    if (!service_) {
        config.bed_capacity = value;
        return;
    }
    const auto idx = config.service_index(*service_);
    if (!idx) {
        throw std::invalid_argument("unknown service '" + *service_ + "'");
    }
    config.services[*idx].capacity_units = value;
}

std::string SweepParameter::str() const
{
    return service_ ? "service:" + *service_ : "bed_capacity";
}

std::vector<SweepPoint> sweep(const ScenarioConfig& config, const SweepParameter& parameter,
                              const std::vector<int>& values, unsigned jobs)
{
    if (values.empty()) {
        throw std::invalid_argument("sweep needs at least one value");
    }
    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (int v : values) {
        ScenarioConfig scenario = config;
        parameter.apply(scenario, v);
        points.push_back(SweepPoint{v, run_scenario(scenario, jobs)});
    }
    return points;
}

namespace {

int parse_int(std::string_view s, std::string_view whole)
{
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed value '" + std::string(s) + "' in '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

std::vector<int> parse_values(std::string_view text)
{
    if (text.find_first_not_of(' ') == std::string_view::npos) {
        throw std::invalid_argument("empty value list");
    }
    std::vector<int> out;
    if (text.find(':') != std::string_view::npos) {
        std::vector<int> parts;
        std::size_t pos = 0;
        while (true) {
            const auto c = text.find(':', pos);
            parts.push_back(parse_int(text.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos), text));
            if (c == std::string_view::npos) {
                break;
            }
            pos = c + 1;
        }
        if (parts.size() != 3) {
            throw std::invalid_argument("range must be start:stop:step, got '" + std::string(text) + "'");
        }
        const int start = parts[0], stop = parts[1], step = parts[2];
        if (step <= 0 || stop < start) {
            throw std::invalid_argument("range needs step > 0 and stop >= start, got '" + std::string(text) + "'");
        }
        for (long long v = start; v <= stop; v += step) {
            out.push_back(static_cast<int>(v));
        }
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        const auto c = text.find(',', pos);
        out.push_back(parse_int(text.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos), text));
        if (c == std::string_view::npos) {
            break;
        }
        pos = c + 1;
    }
    return out;
}

}  // namespace shelter
