#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "shelter/calendar.hpp"
#include "shelter/config.hpp"
#include "shelter/resource.hpp"
#include "shelter/rng.hpp"
#include "shelter/trace.hpp"
#include "shelter/youth.hpp"

namespace shelter {

enum class BedOutcome {
    NotApplicable,  // non-bed-seeker
    Pending,
    Granted,
    RenegedExit,    // gave up on the bed and left the shelter
    RenegedStayed,  // gave up on the bed, continued to service sign-up
};

enum class ServiceOutcome {
    Pending,
    Bypassed,  // not in the needs profile
    Granted,
    Reneged,
};

enum class Departure {
    InSystem,
    ServedThenLeft,
    LeftUnserved,
};

struct YouthOutcome {
    EntityId id = 0;
    BedOutcome bed = BedOutcome::NotApplicable;
    std::optional<Duration> bed_wait;
    std::vector<ServiceOutcome> services;
    std::vector<std::optional<Duration>> service_waits;
    std::optional<SimTime> batch_resolved;
    Departure departure = Departure::InSystem;
    std::optional<SimTime> departure_time;
};

/// Youth-flow counters for the cohort that arrived inside the statistics
/// window. still_in_system() closes the identity
/// arrivals == served + left_unserved + still_in_system.
struct FlowCounters {
    std::uint64_t arrivals = 0;
    std::uint64_t bsy_arrivals = 0;
    std::uint64_t served = 0;
    std::uint64_t left_unserved = 0;
    std::uint64_t bed_renege_exit = 0;
    std::uint64_t bed_renege_stayed = 0;

    std::uint64_t nbsy_arrivals() const noexcept { return arrivals - bsy_arrivals; }
    std::uint64_t still_in_system() const noexcept { return arrivals - served - left_unserved; }

    friend bool operator==(const FlowCounters&, const FlowCounters&) = default;
};

/// The shelter: a bed pool, one appointment pool per service, and the youth
/// that flow through them.
///
/// A bed seeker first queues for one bed. On a grant it moves on to service
/// sign-up; on a renege it either leaves (decided at arrival with
/// probability renege_exit_prob) or continues to sign-up as a service-only
/// youth. Sign-up issues one request per needed service at once and waits
/// until all have been granted or abandoned. A youth holding nothing at that
/// point leaves unserved; otherwise it stays until departure_time() and then
/// releases everything it holds.
class ShelterModel {
public:
    /// Random arrivals for the given replication. Streams are derived from
    /// (config.master_seed, replication, stream name).
    ShelterModel(const ScenarioConfig& config, std::uint64_t replication, des::Trace* trace = nullptr);

    /// A fixed cast: each youth arrives at its arrival_time with the given
    /// attributes. Ids are assigned 1, 2, ... in input order.
    ShelterModel(const ScenarioConfig& config, std::vector<Youth> scripted, des::Trace* trace = nullptr);

    ShelterModel(const ShelterModel&) = delete;
    ShelterModel& operator=(const ShelterModel&) = delete;

    void run_until(SimTime t_end) { calendar_.run_until(t_end); }

    /// Opens a new statistics window at the current clock. Youth and
    /// requests already in the system stay but are no longer counted.
    void reset_statistics();
    SimTime window_start() const noexcept { return window_start_; }

    des::Calendar& calendar() noexcept { return calendar_; }
    SimTime now() const noexcept { return calendar_.now(); }
    const ScenarioConfig& config() const noexcept { return config_; }

    const des::Resource& beds() const noexcept { return *beds_; }
    const des::Resource& service(std::size_t i) const { return *services_.at(i); }
    std::size_t service_count() const noexcept { return services_.size(); }

    const FlowCounters& flow() const noexcept { return flow_; }
    const std::vector<Youth>& youth() const noexcept { return youth_; }
    const std::vector<YouthOutcome>& outcomes() const noexcept { return outcomes_; }

    /// Units of every resource currently held by the youth; bed first.
    std::vector<int> holdings(EntityId id) const;

private:
    void schedule_next_arrival();
    void admit(Youth youth);
    void start_signup(EntityId id);
    void on_service_resolved(EntityId id);
    void leave_unserved(EntityId id);
    void depart(EntityId id);
    bool counted(EntityId id) const { return youth_[id - 1].arrival_time >= window_start_; }

    ScenarioConfig config_;
    des::Trace* trace_;
    des::Calendar calendar_;
    std::unique_ptr<des::Resource> beds_;
    std::vector<std::unique_ptr<des::Resource>> services_;

    std::optional<ArrivalProcess> arrivals_;
    std::optional<des::RngStream> attribute_rng_;
    std::optional<des::RngStream> needs_rng_;

    std::vector<Youth> youth_;
    std::vector<YouthOutcome> outcomes_;
    std::vector<int> unresolved_;  // outstanding sign-up requests per youth
    FlowCounters flow_;
    SimTime window_start_ = 0.0;
};

}  // namespace shelter
