#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shelter/calendar.hpp"
#include "shelter/config.hpp"
#include "shelter/rng.hpp"
#include "shelter/trace.hpp"

namespace shelter {

using des::Duration;
using des::EntityId;
using des::SimTime;

enum class YouthKind {
    BedSeeking,     // requests a crisis bed first, then services
    NonBedSeeking,  // services only
};

enum class AgeGroup {
    Age16To20,
    Age21To24,
};

/// Monthly appointment count per service, parallel to ScenarioConfig::services.
/// Zero means the youth does not request that service.
struct NeedsProfile {
    std::vector<int> monthly;

    friend bool operator==(const NeedsProfile&, const NeedsProfile&) = default;
};

struct Youth {
    EntityId id = 0;
    YouthKind kind = YouthKind::NonBedSeeking;
    AgeGroup age_group = AgeGroup::Age16To20;  // meaningful for bed seekers only
    Duration length_of_stay = 0.0;
    Duration bed_patience = 0.0;  // meaningful for bed seekers only
    Duration service_patience = 0.0;
    NeedsProfile needs;
    SimTime arrival_time = 0.0;

    // Decided at arrival so that compared scenarios see identical youth even
    // when their bed outcomes differ.
    bool exits_on_bed_renege = false;
    Duration nbsy_length_of_stay = 0.0;  // used instead of length_of_stay under RenegeStayLos::RedrawNbsy

    friend bool operator==(const Youth&, const Youth&) = default;
};

/// One arrival epoch produced by the arrival process.
struct Arrival {
    SimTime time = 0.0;
    YouthKind kind = YouthKind::NonBedSeeking;
};

/// Homogeneous Poisson arrivals; each arrival is a bed seeker with
/// probability `bsy_fraction`. Two draws per arrival from the stream.
class ArrivalProcess {
public:
    ArrivalProcess(double annual_arrivals, double bsy_fraction, des::RngStream rng);

    /// Next arrival strictly after `after`; none when the rate is zero.
    std::optional<Arrival> next(SimTime after);

private:
    double mean_gap_days_;  // zero when there are no arrivals
    double bsy_fraction_;
    des::RngStream rng_;
};

inline constexpr double kDaysPerYear = 365.25;

/// Arrival epochs in (0, horizon] for the given stream.
std::vector<Arrival> generate_arrivals(const ScenarioConfig& config, des::RngStream rng, SimTime horizon);

/// Stay attributes for a new youth. Draws exactly six uniforms from `rng`
/// regardless of kind.
Youth assign_attributes(YouthKind kind, const ScenarioConfig& config, des::RngStream& rng);

/// Two uniforms per service: one for whether the service is requested, one
/// for the monthly count when it is.
NeedsProfile build_needs_profile(const std::vector<ServiceSpec>& services, des::RngStream& rng);

/// A youth admitted past sign-up leaves once both its stay has elapsed
/// (counted from arrival) and every sign-up request has resolved.
SimTime departure_time(SimTime arrival, Duration length_of_stay, SimTime batch_resolved) noexcept;

/// One line describing a youth's arrival and drawn attributes; used to
/// compare arrival sequences across scenarios.
std::string describe_arrival(const Youth& youth);

}  // namespace shelter
