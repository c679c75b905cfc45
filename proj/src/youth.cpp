#include "shelter/youth.hpp"

#include <algorithm>
#include <cstdio>

#include "shelter/distributions.hpp"

namespace shelter {

namespace {

dist::Triangular triangular(const TriangularSpec& t)
{
    return dist::Triangular(t.min, t.mode, t.max);
}

}  // namespace

ArrivalProcess::ArrivalProcess(double annual_arrivals, double bsy_fraction, des::RngStream rng)
    : mean_gap_days_(annual_arrivals > 0.0 ? kDaysPerYear / annual_arrivals : 0.0),
      bsy_fraction_(bsy_fraction),
      rng_(std::move(rng))
{
}

std::optional<Arrival> ArrivalProcess::next(SimTime after)
{
    if (mean_gap_days_ <= 0.0) {
        return std::nullopt;
    }
    const double gap = dist::Exponential(mean_gap_days_).sample(rng_.uniform_positive());
    const bool bsy = dist::sample_bernoulli(bsy_fraction_, rng_.uniform());
    return Arrival{after + gap, bsy ? YouthKind::BedSeeking : YouthKind::NonBedSeeking};
}

std::vector<Arrival> generate_arrivals(const ScenarioConfig& config, des::RngStream rng, SimTime horizon)
{
    ArrivalProcess process(config.annual_arrivals, config.bsy_fraction, std::move(rng));
    std::vector<Arrival> out;
    SimTime t = 0.0;
    while (auto a = process.next(t)) {
        if (a->time > horizon) {
            break;
        }
        t = a->time;
        out.push_back(*a);
    }
    return out;
}

Youth assign_attributes(YouthKind kind, const ScenarioConfig& config, des::RngStream& rng)
{
    const auto& stay = config.stay;
    const double u_age = rng.uniform();
    const double u_los = rng.uniform();
    const double u_bed_patience = rng.uniform();
    const double u_service_patience = rng.uniform();
    const double u_exit = rng.uniform();
    const double u_redraw = rng.uniform();

    Youth y;
    y.kind = kind;
    y.age_group = dist::sample_bernoulli(config.age_16_20_fraction, u_age) ? AgeGroup::Age16To20 : AgeGroup::Age21To24;
    y.nbsy_length_of_stay = triangular(stay.nbsy_los).sample(u_redraw);
    y.service_patience = triangular(stay.service_patience).sample(u_service_patience);
    if (kind == YouthKind::BedSeeking) {
        const auto& los = y.age_group == AgeGroup::Age16To20 ? stay.bsy_16_20_los : stay.bsy_21_24_los;
        y.length_of_stay = triangular(los).sample(u_los);
        y.bed_patience = triangular(stay.bed_patience).sample(u_bed_patience);
        y.exits_on_bed_renege = dist::sample_bernoulli(config.renege_exit_prob, u_exit);
    } else {
        y.length_of_stay = triangular(stay.nbsy_los).sample(u_los);
    }
    return y;
}

NeedsProfile build_needs_profile(const std::vector<ServiceSpec>& services, des::RngStream& rng)
{
    NeedsProfile profile;
    profile.monthly.reserve(services.size());
    for (const auto& s : services) {
        const double u_request = rng.uniform();
        const double u_count = rng.uniform();
        profile.monthly.push_back(dist::sample_bernoulli(s.request_prob, u_request)
                                      ? dist::sample_uniform_int(s.appt_min, s.appt_max, u_count)
                                      : 0);
    }
    return profile;
}

SimTime departure_time(SimTime arrival, Duration length_of_stay, SimTime batch_resolved) noexcept
{
    return std::max(arrival + length_of_stay, batch_resolved);
}

std::string describe_arrival(const Youth& y)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "%llu %.9f %s %s los=%.9f bp=%.9f sp=%.9f exit=%d needs=",
                  static_cast<unsigned long long>(y.id), y.arrival_time,
                  y.kind == YouthKind::BedSeeking ? "bsy" : "nbsy",
                  y.age_group == AgeGroup::Age16To20 ? "16-20" : "21-24", y.length_of_stay, y.bed_patience,
                  y.service_patience, y.exits_on_bed_renege ? 1 : 0);
    std::string s(buf);
    for (std::size_t i = 0; i < y.needs.monthly.size(); ++i) {
        s += (i ? "," : "") + std::to_string(y.needs.monthly[i]);
    }
    return s;
}

}  // namespace shelter
