#include "shelter/shelter_model.hpp"

#include <stdexcept>

namespace shelter {

namespace {

constexpr std::string_view kBedResource = "bed";

}  // namespace

ShelterModel::ShelterModel(const ScenarioConfig& config, std::uint64_t replication, des::Trace* trace)
    : config_(config), trace_(trace)
{
    beds_ = std::make_unique<des::Resource>(calendar_, std::string(kBedResource), config_.bed_capacity, trace_);
    for (const auto& s : config_.services) {
        services_.push_back(std::make_unique<des::Resource>(calendar_, s.name, s.capacity_units, trace_));
    }
    arrivals_.emplace(config_.annual_arrivals, config_.bsy_fraction,
                      des::RngStream(config_.master_seed, replication, "arrivals"));
    attribute_rng_.emplace(config_.master_seed, replication, "attributes");
    needs_rng_.emplace(config_.master_seed, replication, "needs");
    schedule_next_arrival();
}

ShelterModel::ShelterModel(const ScenarioConfig& config, std::vector<Youth> scripted, des::Trace* trace)
    : config_(config), trace_(trace)
{
    beds_ = std::make_unique<des::Resource>(calendar_, std::string(kBedResource), config_.bed_capacity, trace_);
    for (const auto& s : config_.services) {
        services_.push_back(std::make_unique<des::Resource>(calendar_, s.name, s.capacity_units, trace_));
    }
    for (auto& y : scripted) {
        if (y.needs.monthly.size() != config_.services.size()) {
            throw std::invalid_argument("scripted youth needs profile does not match the service list");
        }
        const SimTime at = y.arrival_time;
        calendar_.schedule(at, [this, y = std::move(y)]() mutable { admit(std::move(y)); });
    }
}

void ShelterModel::schedule_next_arrival()
{
    auto next = arrivals_->next(calendar_.now());
    if (!next) {
        return;
    }
    calendar_.schedule(next->time, [this, kind = next->kind] {
        Youth y = assign_attributes(kind, config_, *attribute_rng_);
        y.needs = build_needs_profile(config_.services, *needs_rng_);
        y.arrival_time = calendar_.now();
        admit(std::move(y));
        schedule_next_arrival();
    });
}

void ShelterModel::admit(Youth youth)
{
    const EntityId id = youth_.size() + 1;
    youth.id = id;
    const bool bsy = youth.kind == YouthKind::BedSeeking;

    YouthOutcome outcome;
    outcome.id = id;
    outcome.bed = bsy ? BedOutcome::Pending : BedOutcome::NotApplicable;
    outcome.services.assign(services_.size(), ServiceOutcome::Pending);
    outcome.service_waits.assign(services_.size(), std::nullopt);

    youth_.push_back(std::move(youth));
    outcomes_.push_back(std::move(outcome));
    unresolved_.push_back(0);

    if (counted(id)) {
        ++flow_.arrivals;
        flow_.bsy_arrivals += bsy ? 1 : 0;
    }
    if (trace_) {
        trace_->record(calendar_.now(), des::TraceKind::Arrive, id, bsy ? "bsy" : "nbsy", 0);
    }

    if (!bsy) {
        start_signup(id);
        return;
    }
    beds_->request(
        id, 1, youth_[id - 1].bed_patience,
        [this, id](Duration wait) {
            outcomes_[id - 1].bed = BedOutcome::Granted;
            outcomes_[id - 1].bed_wait = wait;
            start_signup(id);
        },
        [this, id] {
            Youth& y = youth_[id - 1];
            if (y.exits_on_bed_renege) {
                outcomes_[id - 1].bed = BedOutcome::RenegedExit;
                flow_.bed_renege_exit += counted(id) ? 1 : 0;
                leave_unserved(id);
                return;
            }
            outcomes_[id - 1].bed = BedOutcome::RenegedStayed;
            flow_.bed_renege_stayed += counted(id) ? 1 : 0;
            if (config_.renege_stay_los == RenegeStayLos::RedrawNbsy) {
                y.length_of_stay = y.nbsy_length_of_stay;
            }
            start_signup(id);
        });
}

void ShelterModel::start_signup(EntityId id)
{
    const Youth& y = youth_[id - 1];
    YouthOutcome& outcome = outcomes_[id - 1];
    for (std::size_t i = 0; i < services_.size(); ++i) {
        const int units = y.needs.monthly[i];
        if (units == 0) {
            outcome.services[i] = ServiceOutcome::Bypassed;
            continue;
        }
        ++unresolved_[id - 1];
        services_[i]->request(
            id, units, y.service_patience,
            [this, id, i](Duration wait) {
                outcomes_[id - 1].services[i] = ServiceOutcome::Granted;
                outcomes_[id - 1].service_waits[i] = wait;
                on_service_resolved(id);
            },
            [this, id, i] {
                outcomes_[id - 1].services[i] = ServiceOutcome::Reneged;
                on_service_resolved(id);
            });
    }
    if (unresolved_[id - 1] == 0) {
        unresolved_[id - 1] = 1;
        on_service_resolved(id);
    }
}

void ShelterModel::on_service_resolved(EntityId id)
{
    if (--unresolved_[id - 1] > 0) {
        return;
    }
    YouthOutcome& outcome = outcomes_[id - 1];
    const SimTime now = calendar_.now();
    outcome.batch_resolved = now;

    bool holds_anything = outcome.bed == BedOutcome::Granted;
    for (auto s : outcome.services) {
        holds_anything = holds_anything || s == ServiceOutcome::Granted;
    }
    if (!holds_anything) {
        leave_unserved(id);
        return;
    }
    const Youth& y = youth_[id - 1];
    calendar_.schedule(departure_time(y.arrival_time, y.length_of_stay, now), [this, id] { depart(id); });
}

void ShelterModel::leave_unserved(EntityId id)
{
    YouthOutcome& outcome = outcomes_[id - 1];
    outcome.departure = Departure::LeftUnserved;
    outcome.departure_time = calendar_.now();
    flow_.left_unserved += counted(id) ? 1 : 0;
    if (trace_) {
        trace_->record(calendar_.now(), des::TraceKind::Exit, id, "-", 0);
    }
}

void ShelterModel::depart(EntityId id)
{
    const Youth& y = youth_[id - 1];
    YouthOutcome& outcome = outcomes_[id - 1];
    if (outcome.bed == BedOutcome::Granted) {
        beds_->release(id, 1);
    }
    for (std::size_t i = 0; i < services_.size(); ++i) {
        if (outcome.services[i] == ServiceOutcome::Granted) {
            services_[i]->release(id, y.needs.monthly[i]);
        }
    }
    outcome.departure = Departure::ServedThenLeft;
    outcome.departure_time = calendar_.now();
    flow_.served += counted(id) ? 1 : 0;
    if (trace_) {
        trace_->record(calendar_.now(), des::TraceKind::Depart, id, "-", 0);
    }
}

void ShelterModel::reset_statistics()
{
    window_start_ = calendar_.now();
    flow_ = FlowCounters{};
    beds_->reset_stats();
    for (auto& s : services_) {
        s->reset_stats();
    }
}

std::vector<int> ShelterModel::holdings(EntityId id) const
{
    std::vector<int> held;
    held.push_back(beds_->held_by(id));
    for (const auto& s : services_) {
        held.push_back(s->held_by(id));
    }
    return held;
}

}  // namespace shelter
