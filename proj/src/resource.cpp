#include "shelter/resource.hpp"

#include <stdexcept>

namespace shelter::des {

Resource::Resource(Calendar& calendar, std::string name, int capacity, Trace* trace)
    : calendar_(calendar), name_(std::move(name)), capacity_(capacity), last_change_(calendar.now()), trace_(trace)
{
    if (capacity < 0) {
        throw std::invalid_argument("resource '" + name_ + "': negative capacity");
    }
    stats_.window_start = calendar.now();
}

void Resource::request(EntityId entity, int units, Duration patience, GrantFn on_grant, RenegeFn on_renege)
{
    if (units < 1) {
        throw std::invalid_argument("resource '" + name_ + "': request for " + std::to_string(units) + " units");
    }
    if (units > capacity_) {
        throw std::invalid_argument("resource '" + name_ + "': request for " + std::to_string(units) +
                                    " units can never be satisfied (capacity " + std::to_string(capacity_) + ")");
    }
    if (!(patience >= 0.0)) {
        throw std::invalid_argument("resource '" + name_ + "': negative patience");
    }

    const SimTime now = calendar_.now();
    const bool counted = now >= stats_.window_start;
    if (counted) {
        ++stats_.request_count;
    }
    if (trace_) {
        trace_->record(now, TraceKind::Request, entity, name_, units);
    }

    if (queue_.empty() && busy_ + units <= capacity_) {
        grant(entity, units, now, counted, std::move(on_grant));
        return;
    }

    auto it = queue_.insert(queue_.end(), Pending{entity, units, now, now + patience, counted, {}, std::move(on_grant)});
    it->deadline_event = calendar_.schedule(it->renege_deadline, [this, it, on_renege = std::move(on_renege)] {
        const Pending p = std::move(*it);
        queue_.erase(it);
        if (p.counted) {
            ++stats_.renege_count;
        }
        if (trace_) {
            trace_->record(calendar_.now(), TraceKind::Renege, p.entity, name_, p.units);
        }
        // A departing head may have been the only thing blocking the requests behind it.
        serve_queue_head();
        if (on_renege) {
            on_renege();
        }
    });
}

void Resource::release(EntityId entity, int units)
{
    auto it = holdings_.find(entity);
    if (units < 1 || it == holdings_.end() || it->second < units) {
        throw std::logic_error("resource '" + name_ + "': entity " + std::to_string(entity) + " releases " +
                               std::to_string(units) + " units it does not hold");
    }
    advance_integral();
    busy_ -= units;
    if ((it->second -= units) == 0) {
        holdings_.erase(it);
    }
    if (trace_) {
        trace_->record(calendar_.now(), TraceKind::Release, entity, name_, units);
    }
    serve_queue_head();
}

void Resource::grant(EntityId entity, int units, SimTime enqueue_time, bool counted, GrantFn on_grant)
{
    advance_integral();
    busy_ += units;
    holdings_[entity] += units;
    const SimTime now = calendar_.now();
    const Duration wait = now - enqueue_time;
    if (counted) {
        stats_.served_waits.push_back(wait);
    }
    if (trace_) {
        trace_->record(now, TraceKind::Grant, entity, name_, units);
    }
    if (on_grant) {
        calendar_.schedule(now, [fn = std::move(on_grant), wait] { fn(wait); });
    }
}

void Resource::serve_queue_head()
{
    while (!queue_.empty() && busy_ + queue_.front().units <= capacity_) {
        Pending p = std::move(queue_.front());
        queue_.pop_front();
        calendar_.cancel(p.deadline_event);
        grant(p.entity, p.units, p.enqueue_time, p.counted, std::move(p.on_grant));
    }
}

void Resource::advance_integral()
{
    const SimTime now = calendar_.now();
    if (now > last_change_) {
        stats_.busy_time_integral += static_cast<double>(busy_) * (now - last_change_);
        last_change_ = now;
    }
}

void Resource::reset_stats()
{
    advance_integral();
    stats_ = ResourceStats{};
    stats_.window_start = calendar_.now();
    last_change_ = calendar_.now();
    // Requests already waiting belong to the previous window.
    for (auto& p : queue_) {
        p.counted = false;
    }
}

double Resource::utilization(SimTime window_start, SimTime window_end) const
{
    if (capacity_ == 0) {
        throw std::domain_error("resource '" + name_ + "': utilization of a zero-capacity resource");
    }
    if (!(window_end > window_start)) {
        throw std::invalid_argument("resource '" + name_ + "': empty utilization window");
    }
    if (window_start != stats_.window_start || window_end < last_change_) {
        throw std::invalid_argument("resource '" + name_ + "': window does not match the statistics window");
    }
    const double integral = stats_.busy_time_integral + static_cast<double>(busy_) * (window_end - last_change_);
    return integral / (static_cast<double>(capacity_) * (window_end - window_start));
}

int Resource::held_by(EntityId entity) const
{
    auto it = holdings_.find(entity);
    return it == holdings_.end() ? 0 : it->second;
}

std::uint64_t Resource::counted_in_queue() const
{
    std::uint64_t n = 0;
    for (const auto& p : queue_) {
        n += p.counted ? 1 : 0;
    }
    return n;
}

}  // namespace shelter::des
