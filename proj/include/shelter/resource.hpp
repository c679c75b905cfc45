#pragma once

#include <cstdint>
#include <functional>
#include <list>
#include <string>
#include <unordered_map>
#include <vector>

#include "shelter/calendar.hpp"
#include "shelter/trace.hpp"

namespace shelter::des {

/// Accumulators for one resource over the current statistics window.
///
/// Request-level counters are attributed to the window by enqueue time: a
/// request issued before the window opened is not counted even if it
/// resolves inside it. With that rule
/// request_count == served_waits.size() + renege_count + still-queued
/// holds exactly at any instant.
struct ResourceStats {
    SimTime window_start = 0.0;
    double busy_time_integral = 0.0;  // unit-days since window_start, up to the last update
    std::vector<Duration> served_waits;
    std::uint64_t renege_count = 0;
    std::uint64_t request_count = 0;
};

/// A pool of identical units with a strict-FIFO queue of impatient
/// multi-unit requests.
///
/// A request that cannot be granted waits until its renege deadline. The
/// head of the queue is served first; a later request never overtakes a
/// head that does not fit, even if it would fit itself. Grant and renege
/// notifications are delivered as calendar events at the decision instant.
class Resource {
public:
    using GrantFn = std::function<void(Duration wait)>;
    using RenegeFn = std::function<void()>;

    Resource(Calendar& calendar, std::string name, int capacity, Trace* trace = nullptr);

    Resource(const Resource&) = delete;
    Resource& operator=(const Resource&) = delete;

    /// Throws std::invalid_argument if units < 1, units > capacity, or patience < 0.
    void request(EntityId entity, int units, Duration patience, GrantFn on_grant, RenegeFn on_renege);

    /// Throws std::logic_error if the entity holds fewer than `units`.
    void release(EntityId entity, int units);

    /// Zero the accumulators and open a new window at the current clock.
    void reset_stats();

    /// Busy-time fraction over [window_start, window_end]. window_start must be
    /// the start of the current statistics window and window_end must not lie
    /// before the last state change.
    double utilization(SimTime window_start, SimTime window_end) const;

    const std::string& name() const noexcept { return name_; }
    int capacity() const noexcept { return capacity_; }
    int busy() const noexcept { return busy_; }
    int available() const noexcept { return capacity_ - busy_; }
    std::size_t queue_length() const noexcept { return queue_.size(); }
    int held_by(EntityId entity) const;
    const ResourceStats& stats() const noexcept { return stats_; }

    /// Number of queued requests that count toward the current window.
    std::uint64_t counted_in_queue() const;

private:
    struct Pending {
        EntityId entity;
        int units;
        SimTime enqueue_time;
        SimTime renege_deadline;
        bool counted;
        EventHandle deadline_event;
        GrantFn on_grant;
    };

    void advance_integral();
    void grant(EntityId entity, int units, SimTime enqueue_time, bool counted, GrantFn on_grant);
    void serve_queue_head();

    Calendar& calendar_;
    std::string name_;
    int capacity_;
    int busy_ = 0;
    SimTime last_change_ = 0.0;
    std::list<Pending> queue_;
    std::unordered_map<EntityId, int> holdings_;
    ResourceStats stats_;
    Trace* trace_;
};

}  // namespace shelter::des
