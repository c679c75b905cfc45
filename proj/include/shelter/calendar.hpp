#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace shelter::des {

/// Simulation time, in days since the start of the run.
using SimTime = double;
/// A span of simulation time, in days.
using Duration = double;

/// Identifies a scheduled event so it can be cancelled before it fires.
struct EventHandle {
    std::uint64_t seq = 0;

    friend bool operator==(EventHandle, EventHandle) = default;
};

/// Event calendar and simulation clock.
///
/// Events fire in (time, seq) order where seq is the insertion counter, so
/// events scheduled for the same instant fire in the order they were added.
/// The clock never moves backwards.
class Calendar {
public:
    using Action = std::function<void()>;

    SimTime now() const noexcept { return now_; }

    /// Throws std::logic_error if `time` lies before the current clock.
    EventHandle schedule(SimTime time, Action action);
    EventHandle schedule_in(Duration delay, Action action) { return schedule(now_ + delay, std::move(action)); }

    /// Returns false if the event already fired or was cancelled.
    bool cancel(EventHandle handle);

    /// Fires every event with time <= t_end in order, then sets the clock to t_end.
    SimTime run_until(SimTime t_end);

    std::size_t pending() const noexcept { return actions_.size(); }
    std::uint64_t fired() const noexcept { return fired_; }

private:
    struct Key {
        SimTime time;
        std::uint64_t seq;
        bool operator>(const Key& o) const noexcept { return time != o.time ? time > o.time : seq > o.seq; }
    };

    SimTime now_ = 0.0;
    std::uint64_t next_seq_ = 1;
    std::uint64_t fired_ = 0;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap_;
    std::unordered_map<std::uint64_t, Action> actions_;
};

}  // namespace shelter::des
