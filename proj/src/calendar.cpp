#include "shelter/calendar.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shelter::des {

EventHandle Calendar::schedule(SimTime time, Action action)
{
    if (!(time >= now_) || std::isnan(time)) {
        throw std::logic_error("event scheduled in the past: t=" + std::to_string(time) +
                               " < now=" + std::to_string(now_));
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push(Key{time, seq});
    actions_.emplace(seq, std::move(action));
    return EventHandle{seq};
}

bool Calendar::cancel(EventHandle handle)
{
    // The heap entry stays behind and is skipped when popped.
    return actions_.erase(handle.seq) > 0;
}

SimTime Calendar::run_until(SimTime t_end)
{
    if (t_end < now_) {
        throw std::logic_error("run_until target lies before the current clock");
    }
    while (!heap_.empty() && heap_.top().time <= t_end) {
        const Key key = heap_.top();
        heap_.pop();
        auto it = actions_.find(key.seq);
        if (it == actions_.end()) {
            continue;
        }
        Action action = std::move(it->second);
        actions_.erase(it);
        now_ = key.time;
        ++fired_;
        action();
    }
    now_ = t_end;
    return now_;
}

}  // namespace shelter::des
