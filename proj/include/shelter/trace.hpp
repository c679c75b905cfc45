#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "shelter/calendar.hpp"

namespace shelter::des {

using EntityId = std::uint64_t;

enum class TraceKind {
    Arrive,   // entity entered the system
    Request,  // request enqueued or about to be granted
    Grant,    // units seized
    Renege,   // request removed at its patience deadline
    Release,  // units returned
    Depart,   // entity left after its stay
    Exit,     // entity left without holding anything
};

std::string_view to_string(TraceKind kind) noexcept;

struct TraceEvent {
    SimTime time = 0.0;
    TraceKind kind = TraceKind::Arrive;
    EntityId entity = 0;
    std::string subject;  // resource name, or "-" for entity-level events
    int units = 0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Append-only event log. One line per event when written out:
/// `<time> <kind> <entity> <subject> <units>` with the time at three decimals.
class Trace {
public:
    void record(SimTime time, TraceKind kind, EntityId entity, std::string_view subject, int units);

    const std::vector<TraceEvent>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    void clear() { events_.clear(); }

    void write(std::ostream& os) const;
    std::string str() const;

    /// Parses the text form produced by write(); blank lines and `#` comments are skipped.
    static Trace parse(std::istream& is);

private:
    std::vector<TraceEvent> events_;
};

}  // namespace shelter::des
