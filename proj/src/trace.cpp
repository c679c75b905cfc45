#include "shelter/trace.hpp"

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace shelter::des {

namespace {

constexpr std::array<std::pair<TraceKind, std::string_view>, 7> kKindNames{{
    {TraceKind::Arrive, "arrive"},
    {TraceKind::Request, "request"},
    {TraceKind::Grant, "grant"},
    {TraceKind::Renege, "renege"},
    {TraceKind::Release, "release"},
    {TraceKind::Depart, "depart"},
    {TraceKind::Exit, "exit"},
}};

TraceKind kind_from_string(std::string_view s)
{
    for (const auto& [kind, name] : kKindNames) {
        if (name == s) {
            return kind;
        }
    }
    throw std::runtime_error("unknown trace event kind: " + std::string(s));
}

}  // namespace

std::string_view to_string(TraceKind kind) noexcept
{
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

void Trace::record(SimTime time, TraceKind kind, EntityId entity, std::string_view subject, int units)
{
    events_.push_back(TraceEvent{time, kind, entity, std::string(subject.empty() ? "-" : subject), units});
}

void Trace::write(std::ostream& os) const
{
    char buf[32];
    for (const auto& e : events_) {
        std::snprintf(buf, sizeof buf, "%.3f", e.time);
        os << buf << ' ' << to_string(e.kind) << ' ' << e.entity << ' ' << e.subject << ' ' << e.units << '\n';
    }
}

std::string Trace::str() const
{
    std::ostringstream os;
    write(os);
    return os.str();
}

Trace Trace::parse(std::istream& is)
{
    Trace trace;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream ls(line);
        TraceEvent e;
        std::string kind;
        if (!(ls >> e.time >> kind >> e.entity >> e.subject >> e.units)) {
            throw std::runtime_error("malformed trace line " + std::to_string(lineno) + ": " + line);
        }
        e.kind = kind_from_string(kind);
        trace.events_.push_back(std::move(e));
    }
    return trace;
}

}  // namespace shelter::des
