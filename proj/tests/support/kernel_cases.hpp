#pragma once

// Randomized single-resource cases for property checks of the queueing
// kernel. Shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shelter/calendar.hpp"
#include "shelter/resource.hpp"
#include "shelter/trace.hpp"

namespace kernel_cases {

using shelter::des::Calendar;
using shelter::des::EntityId;
using shelter::des::Resource;
using shelter::des::Trace;
using shelter::des::TraceKind;

struct CaseRequest {
    EntityId entity;
    double time;
    int units;
    double patience;
    double hold;
};

struct KernelCase {
    std::uint64_t seed = 0;
    int capacity = 1;
    std::vector<CaseRequest> requests;
    std::optional<double> reset_at;
    double horizon = 0.0;
};

struct KernelRun {
    Trace trace;
    std::uint64_t request_count = 0;
    std::uint64_t served = 0;
    std::uint64_t reneged = 0;
    std::uint64_t counted_in_queue = 0;
};

/// Times sit on a half-day grid so simultaneous events are common.
inline KernelCase make_case(std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    auto pick = [&gen](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };

    KernelCase c;
    c.seed = seed;
    c.capacity = pick(1, 5);
    const int n = pick(1, 25);
    for (int i = 0; i < n; ++i) {
        c.requests.push_back(CaseRequest{
            static_cast<EntityId>(i + 1),
            0.5 * pick(0, 40),
            pick(1, c.capacity),
            0.5 * pick(0, 16),
            0.5 * pick(0, 20),
        });
    }
    if (pick(0, 1) == 1) {
        c.reset_at = 0.5 * pick(0, 40);
    }
    c.horizon = 0.5 * pick(10, 80);
    return c;
}

inline KernelRun run_case(const KernelCase& c)
{
    KernelRun run;
    Calendar cal;
    Resource r(cal, "r", c.capacity, &run.trace);
    for (const auto& q : c.requests) {
        cal.schedule(q.time, [&cal, &r, q] {
            r.request(
                q.entity, q.units, q.patience,
                [&cal, &r, q](double) { cal.schedule_in(q.hold, [&r, q] { r.release(q.entity, q.units); }); },
                {});
        });
    }
    if (c.reset_at) {
        cal.schedule(*c.reset_at, [&r] { r.reset_stats(); });
    }
    cal.run_until(c.horizon);
    run.request_count = r.stats().request_count;
    run.served = r.stats().served_waits.size();
    run.reneged = r.stats().renege_count;
    run.counted_in_queue = r.counted_in_queue();
    return run;
}

/// Violations of the kernel contract; empty when the run is consistent.
inline std::vector<std::string> check_case(const KernelCase& c, const KernelRun& run)
{
    std::vector<std::string> problems;
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << "seed " << c.seed << ": " << what;
        problems.push_back(os.str());
    };

    std::map<EntityId, CaseRequest> issued;
    for (const auto& q : c.requests) {
        issued[q.entity] = q;
    }

    struct Waiting {
        EntityId entity;
        double since;
        int units;
    };
    std::vector<Waiting> queue;  // FIFO order
    std::map<EntityId, std::size_t> request_index;
    std::vector<EntityId> grant_order;
    int busy = 0;
    const auto& events = run.trace.events();

    auto head_blocked = [&] { return queue.empty() || busy + queue.front().units > c.capacity; };

    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        const auto& q = issued[e.entity];
        switch (e.kind) {
        case TraceKind::Request:
            request_index[e.entity] = request_index.size();
            queue.push_back({e.entity, e.time, e.units});
            break;
        case TraceKind::Grant: {
            if (queue.empty() || queue.front().entity != e.entity) {
                fail("entity " + std::to_string(e.entity) + " granted out of FIFO order");
                return problems;
            }
            const double wait = e.time - queue.front().since;
            if (wait > q.patience) {
                fail("entity " + std::to_string(e.entity) + " waited beyond its patience");
            }
            queue.erase(queue.begin());
            busy += e.units;
            grant_order.push_back(e.entity);
            break;
        }
        case TraceKind::Renege: {
            auto it = std::find_if(queue.begin(), queue.end(), [&](const Waiting& w) { return w.entity == e.entity; });
            if (it == queue.end()) {
                fail("renege of an entity that is not waiting");
                return problems;
            }
            if (e.time != it->since + q.patience) {
                fail("entity " + std::to_string(e.entity) + " reneged at the wrong time");
            }
            queue.erase(it);
            break;
        }
        case TraceKind::Release:
            busy -= e.units;
            break;
        default:
            break;
        }
        if (busy > c.capacity || busy < 0) {
            fail("busy units " + std::to_string(busy) + " outside [0, capacity]");
        }
        // After the last event of an instant, a waiting head must not fit.
        const bool instant_ends = i + 1 == events.size() || events[i + 1].time != e.time;
        if (instant_ends && !head_blocked()) {
            fail("head request left waiting while units were free");
        }
    }

    for (std::size_t k = 1; k < grant_order.size(); ++k) {
        if (request_index[grant_order[k - 1]] > request_index[grant_order[k]]) {
            fail("grants out of request order");
        }
    }
    for (const auto& w : queue) {
        if (c.horizon > w.since + issued[w.entity].patience) {
            fail("entity " + std::to_string(w.entity) + " still waiting past its deadline");
        }
    }
    if (run.request_count != run.served + run.reneged + run.counted_in_queue) {
        fail("request count does not balance served + reneged + queued");
    }
    if (!c.reset_at && run.request_count != request_index.size()) {
        fail("request count differs from the number of requests issued");
    }
    return problems;
}

/// Two runs of the same case produce the same trace.
inline bool deterministic(const KernelCase& c)
{
    return run_case(c).trace.events() == run_case(c).trace.events();
}

}  // namespace kernel_cases
