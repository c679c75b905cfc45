#include "shelter/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace shelter {

namespace {

constexpr const char* kHeader =
    "record,name,capacity,avg_wait_days,max_wait_days,utilization,pct_reneged,ci_halfwidth_wait,value,"
    "ci_halfwidth_value";

std::string fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string fixed(const std::optional<double>& v, int decimals)
{
    return v ? fixed(*v, decimals) : std::string();
}

std::string mean_of(const std::optional<Estimate>& e, int decimals, double scale = 1.0)
{
    return e ? fixed(e->mean * scale, decimals) : std::string();
}

std::string half_width_of(const std::optional<Estimate>& e, int decimals)
{
    return e && e->half_width ? fixed(*e->half_width, decimals) : std::string();
}

void write_rows(std::ostream& os, const std::string& prefix, const ScenarioSummary& s)
{
    for (const auto& r : s.resources) {
        os << prefix << "resource," << r.name << ',' << r.capacity << ',' << mean_of(r.avg_wait, 2) << ','
           << fixed(r.max_wait, 2) << ',' << mean_of(r.utilization, 1, 100.0) << ',' << mean_of(r.pct_reneged, 1)
           << ',' << half_width_of(r.avg_wait, 2) << ",,\n";
    }
    const std::pair<const char*, const Estimate*> flows[] = {
        {"arrivals", &s.flow.arrivals},
        {"bsy_arrivals", &s.flow.bsy_arrivals},
        {"served", &s.flow.served},
        {"left_unserved", &s.flow.left_unserved},
        {"still_in_system", &s.flow.still_in_system},
        {"bed_renege_exit", &s.flow.bed_renege_exit},
        {"bed_renege_stayed", &s.flow.bed_renege_stayed},
    };
    for (const auto& [name, e] : flows) {
        os << prefix << "flow," << name << ",,,,,,," << fixed(e->mean, 1) << ','
           << (e->half_width ? fixed(*e->half_width, 1) : std::string()) << '\n';
    }
}

}  // namespace

void write_summary_csv(std::ostream& os, const ScenarioSummary& summary)
{
    os << kHeader << '\n';
    write_rows(os, "", summary);
}

void write_sweep_csv(std::ostream& os, const std::string& parameter, const std::vector<SweepPoint>& points)
{
    os << "param,param_value," << kHeader << '\n';
    for (const auto& p : points) {
        write_rows(os, parameter + ',' + std::to_string(p.value) + ',', p.summary);
    }
}

std::string format_summary_table(const ScenarioSummary& s)
{
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %9s %14s %14s %11s %10s\n", "Service", "Capacity", "Avg. Wait (d)",
                  "Max. Wait (d)", "Avg. Util.", "% Reneged");
    os << line;
    for (const auto& r : s.resources) {
        const std::string avg = r.avg_wait ? fixed(r.avg_wait->mean, 2) : "-";
        const std::string max = r.max_wait ? fixed(*r.max_wait, 2) : "-";
        const std::string util = r.utilization ? fixed(r.utilization->mean * 100.0, 1) + "%" : "-";
        const std::string pct = r.pct_reneged ? fixed(r.pct_reneged->mean, 1) + "%" : "-";
        std::snprintf(line, sizeof line, "%-22s %9d %14s %14s %11s %10s\n", r.name.c_str(), r.capacity, avg.c_str(),
                      max.c_str(), util.c_str(), pct.c_str());
        os << line;
    }
    os << "\nYouth flow over the statistics window (mean per replication, n=" << s.replications.size() << ")\n";
    const std::pair<const char*, const Estimate*> flows[] = {
        {"arrivals", &s.flow.arrivals},
        {"bed seekers", &s.flow.bsy_arrivals},
        {"served then left", &s.flow.served},
        {"left unserved", &s.flow.left_unserved},
        {"still in system", &s.flow.still_in_system},
        {"bed renege, exited", &s.flow.bed_renege_exit},
        {"bed renege, stayed", &s.flow.bed_renege_stayed},
    };
    for (const auto& [name, e] : flows) {
        const std::string hw = e->half_width ? " +/- " + fixed(*e->half_width, 1) : std::string();
        std::snprintf(line, sizeof line, "  %-20s %10s%s\n", name, fixed(e->mean, 1).c_str(), hw.c_str());
        os << line;
    }
    return os.str();
}

}  // namespace shelter
