#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shelter/experiment.hpp"

namespace shelter {

// CSV layout. Every row carries the same columns:
//
//   record,name,capacity,avg_wait_days,max_wait_days,utilization,pct_reneged,ci_halfwidth_wait,value,ci_halfwidth_value
//
// `record` is `resource` (one row per pool; bed first) or `flow` (youth-flow
// counters, mean per replication in `value`). Waits are in days at two
// decimals; utilization and pct_reneged are percentages at one decimal.
// Fields that do not apply, or are undefined (no served requests, a single
// replication for a half-width), are left empty. Sweep output prefixes
// `param,param_value` to each row.

void write_summary_csv(std::ostream& os, const ScenarioSummary& summary);
void write_sweep_csv(std::ostream& os, const std::string& parameter, const std::vector<SweepPoint>& points);

/// Aligned, human-readable table in the shape of the usual service report:
/// average and maximum wait, utilization, and percent reneged per resource,
/// followed by the youth-flow counters.
std::string format_summary_table(const ScenarioSummary& summary);

}  // namespace shelter
