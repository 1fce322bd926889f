#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mmsched/core.hpp"

// Welfare engine for few jobs: every feasible partition of the jobs into at
// most min(n, m) bundles is matched to the machines by a min-cost assignment.

namespace mmsched {

struct MatchingLimits {
  int max_jobs = 9;
};

/// Min-cost perfect assignment on a square cost matrix (row-major, size k*k).
/// Returns the total cost and, for each row, its column.
std::pair<Value, std::vector<int>> min_cost_assignment(std::span<const Value> cost, int k);

/// Calls visit with the bundle index of each job for every partition into at
/// most max_blocks feasible bundles, bundles numbered by first job.
/// visit returns false to stop.
void for_each_feasible_partition(const Instance& inst, int max_blocks,
                                 const std::function<bool(const std::vector<int>&, int)>& visit);

struct WelfareAnswer {
  Value total_shortfall = 0;
  Schedule schedule;
};

/// Minimum of sum_i max(mms_i - v_i, 0) over feasible schedules; nullopt when
/// no feasible partition exists.
std::optional<WelfareAnswer> matching_wf(const Instance& inst, std::span<const Value> mms,
                                         const MatchingLimits& limits = {});

}  // namespace mmsched
