#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mmsched/core.hpp"
#include "mmsched/ratio.hpp"

// Exhaustive ground truth for desk-scale instances. Assignments are
// enumerated as a mixed-radix counter (job 0 most significant) with pruning
// by incremental EDF feasibility of every (machine, group) bundle.

namespace mmsched {

struct OracleLimits {
  /// Refuse when m^n (or (m+1)^n with rejections) exceeds this. The maximum
  /// value disables the check.
  std::uint64_t max_assignments = 20'000'000;
};

struct OracleReport {
  bool feasible = false;      // some feasible full allocation exists
  std::vector<Extended> mms;  // -inf everywhere when !feasible
  Ratio best_mult = Ratio::neg_inf();
  Value best_add = 0;
  Value best_welfare = 0;
  Schedule mult_witness;
  Schedule add_witness;
  Schedule welfare_witness;
};

struct RejectionAnswer {
  Value budget = 0;
  Schedule schedule;
};

/// Calls visit for every feasible assignment; visit returns false to stop.
/// With allow_late, each job may also be rejected (instance needs penalties).
void for_each_feasible(const Instance& inst, bool allow_late, const OracleLimits& limits,
                       const std::function<bool(const Schedule&)>& visit);

std::uint64_t oracle_count_feasible(const Instance& inst, const OracleLimits& limits = {});

Extended oracle_mms(const Instance& inst, int machine, const OracleLimits& limits = {});
std::vector<Extended> oracle_mms_all(const Instance& inst, const OracleLimits& limits = {});

/// MMS vector plus the optimum and a witness for each objective.
OracleReport oracle_solve(const Instance& inst, const OracleLimits& limits = {});

/// Any feasible schedule with v_i >= phi_i for all i. Also prunes branches
/// that can no longer reach a target.
std::optional<Schedule> oracle_exact(const Instance& inst, const Targets& targets,
                                     const OracleLimits& limits = {});

/// Minimum total penalty of late jobs such that the remaining jobs are
/// feasible and meet the targets; nullopt when impossible even with every
/// job late.
std::optional<RejectionAnswer> oracle_min_rejection(const Instance& inst, const Targets& targets,
                                                    const OracleLimits& limits = {});

}  // namespace mmsched
