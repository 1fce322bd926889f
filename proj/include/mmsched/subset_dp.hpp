#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmsched/core.hpp"

// Dynamic programs over (machine prefix x job subset). Cell A[k][S] answers
// whether jobs S can be split over machines 0..k meeting their targets
// (feasibility variant) or the best minimum bundle value of such a split
// (share variant). Subsets are bitmasks over job indices.

namespace mmsched {

struct DpLimits {
  int max_jobs = 22;
  /// Upper bound on bytes held by the tables of one run.
  std::uint64_t max_table_bytes = std::uint64_t{1} << 29;
};

/// Per-subset data shared by every DP run on one instance.
class SubsetTables {
 public:
  SubsetTables(const Instance& inst, const DpLimits& limits);

  int jobs() const { return jobs_; }
  std::size_t size() const { return std::size_t{1} << jobs_; }
  std::uint64_t full() const { return size() - 1; }

  /// 1 iff the subset passes EDF separately within every group.
  const std::vector<std::uint8_t>& feasible() const { return feasible_; }
  /// Sum of v_machine over each subset.
  std::vector<Value> value_sums(int machine) const;
  /// Sum of rejection penalties over each subset.
  std::vector<Value> penalty_sums() const;
  /// d_k: feasible and worth at least threshold to the machine.
  std::vector<std::uint8_t> qualifying(int machine, Value threshold) const;
  /// f_i: the subset's value to the machine, or kernels::kNegInf if infeasible.
  std::vector<Value> shares(int machine) const;

 private:
  const Instance& inst_;
  int jobs_;
  std::vector<std::uint8_t> feasible_;
};

/// A feasible schedule with v_i >= phi_i for all i, or nullopt.
std::optional<Schedule> dp_feasible(const Instance& inst, const Targets& targets, const DpLimits& limits = {});

/// As dp_feasible, with jobs allowed to go late up to a total penalty budget.
std::optional<Schedule> dp_feasible_with_rejection(const Instance& inst, const Targets& targets, Value budget,
                                                   const DpLimits& limits = {});

/// Maximin share of one machine; -inf iff no feasible full allocation exists.
Extended dp_mms(const Instance& inst, int machine, const DpLimits& limits = {});

/// Every row of the feasibility table, last row included (test inspection).
std::vector<std::vector<std::uint8_t>> dp_feasibility_rows(const Instance& inst, const Targets& targets,
                                                           const DpLimits& limits = {});
/// Every row of the share table for one machine (test inspection).
std::vector<std::vector<Value>> dp_share_rows(const Instance& inst, int machine, const DpLimits& limits = {});

}  // namespace mmsched
