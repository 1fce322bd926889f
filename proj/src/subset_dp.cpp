#include "mmsched/subset_dp.hpp"

#include <algorithm>
#include <string>

#include "mmsched/kernels.hpp"

namespace mmsched {

namespace {

void check_memory(std::uint64_t bytes, const DpLimits& limits) {
  if (bytes > limits.max_table_bytes)
    throw CapExceeded("subset DP tables need " + std::to_string(bytes) + " bytes, cap is " +
                      std::to_string(limits.max_table_bytes));
}

// next[S] = OR over S' subset of S of (prev[S \ S'] && pick[S']).
std::vector<std::uint8_t> extend_row(const std::vector<std::uint8_t>& prev, const std::vector<std::uint8_t>& pick) {
  std::vector<std::uint8_t> next(prev.size(), 0);
  for (std::uint64_t s = 0; s < prev.size(); ++s) {
    std::uint64_t sub = s;
    while (true) {
      if (pick[sub] && prev[s ^ sub]) {
        next[s] = 1;
        break;
      }
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
  }
  return next;
}

// next[S] = max over S' subset of S of min(prev[S \ S'], share[S']).
std::vector<Value> extend_share_row(const std::vector<Value>& prev, const std::vector<Value>& share) {
  std::vector<Value> next(prev.size(), kernels::kNegInf);
  for (std::uint64_t s = 0; s < prev.size(); ++s) {
    Value best = kernels::kNegInf;
    std::uint64_t sub = s;
    while (true) {
      const Value here = std::min(prev[s ^ sub], share[sub]);
      if (here > best) best = here;
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    next[s] = best;
  }
  return next;
}

std::uint64_t find_split(std::uint64_t s, const std::vector<std::uint8_t>& prev, const std::vector<std::uint8_t>& pick) {
  std::uint64_t sub = s;
  while (true) {
    if (pick[sub] && prev[s ^ sub]) return sub;
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }
  throw std::logic_error("subset DP back-trace found no split");
}

void assign_mask(Schedule& schedule, std::uint64_t mask, int machine) {
  for (std::size_t t = 0; t < schedule.assignment.size(); ++t)
    if ((mask >> t) & 1U) schedule.assignment[t] = machine;
}

// Splits the full job set over the chain of row predicates picks[0..k-1]
// (each pick[k][S] says S may go to slot k). Returns the slot of each job.
std::optional<Schedule> chain_split(const SubsetTables& tables, const std::vector<std::vector<std::uint8_t>>& picks,
                                    const std::vector<int>& slot_machine) {
  const auto& kern = kernels::active();
  const std::size_t size = tables.size();
  const std::uint64_t full = tables.full();
  const std::size_t rows = picks.size();

  std::vector<std::vector<std::uint8_t>> reach;
  reach.push_back(picks[0]);
  for (std::size_t k = 1; k + 1 < rows; ++k) reach.push_back(extend_row(reach.back(), picks[k]));

  Schedule schedule;
  schedule.assignment.assign(static_cast<std::size_t>(tables.jobs()), 0);
  std::uint64_t rest = full;
  if (rows == 1) {
    if (!reach[0][full]) return std::nullopt;
  } else {
    const std::int64_t last = kern.first_and_reversed(reach[rows - 2].data(), picks[rows - 1].data(), size);
    if (last < 0) return std::nullopt;
    assign_mask(schedule, static_cast<std::uint64_t>(last), slot_machine[rows - 1]);
    rest = full ^ static_cast<std::uint64_t>(last);
    for (std::size_t k = rows - 2; k >= 1; --k) {
      const std::uint64_t sub = find_split(rest, reach[k - 1], picks[k]);
      assign_mask(schedule, sub, slot_machine[k]);
      rest ^= sub;
    }
  }
  assign_mask(schedule, rest, slot_machine[0]);
  return schedule;
}

void check_targets(const Instance& inst, const Targets& targets) {
  if (targets.phi.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("targets length differs from machine count");
}

}  // namespace

SubsetTables::SubsetTables(const Instance& inst, const DpLimits& limits) : inst_(inst), jobs_(inst.jobs()) {
  if (jobs_ > limits.max_jobs || jobs_ > 30)
    throw CapExceeded("subset DP is limited to n <= " + std::to_string(limits.max_jobs) + " jobs (instance has " +
                      std::to_string(jobs_) + "); use an n-fold engine");
  const auto& kern = kernels::active();
  feasible_.assign(size(), 1);
  std::vector<Value> weights(static_cast<std::size_t>(jobs_));
  std::vector<Value> sums(size());
  for (int g = 0; g < inst.groups(); ++g) {
    const auto classes = deadline_classes(inst, g);
    for (Value bound : classes.deadlines) {
      for (int t = 0; t < jobs_; ++t) {
        const Job& job = inst.job(t);
        weights[static_cast<std::size_t>(t)] = (job.group == g && job.d <= bound) ? job.p : 0;
      }
      kern.subset_sums(weights.data(), jobs_, sums.data());
      kern.mark_within(sums.data(), size(), bound, feasible_.data());
    }
  }
}

std::vector<Value> SubsetTables::value_sums(int machine) const {
  std::vector<Value> weights(static_cast<std::size_t>(jobs_));
  for (int t = 0; t < jobs_; ++t) weights[static_cast<std::size_t>(t)] = inst_.value(machine, t);
  std::vector<Value> sums(size());
  kernels::active().subset_sums(weights.data(), jobs_, sums.data());
  return sums;
}

std::vector<Value> SubsetTables::penalty_sums() const {
  std::vector<Value> weights(static_cast<std::size_t>(jobs_));
  for (int t = 0; t < jobs_; ++t) weights[static_cast<std::size_t>(t)] = inst_.penalty(t);
  std::vector<Value> sums(size());
  kernels::active().subset_sums(weights.data(), jobs_, sums.data());
  return sums;
}

std::vector<std::uint8_t> SubsetTables::qualifying(int machine, Value threshold) const {
  const auto sums = value_sums(machine);
  std::vector<std::uint8_t> out(size());
  kernels::active().gate_threshold(sums.data(), feasible_.data(), size(), threshold, out.data());
  return out;
}

std::vector<Value> SubsetTables::shares(int machine) const {
  const auto sums = value_sums(machine);
  std::vector<Value> out(size());
  kernels::active().gate_values(sums.data(), feasible_.data(), size(), out.data());
  return out;
}

std::optional<Schedule> dp_feasible(const Instance& inst, const Targets& targets, const DpLimits& limits) {
  check_targets(inst, targets);
  const auto m = static_cast<std::uint64_t>(inst.machines());
  if (inst.jobs() <= 30) check_memory(2 * m * (std::uint64_t{1} << inst.jobs()), limits);
  SubsetTables tables(inst, limits);
  std::vector<std::vector<std::uint8_t>> picks;
  std::vector<int> slots;
  for (int i = 0; i < inst.machines(); ++i) {
    picks.push_back(tables.qualifying(i, targets.phi[static_cast<std::size_t>(i)]));
    slots.push_back(i);
  }
  return chain_split(tables, picks, slots);
}

std::optional<Schedule> dp_feasible_with_rejection(const Instance& inst, const Targets& targets, Value budget,
                                                   const DpLimits& limits) {
  check_targets(inst, targets);
  if (!inst.has_penalties() && inst.jobs() > 0) throw InputError("rejection needs penalties on every job");
  const auto m = static_cast<std::uint64_t>(inst.machines()) + 1;
  if (inst.jobs() <= 30) check_memory(2 * m * (std::uint64_t{1} << inst.jobs()), limits);
  SubsetTables tables(inst, limits);
  std::vector<std::vector<std::uint8_t>> picks;
  std::vector<int> slots;
  for (int i = 0; i < inst.machines(); ++i) {
    picks.push_back(tables.qualifying(i, targets.phi[static_cast<std::size_t>(i)]));
    slots.push_back(i);
  }
  // The late pseudo-machine ignores deadlines; only the budget applies.
  std::vector<Value> penalty = inst.jobs() > 0 ? tables.penalty_sums() : std::vector<Value>{0};
  std::vector<std::uint8_t> late(tables.size(), 1);
  kernels::active().mark_within(penalty.data(), tables.size(), budget, late.data());
  picks.push_back(std::move(late));
  slots.push_back(kLate);
  return chain_split(tables, picks, slots);
}

Extended dp_mms(const Instance& inst, int machine, const DpLimits& limits) {
  if (machine < 0 || machine >= inst.machines()) throw InputError("machine index out of range");
  if (inst.jobs() <= 30) check_memory(24 * (std::uint64_t{1} << inst.jobs()), limits);
  SubsetTables tables(inst, limits);
  const auto share = tables.shares(machine);
  Value result;
  if (inst.machines() == 1) {
    result = share[tables.full()];
  } else {
    std::vector<Value> row = share;
    for (int k = 1; k + 1 < inst.machines(); ++k) row = extend_share_row(row, share);
    result = kernels::active().max_min_reversed(row.data(), share.data(), tables.size());
  }
  return result == kernels::kNegInf ? Extended::neg_inf() : Extended(result);
}

std::vector<std::vector<std::uint8_t>> dp_feasibility_rows(const Instance& inst, const Targets& targets,
                                                           const DpLimits& limits) {
  check_targets(inst, targets);
  SubsetTables tables(inst, limits);
  std::vector<std::vector<std::uint8_t>> rows;
  rows.push_back(tables.qualifying(0, targets.phi[0]));
  for (int i = 1; i < inst.machines(); ++i)
    rows.push_back(extend_row(rows.back(), tables.qualifying(i, targets.phi[static_cast<std::size_t>(i)])));
  return rows;
}

std::vector<std::vector<Value>> dp_share_rows(const Instance& inst, int machine, const DpLimits& limits) {
  SubsetTables tables(inst, limits);
  const auto share = tables.shares(machine);
  std::vector<std::vector<Value>> rows{share};
  for (int k = 1; k < inst.machines(); ++k) rows.push_back(extend_share_row(rows.back(), share));
  return rows;
}

}  // namespace mmsched
