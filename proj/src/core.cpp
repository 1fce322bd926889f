#include "mmsched/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mmsched {

Instance::Instance(int machines, std::vector<Job> jobs) : machines_(machines), jobs_(std::move(jobs)) {
  if (machines_ < 1) throw InputError("instance needs at least one machine");

  std::set<std::string> ids;
  std::size_t with_penalty = 0;
  for (const auto& job : jobs_) {
    if (!ids.insert(job.id).second) throw InputError("duplicate job id '" + job.id + "'");
    if (job.p < 0 || job.d < 0) throw InputError("job '" + job.id + "' has negative p or d");
    if (job.group < 0) throw InputError("job '" + job.id + "' has a negative group");
    if (job.values.size() != static_cast<std::size_t>(machines_))
      throw InputError("job '" + job.id + "' has " + std::to_string(job.values.size()) +
                       " values, expected " + std::to_string(machines_));
    if (job.penalty) {
      if (*job.penalty < 0) throw InputError("job '" + job.id + "' has a negative penalty");
      ++with_penalty;
    }
  }
  if (with_penalty != 0 && with_penalty != jobs_.size())
    throw InputError("penalties must be given for every job or for none");
  has_penalties_ = with_penalty != 0 && !jobs_.empty();

  // Normalise group ids to 0..lambda-1, preserving their order.
  std::map<int, int> renumber;
  for (const auto& job : jobs_) renumber.emplace(job.group, 0);
  int next = 0;
  for (auto& [orig, id] : renumber) id = next++;
  members_.assign(renumber.size(), {});
  for (std::size_t t = 0; t < jobs_.size(); ++t) {
    jobs_[t].group = renumber[jobs_[t].group];
    members_[static_cast<std::size_t>(jobs_[t].group)].push_back(static_cast<int>(t));
  }

  std::set<Value> deadlines;
  for (const auto& job : jobs_) {
    p_max_ = std::max(p_max_, job.p);
    d_max_ = std::max(d_max_, job.d);
    deadlines.insert(job.d);
    for (Value v : job.values) v_max_ = std::max(v_max_, v < 0 ? -v : v);
    if (job.penalty) w_max_ = std::max(w_max_, *job.penalty);
  }
  distinct_deadlines_ = static_cast<int>(deadlines.size());
  for (const auto& g : members_) max_group_size_ = std::max(max_group_size_, static_cast<int>(g.size()));
}

Value Instance::penalty(int t) const {
  const auto& job = jobs_.at(static_cast<std::size_t>(t));
  if (!job.penalty) throw InputError("job '" + job.id + "' has no penalty");
  return *job.penalty;
}

Value Instance::min_possible_value(int machine) const {
  Value total = 0;
  for (int t = 0; t < jobs(); ++t) total += std::min<Value>(value(machine, t), 0);
  return total;
}

Value Instance::max_possible_value(int machine) const {
  Value total = 0;
  for (int t = 0; t < jobs(); ++t) total += std::max<Value>(value(machine, t), 0);
  return total;
}

Instance with_uniform_valuation(const Instance& inst, int machine) {
  std::vector<Job> jobs(inst.job_list().begin(), inst.job_list().end());
  for (auto& job : jobs) {
    Value v = job.values.at(static_cast<std::size_t>(machine));
    std::fill(job.values.begin(), job.values.end(), v);
  }
  return Instance(inst.machines(), std::move(jobs));
}

namespace {

DeadlineClasses classes_for(const Instance& inst, const std::vector<int>& jobs) {
  DeadlineClasses dc;
  for (int t : jobs) dc.deadlines.push_back(inst.job(t).d);
  std::sort(dc.deadlines.begin(), dc.deadlines.end());
  dc.deadlines.erase(std::unique(dc.deadlines.begin(), dc.deadlines.end()), dc.deadlines.end());
  dc.class_of.assign(static_cast<std::size_t>(inst.jobs()), -1);
  for (int t : jobs) {
    auto it = std::lower_bound(dc.deadlines.begin(), dc.deadlines.end(), inst.job(t).d);
    dc.class_of[static_cast<std::size_t>(t)] = static_cast<int>(it - dc.deadlines.begin());
  }
  return dc;
}

void check_indices(std::span<const int> bundle, const Instance& inst) {
  for (int t : bundle)
    if (t < 0 || t >= inst.jobs()) throw InputError("job index " + std::to_string(t) + " out of range");
}

}  // namespace

DeadlineClasses deadline_classes(const Instance& inst) {
  std::vector<int> all(static_cast<std::size_t>(inst.jobs()));
  std::iota(all.begin(), all.end(), 0);
  return classes_for(inst, all);
}

DeadlineClasses deadline_classes(const Instance& inst, int group) {
  return classes_for(inst, inst.group_members(group));
}

std::vector<int> Schedule::bundle(int machine) const {
  std::vector<int> out;
  for (std::size_t t = 0; t < assignment.size(); ++t)
    if (assignment[t] == machine) out.push_back(static_cast<int>(t));
  return out;
}

std::vector<int> Schedule::late_jobs() const { return bundle(kLate); }

bool edf_feasible(std::span<const int> bundle, const Instance& inst) {
  check_indices(bundle, inst);
  if (bundle.empty()) return true;
  const int group = inst.job(bundle.front()).group;
  for (int t : bundle)
    if (inst.job(t).group != group) throw InputError("edf_feasible: bundle spans several groups");

  std::vector<int> order(bundle.begin(), bundle.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Value da = inst.job(a).d, db = inst.job(b).d;
    return da != db ? da < db : a < b;
  });
  Value elapsed = 0;
  for (int t : order) {
    elapsed += inst.job(t).p;
    if (elapsed > inst.job(t).d) return false;
  }
  return true;
}

bool edf_feasible_by_classes(std::span<const int> bundle, const Instance& inst) {
  check_indices(bundle, inst);
  std::vector<Value> deadlines;
  for (int t : bundle) deadlines.push_back(inst.job(t).d);
  std::sort(deadlines.begin(), deadlines.end());
  deadlines.erase(std::unique(deadlines.begin(), deadlines.end()), deadlines.end());
  for (Value bound : deadlines) {
    Value load = 0;
    for (int t : bundle)
      if (inst.job(t).d <= bound) load += inst.job(t).p;
    if (load > bound) return false;
  }
  return true;
}

bool bundle_feasible(std::span<const int> bundle, const Instance& inst) {
  check_indices(bundle, inst);
  std::map<int, std::vector<int>> by_group;
  for (int t : bundle) by_group[inst.job(t).group].push_back(t);
  for (const auto& [g, jobs] : by_group)
    if (!edf_feasible(jobs, inst)) return false;
  return true;
}

void validate_schedule(const Schedule& s, const Instance& inst) {
  if (s.assignment.size() != static_cast<std::size_t>(inst.jobs()))
    throw InputError("schedule covers " + std::to_string(s.assignment.size()) + " jobs, instance has " +
                     std::to_string(inst.jobs()));
  for (int a : s.assignment) {
    if (a == kLate) {
      if (!inst.has_penalties()) throw InputError("LATE assignment in an instance without penalties");
      continue;
    }
    if (a < 0 || a >= inst.machines()) throw InputError("machine index " + std::to_string(a) + " out of range");
  }
}

bool schedule_feasible(const Schedule& s, const Instance& inst) {
  validate_schedule(s, inst);
  for (int i = 0; i < inst.machines(); ++i)
    if (!bundle_feasible(s.bundle(i), inst)) return false;
  return true;
}

Value value_of(const Schedule& s, int machine, const Instance& inst) {
  Value total = 0;
  for (std::size_t t = 0; t < s.assignment.size(); ++t)
    if (s.assignment[t] == machine) total += inst.value(machine, static_cast<int>(t));
  return total;
}

std::vector<Value> machine_values(const Schedule& s, const Instance& inst) {
  std::vector<Value> values(static_cast<std::size_t>(inst.machines()), 0);
  for (std::size_t t = 0; t < s.assignment.size(); ++t) {
    const int i = s.assignment[t];
    if (i != kLate) values[static_cast<std::size_t>(i)] += inst.value(i, static_cast<int>(t));
  }
  return values;
}

Value late_penalty(const Schedule& s, const Instance& inst) {
  Value total = 0;
  for (std::size_t t = 0; t < s.assignment.size(); ++t)
    if (s.assignment[t] == kLate) total += inst.penalty(static_cast<int>(t));
  return total;
}

}  // namespace mmsched
