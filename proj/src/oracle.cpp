#include "mmsched/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mmsched {

namespace {

void check_cap(const Instance& inst, bool allow_late, const OracleLimits& limits) {
  if (limits.max_assignments == std::numeric_limits<std::uint64_t>::max()) return;
  const std::uint64_t radix = static_cast<std::uint64_t>(inst.machines()) + (allow_late ? 1 : 0);
  std::uint64_t total = 1;
  for (int t = 0; t < inst.jobs(); ++t) {
    if (radix != 0 && total > limits.max_assignments / radix) {
      throw CapExceeded("instance too large for oracle: " + std::to_string(radix) + "^" +
                        std::to_string(inst.jobs()) + " assignments exceed cap " +
                        std::to_string(limits.max_assignments));
    }
    total *= radix;
  }
}

struct Slot {
  Value deadline;
  Value p;
  Value completion;
};

// Depth-first enumeration over job indices in order. Bundles are kept sorted
// by deadline with their EDF completion times so insertion checks are O(k).
class Search {
 public:
  Search(const Instance& inst, bool allow_late)
      : inst_(inst),
        allow_late_(allow_late),
        groups_(inst.groups()),
        bundles_(static_cast<std::size_t>(inst.machines() * inst.groups())),
        values_(static_cast<std::size_t>(inst.machines()), 0) {
    schedule_.assignment.assign(static_cast<std::size_t>(inst.jobs()), 0);
  }

  // prune(next_job) is consulted after each assignment; visit(schedule) at
  // every leaf. Either returning the stop flag ends the search.
  template <typename Prune, typename Visit>
  void run(Prune&& prune, Visit&& visit) {
    stopped_ = false;
    descend(0, prune, visit);
  }

  const std::vector<Value>& values() const { return values_; }
  Value penalty() const { return penalty_; }

 private:
  template <typename Prune, typename Visit>
  void descend(int t, Prune& prune, Visit& visit) {
    if (t == inst_.jobs()) {
      if (!visit(schedule_)) stopped_ = true;
      return;
    }
    const Job& job = inst_.job(t);
    for (int i = 0; i < inst_.machines() && !stopped_; ++i) {
      auto& bundle = bundles_[static_cast<std::size_t>(i * groups_ + job.group)];
      const std::size_t pos = insertion_point(bundle, job.d);
      if (!fits(bundle, pos, job)) continue;
      insert(bundle, pos, job);
      schedule_.assignment[static_cast<std::size_t>(t)] = i;
      values_[static_cast<std::size_t>(i)] += job.values[static_cast<std::size_t>(i)];
      if (!prune(t + 1)) descend(t + 1, prune, visit);
      values_[static_cast<std::size_t>(i)] -= job.values[static_cast<std::size_t>(i)];
      erase(bundle, pos, job);
    }
    if (allow_late_ && !stopped_) {
      schedule_.assignment[static_cast<std::size_t>(t)] = kLate;
      penalty_ += *job.penalty;
      if (!prune(t + 1)) descend(t + 1, prune, visit);
      penalty_ -= *job.penalty;
    }
  }

  static std::size_t insertion_point(const std::vector<Slot>& bundle, Value deadline) {
    // Equal deadlines go after existing ones; feasibility is tie-independent.
    return static_cast<std::size_t>(
        std::upper_bound(bundle.begin(), bundle.end(), deadline,
                         [](Value d, const Slot& s) { return d < s.deadline; }) -
        bundle.begin());
  }

  static bool fits(const std::vector<Slot>& bundle, std::size_t pos, const Job& job) {
    const Value before = pos == 0 ? 0 : bundle[pos - 1].completion;
    if (before + job.p > job.d) return false;
    for (std::size_t k = pos; k < bundle.size(); ++k)
      if (bundle[k].completion + job.p > bundle[k].deadline) return false;
    return true;
  }

  static void insert(std::vector<Slot>& bundle, std::size_t pos, const Job& job) {
    const Value before = pos == 0 ? 0 : bundle[pos - 1].completion;
    for (std::size_t k = pos; k < bundle.size(); ++k) bundle[k].completion += job.p;
    bundle.insert(bundle.begin() + static_cast<std::ptrdiff_t>(pos), Slot{job.d, job.p, before + job.p});
  }

  static void erase(std::vector<Slot>& bundle, std::size_t pos, const Job& job) {
    bundle.erase(bundle.begin() + static_cast<std::ptrdiff_t>(pos));
    for (std::size_t k = pos; k < bundle.size(); ++k) bundle[k].completion -= job.p;
  }

  const Instance& inst_;
  bool allow_late_;
  int groups_;
  std::vector<std::vector<Slot>> bundles_;
  std::vector<Value> values_;
  Value penalty_ = 0;
  Schedule schedule_;
  bool stopped_ = false;
};

// suffix[t][i]: the most machine i can still gain from jobs t..n-1.
std::vector<std::vector<Value>> gain_potential(const Instance& inst) {
  const auto n = static_cast<std::size_t>(inst.jobs());
  const auto m = static_cast<std::size_t>(inst.machines());
  std::vector<std::vector<Value>> suffix(n + 1, std::vector<Value>(m, 0));
  for (std::size_t t = n; t-- > 0;)
    for (std::size_t i = 0; i < m; ++i)
      suffix[t][i] = suffix[t + 1][i] + std::max<Value>(inst.value(static_cast<int>(i), static_cast<int>(t)), 0);
  return suffix;
}

std::vector<Value> bundle_values_for(const Schedule& s, const Instance& inst, int valuation) {
  std::vector<Value> values(static_cast<std::size_t>(inst.machines()), 0);
  for (std::size_t t = 0; t < s.assignment.size(); ++t)
    if (s.assignment[t] != kLate)
      values[static_cast<std::size_t>(s.assignment[t])] += inst.value(valuation, static_cast<int>(t));
  return values;
}

}  // namespace

void for_each_feasible(const Instance& inst, bool allow_late, const OracleLimits& limits,
                       const std::function<bool(const Schedule&)>& visit) {
  if (allow_late && !inst.has_penalties() && inst.jobs() > 0)
    throw InputError("rejection enumeration needs penalties on every job");
  check_cap(inst, allow_late, limits);
  Search search(inst, allow_late);
  search.run([](int) { return false; }, visit);
}

std::uint64_t oracle_count_feasible(const Instance& inst, const OracleLimits& limits) {
  std::uint64_t count = 0;
  for_each_feasible(inst, false, limits, [&](const Schedule&) {
    ++count;
    return true;
  });
  return count;
}

std::vector<Extended> oracle_mms_all(const Instance& inst, const OracleLimits& limits) {
  const auto m = static_cast<std::size_t>(inst.machines());
  std::vector<Extended> best(m, Extended::neg_inf());
  for_each_feasible(inst, false, limits, [&](const Schedule& s) {
    for (std::size_t i = 0; i < m; ++i) {
      auto values = bundle_values_for(s, inst, static_cast<int>(i));
      const Value worst = *std::min_element(values.begin(), values.end());
      if (best[i] < Extended(worst)) best[i] = worst;
    }
    return true;
  });
  return best;
}

Extended oracle_mms(const Instance& inst, int machine, const OracleLimits& limits) {
  if (machine < 0 || machine >= inst.machines()) throw InputError("machine index out of range");
  Extended best = Extended::neg_inf();
  for_each_feasible(inst, false, limits, [&](const Schedule& s) {
    auto values = bundle_values_for(s, inst, machine);
    const Value worst = *std::min_element(values.begin(), values.end());
    if (best < Extended(worst)) best = worst;
    return true;
  });
  return best;
}

OracleReport oracle_solve(const Instance& inst, const OracleLimits& limits) {
  OracleReport report;
  report.mms = oracle_mms_all(inst, limits);
  report.feasible = report.mms.front().finite();
  if (!report.feasible) return report;

  std::vector<Value> mms;
  for (const auto& e : report.mms) mms.push_back(e.value());

  bool first = true;
  for_each_feasible(inst, false, limits, [&](const Schedule& s) {
    const auto values = machine_values(s, inst);
    const Ratio mult = mult_objective(values, mms);
    const Value add = add_objective(values, mms);
    const Value welfare = welfare_objective(values, mms);
    if (first || report.best_mult < mult) {
      report.best_mult = mult;
      report.mult_witness = s;
    }
    if (first || add < report.best_add) {
      report.best_add = add;
      report.add_witness = s;
    }
    if (first || welfare < report.best_welfare) {
      report.best_welfare = welfare;
      report.welfare_witness = s;
    }
    first = false;
    return true;
  });
  return report;
}

std::optional<Schedule> oracle_exact(const Instance& inst, const Targets& targets, const OracleLimits& limits) {
  if (targets.phi.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("targets length differs from machine count");
  check_cap(inst, false, limits);
  const auto potential = gain_potential(inst);
  Search search(inst, false);
  std::optional<Schedule> found;
  auto unreachable = [&](int next) {
    const auto& values = search.values();
    const auto& rest = potential[static_cast<std::size_t>(next)];
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] + rest[i] < targets.phi[i]) return true;
    return false;
  };
  search.run(unreachable, [&](const Schedule& s) {
    if (unreachable(inst.jobs())) return true;
    found = s;
    return false;
  });
  return found;
}

std::optional<RejectionAnswer> oracle_min_rejection(const Instance& inst, const Targets& targets,
                                                    const OracleLimits& limits) {
  if (!inst.has_penalties() && inst.jobs() > 0) throw InputError("rejection needs penalties on every job");
  if (targets.phi.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("targets length differs from machine count");
  check_cap(inst, true, limits);
  const auto potential = gain_potential(inst);
  Search search(inst, true);
  std::optional<RejectionAnswer> best;
  auto hopeless = [&](int next) {
    if (best && search.penalty() >= best->budget) return true;
    const auto& values = search.values();
    const auto& rest = potential[static_cast<std::size_t>(next)];
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] + rest[i] < targets.phi[i]) return true;
    return false;
  };
  search.run(hopeless, [&](const Schedule& s) {
    if (hopeless(inst.jobs())) return true;
    const Value penalty = late_penalty(s, inst);
    if (!best || penalty < best->budget) best = RejectionAnswer{penalty, s};
    return true;
  });
  return best;
}

}  // namespace mmsched
