#include "mmsched/formulations.hpp"

#include <algorithm>
#include <string>

namespace mmsched {

namespace {

void check_targets(const Instance& inst, const Targets& targets) {
  if (targets.phi.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("targets length differs from machine count");
}

class CatalogWalk {
 public:
  CatalogWalk(const Instance& inst, const std::vector<int>& members, bool allow_late, int layer,
              const CatalogLimits& limits)
      : inst_(inst), members_(members), allow_late_(allow_late), layer_(layer), limits_(limits),
        bundles_(static_cast<std::size_t>(inst.machines())), entry_(members.size(), 0) {}

  std::vector<std::vector<int>> run() {
    descend(0);
    return std::move(out_);
  }

 private:
  void descend(std::size_t k) {
    if (k == members_.size()) {
      if (out_.size() >= limits_.max_schedules_per_layer)
        throw CapExceeded("layer " + std::to_string(layer_) + " has more than " +
                          std::to_string(limits_.max_schedules_per_layer) + " feasible schedules");
      out_.push_back(entry_);
      return;
    }
    const int t = members_[k];
    for (int i = 0; i < inst_.machines(); ++i) {
      auto& bundle = bundles_[static_cast<std::size_t>(i)];
      bundle.push_back(t);
      if (edf_feasible(bundle, inst_)) {
        entry_[k] = i;
        descend(k + 1);
      }
      bundle.pop_back();
    }
    if (allow_late_) {
      entry_[k] = kLate;
      descend(k + 1);
    }
  }

  const Instance& inst_;
  const std::vector<int>& members_;
  bool allow_late_;
  int layer_;
  const CatalogLimits& limits_;
  std::vector<std::vector<int>> bundles_;
  std::vector<int> entry_;
  std::vector<std::vector<int>> out_;
};

ScheduleProgram layer_program(const Instance& inst, const Targets& targets, bool allow_late, Value budget,
                              const CatalogLimits& limits) {
  check_targets(inst, targets);
  ScheduleProgram sp;
  sp.kind = Formulation::layers;
  sp.catalog = build_layer_catalog(inst, allow_late, limits);
  std::size_t width = 1;
  for (const auto& entries : sp.catalog.schedules) width = std::max(width, entries.size());
  sp.program = NFoldProgram(1, static_cast<int>(width));
  for (int i = 0; i < inst.machines(); ++i)
    sp.value_row.push_back(sp.program.add_global_row(Sense::ge, targets.phi[static_cast<std::size_t>(i)]));
  if (allow_late) sp.late_row = sp.program.add_global_row(Sense::le, budget);

  for (int k = 0; k < inst.groups(); ++k) {
    const int b = sp.program.add_block();
    const auto& members = inst.group_members(k);
    const auto& entries = sp.catalog.schedules[static_cast<std::size_t>(k)];
    sp.program.local_row(b, 0) = {Sense::eq, 1};
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const int var = static_cast<int>(j);
      sp.program.local_coef(b, 0, var) = 1;
      sp.program.upper(b, var) = 1;
      for (std::size_t q = 0; q < members.size(); ++q) {
        const int t = members[q];
        const int i = entries[j][q];
        if (i == kLate)
          sp.program.global_coef(b, sp.late_row, var) += inst.penalty(t);
        else
          sp.program.global_coef(b, sp.value_row[static_cast<std::size_t>(i)], var) += inst.value(i, t);
      }
    }
  }
  sp.schedule_blocks = sp.program.blocks();
  return sp;
}

// Blocks in order of (group, deadline, index): load rows then close early.
std::vector<int> deadline_order(const Instance& inst) {
  std::vector<int> order(static_cast<std::size_t>(inst.jobs()));
  for (int t = 0; t < inst.jobs(); ++t) order[static_cast<std::size_t>(t)] = t;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Job& x = inst.job(a);
    const Job& y = inst.job(b);
    if (x.group != y.group) return x.group < y.group;
    if (x.d != y.d) return x.d < y.d;
    return a < b;
  });
  return order;
}

ScheduleProgram deadline_program(const Instance& inst, const Targets& targets, bool allow_late, Value budget) {
  check_targets(inst, targets);
  const int m = inst.machines();
  ScheduleProgram sp;
  sp.kind = Formulation::deadlines;
  sp.program = NFoldProgram(1, m + (allow_late ? 1 : 0));
  if (allow_late) sp.late_column = m;

  // load_row[g][i][k]: machine i, deadline class k of group g.
  std::vector<std::vector<std::vector<int>>> load_row(static_cast<std::size_t>(inst.groups()));
  std::vector<DeadlineClasses> classes;
  for (int g = 0; g < inst.groups(); ++g) {
    classes.push_back(deadline_classes(inst, g));
    auto& rows = load_row[static_cast<std::size_t>(g)];
    rows.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      for (Value bound : classes.back().deadlines)
        rows[static_cast<std::size_t>(i)].push_back(sp.program.add_global_row(Sense::le, bound));
  }
  for (int i = 0; i < m; ++i)
    sp.value_row.push_back(sp.program.add_global_row(Sense::ge, targets.phi[static_cast<std::size_t>(i)]));
  if (allow_late) sp.late_row = sp.program.add_global_row(Sense::le, budget);

  for (int t : deadline_order(inst)) {
    const Job& job = inst.job(t);
    const int b = sp.program.add_block();
    sp.block_job.push_back(t);
    sp.program.local_row(b, 0) = {Sense::eq, 1};
    const auto& cls = classes[static_cast<std::size_t>(job.group)];
    for (int i = 0; i < m; ++i) {
      sp.program.local_coef(b, 0, i) = 1;
      sp.program.upper(b, i) = 1;
      sp.program.global_coef(b, sp.value_row[static_cast<std::size_t>(i)], i) = job.values[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < cls.deadlines.size(); ++k)
        if (job.d <= cls.deadlines[k])
          sp.program.global_coef(b, load_row[static_cast<std::size_t>(job.group)][static_cast<std::size_t>(i)][k], i) =
              job.p;
    }
    if (allow_late) {
      sp.program.local_coef(b, 0, m) = 1;
      sp.program.upper(b, m) = 1;
      sp.program.global_coef(b, sp.late_row, m) = inst.penalty(t);
    }
  }
  sp.schedule_blocks = sp.program.blocks();
  return sp;
}

void check_objective_free(const ScheduleProgram& sp, std::span<const Value> mms, const Instance& inst) {
  if (mms.size() != static_cast<std::size_t>(inst.machines())) throw InputError("mms length differs from machine count");
  if (sp.add_block >= 0 || !sp.welfare_blocks.empty()) throw InputError("program already has an objective");
}

// A block holding one slack variable in [0, upper] that adds to some rows.
int slack_block(NFoldProgram& p, Value upper) {
  const int b = p.add_block();
  for (int r = 0; r < p.local_rows(); ++r) p.local_row(b, r) = {Sense::eq, 0};
  p.upper(b, 0) = upper;
  p.cost(b, 0) = 1;
  return b;
}

}  // namespace

LayerCatalog build_layer_catalog(const Instance& inst, bool allow_late, const CatalogLimits& limits) {
  if (allow_late && !inst.has_penalties() && inst.jobs() > 0)
    throw InputError("rejection needs penalties on every job");
  LayerCatalog catalog;
  for (int k = 0; k < inst.groups(); ++k)
    catalog.schedules.push_back(CatalogWalk(inst, inst.group_members(k), allow_late, k, limits).run());
  return catalog;
}

ScheduleProgram build_layer_nfold(const Instance& inst, const Targets& targets, const CatalogLimits& limits) {
  return layer_program(inst, targets, false, 0, limits);
}

ScheduleProgram build_deadline_nfold(const Instance& inst, const Targets& targets) {
  return deadline_program(inst, targets, false, 0);
}

ScheduleProgram build_rejection_variant(const Instance& inst, const Targets& targets, const RejectionConfig& cfg,
                                        Formulation kind, const CatalogLimits& limits) {
  if (!inst.has_penalties() && inst.jobs() > 0) throw InputError("rejection needs penalties on every job");
  if (cfg.budget < 0) throw InputError("rejection budget must be nonnegative");
  return kind == Formulation::layers ? layer_program(inst, targets, true, cfg.budget, limits)
                                     : deadline_program(inst, targets, true, cfg.budget);
}

ScheduleProgram attach_add_objective(ScheduleProgram sp, std::span<const Value> mms, const Instance& inst) {
  check_objective_free(sp, mms, inst);
  Value upper = 0;
  for (int i = 0; i < inst.machines(); ++i)
    upper = std::max(upper, mms[static_cast<std::size_t>(i)] - inst.min_possible_value(i));
  sp.add_block = slack_block(sp.program, upper);
  for (int i = 0; i < inst.machines(); ++i) {
    const int row = sp.value_row[static_cast<std::size_t>(i)];
    sp.program.global_row(row).rhs = mms[static_cast<std::size_t>(i)];
    sp.program.global_coef(sp.add_block, row, 0) = 1;
  }
  sp.program.set_objective_sense(ObjectiveSense::minimize);
  sp.mms.assign(mms.begin(), mms.end());
  return sp;
}

ScheduleProgram attach_welfare_objective(ScheduleProgram sp, std::span<const Value> mms, const Instance& inst) {
  check_objective_free(sp, mms, inst);
  for (int i = 0; i < inst.machines(); ++i) {
    const Value target = mms[static_cast<std::size_t>(i)];
    // A machine can fall short by at most mms_i minus its least possible value.
    const int b = slack_block(sp.program, std::max<Value>(0, target - inst.min_possible_value(i)));
    const int row = sp.value_row[static_cast<std::size_t>(i)];
    sp.program.global_row(row).rhs = target;
    sp.program.global_coef(b, row, 0) = 1;
    sp.welfare_blocks.push_back(b);
  }
  sp.program.set_objective_sense(ObjectiveSense::minimize);
  sp.mms.assign(mms.begin(), mms.end());
  return sp;
}

Schedule decode(const ScheduleProgram& sp, std::span<const Value> y, const Instance& inst) {
  const auto t = static_cast<std::size_t>(sp.program.width());
  if (y.size() != static_cast<std::size_t>(sp.program.blocks()) * t) throw InputError("point has the wrong length");
  Schedule s;
  s.assignment.assign(static_cast<std::size_t>(inst.jobs()), 0);
  for (int b = 0; b < sp.schedule_blocks; ++b) {
    const auto* x = y.data() + static_cast<std::size_t>(b) * t;
    const auto chosen = static_cast<int>(std::find(x, x + t, 1) - x);
    if (chosen == static_cast<int>(t)) throw InputError("block " + std::to_string(b) + " selects nothing");
    if (sp.kind == Formulation::deadlines) {
      s.assignment[static_cast<std::size_t>(sp.block_job[static_cast<std::size_t>(b)])] =
          chosen == sp.late_column ? kLate : chosen;
    } else {
      const auto& members = inst.group_members(b);
      const auto& entry = sp.catalog.schedules[static_cast<std::size_t>(b)][static_cast<std::size_t>(chosen)];
      for (std::size_t q = 0; q < members.size(); ++q) s.assignment[static_cast<std::size_t>(members[q])] = entry[q];
    }
  }
  return s;
}

std::optional<std::vector<Value>> encode(const ScheduleProgram& sp, const Schedule& s, const Instance& inst) {
  validate_schedule(s, inst);
  const auto t = static_cast<std::size_t>(sp.program.width());
  std::vector<Value> y(static_cast<std::size_t>(sp.program.blocks()) * t, 0);
  for (int b = 0; b < sp.schedule_blocks; ++b) {
    auto* x = y.data() + static_cast<std::size_t>(b) * t;
    if (sp.kind == Formulation::deadlines) {
      const int a = s.assignment[static_cast<std::size_t>(sp.block_job[static_cast<std::size_t>(b)])];
      if (a == kLate && sp.late_column < 0) return std::nullopt;
      x[a == kLate ? sp.late_column : a] = 1;
    } else {
      const auto& members = inst.group_members(b);
      std::vector<int> entry;
      for (int job : members) entry.push_back(s.assignment[static_cast<std::size_t>(job)]);
      const auto& entries = sp.catalog.schedules[static_cast<std::size_t>(b)];
      const auto it = std::find(entries.begin(), entries.end(), entry);
      if (it == entries.end()) return std::nullopt;
      x[it - entries.begin()] = 1;
    }
  }
  const auto values = machine_values(s, inst);
  Value worst = 0;
  for (std::size_t i = 0; i < sp.mms.size(); ++i) {
    const Value shortfall = std::max<Value>(sp.mms[i] - values[i], 0);
    worst = std::max(worst, shortfall);
    if (!sp.welfare_blocks.empty()) y[static_cast<std::size_t>(sp.welfare_blocks[i]) * t] = shortfall;
  }
  if (sp.add_block >= 0) y[static_cast<std::size_t>(sp.add_block) * t] = worst;
  return y;
}

}  // namespace mmsched
