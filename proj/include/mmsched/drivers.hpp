#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmsched/core.hpp"
#include "mmsched/formulations.hpp"
#include "mmsched/matching.hpp"
#include "mmsched/nfold.hpp"
#include "mmsched/oracle.hpp"
#include "mmsched/ratio.hpp"
#include "mmsched/subset_dp.hpp"

namespace mmsched {

enum class Engine { automatic, dp, nfold_layers, nfold_deadlines, matching, oracle };

Engine parse_engine(const std::string& name);
std::string engine_name(Engine engine);

struct Caps {
  DpLimits dp;
  MatchingLimits matching;
  OracleLimits oracle;
  NFoldLimits nfold;
  CatalogLimits catalog;
  /// automatic picks the subset DP up to this many jobs.
  int auto_dp_jobs = 18;
  /// Worker threads for per-machine work; 0 means hardware concurrency.
  int threads = 0;
};

/// Caps with overrides from a JSON object such as {"dp_jobs": 20}. Keys:
/// dp_jobs, dp_table_bytes, matching_jobs, oracle_assignments,
/// nfold_local_solutions, nfold_layer_states, nfold_total_states,
/// catalog_schedules, auto_dp_jobs, threads.
Caps caps_from_json(const std::string& text, Caps base = {});
/// Caps with overrides from MMS_SCHED_CAPS, if set.
Caps caps_from_env();

/// The concrete engine `requested` stands for on this instance.
Engine resolve_engine(const Instance& inst, Engine requested, const Caps& caps);

/// One feasibility question asked during a search, for monotonicity audits.
struct Probe {
  enum class Kind { mms, mult, add, rejection };
  Kind kind = Kind::mult;
  int search = 0;          // probes of one search share this id
  Ratio parameter;         // alpha, delta, MMS candidate or budget
  std::vector<Value> targets;
  Value budget = 0;        // rejection only
  bool feasible = false;
};
using ProbeObserver = std::function<void(const Probe&)>;

struct MmsResult {
  std::vector<Extended> mms;
  bool feasible = false;  // some feasible full allocation exists
};

MmsResult compute_mms(const Instance& inst, Engine engine, const Caps& caps = {}, const ProbeObserver& observe = {});

/// Any feasible schedule with v_i >= phi_i for every machine.
std::optional<Schedule> feasible_targets(const Instance& inst, const Targets& targets, Engine engine,
                                         const Caps& caps = {});

struct MultResult {
  Ratio alpha;
  Schedule schedule;
  std::vector<Value> mms;
};
struct AddResult {
  Value delta = 0;
  Schedule schedule;
  std::vector<Value> mms;
};
struct WelfareResult {
  Value total = 0;
  Schedule schedule;
  std::vector<Value> mms;
};
struct RejectionResult {
  Value budget = 0;
  Schedule schedule;
};

/// Targets a machine must meet for min_i alpha_i >= alpha.
Targets mult_targets(const Instance& inst, std::span<const Value> mms, const Ratio& alpha);
/// Every finite alpha some machine can attain, ascending.
std::vector<Ratio> alpha_candidates(const Instance& inst, std::span<const Value> mms);

// The solve_* functions return nullopt when the instance has no feasible
// full allocation. mms may be passed in to skip its computation.
std::optional<MultResult> solve_mult(const Instance& inst, Engine engine, const Caps& caps = {},
                                     const ProbeObserver& observe = {},
                                     std::optional<std::vector<Value>> mms = std::nullopt);
std::optional<AddResult> solve_add(const Instance& inst, Engine engine, const Caps& caps = {},
                                   const ProbeObserver& observe = {},
                                   std::optional<std::vector<Value>> mms = std::nullopt);
/// The additive optimum through the linear-objective program.
std::optional<AddResult> solve_add_linear(const Instance& inst, Formulation kind, const Caps& caps = {},
                                          std::optional<std::vector<Value>> mms = std::nullopt);
std::optional<WelfareResult> solve_welfare(const Instance& inst, Engine engine, const Caps& caps = {},
                                           std::optional<std::vector<Value>> mms = std::nullopt);

/// Least total penalty of late jobs letting the rest meet the targets.
std::optional<RejectionResult> solve_rejection_budget(const Instance& inst, const Targets& targets, Engine engine,
                                                      const Caps& caps = {}, const ProbeObserver& observe = {});

}  // namespace mmsched
