#include "mmsched/drivers.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace mmsched {

namespace {

std::atomic<int> next_search{1};

void check_schedule(const Schedule& s, const Instance& inst, const Targets* targets) {
  if (!schedule_feasible(s, inst)) throw std::logic_error("engine returned an infeasible schedule");
  if (targets == nullptr) return;
  const auto values = machine_values(s, inst);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < targets->phi[i]) throw std::logic_error("engine returned a schedule missing a target");
}

int worker_count(const Caps& caps, int tasks) {
  int threads = caps.threads > 0 ? caps.threads : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(threads, 1, std::max(tasks, 1));
}

// Runs body(0..tasks-1) on a few threads; the first exception is rethrown.
template <typename Body>
void parallel_for(int tasks, int workers, Body body) {
  if (workers <= 1) {
    for (int k = 0; k < tasks; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex lock;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int k = next++; k < tasks; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> guard(lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t catalog_estimate(const Instance& inst, int radix) {
  std::uint64_t total = 0;
  for (int g = 0; g < inst.groups(); ++g) {
    std::uint64_t layer = 1;
    for (std::size_t k = 0; k < inst.group_members(g).size(); ++k) {
      layer *= static_cast<std::uint64_t>(radix);
      if (layer > (std::uint64_t{1} << 40)) return layer;
    }
    total = std::max(total, layer);
  }
  return total;
}

Engine resolve_for(const Instance& inst, Engine requested, const Caps& caps, int radix) {
  if (requested != Engine::automatic) return requested;
  if (inst.jobs() <= caps.auto_dp_jobs && inst.jobs() <= caps.dp.max_jobs) return Engine::dp;
  if (inst.groups() > 1 && catalog_estimate(inst, radix) <= caps.catalog.max_schedules_per_layer)
    return Engine::nfold_layers;
  return Engine::nfold_deadlines;
}

std::optional<Schedule> solve_program(const ScheduleProgram& sp, const Instance& inst, const Caps& caps) {
  const auto point = nfold_solve(sp.program, caps.nfold);
  if (!point) return std::nullopt;
  return decode(sp, point->y, inst);
}

std::vector<Value> finite_mms(const MmsResult& r) {
  std::vector<Value> out;
  for (const auto& e : r.mms) out.push_back(e.value());
  return out;
}

std::optional<std::vector<Value>> resolve_mms(const Instance& inst, Engine engine, const Caps& caps,
                                              std::optional<std::vector<Value>> mms) {
  if (mms) {
    if (mms->size() != static_cast<std::size_t>(inst.machines()))
      throw InputError("mms length differs from machine count");
    return mms;
  }
  const auto result = compute_mms(inst, engine, caps);
  if (!result.feasible) return std::nullopt;
  return finite_mms(result);
}

// Largest phi in [lo, hi] that every machine can reach under machine i's
// valuation; lo must be feasible.
Value search_share(const Instance& uniform, Value lo, Value hi, Engine engine, const Caps& caps,
                   const ProbeObserver& observe, int search) {
  auto probe = [&](Value phi) {
    Targets targets{std::vector<Value>(static_cast<std::size_t>(uniform.machines()), phi)};
    const bool ok = feasible_targets(uniform, targets, engine, caps).has_value();
    if (observe) observe(Probe{Probe::Kind::mms, search, Ratio(phi), targets.phi, 0, ok});
    return ok;
  };
  while (lo < hi) {
    const Value mid = lo + (hi - lo + 1) / 2;
    if (probe(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

Engine parse_engine(const std::string& name) {
  if (name == "auto") return Engine::automatic;
  if (name == "dp") return Engine::dp;
  if (name == "nfold-layers") return Engine::nfold_layers;
  if (name == "nfold-deadlines") return Engine::nfold_deadlines;
  if (name == "matching") return Engine::matching;
  if (name == "oracle") return Engine::oracle;
  throw InputError("unknown engine '" + name + "'");
}

std::string engine_name(Engine engine) {
  switch (engine) {
    case Engine::automatic:
      return "auto";
    case Engine::dp:
      return "dp";
    case Engine::nfold_layers:
      return "nfold-layers";
    case Engine::nfold_deadlines:
      return "nfold-deadlines";
    case Engine::matching:
      return "matching";
    case Engine::oracle:
      return "oracle";
  }
  return "auto";
}

Caps caps_from_json(const std::string& text, Caps base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("cap overrides are not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("cap overrides must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
      throw InputError("cap '" + key + "' must be a nonnegative integer");
    const auto v = value.get<std::uint64_t>();
    if (key == "dp_jobs")
      base.dp.max_jobs = static_cast<int>(std::min<std::uint64_t>(v, 30));
    else if (key == "dp_table_bytes")
      base.dp.max_table_bytes = v;
    else if (key == "matching_jobs")
      base.matching.max_jobs = static_cast<int>(std::min<std::uint64_t>(v, 64));
    else if (key == "oracle_assignments")
      base.oracle.max_assignments = v;
    else if (key == "nfold_local_solutions")
      base.nfold.max_local_solutions = v;
    else if (key == "nfold_layer_states")
      base.nfold.max_layer_states = v;
    else if (key == "nfold_total_states")
      base.nfold.max_total_states = v;
    else if (key == "catalog_schedules")
      base.catalog.max_schedules_per_layer = v;
    else if (key == "auto_dp_jobs")
      base.auto_dp_jobs = static_cast<int>(std::min<std::uint64_t>(v, 30));
    else if (key == "threads")
      base.threads = static_cast<int>(std::min<std::uint64_t>(v, 1024));
    else
      throw InputError("unknown cap '" + key + "'");
  }
  return base;
}

Caps caps_from_env() {
  const char* env = std::getenv("MMS_SCHED_CAPS");
  if (env == nullptr || *env == '\0') return {};
  return caps_from_json(env);
}

Engine resolve_engine(const Instance& inst, Engine requested, const Caps& caps) {
  return resolve_for(inst, requested, caps, inst.machines());
}

std::optional<Schedule> feasible_targets(const Instance& inst, const Targets& targets, Engine engine,
                                         const Caps& caps) {
  if (targets.phi.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("targets length differs from machine count");
  std::optional<Schedule> found;
  switch (resolve_engine(inst, engine, caps)) {
    case Engine::dp:
      found = dp_feasible(inst, targets, caps.dp);
      break;
    case Engine::nfold_layers:
      found = solve_program(build_layer_nfold(inst, targets, caps.catalog), inst, caps);
      break;
    case Engine::nfold_deadlines:
      found = solve_program(build_deadline_nfold(inst, targets), inst, caps);
      break;
    case Engine::oracle:
      found = oracle_exact(inst, targets, caps.oracle);
      break;
    default:
      throw InputError("the matching engine only solves the welfare objective");
  }
  if (found) check_schedule(*found, inst, &targets);
  return found;
}

MmsResult compute_mms(const Instance& inst, Engine engine, const Caps& caps, const ProbeObserver& observe) {
  const int m = inst.machines();
  Engine chosen = resolve_engine(inst, engine, caps);
  if (chosen == Engine::matching) chosen = Engine::dp;
  MmsResult result;
  result.mms.assign(static_cast<std::size_t>(m), Extended::neg_inf());

  if (chosen == Engine::oracle) {
    result.mms = oracle_mms_all(inst, caps.oracle);
  } else if (chosen == Engine::dp) {
    parallel_for(m, worker_count(caps, m),
                 [&](int i) { result.mms[static_cast<std::size_t>(i)] = dp_mms(inst, i, caps.dp); });
  } else {
    // Any feasible full allocation gives every bundle at least the sum of
    // the negative values, so the lowest window edge doubles as the
    // global feasibility test.
    Targets vacuous{std::vector<Value>(static_cast<std::size_t>(m), 0)};
    for (int i = 0; i < m; ++i) vacuous.phi[static_cast<std::size_t>(i)] = inst.min_possible_value(i);
    if (!feasible_targets(inst, vacuous, chosen, caps)) return result;
    std::vector<int> searches(static_cast<std::size_t>(m));
    for (auto& s : searches) s = next_search++;
    std::mutex lock;
    ProbeObserver guarded;
    if (observe)
      guarded = [&](const Probe& p) {
        std::lock_guard<std::mutex> guard(lock);
        observe(p);
      };
    parallel_for(m, worker_count(caps, m), [&](int i) {
      const Instance uniform = with_uniform_valuation(inst, i);
      const Value share = search_share(uniform, inst.min_possible_value(i), inst.max_possible_value(i), chosen,
                                       caps, guarded, searches[static_cast<std::size_t>(i)]);
      result.mms[static_cast<std::size_t>(i)] = share;
    });
  }
  result.feasible = std::all_of(result.mms.begin(), result.mms.end(), [](const Extended& e) { return e.finite(); });
  if (!result.feasible) std::fill(result.mms.begin(), result.mms.end(), Extended::neg_inf());
  return result;
}

Targets mult_targets(const Instance& inst, std::span<const Value> mms, const Ratio& alpha) {
  Targets targets;
  for (int i = 0; i < inst.machines(); ++i) {
    const Value share = mms[static_cast<std::size_t>(i)];
    const Value floor = inst.min_possible_value(i);
    Value phi = floor;
    if (alpha.kind() == Ratio::Kind::neg_inf) {
      phi = floor;
    } else if (alpha.kind() == Ratio::Kind::pos_inf) {
      // Only reachable when no machine has a positive share.
      phi = share > 0 ? inst.max_possible_value(i) + 1 : 0;
    } else if (share > 0) {
      phi = std::max(floor, ceil_times(alpha, share));
    } else if (share < 0) {
      phi = alpha.numerator() > 0 ? std::max(floor, ceil_divided(share, alpha)) : floor;
    } else {
      phi = 0;
    }
    targets.phi.push_back(phi);
  }
  return targets;
}

std::vector<Ratio> alpha_candidates(const Instance& inst, std::span<const Value> mms) {
  std::vector<Ratio> out;
  for (int i = 0; i < inst.machines(); ++i) {
    const Value share = mms[static_cast<std::size_t>(i)];
    const Value lo = inst.min_possible_value(i);
    const Value hi = inst.max_possible_value(i);
    if (share > 0)
      for (Value w = lo; w <= hi; ++w) out.emplace_back(w, share);
    else if (share < 0)
      for (Value w = lo; w <= -1; ++w) out.emplace_back(share, w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<MultResult> solve_mult(const Instance& inst, Engine engine, const Caps& caps,
                                     const ProbeObserver& observe, std::optional<std::vector<Value>> mms) {
  mms = resolve_mms(inst, engine, caps, std::move(mms));
  if (!mms) return std::nullopt;
  const int search = next_search++;
  auto probe = [&](const Ratio& alpha) {
    const Targets targets = mult_targets(inst, *mms, alpha);
    auto found = feasible_targets(inst, targets, engine, caps);
    if (observe) observe(Probe{Probe::Kind::mult, search, alpha, targets.phi, 0, found.has_value()});
    return found;
  };

  if (auto top = probe(Ratio::pos_inf())) return MultResult{Ratio::pos_inf(), std::move(*top), *mms};
  const auto candidates = alpha_candidates(inst, *mms);
  // Invariant: candidates[0..good] feasible (good = -1: none known),
  // candidates[bad..] infeasible.
  std::ptrdiff_t good = -1;
  auto bad = static_cast<std::ptrdiff_t>(candidates.size());
  std::optional<Schedule> witness;
  while (bad - good > 1) {
    const std::ptrdiff_t mid = good + (bad - good) / 2;
    if (auto found = probe(candidates[static_cast<std::size_t>(mid)])) {
      good = mid;
      witness = std::move(found);
    } else {
      bad = mid;
    }
  }
  if (good < 0) {
    auto bottom = probe(Ratio::neg_inf());
    if (!bottom) throw std::logic_error("no schedule although the shares are finite");
    return MultResult{Ratio::neg_inf(), std::move(*bottom), *mms};
  }
  return MultResult{candidates[static_cast<std::size_t>(good)], std::move(*witness), *mms};
}

std::optional<AddResult> solve_add(const Instance& inst, Engine engine, const Caps& caps,
                                   const ProbeObserver& observe, std::optional<std::vector<Value>> mms) {
  mms = resolve_mms(inst, engine, caps, std::move(mms));
  if (!mms) return std::nullopt;
  const int search = next_search++;
  auto probe = [&](Value delta) {
    Targets targets;
    for (Value share : *mms) targets.phi.push_back(share - delta);
    auto found = feasible_targets(inst, targets, engine, caps);
    if (observe) observe(Probe{Probe::Kind::add, search, Ratio(delta), targets.phi, 0, found.has_value()});
    return found;
  };
  Value hi = 0;
  for (int i = 0; i < inst.machines(); ++i)
    hi = std::max(hi, (*mms)[static_cast<std::size_t>(i)] - inst.min_possible_value(i));
  auto witness = probe(hi);
  if (!witness) return std::nullopt;
  Value lo = -1;  // infeasible sentinel below the window
  while (hi - lo > 1) {
    const Value mid = lo + (hi - lo) / 2;
    if (auto found = probe(mid)) {
      hi = mid;
      witness = std::move(found);
    } else {
      lo = mid;
    }
  }
  return AddResult{hi, std::move(*witness), *mms};
}

std::optional<AddResult> solve_add_linear(const Instance& inst, Formulation kind, const Caps& caps,
                                          std::optional<std::vector<Value>> mms) {
  const Engine engine = kind == Formulation::layers ? Engine::nfold_layers : Engine::nfold_deadlines;
  mms = resolve_mms(inst, engine, caps, std::move(mms));
  if (!mms) return std::nullopt;
  const Targets none{*mms};
  ScheduleProgram sp = kind == Formulation::layers ? build_layer_nfold(inst, none, caps.catalog)
                                                   : build_deadline_nfold(inst, none);
  sp = attach_add_objective(std::move(sp), *mms, inst);
  const auto point = nfold_solve(sp.program, caps.nfold);
  if (!point) return std::nullopt;
  Schedule s = decode(sp, point->y, inst);
  check_schedule(s, inst, nullptr);
  return AddResult{point->objective, std::move(s), *mms};
}

std::optional<WelfareResult> solve_welfare(const Instance& inst, Engine engine, const Caps& caps,
                                           std::optional<std::vector<Value>> mms) {
  mms = resolve_mms(inst, engine, caps, std::move(mms));
  if (!mms) return std::nullopt;
  Engine chosen = engine;
  if (chosen == Engine::automatic)
    chosen = inst.jobs() <= caps.matching.max_jobs ? Engine::matching : resolve_engine(inst, engine, caps);
  if (chosen == Engine::dp) chosen = Engine::matching;

  std::optional<WelfareResult> result;
  if (chosen == Engine::matching) {
    if (auto answer = matching_wf(inst, *mms, caps.matching))
      result = WelfareResult{answer->total_shortfall, std::move(answer->schedule), *mms};
  } else if (chosen == Engine::oracle) {
    for_each_feasible(inst, false, caps.oracle, [&](const Schedule& s) {
      const Value total = welfare_objective(machine_values(s, inst), *mms);
      if (!result || total < result->total) result = WelfareResult{total, s, *mms};
      return result->total > 0;
    });
  } else {
    const Targets none{*mms};
    ScheduleProgram sp = chosen == Engine::nfold_layers ? build_layer_nfold(inst, none, caps.catalog)
                                                        : build_deadline_nfold(inst, none);
    sp = attach_welfare_objective(std::move(sp), *mms, inst);
    if (const auto point = nfold_solve(sp.program, caps.nfold))
      result = WelfareResult{point->objective, decode(sp, point->y, inst), *mms};
  }
  if (result) {
    check_schedule(result->schedule, inst, nullptr);
    if (welfare_objective(machine_values(result->schedule, inst), *mms) != result->total)
      throw std::logic_error("welfare witness disagrees with the reported optimum");
  }
  return result;
}

std::optional<RejectionResult> solve_rejection_budget(const Instance& inst, const Targets& targets, Engine engine,
                                                      const Caps& caps, const ProbeObserver& observe) {
  if (!inst.has_penalties() && inst.jobs() > 0) throw InputError("rejection needs penalties on every job");
  if (targets.phi.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("targets length differs from machine count");
  const Engine chosen = resolve_for(inst, engine, caps, inst.machines() + 1);
  if (chosen == Engine::matching) throw InputError("the matching engine only solves the welfare objective");

  std::optional<std::optional<RejectionAnswer>> oracle_answer;
  const int search = next_search++;
  auto probe = [&](Value budget) -> std::optional<Schedule> {
    std::optional<Schedule> found;
    switch (chosen) {
      case Engine::dp:
        found = dp_feasible_with_rejection(inst, targets, budget, caps.dp);
        break;
      case Engine::oracle:
        if (!oracle_answer) oracle_answer = oracle_min_rejection(inst, targets, caps.oracle);
        if (*oracle_answer && (*oracle_answer)->budget <= budget) found = (*oracle_answer)->schedule;
        break;
      default: {
        const auto kind = chosen == Engine::nfold_layers ? Formulation::layers : Formulation::deadlines;
        found = solve_program(build_rejection_variant(inst, targets, {budget}, kind, caps.catalog), inst, caps);
      }
    }
    if (found) {
      check_schedule(*found, inst, &targets);
      if (late_penalty(*found, inst) > budget) throw std::logic_error("rejection witness exceeds its budget");
    }
    if (observe) observe(Probe{Probe::Kind::rejection, search, Ratio(budget), targets.phi, budget, found.has_value()});
    return found;
  };

  Value hi = 0;
  for (int t = 0; t < inst.jobs(); ++t) hi += inst.penalty(t);
  auto witness = probe(hi);
  if (!witness) return std::nullopt;
  Value lo = -1;
  while (hi - lo > 1) {
    const Value mid = lo + (hi - lo) / 2;
    if (auto found = probe(mid)) {
      hi = mid;
      witness = std::move(found);
    } else {
      lo = mid;
    }
  }
  return RejectionResult{late_penalty(*witness, inst), std::move(*witness)};
}

}  // namespace mmsched
