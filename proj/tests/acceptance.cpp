// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mmsched/drivers.hpp"
#include "mmsched/io.hpp"
#include "mmsched/reductions.hpp"
#include "reference.hpp"

using namespace mmsched;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;

  void fail(const std::string& why) {
    pass = false;
    if (failures++ < 5) detail += (detail.empty() ? "" : "; ") + why;
  }
};

void report(int id, const std::string& title, const Outcome& o, double secs) {
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << std::fixed;
  line.precision(2);
  line << secs << " s)";
  if (!o.detail.empty()) line << " -- " << o.detail;
  if (o.failures > 5) line << " (+" << (o.failures - 5) << " more)";
  std::cout << line.str() << std::endl;
}

std::vector<Instance> corpus(int count) {
  std::mt19937_64 seeds(20240611);
  RandomSpec spec;  // n <= 8, m <= 3, p,d in [0,6], v in [-5,5], up to two groups
  std::vector<Instance> out;
  // Independent p and d make most instances trivially infeasible; four in
  // five draw d from [p, 6] instead.
  for (int k = 0; k < count; ++k) {
    spec.fitting_deadlines = k % 5 != 0;
    out.push_back(random_instance(seeds(), spec));
  }
  return out;
}

std::string vec(const std::vector<Value>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string ext(const std::vector<Extended>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s + "]";
}

// Every probe of every search, for the monotonicity audit.
struct ProbeLog {
  std::map<int, std::vector<Probe>> searches;
  std::uint64_t count = 0;
  ProbeObserver observer() {
    return [this](const Probe& p) {
      searches[p.search].push_back(p);
      ++count;
    };
  }
};

bool dominated(const std::vector<Value>& a, const std::vector<Value>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Outcome audit(const ProbeLog& log) {
  Outcome o;
  for (const auto& [id, probes] : log.searches)
    for (const auto& p : probes)
      for (const auto& q : probes) {
        if (!q.feasible || p.feasible) continue;
        // p infeasible, q feasible: p must not ask for less than q.
        const bool easier = dominated(p.targets, q.targets) && p.budget >= q.budget;
        const bool ordered = p.kind == Probe::Kind::mult || p.kind == Probe::Kind::mms ? p.parameter < q.parameter
                                                                                      : q.parameter < p.parameter;
        if (easier || ordered)
          o.fail("search " + std::to_string(id) + ": " + p.parameter.to_string() + " infeasible, " +
                 q.parameter.to_string() + " feasible");
      }
  return o;
}

const Engine kMmsEngines[] = {Engine::dp, Engine::nfold_layers, Engine::nfold_deadlines};
const Engine kMultEngines[] = {Engine::dp, Engine::nfold_layers, Engine::nfold_deadlines, Engine::oracle};
const Engine kWelfareEngines[] = {Engine::matching, Engine::nfold_layers, Engine::nfold_deadlines, Engine::oracle};

struct Emitted {
  const Instance* inst;
  Schedule schedule;
};

Outcome criterion1(const std::vector<Instance>& insts, ProbeLog& log) {
  Outcome o;
  for (std::size_t k = 0; k < insts.size(); ++k) {
    const Instance& inst = insts[k];
    const auto expected = oracle_mms_all(inst);
    std::vector<Extended> dp;
    for (int i = 0; i < inst.machines(); ++i) dp.push_back(dp_mms(inst, i));
    if (dp != expected) o.fail("instance " + std::to_string(k) + " dp_mms " + ext(dp) + " vs " + ext(expected));
    for (Engine e : kMmsEngines) {
      const auto got = compute_mms(inst, e, {}, log.observer());
      if (got.mms != expected)
        o.fail("instance " + std::to_string(k) + " " + engine_name(e) + " " + ext(got.mms) + " vs " + ext(expected));
    }
  }
  return o;
}

Outcome criterion2(const std::vector<Instance>& insts, ProbeLog& log, std::vector<Emitted>& emitted) {
  Outcome o;
  for (std::size_t k = 0; k < insts.size(); ++k) {
    const Instance& inst = insts[k];
    const auto best = oracle_solve(inst);
    const std::string tag = "instance " + std::to_string(k) + " ";
    auto check_schedule = [&](const Schedule& s, const std::string& what) {
      if (!schedule_feasible(s, inst)) o.fail(tag + what + " witness infeasible");
      emitted.push_back({&inst, s});
    };
    for (Engine e : kMultEngines) {
      const auto mult = solve_mult(inst, e, {}, log.observer());
      const auto add = solve_add(inst, e, {}, log.observer());
      if (mult.has_value() != best.feasible || add.has_value() != best.feasible) {
        o.fail(tag + engine_name(e) + " feasibility differs");
        continue;
      }
      if (!mult) continue;
      if (mult->alpha != best.best_mult)
        o.fail(tag + engine_name(e) + " alpha " + mult->alpha.to_string() + " vs " + best.best_mult.to_string());
      if (mult_objective(machine_values(mult->schedule, inst), mult->mms) != mult->alpha)
        o.fail(tag + engine_name(e) + " mult witness does not attain alpha");
      if (add->delta != best.best_add)
        o.fail(tag + engine_name(e) + " delta " + std::to_string(add->delta) + " vs " + std::to_string(best.best_add));
      if (add_objective(machine_values(add->schedule, inst), add->mms) != add->delta)
        o.fail(tag + engine_name(e) + " add witness does not attain delta");
      check_schedule(mult->schedule, "mult");
      check_schedule(add->schedule, "add");
    }
    for (Engine e : kWelfareEngines) {
      const auto wf = solve_welfare(inst, e);
      if (wf.has_value() != best.feasible) {
        o.fail(tag + engine_name(e) + " welfare feasibility differs");
        continue;
      }
      if (!wf) continue;
      if (wf->total != best.best_welfare)
        o.fail(tag + engine_name(e) + " welfare " + std::to_string(wf->total) + " vs " +
               std::to_string(best.best_welfare));
      if (welfare_objective(machine_values(wf->schedule, inst), wf->mms) != wf->total)
        o.fail(tag + engine_name(e) + " welfare witness does not attain the total");
      check_schedule(wf->schedule, "welfare");
    }
  }
  return o;
}

struct Case {
  std::string name;
  Generated gen;
  std::vector<Engine> engines;
};

std::vector<Value> random_numbers(std::mt19937_64& rng, int count, Value max) {
  std::vector<Value> out;
  for (int k = 0; k < count; ++k) out.push_back(1 + static_cast<Value>(rng() % static_cast<std::uint64_t>(max)));
  return out;
}

Cnf random_cnf(std::mt19937_64& rng, int vars) {
  // Every variable gets up to three occurrences, at most two per sign, spread
  // over clauses of one to three literals.
  std::vector<Literal> pool;
  for (int v = 0; v < vars; ++v) {
    const int occurrences = 1 + static_cast<int>(rng() % 3);
    const int first_sign = static_cast<int>(rng() % 2);
    for (int k = 0; k < occurrences; ++k) pool.push_back(Literal{v, ((k + first_sign) % 2) == 1});
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  Cnf cnf;
  for (int v = 0; v < vars; ++v) cnf.names.push_back("x" + std::to_string(v + 1));
  std::size_t k = 0;
  while (k < pool.size()) {
    const std::size_t size = std::min<std::size_t>(1 + rng() % 3, pool.size() - k);
    Clause clause;
    for (std::size_t j = 0; j < size; ++j) {
      const Literal lit = pool[k + j];
      const bool clash = std::any_of(clause.begin(), clause.end(), [&](const Literal& l) { return l.var == lit.var; });
      if (clash) {
        if (!clause.empty()) cnf.clauses.push_back(clause);
        clause.clear();
      }
      clause.push_back(lit);
    }
    cnf.clauses.push_back(clause);
    k += size;
  }
  return cnf;
}

std::vector<Case> reduction_corpus() {
  std::mt19937_64 rng(77);
  std::vector<Case> cases;
  const std::vector<Engine> small{Engine::dp, Engine::nfold_deadlines, Engine::oracle};
  for (int size = 1; size <= 12; ++size)
    for (int rep = 0; rep < 4; ++rep) {
      const auto numbers = random_numbers(rng, size, 9);
      const std::string tag = " " + vec(numbers);
      cases.push_back({"partition" + tag, gen_partition_values(numbers), small});
      cases.push_back({"partition-deadlines" + tag, gen_partition_deadlines(numbers), small});
      cases.push_back({"eqcard" + tag, gen_eqcard_partition(numbers), small});
    }
  // Batches turn s into 2s jobs; keep the sum small enough for the subset DP.
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<Value> numbers;
    Value sum = 0;
    const int size = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < size; ++k) {
      const Value s = 1 + static_cast<Value>(rng() % 3);
      if (sum + s > 11) break;
      numbers.push_back(s);
      sum += s;
    }
    if (numbers.empty()) numbers.push_back(1);
    cases.push_back({"batches " + vec(numbers), gen_partition_batches(numbers), {Engine::dp, Engine::nfold_deadlines}});
  }
  for (const char* text : {"x", "x & ~x", "x|y & ~x & ~y", "x|y|z & ~x|~y & ~z", "x|y & ~x|y & ~y"}) {
    const Cnf cnf = parse_cnf(text);
    cases.push_back({std::string("sat ") + text, gen_sat3prime(cnf), {Engine::nfold_deadlines, Engine::oracle}});
  }
  for (int vars = 2; vars <= 16; ++vars)
    for (int rep = 0; rep < 2; ++rep) {
      const Cnf cnf = random_cnf(rng, vars);
      cases.push_back({"sat random " + std::to_string(vars) + " vars #" + std::to_string(rep), gen_sat3prime(cnf),
                       {Engine::nfold_deadlines, Engine::oracle}});
    }
  return cases;
}

Outcome criterion3(ProbeLog& log) {
  Outcome o;
  Caps caps;
  // The SAT instances have dozens of machines; the oracle decides them through
  // its target pruning, not by walking m^n assignments.
  caps.oracle.max_assignments = std::numeric_limits<std::uint64_t>::max();
  int yes = 0, no = 0;
  for (const auto& c : reduction_corpus()) {
    const bool expected = c.gen.expected == Verdict::yes;
    (expected ? yes : no) += 1;
    int agreeing = 0;
    for (Engine e : c.engines) {
      try {
        const auto s = feasible_targets(c.gen.instance, c.gen.targets, e, caps);
        // Exact-target questions join the audit as one-probe searches.
        log.observer()(Probe{Probe::Kind::mms, -static_cast<int>(log.searches.size()) - 1, Ratio(0),
                             c.gen.targets.phi, 0, s.has_value()});
        if (s.has_value() == expected) {
          ++agreeing;
        } else {
          o.fail(c.name + ": " + engine_name(e) + " says " + (s ? "yes" : "no"));
        }
      } catch (const CapExceeded& err) {
        o.fail(c.name + ": " + engine_name(e) + " refused (" + err.what() + ")");
      }
    }
    if (agreeing < 2) o.fail(c.name + ": only " + std::to_string(agreeing) + " engines decided it");
  }
  o.detail = std::to_string(yes) + " yes / " + std::to_string(no) + " no instances" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10000; ++k) {
    const int n = 1 + static_cast<int>(rng() % 7);
    std::vector<Job> jobs;
    for (int t = 0; t < n; ++t)
      jobs.push_back(mmsched::testing::job("j" + std::to_string(t), static_cast<Value>(rng() % 7),
                                           static_cast<Value>(rng() % 15), {0}));
    const Instance inst(1, jobs);
    std::vector<int> bundle(static_cast<std::size_t>(n));
    std::iota(bundle.begin(), bundle.end(), 0);
    if (edf_feasible(bundle, inst) != mmsched::testing::permutation_feasible(bundle, inst))
      o.fail("bundle " + std::to_string(k));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const NFoldProgram p = mmsched::testing::random_program(rng);
    const auto expected = mmsched::testing::brute_force_nfold(p);
    const auto s = nfold_solve(p);
    if (s.has_value() != expected.has_value()) {
      o.fail("program " + std::to_string(k) + " feasibility");
      continue;
    }
    if (!s) continue;
    if (!nfold_check(p, s->y)) o.fail("program " + std::to_string(k) + " solution fails the check");
    if (p.objective_sense() == ObjectiveSense::minimize && s->objective != *expected)
      o.fail("program " + std::to_string(k) + " objective " + std::to_string(s->objective) + " vs " +
             std::to_string(*expected));
  }
  return o;
}

Outcome criterion6(const ProbeLog& log, const std::vector<Instance>& insts) {
  Outcome o = audit(log);
  // The subset DP directly: raising one target never turns infeasible into feasible.
  std::mt19937_64 rng(6);
  for (std::size_t k = 0; k < insts.size(); ++k) {
    const Instance& inst = insts[k];
    Targets t;
    for (int i = 0; i < inst.machines(); ++i)
      t.phi.push_back(inst.min_possible_value(i) +
                      static_cast<Value>(rng() % static_cast<std::uint64_t>(
                                                     inst.max_possible_value(i) - inst.min_possible_value(i) + 1)));
    bool feasible = dp_feasible(inst, t).has_value();
    for (int step = 0; step < 6; ++step) {
      t.phi[rng() % t.phi.size()] += 1;
      const bool now = dp_feasible(inst, t).has_value();
      if (now && !feasible) o.fail("dp_feasible not antitone on instance " + std::to_string(k));
      feasible = now;
    }
  }
  o.detail = std::to_string(log.count) + " probes in " + std::to_string(log.searches.size()) + " searches" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion7() {
  Outcome o;
  {
    RandomSpec spec;
    spec.min_jobs = spec.max_jobs = 16;
    spec.min_machines = spec.max_machines = 3;
    spec.max_groups = 1;
    const Instance inst = random_instance(7, spec);
    const auto start = Clock::now();
    for (int i = 0; i < 3; ++i) dp_mms(inst, i);
    const double secs = seconds_since(start);
    if (secs >= 30) o.fail("dp_mms took " + std::to_string(secs) + " s");
    o.detail = "dp_mms n=16 m=3: " + std::to_string(secs) + " s";
  }
  std::mt19937_64 rng(70);
  const Value deadlines[] = {40, 80, 120};
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Job> jobs;
    Schedule planned;
    for (int t = 0; t < 60; ++t) {
      jobs.push_back(mmsched::testing::job("j" + std::to_string(t), 1 + static_cast<Value>(rng() % 4),
                                           deadlines[rng() % 3],
                                           {static_cast<Value>(rng() % 7) - 3, static_cast<Value>(rng() % 7) - 3}));
      planned.assignment.push_back(static_cast<int>(rng() % 2));
    }
    const Instance inst(2, jobs);
    // Targets: the values of a planned schedule when it is feasible, else just above the minimum.
    Targets t;
    if (schedule_feasible(planned, inst)) {
      t.phi = machine_values(planned, inst);
    } else {
      for (int i = 0; i < 2; ++i) t.phi.push_back(inst.min_possible_value(i) + 1);
    }
    // Later rounds ask for more; either answer is fine, only the decision time matters.
    if (rep == 1) t.phi[0] += 1;
    if (rep == 2)
      for (int i = 0; i < 2; ++i) t.phi[static_cast<std::size_t>(i)] = (t.phi[static_cast<std::size_t>(i)] + inst.max_possible_value(i)) / 2;
    const auto start = Clock::now();
    try {
      const auto s = feasible_targets(inst, t, Engine::nfold_deadlines);
      const double secs = seconds_since(start);
      if (secs >= 60) o.fail("nfold-deadlines took " + std::to_string(secs) + " s");
      if (s && !schedule_feasible(*s, inst)) o.fail("nfold-deadlines witness infeasible");
      o.detail += "; nfold-deadlines n=60 m=2 targets " + vec(t.phi) + ": " + (s ? "yes" : "no") + " in " +
                  std::to_string(secs) + " s";
    } catch (const CapExceeded& err) {
      o.fail(std::string("nfold-deadlines refused: ") + err.what());
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  RandomSpec spec;
  spec.max_jobs = 6;
  spec.max_machines = 2;
  spec.penalties = true;
  spec.max_penalty = 5;
  for (int k = 0; k < 200; ++k) {
    const Instance inst = random_instance(rng(), spec);
    Targets t;
    for (int i = 0; i < inst.machines(); ++i) {
      const Value lo = inst.min_possible_value(i), hi = inst.max_possible_value(i);
      t.phi.push_back(lo + static_cast<Value>(rng() % static_cast<std::uint64_t>(hi - lo + 2)));
    }
    const auto expected = oracle_min_rejection(inst, t);
    for (Engine e : kMmsEngines) {
      const auto r = solve_rejection_budget(inst, t, e);
      if (r.has_value() != expected.has_value()) {
        o.fail("instance " + std::to_string(k) + " " + engine_name(e) + " feasibility");
        continue;
      }
      if (!r) continue;
      if (r->budget != expected->budget)
        o.fail("instance " + std::to_string(k) + " " + engine_name(e) + " budget " + std::to_string(r->budget) +
               " vs " + std::to_string(expected->budget));
      if (!schedule_feasible(r->schedule, inst) || late_penalty(r->schedule, inst) > r->budget)
        o.fail("instance " + std::to_string(k) + " " + engine_name(e) + " witness");
    }
  }
  return o;
}

int run_cli(const std::string& args, std::string& out) {
  const std::string command = std::string(MMSCHED_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return -1;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  out.clear();
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion9(const std::vector<Instance>& insts, const std::vector<Emitted>& emitted) {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / ("mmsched_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);

  // Every schedule emitted in criterion 2 goes through the command-line checker.
  int checked = 0;
  {
    const Instance* written = nullptr;
    std::string inst_path;
    for (const auto& e : emitted) {
      if (e.inst != written) {
        written = e.inst;
        inst_path = (dir / ("emitted" + std::to_string(checked) + ".json")).string();
        io::save_json(inst_path, io::instance_to_json(*e.inst));
      }
      const auto sched_path = (dir / "emitted.sched.json").string();
      io::save_json(sched_path, io::schedule_to_json(e.schedule, *e.inst));
      std::string out;
      const int code = run_cli("check " + inst_path + " " + sched_path, out);
      ++checked;
      if (code != 0 || io::json::parse(out)["feasible"] != true) o.fail("emitted schedule " + std::to_string(checked));
    }
  }

  // The command line end to end on part of the corpus.
  int cli_runs = 0;
  for (std::size_t k = 0; k < insts.size(); k += 2) {
    const auto inst_path = (dir / ("i" + std::to_string(k) + ".json")).string();
    io::save_json(inst_path, io::instance_to_json(insts[k]));
    for (const char* objective : {"mult", "add", "welfare"}) {
      std::string out;
      const int code = run_cli("solve " + inst_path + " --objective " + objective, out);
      if (code == 2) continue;
      if (code != 0) {
        o.fail("cli solve exit " + std::to_string(code) + " on instance " + std::to_string(k));
        continue;
      }
      const auto sched_path = (dir / ("s" + std::to_string(k) + objective + ".json")).string();
      io::save_json(sched_path, io::json::parse(out)["schedule"]);
      const int check = run_cli("check " + inst_path + " " + sched_path, out);
      ++cli_runs;
      const auto verdict = io::json::parse(out);
      if (check != 0 || verdict["feasible"] != true || verdict["values_match"] != true)
        o.fail("cli check rejected instance " + std::to_string(k) + " " + objective);
    }
  }
  std::filesystem::remove_all(dir);

  // Oracle witnesses encode into both programs, and decode back unchanged.
  std::mt19937_64 rng(9);
  int encoded = 0;
  for (std::size_t k = 0; k < insts.size(); ++k) {
    const Instance& inst = insts[k];
    const auto best = oracle_solve(inst);
    if (!best.feasible) continue;
    std::vector<Value> mms;
    for (const auto& m : best.mms) mms.push_back(m.value());
    const auto& w = best.mult_witness;
    const Targets t{machine_values(w, inst)};
    for (Formulation kind : {Formulation::layers, Formulation::deadlines}) {
      const std::string tag = "instance " + std::to_string(k) + (kind == Formulation::layers ? " layers" : " deadlines");
      auto probe = [&](const ScheduleProgram& sp, const Schedule& s, const char* what) {
        const auto y = encode(sp, s, inst);
        if (!y || !nfold_check(sp.program, *y)) {
          o.fail(tag + " " + what + " witness does not encode");
          return;
        }
        ++encoded;
        if (decode(sp, *y, inst).assignment != s.assignment) o.fail(tag + " " + what + " decode differs");
      };
      const ScheduleProgram base = kind == Formulation::layers ? build_layer_nfold(inst, t) : build_deadline_nfold(inst, t);
      probe(base, w, "exact");
      probe(attach_add_objective(base, mms, inst), best.add_witness, "add");
      probe(attach_welfare_objective(base, mms, inst), best.welfare_witness, "welfare");
      // And the other way: a solver point decodes to a schedule meeting the targets.
      const auto s = nfold_solve(base.program);
      if (!s) {
        o.fail(tag + " program infeasible despite a witness");
      } else {
        const Schedule d = decode(base, s->y, inst);
        if (!schedule_feasible(d, inst) || !dominated(t.phi, machine_values(d, inst)))
          o.fail(tag + " decoded schedule misses the targets");
      }
    }
  }
  o.detail = std::to_string(checked) + " emitted schedules checked, " + std::to_string(cli_runs) + " solve+check runs, " +
             std::to_string(encoded) + " encodings" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<Instance> insts = corpus(500);
  ProbeLog log;
  std::vector<Emitted> emitted;
  bool all = true;
  auto timed = [&](int id, const std::string& title, double limit, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o = body();
    const double secs = seconds_since(start);
    if (limit > 0 && secs >= limit) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit));
    report(id, title, o, secs);
    all = all && o.pass;
  };

  timed(1, "MMS vectors of dp, nfold-layers, nfold-deadlines equal the oracle on 500 instances", 60,
        [&] { return criterion1(insts, log); });
  timed(2, "mult / add / welfare optima of every engine equal the oracle", 300,
        [&] { return criterion2(insts, log, emitted); });
  timed(3, "reduction corpus decided by at least two engines as expected", 0, [&] { return criterion3(log); });
  timed(4, "EDF equals permutation search on 10000 bundles", 0, [] { return criterion4(); });
  timed(5, "n-fold solver equals enumeration on 200 tiny programs", 0, [] { return criterion5(); });
  timed(6, "every search probe is monotone", 0, [&] { return criterion6(log, insts); });
  timed(7, "scale smoke test", 0, [] { return criterion7(); });
  timed(8, "rejection budget equals the oracle on 200 instances", 0, [] { return criterion8(); });
  timed(9, "schedules re-verify and witnesses round-trip through both programs", 0,
        [&] { return criterion9(insts, emitted); });
  return all ? 0 : 1;
}
