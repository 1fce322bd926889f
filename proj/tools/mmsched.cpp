// mmsched: maximin-share scheduling with deadlines from the command line.
//
// Exit codes: 0 ok, 1 input error, 2 infeasible, 3 cap exceeded,
// 4 internal failure. Reports go to stdout as JSON, diagnostics to stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmsched/drivers.hpp"
#include "mmsched/io.hpp"
#include "mmsched/reductions.hpp"

using namespace mmsched;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;
constexpr int kCapExceeded = 3;
constexpr int kInternal = 4;

std::vector<Value> parse_list(const std::string& text) {
  std::vector<Value> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("not an integer list: '" + text + "'");
    }
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

json mms_json(const std::vector<Extended>& mms) {
  json out = json::array();
  for (const auto& e : mms) {
    if (e.finite())
      out.push_back(e.value());
    else
      out.push_back("-inf");
  }
  return out;
}

void emit(const json& doc) { std::cout << doc.dump() << '\n'; }

struct Options {
  int threads = 0;

  std::string instance;
  std::string engine = "auto";
  int machine = -1;

  std::string objective = "mult";
  std::string targets;

  std::string schedule;

  std::string kind;
  std::string numbers;
  std::string cnf;
  int n = 0;
  int machines = 0;
  std::uint64_t seed = 1;
  std::string out;

  std::string formulation = "deadlines";
  std::string attach = "none";
};

Caps make_caps(const Options& o) {
  Caps caps = caps_from_env();
  if (o.threads > 0) caps.threads = o.threads;
  return caps;
}

Targets read_targets(const Options& o, const Instance& inst) {
  if (o.targets.empty()) throw InputError("--targets is required for this objective");
  Targets t{parse_list(o.targets)};
  if (t.phi.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("--targets needs one value per machine");
  return t;
}

int cmd_mms(const Options& o) {
  const Instance inst = io::load_instance(o.instance);
  if (o.machine >= inst.machines()) throw InputError("--machine out of range");
  const auto result = compute_mms(inst, parse_engine(o.engine), make_caps(o));
  json doc;
  if (o.machine >= 0) {
    const auto& e = result.mms[static_cast<std::size_t>(o.machine)];
    doc["mms"] = e.finite() ? json(e.value()) : json("-inf");
  } else {
    doc["mms"] = mms_json(result.mms);
  }
  emit(doc);
  if (!result.feasible) {
    std::cerr << "no feasible schedule of all jobs exists\n";
    return kInfeasible;
  }
  return kOk;
}

json schedule_report(const Schedule& s, const Instance& inst) {
  json doc = io::schedule_to_json(s, inst);
  doc["values"] = machine_values(s, inst);
  return doc;
}

int cmd_solve(const Options& o) {
  const Instance inst = io::load_instance(o.instance);
  const Engine engine = parse_engine(o.engine);
  const Caps caps = make_caps(o);
  const auto start = std::chrono::steady_clock::now();
  json doc;
  doc["objective"] = o.objective;
  doc["engine"] = engine_name(o.objective == "welfare" || o.objective == "rejection"
                                  ? engine
                                  : resolve_engine(inst, engine, caps));
  std::optional<Schedule> witness;

  if (o.objective == "exact") {
    witness = feasible_targets(inst, read_targets(o, inst), engine, caps);
  } else if (o.objective == "rejection") {
    if (auto r = solve_rejection_budget(inst, read_targets(o, inst), engine, caps)) {
      doc["value"] = r->budget;
      witness = std::move(r->schedule);
    }
  } else if (o.objective == "mult" || o.objective == "add" || o.objective == "welfare") {
    const auto mms = compute_mms(inst, engine, caps);
    doc["mms"] = mms_json(mms.mms);
    if (mms.feasible) {
      std::vector<Value> shares;
      for (const auto& e : mms.mms) shares.push_back(e.value());
      if (o.objective == "mult") {
        auto r = solve_mult(inst, engine, caps, {}, shares);
        doc["value"] = r->alpha.to_string();
        witness = std::move(r->schedule);
      } else if (o.objective == "add") {
        auto r = solve_add(inst, engine, caps, {}, shares);
        doc["value"] = r->delta;
        witness = std::move(r->schedule);
      } else {
        auto r = solve_welfare(inst, engine, caps, shares);
        doc["value"] = r->total;
        witness = std::move(r->schedule);
      }
    }
  } else {
    throw InputError("unknown objective '" + o.objective + "'");
  }

  doc["feasible"] = witness.has_value();
  if (witness) doc["schedule"] = schedule_report(*witness, inst);
  doc["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(doc);
  if (!witness) {
    std::cerr << "infeasible\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_check(const Options& o) {
  const Instance inst = io::load_instance(o.instance);
  const json raw = io::load_json(o.schedule);
  const Schedule s = io::schedule_from_json(raw, inst);
  validate_schedule(s, inst);
  const bool feasible = schedule_feasible(s, inst);
  json doc;
  doc["feasible"] = feasible;
  doc["values"] = machine_values(s, inst);
  if (inst.has_penalties()) doc["late_penalty"] = late_penalty(s, inst);
  if (raw.contains("values")) doc["values_match"] = raw["values"] == doc["values"];
  emit(doc);
  return feasible ? kOk : kInfeasible;
}

int cmd_gen(const Options& o) {
  std::optional<Generated> gen;
  std::optional<Instance> plain;
  if (o.kind == "partition") {
    gen = gen_partition_values(parse_list(o.numbers));
  } else if (o.kind == "partition-deadlines") {
    gen = gen_partition_deadlines(parse_list(o.numbers));
  } else if (o.kind == "eqcard") {
    gen = gen_eqcard_partition(parse_list(o.numbers));
  } else if (o.kind == "batches") {
    gen = gen_partition_batches(parse_list(o.numbers));
  } else if (o.kind == "sat3") {
    if (o.cnf.empty()) throw InputError("sat3 needs --cnf");
    gen = gen_sat3prime(parse_cnf(o.cnf));
  } else if (o.kind == "ef") {
    plain = gen_ef_counterexample(o.n);
  } else if (o.kind == "random") {
    RandomSpec spec;
    if (o.n > 0) spec.min_jobs = spec.max_jobs = o.n;
    if (o.machines > 0) spec.min_machines = spec.max_machines = o.machines;
    plain = random_instance(o.seed, spec);
  } else {
    throw InputError("unknown generator '" + o.kind + "'");
  }
  const Instance& inst = gen ? gen->instance : *plain;
  json sidecar;
  if (gen) {
    sidecar["expected"] = to_string(gen->expected);
    sidecar["targets"] = gen->targets.phi;
  }
  if (o.out.empty()) {
    json doc{{"instance", io::instance_to_json(inst)}};
    if (gen) doc.update(sidecar);
    emit(doc);
    return kOk;
  }
  io::save_json(o.out, io::instance_to_json(inst));
  if (gen) {
    std::string side = o.out;
    if (side.size() > 5 && side.ends_with(".json")) side.resize(side.size() - 5);
    io::save_json(side + ".expected.json", sidecar);
  }
  return kOk;
}

int cmd_dump(const Options& o) {
  const Instance inst = io::load_instance(o.instance);
  const Caps caps = make_caps(o);
  Targets targets;
  if (o.targets.empty())
    for (int i = 0; i < inst.machines(); ++i) targets.phi.push_back(inst.min_possible_value(i));
  else
    targets = read_targets(o, inst);
  if (o.formulation != "layers" && o.formulation != "deadlines")
    throw InputError("unknown formulation '" + o.formulation + "'");
  ScheduleProgram sp = o.formulation == "layers" ? build_layer_nfold(inst, targets, caps.catalog)
                                                 : build_deadline_nfold(inst, targets);
  if (o.attach == "add" || o.attach == "welfare") {
    const auto mms = compute_mms(inst, Engine::automatic, caps);
    if (!mms.feasible) throw InputError("no feasible schedule, so no shares to attach");
    std::vector<Value> shares;
    for (const auto& e : mms.mms) shares.push_back(e.value());
    sp = o.attach == "add" ? attach_add_objective(std::move(sp), shares, inst)
                           : attach_welfare_objective(std::move(sp), shares, inst);
  } else if (o.attach != "none") {
    throw InputError("unknown objective '" + o.attach + "'");
  }
  emit(nfold_to_json(sp.program));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximin-share scheduling with deadlines"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (default: hardware concurrency)")->check(CLI::NonNegativeNumber);

  auto* mms = app.add_subcommand("mms", "Maximin share of every machine");
  mms->add_option("instance", o.instance, "Instance file")->required();
  mms->add_option("--engine", o.engine, "auto, dp, nfold-layers, nfold-deadlines, oracle");
  mms->add_option("--machine", o.machine, "Report one machine only");

  auto* solve = app.add_subcommand("solve", "Optimise an objective or test targets");
  solve->add_option("instance", o.instance, "Instance file")->required();
  solve->add_option("--objective", o.objective, "exact, mult, add, welfare or rejection");
  solve->add_option("--engine", o.engine, "auto, dp, nfold-layers, nfold-deadlines, matching, oracle");
  solve->add_option("--targets", o.targets, "Comma-separated per-machine targets");

  auto* check = app.add_subcommand("check", "Verify a schedule");
  check->add_option("instance", o.instance, "Instance file")->required();
  check->add_option("schedule", o.schedule, "Schedule file")->required();

  auto* gen = app.add_subcommand("gen", "Generate a known-answer or random instance");
  gen->add_option("kind", o.kind, "partition, partition-deadlines, eqcard, batches, sat3, ef, random")->required();
  gen->add_option("--numbers", o.numbers, "Comma-separated positive integers");
  gen->add_option("--cnf", o.cnf, "Formula such as \"x|y & ~x\"");
  gen->add_option("--n", o.n, "Job count (ef, random)");
  gen->add_option("--machines", o.machines, "Machine count (random)");
  gen->add_option("--seed", o.seed, "Seed (random)");
  gen->add_option("--out", o.out, "Instance path; the answer goes next to it as *.expected.json");

  auto* dump = app.add_subcommand("dump", "Print the n-fold program of an instance");
  dump->add_option("instance", o.instance, "Instance file")->required();
  dump->add_option("--formulation", o.formulation, "layers or deadlines");
  dump->add_option("--targets", o.targets, "Comma-separated per-machine targets");
  dump->add_option("--objective", o.attach, "none, add or welfare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*mms) return cmd_mms(o);
    if (*solve) return cmd_solve(o);
    if (*check) return cmd_check(o);
    if (*gen) return cmd_gen(o);
    if (*dump) return cmd_dump(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInputError;
}
