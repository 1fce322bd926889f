#include "mmsched/io.hpp"

#include <fstream>
#include <map>
#include <set>

namespace mmsched::io {

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.contains(key)) throw InputError("unknown key '" + key + "' in " + where);
}

Value integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw InputError(what + " must be an integer");
  return v.get<Value>();
}

}  // namespace

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  reject_unknown(doc, {"machines", "jobs"}, "instance");
  if (!doc.contains("machines") || !doc.contains("jobs")) throw InputError("instance needs 'machines' and 'jobs'");
  const Value m = integer(doc["machines"], "machines");
  if (m < 1 || m > 1'000'000) throw InputError("machines out of range");
  if (!doc["jobs"].is_array()) throw InputError("'jobs' must be an array");

  std::vector<Job> jobs;
  for (const auto& entry : doc["jobs"]) {
    if (!entry.is_object()) throw InputError("job entries must be objects");
    reject_unknown(entry, {"id", "p", "d", "group", "values", "penalty"}, "job");
    for (const char* key : {"id", "p", "d", "values"})
      if (!entry.contains(key)) throw InputError(std::string("job is missing '") + key + "'");
    Job job;
    if (!entry["id"].is_string()) throw InputError("job id must be a string");
    job.id = entry["id"].get<std::string>();
    job.p = integer(entry["p"], "p");
    job.d = integer(entry["d"], "d");
    if (entry.contains("group")) job.group = static_cast<int>(integer(entry["group"], "group"));
    if (!entry["values"].is_array()) throw InputError("values must be an array");
    for (const auto& v : entry["values"]) job.values.push_back(integer(v, "value"));
    if (entry.contains("penalty")) job.penalty = integer(entry["penalty"], "penalty");
    jobs.push_back(std::move(job));
  }
  return Instance(static_cast<int>(m), std::move(jobs));
}

json instance_to_json(const Instance& inst) {
  json jobs = json::array();
  for (const auto& job : inst.job_list()) {
    json entry = {{"id", job.id}, {"p", job.p}, {"d", job.d}, {"values", job.values}};
    if (inst.groups() > 1) entry["group"] = job.group;
    if (job.penalty) entry["penalty"] = *job.penalty;
    jobs.push_back(std::move(entry));
  }
  return {{"machines", inst.machines()}, {"jobs", std::move(jobs)}};
}

Schedule schedule_from_json(const json& doc, const Instance& inst) {
  if (!doc.is_object()) throw InputError("schedule must be a JSON object");
  reject_unknown(doc, {"assignment", "values"}, "schedule");
  if (!doc.contains("assignment") || !doc["assignment"].is_object())
    throw InputError("schedule needs an 'assignment' object");

  std::map<std::string, int> index;
  for (int t = 0; t < inst.jobs(); ++t) index[inst.job(t).id] = t;

  Schedule s;
  s.assignment.assign(static_cast<std::size_t>(inst.jobs()), -2);
  for (const auto& [id, target] : doc["assignment"].items()) {
    auto it = index.find(id);
    if (it == index.end()) throw InputError("schedule names unknown job '" + id + "'");
    int machine;
    if (target.is_string()) {
      if (target.get<std::string>() != "LATE") throw InputError("assignment of '" + id + "' is not LATE or an index");
      machine = kLate;
    } else {
      machine = static_cast<int>(integer(target, "machine index"));
      if (machine < 0 || machine >= inst.machines()) throw InputError("machine index out of range for '" + id + "'");
    }
    s.assignment[static_cast<std::size_t>(it->second)] = machine;
  }
  for (int t = 0; t < inst.jobs(); ++t)
    if (s.assignment[static_cast<std::size_t>(t)] == -2)
      throw InputError("schedule does not assign job '" + inst.job(t).id + "'");
  validate_schedule(s, inst);
  if (doc.contains("values")) {
    const auto& values = doc["values"];
    if (!values.is_array() || values.size() != static_cast<std::size_t>(inst.machines()))
      throw InputError("schedule 'values' must list one integer per machine");
    for (const auto& v : values) integer(v, "value");
  }
  return s;
}

json schedule_to_json(const Schedule& s, const Instance& inst) {
  json assignment = json::object();
  for (int t = 0; t < inst.jobs(); ++t) {
    const int a = s.assignment[static_cast<std::size_t>(t)];
    if (a == kLate)
      assignment[inst.job(t).id] = "LATE";
    else
      assignment[inst.job(t).id] = a;
  }
  return {{"assignment", std::move(assignment)}, {"values", machine_values(s, inst)}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

void save_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

Schedule load_schedule(const std::string& path, const Instance& inst) {
  return schedule_from_json(load_json(path), inst);
}

}  // namespace mmsched::io
