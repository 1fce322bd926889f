#pragma once

#include <string>

#include <json.hpp>

#include "mmsched/core.hpp"

namespace mmsched::io {

using nlohmann::json;

// Instance file:
//   {"machines": int,
//    "jobs": [{"id": str, "p": int, "d": int, "group": int?, "values": [int; m],
//              "penalty": int?}]}
// Schedule file:
//   {"assignment": {jobId: machineIndex | "LATE"}, "values": [int; m]?}
// Unknown keys are rejected in both.

Instance instance_from_json(const json& doc);
json instance_to_json(const Instance& inst);

Schedule schedule_from_json(const json& doc, const Instance& inst);
json schedule_to_json(const Schedule& s, const Instance& inst);

Instance load_instance(const std::string& path);
Schedule load_schedule(const std::string& path, const Instance& inst);
json load_json(const std::string& path);
void save_json(const std::string& path, const json& doc);

}  // namespace mmsched::io
