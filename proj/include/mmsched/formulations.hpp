#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmsched/core.hpp"
#include "mmsched/nfold.hpp"

// Builders that turn "is there a feasible schedule with v_i >= phi_i" into
// block-structured programs, plus the objective and rejection variants.

namespace mmsched {

struct CatalogLimits {
  /// Feasible layer schedules kept per layer.
  std::uint64_t max_schedules_per_layer = 200'000;
};

/// Every feasible schedule of each layer. An entry lists, for each member of
/// the layer (in Instance::group_members order), its machine or kLate.
struct LayerCatalog {
  std::vector<std::vector<std::vector<int>>> schedules;  // [layer][entry][member]
};

LayerCatalog build_layer_catalog(const Instance& inst, bool allow_late, const CatalogLimits& limits = {});

enum class Formulation { layers, deadlines };

/// A program together with what is needed to map its points to schedules.
struct ScheduleProgram {
  NFoldProgram program{1, 0};
  Formulation kind = Formulation::deadlines;
  LayerCatalog catalog;          // layers only
  std::vector<int> block_job;    // deadlines only: block -> job index
  std::vector<int> value_row;    // machine -> global row
  int schedule_blocks = 0;       // leading blocks that encode the schedule
  int late_row = -1;             // budget row when rejection is allowed
  int late_column = -1;          // deadlines: the LATE variable
  int add_block = -1;            // slack block of the additive objective
  std::vector<int> welfare_blocks;  // machine -> slack block
  std::vector<Value> mms;        // set when an objective is attached
};

ScheduleProgram build_layer_nfold(const Instance& inst, const Targets& targets, const CatalogLimits& limits = {});
ScheduleProgram build_deadline_nfold(const Instance& inst, const Targets& targets);

/// min z subject to v_i + z >= mms_i; replaces the value-row targets.
ScheduleProgram attach_add_objective(ScheduleProgram sp, std::span<const Value> mms, const Instance& inst);
/// min sum z_i subject to v_i + z_i >= mms_i; replaces the value-row targets.
ScheduleProgram attach_welfare_objective(ScheduleProgram sp, std::span<const Value> mms, const Instance& inst);

struct RejectionConfig {
  Value budget = 0;
};

/// Either formulation with a late option per job and total late penalty
/// capped by the budget. The instance must carry penalties.
ScheduleProgram build_rejection_variant(const Instance& inst, const Targets& targets, const RejectionConfig& cfg,
                                        Formulation kind, const CatalogLimits& limits = {});

Schedule decode(const ScheduleProgram& sp, std::span<const Value> y, const Instance& inst);
/// Point of the program describing s (slacks set to their least value), or
/// nullopt if s is not representable (e.g. a layer schedule absent from the
/// catalog because it is infeasible).
std::optional<std::vector<Value>> encode(const ScheduleProgram& sp, const Schedule& s, const Instance& inst);

}  // namespace mmsched
