#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmsched/core.hpp"

// Block-structured integer programs: a few global rows couple N blocks that
// are otherwise independent, each block with its own local rows, box bounds
// and linear cost. All blocks share the same local row count and width.

namespace mmsched {

enum class Sense { le, eq, ge };
enum class ObjectiveSense { minimize, feasibility };

struct ConstraintRow {
  Sense sense = Sense::eq;
  Value rhs = 0;
};

class NFoldProgram {
 public:
  NFoldProgram(int local_rows, int width);

  int blocks() const { return static_cast<int>(blocks_.size()); }
  int global_rows() const { return static_cast<int>(global_.size()); }
  int local_rows() const { return local_rows_; }
  int width() const { return width_; }

  /// New global row with zero coefficients everywhere; returns its index.
  int add_global_row(Sense sense, Value rhs);
  /// New block with zero coefficients, local rows "= 0", bounds [0,0], cost 0.
  int add_block();
  /// Grows every block to the given width; new variables are fixed at 0.
  void widen(int width);

  ConstraintRow& global_row(int row) { return global_.at(static_cast<std::size_t>(row)); }
  const ConstraintRow& global_row(int row) const { return global_.at(static_cast<std::size_t>(row)); }
  ConstraintRow& local_row(int block, int row) { return block_at(block).rows.at(static_cast<std::size_t>(row)); }
  const ConstraintRow& local_row(int block, int row) const {
    return block_at(block).rows.at(static_cast<std::size_t>(row));
  }

  Value& global_coef(int block, int row, int var) { return block_at(block).global[global_index(row, var)]; }
  Value global_coef(int block, int row, int var) const { return block_at(block).global[global_index(row, var)]; }
  Value& local_coef(int block, int row, int var) { return block_at(block).local[local_index(row, var)]; }
  Value local_coef(int block, int row, int var) const { return block_at(block).local[local_index(row, var)]; }
  Value& lower(int block, int var) { return block_at(block).lo.at(static_cast<std::size_t>(var)); }
  Value lower(int block, int var) const { return block_at(block).lo.at(static_cast<std::size_t>(var)); }
  Value& upper(int block, int var) { return block_at(block).hi.at(static_cast<std::size_t>(var)); }
  Value upper(int block, int var) const { return block_at(block).hi.at(static_cast<std::size_t>(var)); }
  Value& cost(int block, int var) { return block_at(block).cost.at(static_cast<std::size_t>(var)); }
  Value cost(int block, int var) const { return block_at(block).cost.at(static_cast<std::size_t>(var)); }

  ObjectiveSense objective_sense() const { return objective_; }
  void set_objective_sense(ObjectiveSense sense) { objective_ = sense; }

  /// Largest absolute coefficient over all global and local blocks.
  Value max_abs_entry() const;

 private:
  struct Block {
    std::vector<Value> global;  // global_rows x width, row-major
    std::vector<Value> local;   // local_rows x width, row-major
    std::vector<ConstraintRow> rows;
    std::vector<Value> lo, hi, cost;
  };

  Block& block_at(int b) { return blocks_.at(static_cast<std::size_t>(b)); }
  const Block& block_at(int b) const { return blocks_.at(static_cast<std::size_t>(b)); }
  std::size_t global_index(int row, int var) const;
  std::size_t local_index(int row, int var) const;

  int local_rows_;
  int width_;
  std::vector<ConstraintRow> global_;
  std::vector<Block> blocks_;
  ObjectiveSense objective_ = ObjectiveSense::feasibility;
};

struct NFoldLimits {
  /// Distinct local solutions kept per block.
  std::uint64_t max_local_solutions = 2'000'000;
  /// DP states materialized after any one block.
  std::uint64_t max_layer_states = 2'000'000;
  /// DP states summed over all blocks (each keeps a back-pointer).
  std::uint64_t max_total_states = 30'000'000;
};

struct NFoldOptions {
  /// Clip row sums that can no longer matter and drop hopeless states.
  bool clip = true;
  /// Drop local solutions that violate a global row whatever the others do.
  bool presolve = true;
};

struct NFoldSolution {
  std::vector<Value> y;  // blocks x width, block-major
  Value objective = 0;   // c . y
};

/// Exact optimum (or any feasible point in feasibility mode); nullopt iff
/// infeasible. Throws CapExceeded when a state cap would be exceeded.
std::optional<NFoldSolution> nfold_solve(const NFoldProgram& program, const NFoldLimits& limits = {},
                                         const NFoldOptions& options = {});

/// True iff y satisfies every row and bound of the program.
bool nfold_check(const NFoldProgram& program, std::span<const Value> y);

/// Debug dump for external cross-checks.
nlohmann::json nfold_to_json(const NFoldProgram& program);
NFoldProgram nfold_from_json(const nlohmann::json& doc);

std::string to_string(Sense sense);

}  // namespace mmsched
