#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmsched {

using Value = std::int64_t;

/// Assignment sentinel for a rejected (late) job.
inline constexpr int kLate = -1;

/// Malformed instance, schedule or argument.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured enumeration or state cap would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An integer extended with a distinguished -infinity.
///
/// Maximin shares are -infinity exactly when the instance admits no feasible
/// full allocation. Arithmetic on the sentinel is never implicit: callers
/// test finite() before reading value().
class Extended {
 public:
  constexpr Extended() = default;
  constexpr Extended(Value v) : value_(v), finite_(true) {}  // NOLINT

  static constexpr Extended neg_inf() {
    Extended e;
    e.finite_ = false;
    return e;
  }

  constexpr bool finite() const { return finite_; }
  Value value() const {
    if (!finite_) throw std::logic_error("value() on -inf");
    return value_;
  }

  friend constexpr bool operator==(const Extended& a, const Extended& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr bool operator<(const Extended& a, const Extended& b) {
    if (!a.finite_) return b.finite_;
    return b.finite_ && a.value_ < b.value_;
  }

  std::string to_string() const { return finite_ ? std::to_string(value_) : "-inf"; }

 private:
  Value value_ = 0;
  bool finite_ = true;
};

struct Job {
  std::string id;
  Value p = 0;
  Value d = 0;
  int group = 0;
  std::vector<Value> values;  // one entry per machine
  std::optional<Value> penalty;
};

/// Immutable scheduling instance. Derived parameters are computed once at
/// construction, so they can never go stale.
class Instance {
 public:
  Instance(int machines, std::vector<Job> jobs);

  int machines() const { return machines_; }
  int jobs() const { return static_cast<int>(jobs_.size()); }
  const Job& job(int t) const { return jobs_.at(static_cast<std::size_t>(t)); }
  std::span<const Job> job_list() const { return jobs_; }
  Value value(int machine, int t) const {
    return jobs_[static_cast<std::size_t>(t)].values[static_cast<std::size_t>(machine)];
  }

  /// Number of distinct groups (layers) after normalisation to 0..groups()-1.
  int groups() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& group_members(int g) const {
    return members_.at(static_cast<std::size_t>(g));
  }
  int max_group_size() const { return max_group_size_; }
  Value max_abs_value() const { return v_max_; }
  Value max_processing() const { return p_max_; }
  Value max_deadline() const { return d_max_; }
  int distinct_deadlines() const { return distinct_deadlines_; }
  bool has_penalties() const { return has_penalties_; }
  Value max_penalty() const { return w_max_; }
  Value penalty(int t) const;

  /// Smallest and largest value machine i can possibly receive.
  Value min_possible_value(int machine) const;
  Value max_possible_value(int machine) const;

 private:
  int machines_;
  std::vector<Job> jobs_;
  std::vector<std::vector<int>> members_;
  int max_group_size_ = 0;
  Value v_max_ = 0;
  Value p_max_ = 0;
  Value d_max_ = 0;
  int distinct_deadlines_ = 0;
  bool has_penalties_ = false;
  Value w_max_ = 0;
};

/// Copy of the instance where every machine uses machine i's valuation.
Instance with_uniform_valuation(const Instance& inst, int machine);

/// Per-machine targeted values phi_i.
struct Targets {
  std::vector<Value> phi;
};

struct DeadlineClasses {
  std::vector<Value> deadlines;  // strictly increasing
  std::vector<int> class_of;     // job index -> class, -1 for jobs outside the group
};

/// Distinct deadlines of all jobs.
DeadlineClasses deadline_classes(const Instance& inst);
/// Distinct deadlines of the jobs of one group.
DeadlineClasses deadline_classes(const Instance& inst, int group);

/// Total assignment of jobs to machines; kLate marks rejected jobs.
struct Schedule {
  std::vector<int> assignment;

  std::vector<int> bundle(int machine) const;
  std::vector<int> late_jobs() const;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// EDF test of one bundle whose jobs all belong to the same group.
bool edf_feasible(std::span<const int> bundle, const Instance& inst);
/// Same verdict through per-deadline-class prefix loads.
bool edf_feasible_by_classes(std::span<const int> bundle, const Instance& inst);
/// EDF test of a bundle spanning several groups: each group is checked alone.
bool bundle_feasible(std::span<const int> bundle, const Instance& inst);

bool schedule_feasible(const Schedule& s, const Instance& inst);
Value value_of(const Schedule& s, int machine, const Instance& inst);
std::vector<Value> machine_values(const Schedule& s, const Instance& inst);
Value late_penalty(const Schedule& s, const Instance& inst);

/// Throws InputError unless s is total over the instance's jobs.
void validate_schedule(const Schedule& s, const Instance& inst);

}  // namespace mmsched
