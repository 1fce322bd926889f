#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmsched/core.hpp"

// Known-answer instances built from the classic hardness constructions. The
// expected verdict always comes from a small independent decision procedure
// (subset-sum table, equal-cardinality enumeration, truth-table SAT check),
// never from a scheduling engine.

namespace mmsched {

enum class Verdict { yes, no };

std::string to_string(Verdict v);

/// Instance, the question's targets, and the expected answer to "is there a
/// feasible schedule meeting the targets".
struct Generated {
  Instance instance;
  Targets targets;
  Verdict expected = Verdict::no;
};

/// Two machines, zero-time jobs worth s_i to both; targets ceil(sum/2).
Generated gen_partition_values(const std::vector<Value>& numbers);
/// Two machines, jobs p_i = s_i with a common deadline floor(sum/2), value 0.
Generated gen_partition_deadlines(const std::vector<Value>& numbers);
/// Two machines, jobs p_i = s_i, d = floor(sum/2), value 1; targets ceil(n/2).
Generated gen_eqcard_partition(const std::vector<Value>& numbers);
/// Two machines; every number becomes a batch of unit-valued jobs and a batch
/// of zero-valued jobs whose deadlines force each batch onto one machine.
Generated gen_partition_batches(const std::vector<Value>& numbers);

struct Literal {
  int var = 0;
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};
using Clause = std::vector<Literal>;
struct Cnf {
  std::vector<std::string> names;
  std::vector<Clause> clauses;
};

/// Parses "x|y & ~x"; '~', '!' and '-' negate.
Cnf parse_cnf(const std::string& text);
/// Throws InputError unless clauses have 1..3 literals, every variable occurs
/// at most three times and every literal at most twice.
void check_sat3prime(const Cnf& cnf);
/// Truth-table satisfiability check (at most 24 variables).
bool satisfiable(const Cnf& cnf);
/// Machines: two per variable (positive, negative) then one per clause.
/// Targets are 0 for every machine.
Generated gen_sat3prime(const Cnf& cnf);

/// n-1 unit jobs worth 1 plus one long job worth 0, all due at n-1.
Instance gen_ef_counterexample(int n);

bool subset_sum_reachable(const std::vector<Value>& numbers, Value target);
bool equal_cardinality_partition(const std::vector<Value>& numbers);

struct RandomSpec {
  int min_jobs = 1;
  int max_jobs = 8;
  int min_machines = 1;
  int max_machines = 3;
  Value max_p = 6;
  Value max_d = 6;
  Value min_value = -5;
  Value max_value = 5;
  int max_groups = 2;
  bool penalties = false;
  Value max_penalty = 5;
  /// Draw d from [p, max_d] (when p <= max_d) so that jobs fit on their own.
  bool fitting_deadlines = false;
};

/// Seeded random instance; equal seeds give equal instances.
Instance random_instance(std::uint64_t seed, const RandomSpec& spec = {});

}  // namespace mmsched
