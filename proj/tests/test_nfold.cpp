#include <doctest.h>

#include <random>

#include "mmsched/nfold.hpp"
#include "reference.hpp"

using namespace mmsched;
using mmsched::testing::brute_force_nfold;
using mmsched::testing::random_program;

namespace {

std::optional<Value> solved_objective(const NFoldProgram& p, const NFoldOptions& options = {}) {
  const auto s = nfold_solve(p, {}, options);
  if (!s) return std::nullopt;
  if (p.objective_sense() == ObjectiveSense::feasibility) return Value{0};
  return s->objective;
}

}  // namespace

TEST_CASE("single block with one equality") {
  NFoldProgram p(1, 1);
  p.add_block();
  p.local_coef(0, 0, 0) = 1;
  p.local_row(0, 0) = {Sense::eq, 1};
  p.upper(0, 0) = 1;
  const auto s = nfold_solve(p);
  REQUIRE(s.has_value());
  CHECK(s->y == std::vector<Value>{1});
}

TEST_CASE("checker rejects violations") {
  NFoldProgram p(0, 2);
  p.add_global_row(Sense::ge, 2);
  p.add_block();
  p.upper(0, 0) = p.upper(0, 1) = 3;
  p.global_coef(0, 0, 0) = 1;
  p.global_coef(0, 0, 1) = 1;
  CHECK_FALSE(nfold_check(p, std::vector<Value>{0, 0}));
  CHECK(nfold_check(p, std::vector<Value>{1, 1}));
  CHECK_FALSE(nfold_check(p, std::vector<Value>{4, 0}));
  CHECK_FALSE(nfold_check(p, std::vector<Value>{-1, 3}));
  CHECK_FALSE(nfold_check(p, std::vector<Value>{1}));
}

TEST_CASE("minimization picks the cheapest split") {
  // Three blocks choose one of two columns; exactly two must pick column 1.
  NFoldProgram p(1, 2);
  p.add_global_row(Sense::eq, 2);
  p.set_objective_sense(ObjectiveSense::minimize);
  const Value costs[3][2] = {{0, 5}, {0, 1}, {0, 2}};
  for (int b = 0; b < 3; ++b) {
    p.add_block();
    for (int j = 0; j < 2; ++j) {
      p.upper(b, j) = 1;
      p.local_coef(b, 0, j) = 1;
      p.cost(b, j) = costs[b][j];
    }
    p.local_row(b, 0) = {Sense::eq, 1};
    p.global_coef(b, 0, 1) = 1;
  }
  const auto s = nfold_solve(p);
  REQUIRE(s.has_value());
  CHECK(s->objective == 3);
  CHECK(s->y == std::vector<Value>{1, 0, 0, 1, 0, 1});
}

TEST_CASE("agreement with exhaustive enumeration") {
  std::mt19937_64 rng(99);
  int feasible = 0;
  for (int round = 0; round < 400; ++round) {
    const NFoldProgram p = random_program(rng);
    const auto expected = brute_force_nfold(p);
    const auto s = nfold_solve(p);
    CHECK(s.has_value() == expected.has_value());
    if (!s) continue;
    ++feasible;
    CHECK(nfold_check(p, s->y));
    if (p.objective_sense() == ObjectiveSense::minimize) CHECK(s->objective == *expected);
  }
  CHECK(feasible > 40);
}

TEST_CASE("clipping and presolve do not change answers") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 300; ++round) {
    const NFoldProgram p = random_program(rng);
    const auto reference = solved_objective(p, NFoldOptions{false, false});
    CHECK(solved_objective(p, NFoldOptions{true, false}) == reference);
    CHECK(solved_objective(p, NFoldOptions{false, true}) == reference);
    CHECK(solved_objective(p) == reference);
  }
}

TEST_CASE("empty and degenerate programs") {
  NFoldProgram none(0, 1);
  CHECK(nfold_solve(none).has_value());
  none.add_global_row(Sense::ge, 1);
  CHECK_FALSE(nfold_solve(none).has_value());

  NFoldProgram crossed(0, 1);
  crossed.add_block();
  crossed.lower(0, 0) = 2;
  crossed.upper(0, 0) = 1;
  CHECK_FALSE(nfold_solve(crossed).has_value());
}

TEST_CASE("max entry and widening") {
  NFoldProgram p(1, 1);
  p.add_global_row(Sense::le, 0);
  p.add_block();
  p.global_coef(0, 0, 0) = -7;
  p.local_coef(0, 0, 0) = 3;
  CHECK(p.max_abs_entry() == 7);
  p.widen(3);
  CHECK(p.width() == 3);
  CHECK(p.global_coef(0, 0, 0) == -7);
  CHECK(p.upper(0, 2) == 0);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    const NFoldProgram p = random_program(rng);
    const auto doc = nfold_to_json(p);
    const NFoldProgram q = nfold_from_json(doc);
    CHECK(nfold_to_json(q) == doc);
    CHECK(solved_objective(q) == solved_objective(p));
  }
  CHECK(to_string(Sense::le) == "<=");
}

TEST_CASE("state cap names the open rows") {
  // Forty blocks each add 0..1000 to an equality row: the row range outgrows the cap.
  NFoldProgram p(0, 1);
  p.add_global_row(Sense::eq, 1);
  for (int b = 0; b < 40; ++b) {
    p.add_block();
    p.upper(b, 0) = 1000;
    p.global_coef(b, 0, 0) = (b % 2 == 0) ? 1 : -1;
  }
  NFoldLimits limits;
  limits.max_layer_states = 5000;
  CHECK_THROWS_WITH_AS(nfold_solve(p, limits), doctest::Contains("row 0"), CapExceeded);
}
