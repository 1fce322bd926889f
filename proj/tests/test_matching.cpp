#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mmsched/matching.hpp"
#include "mmsched/oracle.hpp"
#include "mmsched/reductions.hpp"
#include "reference.hpp"

using namespace mmsched;
using mmsched::testing::job;

TEST_CASE("assignment solver against permutations") {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 300; ++round) {
    const int k = 1 + static_cast<int>(rng() % 6);
    std::vector<Value> cost(static_cast<std::size_t>(k * k));
    for (auto& c : cost) c = static_cast<Value>(rng() % 20);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    Value best = std::numeric_limits<Value>::max();
    do {
      Value total = 0;
      for (int i = 0; i < k; ++i) total += cost[static_cast<std::size_t>(i * k + perm[static_cast<std::size_t>(i)])];
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto [total, column] = min_cost_assignment(cost, k);
    CHECK(total == best);
    std::vector<int> sorted = column;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < k; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
  }
}

TEST_CASE("partitions are emitted once each") {
  // Zero-time jobs: every set partition is feasible, so counts are Bell/Stirling sums.
  std::vector<Job> jobs;
  for (int t = 0; t < 5; ++t) jobs.push_back(job("j" + std::to_string(t), 0, 0, {0, 0, 0}));
  const Instance inst(3, jobs);
  int count = 0;
  for_each_feasible_partition(inst, 3, [&](const std::vector<int>&, int) {
    ++count;
    return true;
  });
  CHECK(count == 1 + 15 + 25);  // S(5,1) + S(5,2) + S(5,3)
}

TEST_CASE("welfare examples") {
  const Instance e1 = mmsched::testing::instance_e1();
  const auto a = matching_wf(e1, std::vector<Value>{1, 1});
  REQUIRE(a.has_value());
  CHECK(a->total_shortfall == 0);

  const Instance single(2, {job("a", 0, 0, {5, 5})});
  const auto b = matching_wf(single, std::vector<Value>{0, 0});
  REQUIRE(b.has_value());
  CHECK(b->total_shortfall == 0);

  // An empty machine still falls short of a positive share.
  const auto c = matching_wf(single, std::vector<Value>{5, 5});
  REQUIRE(c.has_value());
  CHECK(c->total_shortfall == 5);

  const Instance three(3, {job("a", 0, 0, {1, 1, 1})});
  const auto mms = oracle_mms_all(three);
  std::vector<Value> shares;
  for (const auto& e : mms) shares.push_back(e.value());
  CHECK(matching_wf(three, shares)->total_shortfall == oracle_solve(three).best_welfare);

  CHECK_FALSE(matching_wf(Instance(2, {job("a", 2, 1, {0, 0})}), std::vector<Value>{0, 0}).has_value());
  CHECK_THROWS_AS(matching_wf(random_instance(2, RandomSpec{10, 10}), std::vector<Value>(3, 0)), std::exception);
}

TEST_CASE("bundles survive growth of the partition") {
  // Opening a new bundle deep in the walk used to invalidate the caller's bundle.
  const Instance inst(2, {job("j1", 6, 6, {-1, -5}, 0), job("j2", 1, 5, {-4, -2}, 1), job("j3", 6, 6, {1, 0}, 1),
                          job("j4", 6, 6, {2, -1}, 0)});
  const auto answer = matching_wf(inst, std::vector<Value>{-2, -5});
  REQUIRE(answer.has_value());
  CHECK(answer->total_shortfall == 0);
  CHECK(schedule_feasible(answer->schedule, inst));
}

TEST_CASE("agreement with the oracle") {
  std::mt19937_64 rng(404);
  for (int round = 0; round < 300; ++round) {
    RandomSpec spec;
    spec.max_jobs = 7;
    spec.max_machines = 4;
    spec.fitting_deadlines = round % 4 != 0;
    const Instance inst = random_instance(rng(), spec);
    const auto report = oracle_solve(inst);
    if (!report.feasible) {
      std::vector<Value> zeros(static_cast<std::size_t>(inst.machines()), 0);
      CHECK_FALSE(matching_wf(inst, zeros).has_value());
      continue;
    }
    std::vector<Value> mms;
    for (const auto& e : report.mms) mms.push_back(e.value());
    const auto answer = matching_wf(inst, mms);
    REQUIRE(answer.has_value());
    CHECK(answer->total_shortfall == report.best_welfare);
    CHECK(schedule_feasible(answer->schedule, inst));
    CHECK(welfare_objective(machine_values(answer->schedule, inst), mms) == answer->total_shortfall);
  }
}

TEST_CASE("nonpositive shares with zero values cost nothing") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    RandomSpec spec;
    spec.max_jobs = 6;
    spec.min_value = spec.max_value = 0;
    const Instance inst = random_instance(rng(), spec);
    std::vector<Value> mms(static_cast<std::size_t>(inst.machines()));
    for (auto& v : mms) v = -static_cast<Value>(rng() % 4);
    const auto answer = matching_wf(inst, mms);
    if (answer) CHECK(answer->total_shortfall == 0);
  }
}
