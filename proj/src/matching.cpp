#include "mmsched/matching.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mmsched {

std::pair<Value, std::vector<int>> min_cost_assignment(std::span<const Value> cost, int k) {
  if (cost.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k))
    throw InputError("cost matrix is not square");
  constexpr Value kInf = std::numeric_limits<Value>::max() / 4;
  const auto n = static_cast<std::size_t>(k);
  // 1-based potentials; column 0 is the virtual root of each augmentation.
  std::vector<Value> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::vector<Value> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t r = owner[col0];
      Value delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const Value reduced = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
        if (reduced < minv[c]) {
          minv[c] = reduced;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[owner[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t prev = way[col0];
      owner[col0] = owner[prev];
      col0 = prev;
    } while (col0 != 0);
  }
  std::vector<int> column(n, 0);
  Value total = 0;
  for (std::size_t c = 1; c <= n; ++c) {
    column[owner[c] - 1] = static_cast<int>(c - 1);
    total += cost[(owner[c] - 1) * n + (c - 1)];
  }
  return {total, column};
}

namespace {

// Restricted-growth strings; a job joins an existing bundle only if the
// bundle stays feasible, so infeasible prefixes are cut immediately.
class PartitionWalk {
 public:
  PartitionWalk(const Instance& inst, int max_blocks,
                const std::function<bool(const std::vector<int>&, int)>& visit)
      : inst_(inst), max_blocks_(max_blocks), visit_(visit), block_of_(static_cast<std::size_t>(inst.jobs()), 0) {
    blocks_.reserve(static_cast<std::size_t>(std::max(max_blocks, 0)));
  }

  void run() { descend(0, 0); }

 private:
  bool descend(int t, int used) {
    if (t == inst_.jobs()) return visit_(block_of_, used);
    const int limit = std::min(used + 1, max_blocks_);
    for (int b = 0; b < limit; ++b) {
      if (b == used) blocks_.emplace_back();
      const auto slot = static_cast<std::size_t>(b);
      blocks_[slot].push_back(t);
      if (bundle_feasible(blocks_[slot], inst_)) {
        block_of_[static_cast<std::size_t>(t)] = b;
        if (!descend(t + 1, std::max(used, b + 1))) return false;
      }
      blocks_[slot].pop_back();
      if (b == used) blocks_.pop_back();
    }
    return true;
  }

  const Instance& inst_;
  int max_blocks_;
  const std::function<bool(const std::vector<int>&, int)>& visit_;
  std::vector<int> block_of_;
  std::vector<std::vector<int>> blocks_;
};

}  // namespace

void for_each_feasible_partition(const Instance& inst, int max_blocks,
                                 const std::function<bool(const std::vector<int>&, int)>& visit) {
  PartitionWalk(inst, max_blocks, visit).run();
}

std::optional<WelfareAnswer> matching_wf(const Instance& inst, std::span<const Value> mms,
                                         const MatchingLimits& limits) {
  if (mms.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("mms length differs from machine count");
  if (inst.jobs() > limits.max_jobs)
    throw CapExceeded("matching engine is limited to n <= " + std::to_string(limits.max_jobs) +
                      " jobs (instance has " + std::to_string(inst.jobs()) + ")");
  const int m = inst.machines();
  const auto width = static_cast<std::size_t>(m);
  std::optional<WelfareAnswer> best;
  std::vector<Value> cost(width * width);
  std::vector<Value> bundle_value(width * width);

  for_each_feasible_partition(inst, std::min(inst.jobs(), m), [&](const std::vector<int>& block_of, int blocks) {
    std::fill(bundle_value.begin(), bundle_value.end(), 0);
    for (int t = 0; t < inst.jobs(); ++t) {
      const auto b = static_cast<std::size_t>(block_of[static_cast<std::size_t>(t)]);
      for (int i = 0; i < m; ++i) bundle_value[static_cast<std::size_t>(i) * width + b] += inst.value(i, t);
    }
    // Columns past the real bundles are dummies: the machine ends up empty.
    for (std::size_t i = 0; i < width; ++i)
      for (std::size_t b = 0; b < width; ++b) {
        const Value got = b < static_cast<std::size_t>(blocks) ? bundle_value[i * width + b] : 0;
        cost[i * width + b] = std::max<Value>(mms[i] - got, 0);
      }
    auto [total, column] = min_cost_assignment(cost, m);
    if (!best || total < best->total_shortfall) {
      std::vector<int> machine_of_block(width, 0);
      for (int i = 0; i < m; ++i) machine_of_block[static_cast<std::size_t>(column[static_cast<std::size_t>(i)])] = i;
      Schedule s;
      s.assignment.resize(static_cast<std::size_t>(inst.jobs()));
      for (std::size_t t = 0; t < s.assignment.size(); ++t)
        s.assignment[t] = machine_of_block[static_cast<std::size_t>(block_of[t])];
      best = WelfareAnswer{total, std::move(s)};
    }
    return best->total_shortfall > 0;
  });
  return best;
}

}  // namespace mmsched
