#include "mmsched/nfold.hpp"

#include <algorithm>
#include <unordered_map>

namespace mmsched {

NFoldProgram::NFoldProgram(int local_rows, int width) : local_rows_(local_rows), width_(width) {
  if (local_rows < 0 || width < 0) throw InputError("n-fold dimensions must be nonnegative");
}

std::size_t NFoldProgram::global_index(int row, int var) const {
  if (row < 0 || row >= global_rows() || var < 0 || var >= width_) throw InputError("n-fold index out of range");
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(var);
}

std::size_t NFoldProgram::local_index(int row, int var) const {
  if (row < 0 || row >= local_rows_ || var < 0 || var >= width_) throw InputError("n-fold index out of range");
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(var);
}

int NFoldProgram::add_global_row(Sense sense, Value rhs) {
  global_.push_back({sense, rhs});
  for (auto& b : blocks_) b.global.resize(b.global.size() + static_cast<std::size_t>(width_), 0);
  return global_rows() - 1;
}

int NFoldProgram::add_block() {
  const auto w = static_cast<std::size_t>(width_);
  Block b;
  b.global.assign(global_.size() * w, 0);
  b.local.assign(static_cast<std::size_t>(local_rows_) * w, 0);
  b.rows.assign(static_cast<std::size_t>(local_rows_), ConstraintRow{});
  b.lo.assign(w, 0);
  b.hi.assign(w, 0);
  b.cost.assign(w, 0);
  blocks_.push_back(std::move(b));
  return blocks() - 1;
}

void NFoldProgram::widen(int width) {
  if (width < width_) throw InputError("n-fold width can only grow");
  const auto old_w = static_cast<std::size_t>(width_);
  const auto new_w = static_cast<std::size_t>(width);
  auto reshape = [&](const std::vector<Value>& m, std::size_t rows) {
    std::vector<Value> out(rows * new_w, 0);
    for (std::size_t r = 0; r < rows; ++r)
      std::copy_n(m.begin() + static_cast<std::ptrdiff_t>(r * old_w), old_w,
                  out.begin() + static_cast<std::ptrdiff_t>(r * new_w));
    return out;
  };
  for (auto& b : blocks_) {
    b.global = reshape(b.global, global_.size());
    b.local = reshape(b.local, static_cast<std::size_t>(local_rows_));
    b.lo.resize(new_w, 0);
    b.hi.resize(new_w, 0);
    b.cost.resize(new_w, 0);
  }
  width_ = width;
}

Value NFoldProgram::max_abs_entry() const {
  Value best = 0;
  for (const auto& b : blocks_) {
    for (Value v : b.global) best = std::max(best, v < 0 ? -v : v);
    for (Value v : b.local) best = std::max(best, v < 0 ? -v : v);
  }
  return best;
}

std::string to_string(Sense sense) {
  switch (sense) {
    case Sense::le:
      return "<=";
    case Sense::ge:
      return ">=";
    default:
      return "=";
  }
}

namespace {

bool row_holds(Sense sense, Value lhs, Value rhs) {
  switch (sense) {
    case Sense::le:
      return lhs <= rhs;
    case Sense::ge:
      return lhs >= rhs;
    default:
      return lhs == rhs;
  }
}

struct LocalSolution {
  std::vector<Value> g;  // normalized global contribution
  Value cost = 0;
  std::vector<std::pair<int, Value>> y;  // nonzero entries
};

struct VectorHash {
  std::size_t operator()(const std::vector<Value>& v) const {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (Value x : v) h = (h ^ static_cast<std::uint64_t>(x)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

// Global rows rewritten as <= or =; >= rows are negated.
struct NormalRows {
  std::vector<Sense> sense;
  std::vector<Value> rhs;
  std::vector<Value> sign;
};

NormalRows normalize(const NFoldProgram& p) {
  NormalRows rows;
  for (int r = 0; r < p.global_rows(); ++r) {
    const auto& row = p.global_row(r);
    const Value sign = row.sense == Sense::ge ? -1 : 1;
    rows.sense.push_back(row.sense == Sense::eq ? Sense::eq : Sense::le);
    rows.rhs.push_back(sign * row.rhs);
    rows.sign.push_back(sign);
  }
  return rows;
}

class LocalEnumerator {
 public:
  LocalEnumerator(const NFoldProgram& p, const NormalRows& rows, int block, const NFoldLimits& limits)
      : p_(p), rows_(rows), block_(block), limits_(limits), minimize_(p.objective_sense() == ObjectiveSense::minimize) {}

  std::vector<LocalSolution> run() {
    if (!select_one()) generic();
    return std::move(out_);
  }

 private:
  // One "= 1" row over 0/1 variables, every other variable fixed at 0.
  bool select_one() {
    int picked = -1;
    for (int r = 0; r < p_.local_rows(); ++r) {
      bool zero = true;
      for (int j = 0; j < p_.width() && zero; ++j) zero = p_.local_coef(block_, r, j) == 0;
      if (zero) {
        if (!row_holds(p_.local_row(block_, r).sense, 0, p_.local_row(block_, r).rhs)) return true;  // empty block
        continue;
      }
      if (picked >= 0) return false;
      picked = r;
    }
    if (picked < 0) return false;
    const auto& row = p_.local_row(block_, picked);
    if (row.sense != Sense::eq || row.rhs != 1) return false;
    for (int j = 0; j < p_.width(); ++j) {
      const Value a = p_.local_coef(block_, picked, j);
      const Value lo = p_.lower(block_, j);
      const Value hi = p_.upper(block_, j);
      if (a == 1 ? (lo != 0 || hi > 1) : (a != 0 || lo != 0 || hi != 0)) return false;
    }
    for (int j = 0; j < p_.width(); ++j)
      if (p_.local_coef(block_, picked, j) == 1 && p_.upper(block_, j) == 1) emit({{j, 1}});
    return true;
  }

  void generic() {
    const int t = p_.width();
    const int s = p_.local_rows();
    for (int j = 0; j < t; ++j)
      if (p_.lower(block_, j) > p_.upper(block_, j)) return;
    // Suffix bounds of each local row over variables j..t-1.
    suffix_min_.assign(static_cast<std::size_t>((t + 1) * s), 0);
    suffix_max_.assign(static_cast<std::size_t>((t + 1) * s), 0);
    for (int j = t - 1; j >= 0; --j)
      for (int r = 0; r < s; ++r) {
        const Value a = p_.local_coef(block_, r, j);
        const Value x = a * p_.lower(block_, j);
        const Value z = a * p_.upper(block_, j);
        at(suffix_min_, j, r) = at(suffix_min_, j + 1, r) + std::min(x, z);
        at(suffix_max_, j, r) = at(suffix_max_, j + 1, r) + std::max(x, z);
      }
    partial_.assign(static_cast<std::size_t>(s), 0);
    current_.clear();
    descend(0);
  }

  Value& at(std::vector<Value>& v, int j, int r) {
    return v[static_cast<std::size_t>(j * p_.local_rows() + r)];
  }

  bool reachable(int j) {
    for (int r = 0; r < p_.local_rows(); ++r) {
      const auto& row = p_.local_row(block_, r);
      const Value lo = partial_[static_cast<std::size_t>(r)] + at(suffix_min_, j, r);
      const Value hi = partial_[static_cast<std::size_t>(r)] + at(suffix_max_, j, r);
      if (row.sense != Sense::ge && lo > row.rhs) return false;
      if (row.sense != Sense::le && hi < row.rhs) return false;
    }
    return true;
  }

  void descend(int j) {
    if (!reachable(j)) return;
    if (j == p_.width()) {
      emit(current_);
      return;
    }
    for (Value x = p_.lower(block_, j); x <= p_.upper(block_, j); ++x) {
      for (int r = 0; r < p_.local_rows(); ++r) partial_[static_cast<std::size_t>(r)] += p_.local_coef(block_, r, j) * x;
      if (x != 0) current_.emplace_back(j, x);
      descend(j + 1);
      if (x != 0) current_.pop_back();
      for (int r = 0; r < p_.local_rows(); ++r) partial_[static_cast<std::size_t>(r)] -= p_.local_coef(block_, r, j) * x;
    }
  }

  void emit(const std::vector<std::pair<int, Value>>& y) {
    if (++visited_ > limits_.max_local_solutions * 8)
      throw CapExceeded("block " + std::to_string(block_) + " has too many local solutions");
    LocalSolution sol;
    sol.g.assign(rows_.rhs.size(), 0);
    for (const auto& [j, x] : y) {
      sol.cost += p_.cost(block_, j) * x;
      for (std::size_t r = 0; r < rows_.rhs.size(); ++r)
        sol.g[r] += rows_.sign[r] * p_.global_coef(block_, static_cast<int>(r), j) * x;
    }
    sol.y = y;
    auto [it, inserted] = seen_.try_emplace(sol.g, out_.size());
    if (inserted) {
      if (out_.size() >= limits_.max_local_solutions)
        throw CapExceeded("block " + std::to_string(block_) + " has more than " +
                          std::to_string(limits_.max_local_solutions) + " distinct local solutions");
      out_.push_back(std::move(sol));
    } else if (minimize_ && sol.cost < out_[it->second].cost) {
      out_[it->second] = std::move(sol);
    }
  }

  const NFoldProgram& p_;
  const NormalRows& rows_;
  int block_;
  const NFoldLimits& limits_;
  bool minimize_;
  std::vector<Value> suffix_min_, suffix_max_, partial_;
  std::vector<std::pair<int, Value>> current_;
  std::unordered_map<std::vector<Value>, std::size_t, VectorHash> seen_;
  std::vector<LocalSolution> out_;
  std::uint64_t visited_ = 0;
};

struct Ranges {
  std::vector<std::vector<Value>> lo, hi;  // per block, per row
};

void block_ranges(const std::vector<LocalSolution>& sols, std::size_t rows, std::vector<Value>& lo,
                  std::vector<Value>& hi) {
  lo.assign(rows, 0);
  hi.assign(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    bool first = true;
    for (const auto& s : sols) {
      if (first || s.g[r] < lo[r]) lo[r] = s.g[r];
      if (first || s.g[r] > hi[r]) hi[r] = s.g[r];
      first = false;
    }
  }
}

// Drops local solutions that break a global row whatever the other blocks
// choose, until nothing changes. Returns false if some block runs dry.
bool presolve(std::vector<std::vector<LocalSolution>>& sols, const NormalRows& rows, Ranges& ranges) {
  const std::size_t r = rows.rhs.size();
  std::vector<Value> total_lo(r, 0), total_hi(r, 0);
  for (std::size_t b = 0; b < sols.size(); ++b)
    for (std::size_t k = 0; k < r; ++k) {
      total_lo[k] += ranges.lo[b][k];
      total_hi[k] += ranges.hi[b][k];
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t b = 0; b < sols.size(); ++b) {
      auto& list = sols[b];
      const auto keep = [&](const LocalSolution& s) {
        for (std::size_t k = 0; k < r; ++k) {
          const Value lo = total_lo[k] - ranges.lo[b][k] + s.g[k];
          const Value hi = total_hi[k] - ranges.hi[b][k] + s.g[k];
          if (lo > rows.rhs[k]) return false;
          if (rows.sense[k] == Sense::eq && hi < rows.rhs[k]) return false;
        }
        return true;
      };
      const auto before = list.size();
      list.erase(std::remove_if(list.begin(), list.end(), [&](const LocalSolution& s) { return !keep(s); }),
                 list.end());
      if (list.empty()) return false;
      if (list.size() == before) continue;
      changed = true;
      for (std::size_t k = 0; k < r; ++k) {
        total_lo[k] -= ranges.lo[b][k];
        total_hi[k] -= ranges.hi[b][k];
      }
      block_ranges(list, r, ranges.lo[b], ranges.hi[b]);
      for (std::size_t k = 0; k < r; ++k) {
        total_lo[k] += ranges.lo[b][k];
        total_hi[k] += ranges.hi[b][k];
      }
    }
  }
  return true;
}

// Open-addressing map from fixed-width state vectors to dense indices.
class StateTable {
 public:
  explicit StateTable(std::size_t width) : width_(width), slots_(64, kEmpty) {}

  std::size_t size() const { return count_; }
  const Value* key(std::size_t i) const { return keys_.data() + i * width_; }

  std::pair<std::uint32_t, bool> insert(const Value* key) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    std::size_t pos = hash(key) & (slots_.size() - 1);
    while (slots_[pos] != kEmpty) {
      if (std::equal(key, key + width_, this->key(slots_[pos]))) return {slots_[pos], false};
      pos = (pos + 1) & (slots_.size() - 1);
    }
    slots_[pos] = static_cast<std::uint32_t>(count_);
    keys_.insert(keys_.end(), key, key + width_);
    return {static_cast<std::uint32_t>(count_++), true};
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFU;

  std::size_t hash(const Value* key) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::size_t k = 0; k < width_; ++k) {
      h ^= static_cast<std::uint64_t>(key[k]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }

  void grow() {
    std::vector<std::uint32_t> next(slots_.size() * 2, kEmpty);
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t pos = hash(key(i)) & (next.size() - 1);
      while (next[pos] != kEmpty) pos = (pos + 1) & (next.size() - 1);
      next[pos] = static_cast<std::uint32_t>(i);
    }
    slots_ = std::move(next);
  }

  std::size_t width_;
  std::vector<std::uint32_t> slots_;
  std::vector<Value> keys_;
  std::size_t count_ = 0;
};

struct Layer {
  std::vector<std::uint32_t> pred;
  std::vector<std::uint32_t> choice;
  std::vector<Value> cost;
};

std::string describe_open_rows(const std::vector<int>& open, const NormalRows& rows,
                               const NFoldProgram& p, const std::vector<Value>& reach_lo,
                               const std::vector<Value>& reach_hi) {
  std::string text;
  for (int row : open) {
    const auto k = static_cast<std::size_t>(row);
    // Report in the row's own orientation.
    Value lo = reach_lo[k], hi = reach_hi[k];
    if (rows.sign[k] < 0) {
      lo = -reach_hi[k];
      hi = -reach_lo[k];
    }
    text += " row " + std::to_string(row) + " (" + to_string(p.global_row(row).sense) + " " +
            std::to_string(p.global_row(row).rhs) + ") range [" + std::to_string(lo) + ", " + std::to_string(hi) + "];";
  }
  return text;
}

}  // namespace

std::optional<NFoldSolution> nfold_solve(const NFoldProgram& p, const NFoldLimits& limits,
                                         const NFoldOptions& options) {
  const NormalRows rows = normalize(p);
  const std::size_t r = rows.rhs.size();
  const std::size_t n = static_cast<std::size_t>(p.blocks());

  std::vector<std::vector<LocalSolution>> sols(n);
  Ranges ranges;
  ranges.lo.resize(n);
  ranges.hi.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    sols[b] = LocalEnumerator(p, rows, static_cast<int>(b), limits).run();
    if (sols[b].empty()) return std::nullopt;
    block_ranges(sols[b], r, ranges.lo[b], ranges.hi[b]);
  }
  if (options.presolve && !presolve(sols, rows, ranges)) return std::nullopt;

  // Rows a block cannot move are folded into the right-hand side.
  std::vector<Value> rhs = rows.rhs;
  std::vector<int> first(r, -1), last(r, -1);
  std::vector<std::vector<char>> touches(n, std::vector<char>(r, 0));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t k = 0; k < r; ++k) {
      if (ranges.lo[b][k] == ranges.hi[b][k]) {
        rhs[k] -= ranges.lo[b][k];
        continue;
      }
      touches[b][k] = 1;
      if (first[k] < 0) first[k] = static_cast<int>(b);
      last[k] = static_cast<int>(b);
    }
  for (std::size_t k = 0; k < r; ++k)
    if (first[k] < 0 && !row_holds(rows.sense[k], 0, rhs[k])) return std::nullopt;

  // rest_lo/rest_hi[b][k]: what blocks after b can still add to row k.
  std::vector<std::vector<Value>> rest_lo(n + 1, std::vector<Value>(r, 0)), rest_hi = rest_lo;
  for (std::size_t b = n; b-- > 0;)
    for (std::size_t k = 0; k < r; ++k) {
      rest_lo[b][k] = rest_lo[b + 1][k] + (touches[b][k] ? ranges.lo[b][k] : 0);
      rest_hi[b][k] = rest_hi[b + 1][k] + (touches[b][k] ? ranges.hi[b][k] : 0);
    }
  std::vector<std::vector<int>> open_after(n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t k = 0; k < r; ++k)
      if (first[k] >= 0 && first[k] <= static_cast<int>(b) && static_cast<int>(b) < last[k])
        open_after[b].push_back(static_cast<int>(k));

  const bool minimize = p.objective_sense() == ObjectiveSense::minimize;
  std::vector<Layer> layers(n);
  StateTable prev_states(0);
  prev_states.insert(nullptr);
  std::vector<Value> prev_cost{0};
  std::vector<int> prev_open;
  std::uint64_t total_states = 1;

  for (std::size_t b = 0; b < n; ++b) {
    const auto& open = open_after[b];
    // Where each open row's value comes from in the previous state.
    std::vector<int> source(open.size(), -1);
    for (std::size_t q = 0; q < open.size(); ++q) {
      auto it = std::find(prev_open.begin(), prev_open.end(), open[q]);
      if (it != prev_open.end()) source[q] = static_cast<int>(it - prev_open.begin());
    }
    std::vector<std::pair<int, int>> closing;  // (row, index in previous state or -1)
    for (std::size_t k = 0; k < r; ++k) {
      if (last[k] != static_cast<int>(b)) continue;
      auto it = std::find(prev_open.begin(), prev_open.end(), static_cast<int>(k));
      closing.emplace_back(static_cast<int>(k), it == prev_open.end() ? -1 : static_cast<int>(it - prev_open.begin()));
    }

    StateTable states(open.size());
    Layer& layer = layers[b];
    std::vector<Value> key(open.size());
    for (std::size_t s = 0; s < prev_states.size(); ++s) {
      const Value* from = prev_states.key(s);
      for (std::size_t c = 0; c < sols[b].size(); ++c) {
        const auto& sol = sols[b][c];
        bool ok = true;
        for (const auto& [row, src] : closing) {
          const auto k = static_cast<std::size_t>(row);
          const Value v = (src >= 0 ? from[src] : 0) + sol.g[k];
          if (!row_holds(rows.sense[k], v, rhs[k])) {
            ok = false;
            break;
          }
        }
        for (std::size_t q = 0; q < open.size() && ok; ++q) {
          const auto k = static_cast<std::size_t>(open[q]);
          Value v = (source[q] >= 0 ? from[source[q]] : 0) + (touches[b][k] ? sol.g[k] : 0);
          if (options.clip) {
            if (v + rest_lo[b + 1][k] > rhs[k]) ok = false;
            if (rows.sense[k] == Sense::eq && v + rest_hi[b + 1][k] < rhs[k]) ok = false;
            if (rows.sense[k] == Sense::le) v = std::max(v, rhs[k] - rest_hi[b + 1][k]);
          }
          key[q] = v;
        }
        if (!ok) continue;
        const Value cost = prev_cost[s] + (minimize ? sol.cost : 0);
        auto [idx, inserted] = states.insert(key.data());
        if (inserted) {
          layer.pred.push_back(static_cast<std::uint32_t>(s));
          layer.choice.push_back(static_cast<std::uint32_t>(c));
          layer.cost.push_back(cost);
          if (states.size() > limits.max_layer_states || total_states + states.size() > limits.max_total_states) {
            std::vector<Value> reach_lo(r, 0), reach_hi(r, 0);
            for (std::size_t q = 0; q <= b; ++q)
              for (std::size_t k = 0; k < r; ++k)
                if (touches[q][k]) {
                  reach_lo[k] += ranges.lo[q][k];
                  reach_hi[k] += ranges.hi[q][k];
                }
            throw CapExceeded("n-fold state cap exceeded after block " + std::to_string(b) + " (" +
                              std::to_string(states.size()) + " states in layer, " +
                              std::to_string(total_states + states.size()) + " in total); open" +
                              describe_open_rows(open, rows, p, reach_lo, reach_hi));
          }
        } else if (cost < layer.cost[idx]) {
          layer.pred[idx] = static_cast<std::uint32_t>(s);
          layer.choice[idx] = static_cast<std::uint32_t>(c);
          layer.cost[idx] = cost;
        }
      }
    }
    if (states.size() == 0) return std::nullopt;
    total_states += states.size();
    prev_cost = layer.cost;
    prev_states = std::move(states);
    prev_open = open;
  }

  NFoldSolution solution;
  const auto t = static_cast<std::size_t>(p.width());
  solution.y.assign(n * t, 0);
  std::uint32_t state = 0;
  for (std::size_t b = n; b-- > 0;) {
    const auto& sol = sols[b][layers[b].choice[state]];
    for (const auto& [j, x] : sol.y) solution.y[b * t + static_cast<std::size_t>(j)] = x;
    state = layers[b].pred[state];
  }
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t j = 0; j < t; ++j) solution.objective += p.cost(static_cast<int>(b), static_cast<int>(j)) * solution.y[b * t + j];
  if (!nfold_check(p, solution.y)) throw std::logic_error("n-fold solver produced an invalid point");
  return solution;
}

bool nfold_check(const NFoldProgram& p, std::span<const Value> y) {
  const auto t = static_cast<std::size_t>(p.width());
  if (y.size() != static_cast<std::size_t>(p.blocks()) * t) return false;
  std::vector<Value> global(static_cast<std::size_t>(p.global_rows()), 0);
  for (int b = 0; b < p.blocks(); ++b) {
    const auto* x = y.data() + static_cast<std::size_t>(b) * t;
    for (int j = 0; j < p.width(); ++j)
      if (x[j] < p.lower(b, j) || x[j] > p.upper(b, j)) return false;
    for (int row = 0; row < p.local_rows(); ++row) {
      Value lhs = 0;
      for (int j = 0; j < p.width(); ++j) lhs += p.local_coef(b, row, j) * x[j];
      if (!row_holds(p.local_row(b, row).sense, lhs, p.local_row(b, row).rhs)) return false;
    }
    for (int row = 0; row < p.global_rows(); ++row)
      for (int j = 0; j < p.width(); ++j) global[static_cast<std::size_t>(row)] += p.global_coef(b, row, j) * x[j];
  }
  for (int row = 0; row < p.global_rows(); ++row)
    if (!row_holds(p.global_row(row).sense, global[static_cast<std::size_t>(row)], p.global_row(row).rhs)) return false;
  return true;
}

namespace {

Sense parse_sense(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s == "<=") return Sense::le;
  if (s == ">=") return Sense::ge;
  if (s == "=") return Sense::eq;
  throw InputError("unknown row sense '" + s + "'");
}

}  // namespace

nlohmann::json nfold_to_json(const NFoldProgram& p) {
  using nlohmann::json;
  json doc;
  doc["blocks"] = p.blocks();
  doc["global_rows"] = p.global_rows();
  doc["local_rows"] = p.local_rows();
  doc["width"] = p.width();
  doc["max_abs_entry"] = p.max_abs_entry();
  doc["objective"] = p.objective_sense() == ObjectiveSense::minimize ? "minimize" : "feasibility";
  json senses = json::array(), rhs = json::array();
  for (int row = 0; row < p.global_rows(); ++row) {
    senses.push_back(to_string(p.global_row(row).sense));
    rhs.push_back(p.global_row(row).rhs);
  }
  doc["global_sense"] = senses;
  doc["global_rhs"] = rhs;
  json blocks = json::array();
  for (int b = 0; b < p.blocks(); ++b) {
    json block;
    json global = json::array(), local = json::array(), lsense = json::array(), lrhs = json::array();
    json lo = json::array(), hi = json::array(), cost = json::array();
    for (int row = 0; row < p.global_rows(); ++row)
      for (int j = 0; j < p.width(); ++j) global.push_back(p.global_coef(b, row, j));
    for (int row = 0; row < p.local_rows(); ++row) {
      for (int j = 0; j < p.width(); ++j) local.push_back(p.local_coef(b, row, j));
      lsense.push_back(to_string(p.local_row(b, row).sense));
      lrhs.push_back(p.local_row(b, row).rhs);
    }
    for (int j = 0; j < p.width(); ++j) {
      lo.push_back(p.lower(b, j));
      hi.push_back(p.upper(b, j));
      cost.push_back(p.cost(b, j));
    }
    block["global"] = global;
    block["local"] = local;
    block["local_sense"] = lsense;
    block["local_rhs"] = lrhs;
    block["lower"] = lo;
    block["upper"] = hi;
    block["cost"] = cost;
    blocks.push_back(block);
  }
  doc["block_data"] = blocks;
  return doc;
}

NFoldProgram nfold_from_json(const nlohmann::json& doc) {
  try {
    NFoldProgram p(doc.at("local_rows").get<int>(), doc.at("width").get<int>());
    const auto& senses = doc.at("global_sense");
    const auto& rhs = doc.at("global_rhs");
    if (senses.size() != rhs.size() || static_cast<int>(senses.size()) != doc.at("global_rows").get<int>())
      throw InputError("global row arrays disagree with global_rows");
    for (std::size_t row = 0; row < senses.size(); ++row) p.add_global_row(parse_sense(senses[row]), rhs[row].get<Value>());
    const std::string objective = doc.at("objective").get<std::string>();
    if (objective != "minimize" && objective != "feasibility") throw InputError("unknown objective '" + objective + "'");
    p.set_objective_sense(objective == "minimize" ? ObjectiveSense::minimize : ObjectiveSense::feasibility);
    const auto& blocks = doc.at("block_data");
    if (static_cast<int>(blocks.size()) != doc.at("blocks").get<int>()) throw InputError("block_data length differs from blocks");
    const int t = p.width();
    for (const auto& block : blocks) {
      const int b = p.add_block();
      const auto& global = block.at("global");
      const auto& local = block.at("local");
      if (global.size() != static_cast<std::size_t>(p.global_rows() * t) ||
          local.size() != static_cast<std::size_t>(p.local_rows() * t))
        throw InputError("block matrix has the wrong size");
      for (int row = 0; row < p.global_rows(); ++row)
        for (int j = 0; j < t; ++j) p.global_coef(b, row, j) = global[static_cast<std::size_t>(row * t + j)].get<Value>();
      for (int row = 0; row < p.local_rows(); ++row) {
        for (int j = 0; j < t; ++j) p.local_coef(b, row, j) = local[static_cast<std::size_t>(row * t + j)].get<Value>();
        p.local_row(b, row) = {parse_sense(block.at("local_sense").at(static_cast<std::size_t>(row))),
                               block.at("local_rhs").at(static_cast<std::size_t>(row)).get<Value>()};
      }
      for (int j = 0; j < t; ++j) {
        p.lower(b, j) = block.at("lower").at(static_cast<std::size_t>(j)).get<Value>();
        p.upper(b, j) = block.at("upper").at(static_cast<std::size_t>(j)).get<Value>();
        p.cost(b, j) = block.at("cost").at(static_cast<std::size_t>(j)).get<Value>();
      }
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed n-fold program: ") + e.what());
  }
}

}  // namespace mmsched
