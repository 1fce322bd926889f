#include "mmsched/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>
#include <random>

namespace mmsched {

namespace {

void check_numbers(const std::vector<Value>& numbers) {
  if (numbers.empty()) throw InputError("at least one number is needed");
  for (Value s : numbers)
    if (s <= 0) throw InputError("numbers must be positive");
}

Value total(const std::vector<Value>& numbers) { return std::accumulate(numbers.begin(), numbers.end(), Value{0}); }

Job make_job(std::string id, Value p, Value d, std::vector<Value> values) {
  Job job;
  job.id = std::move(id);
  job.p = p;
  job.d = d;
  job.values = std::move(values);
  return job;
}

Verdict verdict(bool yes) { return yes ? Verdict::yes : Verdict::no; }

bool even_split(const std::vector<Value>& numbers) {
  const Value sum = total(numbers);
  return sum % 2 == 0 && subset_sum_reachable(numbers, sum / 2);
}

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::yes ? "yes" : "no"; }

bool subset_sum_reachable(const std::vector<Value>& numbers, Value target) {
  if (target < 0) return false;
  std::vector<char> reach(static_cast<std::size_t>(target) + 1, 0);
  reach[0] = 1;
  for (Value s : numbers)
    for (Value x = target; x >= s; --x)
      if (reach[static_cast<std::size_t>(x - s)]) reach[static_cast<std::size_t>(x)] = 1;
  return reach[static_cast<std::size_t>(target)] != 0;
}

bool equal_cardinality_partition(const std::vector<Value>& numbers) {
  const int n = static_cast<int>(numbers.size());
  if (n % 2 != 0 || n > 24) {
    if (n > 24) throw InputError("equal-cardinality check is limited to 24 numbers");
    return false;
  }
  const Value sum = total(numbers);
  if (sum % 2 != 0) return false;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != n / 2) continue;
    Value part = 0;
    for (int k = 0; k < n; ++k)
      if ((mask >> k) & 1U) part += numbers[static_cast<std::size_t>(k)];
    if (2 * part == sum) return true;
  }
  return false;
}

Generated gen_partition_values(const std::vector<Value>& numbers) {
  check_numbers(numbers);
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < numbers.size(); ++k)
    jobs.push_back(make_job("s" + std::to_string(k + 1), 0, 0, {numbers[k], numbers[k]}));
  const Value half = (total(numbers) + 1) / 2;
  return {Instance(2, std::move(jobs)), Targets{{half, half}}, verdict(even_split(numbers))};
}

Generated gen_partition_deadlines(const std::vector<Value>& numbers) {
  check_numbers(numbers);
  const Value due = total(numbers) / 2;
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < numbers.size(); ++k)
    jobs.push_back(make_job("s" + std::to_string(k + 1), numbers[k], due, {0, 0}));
  return {Instance(2, std::move(jobs)), Targets{{0, 0}}, verdict(even_split(numbers))};
}

Generated gen_eqcard_partition(const std::vector<Value>& numbers) {
  check_numbers(numbers);
  const Value due = total(numbers) / 2;
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < numbers.size(); ++k)
    jobs.push_back(make_job("s" + std::to_string(k + 1), numbers[k], due, {1, 1}));
  const Value half = static_cast<Value>((numbers.size() + 1) / 2);
  return {Instance(2, std::move(jobs)), Targets{{half, half}}, verdict(equal_cardinality_partition(numbers))};
}

Generated gen_partition_batches(const std::vector<Value>& numbers) {
  check_numbers(numbers);
  std::vector<Job> jobs;
  Value base = 0;
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    const Value s = numbers[i];
    const std::string tag = "b" + std::to_string(i + 1) + "_";
    for (Value t = 1; t <= s; ++t) jobs.push_back(make_job(tag + std::to_string(t), 10, base + 10 * t, {1, 1}));
    if (s == 1) {
      jobs.push_back(make_job(tag + "2", 10, base + 10, {0, 0}));
    } else {
      jobs.push_back(make_job(tag + std::to_string(s + 1), 8, base + 8, {0, 0}));
      for (Value t = s + 2; t <= 2 * s - 1; ++t)
        jobs.push_back(make_job(tag + std::to_string(t), 10, base + 8 + 10 * (t - s - 1), {0, 0}));
      jobs.push_back(make_job(tag + std::to_string(2 * s), 12, base + 10 * s, {0, 0}));
    }
    base += 10 * s;
  }
  const Value half = (total(numbers) + 1) / 2;
  return {Instance(2, std::move(jobs)), Targets{{half, half}}, verdict(even_split(numbers))};
}

Cnf parse_cnf(const std::string& text) {
  Cnf cnf;
  std::map<std::string, int> index;
  Clause clause;
  bool expect_literal = true;
  bool negated = false;
  std::size_t k = 0;
  auto finish_clause = [&] {
    if (clause.empty() || expect_literal) throw InputError("empty clause or dangling operator in '" + text + "'");
    cnf.clauses.push_back(std::move(clause));
    clause.clear();
  };
  while (k < text.size()) {
    const char c = text[k];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') {
      ++k;
    } else if (c == '~' || c == '!' || c == '-') {
      if (!expect_literal) throw InputError("misplaced negation in '" + text + "'");
      negated = !negated;
      ++k;
    } else if (c == '|') {
      if (expect_literal) throw InputError("misplaced '|' in '" + text + "'");
      expect_literal = true;
      ++k;
    } else if (c == '&') {
      finish_clause();
      expect_literal = true;
      ++k;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      if (!expect_literal) throw InputError("missing operator in '" + text + "'");
      std::size_t end = k;
      while (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) ++end;
      const std::string name = text.substr(k, end - k);
      auto [it, fresh] = index.try_emplace(name, static_cast<int>(cnf.names.size()));
      if (fresh) cnf.names.push_back(name);
      clause.push_back({it->second, negated});
      negated = false;
      expect_literal = false;
      k = end;
    } else {
      throw InputError(std::string("unexpected character '") + c + "' in formula");
    }
  }
  finish_clause();
  return cnf;
}

void check_sat3prime(const Cnf& cnf) {
  std::vector<int> occurrences(cnf.names.size(), 0);
  std::vector<int> positive(cnf.names.size(), 0), negative(cnf.names.size(), 0);
  for (const auto& clause : cnf.clauses) {
    if (clause.empty() || clause.size() > 3) throw InputError("clauses must have one to three literals");
    for (const auto& lit : clause) {
      const auto v = static_cast<std::size_t>(lit.var);
      ++occurrences[v];
      ++(lit.negated ? negative[v] : positive[v]);
    }
  }
  for (std::size_t v = 0; v < cnf.names.size(); ++v) {
    if (occurrences[v] > 3) throw InputError("variable '" + cnf.names[v] + "' occurs more than three times");
    if (positive[v] > 2 || negative[v] > 2)
      throw InputError("a literal of '" + cnf.names[v] + "' occurs more than twice");
  }
}

bool satisfiable(const Cnf& cnf) {
  const std::size_t vars = cnf.names.size();
  if (vars > 24) throw InputError("truth-table check is limited to 24 variables");
  for (std::uint32_t assignment = 0; assignment < (1U << vars); ++assignment) {
    const bool all = std::all_of(cnf.clauses.begin(), cnf.clauses.end(), [&](const Clause& clause) {
      return std::any_of(clause.begin(), clause.end(), [&](const Literal& lit) {
        return (((assignment >> lit.var) & 1U) != 0) != lit.negated;
      });
    });
    if (all) return true;
  }
  return false;
}

Generated gen_sat3prime(const Cnf& cnf) {
  check_sat3prime(cnf);
  const int vars = static_cast<int>(cnf.names.size());
  const int m = 2 * vars + static_cast<int>(cnf.clauses.size());
  auto literal_machine = [](const Literal& lit) { return 2 * lit.var + (lit.negated ? 1 : 0); };
  auto valued_on = [m](std::initializer_list<int> machines) {
    std::vector<Value> values(static_cast<std::size_t>(m), -1);
    for (int i : machines) values[static_cast<std::size_t>(i)] = 0;
    return values;
  };

  std::vector<Job> jobs;
  std::vector<char> placed(static_cast<std::size_t>(vars), 0);
  auto assignment_job = [&](int var) {
    if (placed[static_cast<std::size_t>(var)]) return;
    placed[static_cast<std::size_t>(var)] = 1;
    jobs.push_back(make_job("assign_" + cnf.names[static_cast<std::size_t>(var)], 2, 2, valued_on({2 * var, 2 * var + 1})));
  };
  // Each variable's assignment job comes right before its first literal job.
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    const int clause_machine = 2 * vars + static_cast<int>(c);
    const auto& clause = cnf.clauses[c];
    for (std::size_t k = 0; k < clause.size(); ++k) {
      assignment_job(clause[k].var);
      jobs.push_back(make_job("c" + std::to_string(c + 1) + "_l" + std::to_string(k + 1), 1, 2,
                              valued_on({clause_machine, literal_machine(clause[k])})));
    }
    if (clause.size() < 3)
      jobs.push_back(make_job("c" + std::to_string(c + 1) + "_pad", 3 - static_cast<Value>(clause.size()), 2,
                              valued_on({clause_machine})));
  }
  for (int v = 0; v < vars; ++v) assignment_job(v);
  return {Instance(m, std::move(jobs)), Targets{std::vector<Value>(static_cast<std::size_t>(m), 0)},
          verdict(satisfiable(cnf))};
}

Instance gen_ef_counterexample(int n) {
  if (n < 2) throw InputError("the counterexample needs n >= 2");
  std::vector<Job> jobs;
  for (int t = 1; t < n; ++t) jobs.push_back(make_job("unit" + std::to_string(t), 1, n - 1, {1, 1}));
  jobs.push_back(make_job("long", n - 1, n - 1, {0, 0}));
  return Instance(2, std::move(jobs));
}

Instance random_instance(std::uint64_t seed, const RandomSpec& spec) {
  std::mt19937_64 rng(seed);
  auto draw = [&](Value lo, Value hi) { return std::uniform_int_distribution<Value>(lo, hi)(rng); };
  const int n = static_cast<int>(draw(spec.min_jobs, spec.max_jobs));
  const int m = static_cast<int>(draw(spec.min_machines, spec.max_machines));
  const int groups = static_cast<int>(draw(1, std::max(spec.max_groups, 1)));
  std::vector<Job> jobs;
  for (int t = 0; t < n; ++t) {
    Job job;
    job.id = "j" + std::to_string(t + 1);
    job.p = draw(0, spec.max_p);
    job.d = spec.fitting_deadlines && job.p <= spec.max_d ? draw(job.p, spec.max_d) : draw(0, spec.max_d);
    job.group = static_cast<int>(draw(0, groups - 1));
    for (int i = 0; i < m; ++i) job.values.push_back(draw(spec.min_value, spec.max_value));
    if (spec.penalties) job.penalty = draw(0, spec.max_penalty);
    jobs.push_back(std::move(job));
  }
  return Instance(m, std::move(jobs));
}

}  // namespace mmsched
