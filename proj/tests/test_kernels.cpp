#include <doctest.h>

#include <random>
#include <vector>

#include "mmsched/kernels.hpp"
#include "mmsched/reductions.hpp"
#include "mmsched/subset_dp.hpp"

using namespace mmsched;
namespace k = mmsched::kernels;

namespace {

std::vector<Value> random_values(std::mt19937_64& rng, std::size_t size, bool with_sentinels) {
  std::vector<Value> v(size);
  for (auto& x : v) {
    x = static_cast<Value>(rng() % 41) - 20;
    if (with_sentinels && rng() % 7 == 0) x = k::kNegInf;
  }
  return v;
}

std::vector<std::uint8_t> random_flags(std::mt19937_64& rng, std::size_t size, unsigned density) {
  std::vector<std::uint8_t> f(size);
  for (auto& x : f) x = rng() % 100 < density ? 1 : 0;
  return f;
}

}  // namespace

TEST_CASE("scalar subset sums") {
  std::vector<Value> w{3, -1, 5};
  std::vector<Value> out(8);
  k::scalar::subset_sums(w.data(), 3, out.data());
  CHECK(out == std::vector<Value>{0, 3, -1, 2, 5, 8, 4, 7});
  std::vector<Value> single(1);
  k::scalar::subset_sums(w.data(), 0, single.data());
  CHECK(single[0] == 0);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!k::avx2_available()) {
    MESSAGE("AVX2 unavailable; only the scalar backend is exercised");
    return;
  }
  std::mt19937_64 rng(42);
  for (int count = 0; count <= 12; ++count) {
    const auto weights = random_values(rng, static_cast<std::size_t>(count), false);
    const std::size_t size = std::size_t{1} << count;
    std::vector<Value> a(size), b(size);
    k::scalar::subset_sums(weights.data(), count, a.data());
    k::avx2::subset_sums(weights.data(), count, b.data());
    CHECK(a == b);
  }
  for (std::size_t size : {0UL, 1UL, 3UL, 4UL, 5UL, 31UL, 32UL, 33UL, 64UL, 100UL, 1024UL, 1027UL}) {
    for (int round = 0; round < 20; ++round) {
      const auto sums = random_values(rng, size, false);
      const auto gated = random_values(rng, size, true);
      const auto other = random_values(rng, size, true);
      const auto ok = random_flags(rng, size, 60);
      const Value bound = static_cast<Value>(rng() % 21) - 10;

      auto f1 = ok, f2 = ok;
      k::scalar::mark_within(sums.data(), size, bound, f1.data());
      k::avx2::mark_within(sums.data(), size, bound, f2.data());
      CHECK(f1 == f2);

      std::vector<Value> g1(size), g2(size);
      k::scalar::gate_values(sums.data(), ok.data(), size, g1.data());
      k::avx2::gate_values(sums.data(), ok.data(), size, g2.data());
      CHECK(g1 == g2);

      std::vector<std::uint8_t> t1(size), t2(size);
      k::scalar::gate_threshold(sums.data(), ok.data(), size, bound, t1.data());
      k::avx2::gate_threshold(sums.data(), ok.data(), size, bound, t2.data());
      CHECK(t1 == t2);

      CHECK(k::scalar::max_min_reversed(gated.data(), other.data(), size) ==
            k::avx2::max_min_reversed(gated.data(), other.data(), size));

      for (unsigned density : {2U, 20U, 90U}) {
        const auto x = random_flags(rng, size, density);
        const auto y = random_flags(rng, size, density);
        CHECK(k::scalar::first_and_reversed(x.data(), y.data(), size) ==
              k::avx2::first_and_reversed(x.data(), y.data(), size));
      }
    }
  }
}

TEST_CASE("reversed scans") {
  const std::vector<Value> a{1, 5, k::kNegInf, 2};
  const std::vector<Value> b{4, 4, 9, 0};
  // pairs: (2,4) (neg,4) (5,9) (1,0) -> mins 2, neg, 5, 0
  CHECK(k::scalar::max_min_reversed(a.data(), b.data(), 4) == 5);
  CHECK(k::scalar::max_min_reversed(a.data(), b.data(), 0) == k::kNegInf);
  const std::vector<std::uint8_t> x{0, 1, 0, 0}, y{0, 0, 1, 1};
  CHECK(k::scalar::first_and_reversed(x.data(), y.data(), 4) == 2);
}

TEST_CASE("subset DP gives the same answers on both backends") {
  if (!k::avx2_available()) return;
  std::mt19937_64 rng(5);
  const auto initial = k::active_backend();
  for (int round = 0; round < 40; ++round) {
    RandomSpec spec;
    spec.max_jobs = 10;
    const Instance inst = random_instance(rng(), spec);
    std::vector<Extended> per_backend[2];
    for (auto backend : {k::Backend::scalar, k::Backend::avx2}) {
      k::force_backend(backend);
      for (int i = 0; i < inst.machines(); ++i)
        per_backend[backend == k::Backend::avx2].push_back(dp_mms(inst, i));
    }
    CHECK(per_backend[0] == per_backend[1]);
  }
  k::force_backend(initial);
}

TEST_CASE("backend names") {
  CHECK(k::backend_name(k::Backend::scalar) == "scalar");
  CHECK(k::backend_name(k::Backend::avx2) == "avx2");
  CHECK(&k::table(k::Backend::scalar) != nullptr);
}
