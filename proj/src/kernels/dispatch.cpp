#include <atomic>
#include <cstdlib>
#include <string>

#include "mmsched/kernels.hpp"

namespace mmsched::kernels {

namespace {

constexpr KernelTable kScalar{scalar::subset_sums,    scalar::mark_within,      scalar::gate_values,
                              scalar::gate_threshold, scalar::max_min_reversed, scalar::first_and_reversed};
constexpr KernelTable kAvx2{avx2::subset_sums,    avx2::mark_within,      avx2::gate_values,
                            avx2::gate_threshold, avx2::max_min_reversed, avx2::first_and_reversed};

Backend startup_backend() {
  if (const char* env = std::getenv("MMS_SCHED_SIMD"); env != nullptr && std::string(env) == "scalar")
    return Backend::scalar;
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{startup_backend()};
  return backend;
}

}  // namespace

bool avx2_available() {
#if defined(MMSCHED_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
#else
  return false;
#endif
}

const KernelTable& table(Backend backend) { return backend == Backend::avx2 ? kAvx2 : kScalar; }

const KernelTable& active() { return table(current().load(std::memory_order_relaxed)); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend backend) {
  if (backend == Backend::avx2 && !avx2_available()) throw std::runtime_error("AVX2 is not available on this CPU");
  current().store(backend, std::memory_order_relaxed);
}

std::string_view backend_name(Backend backend) { return backend == Backend::avx2 ? "avx2" : "scalar"; }

}  // namespace mmsched::kernels
