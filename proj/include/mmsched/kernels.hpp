#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

#include "mmsched/core.hpp"

// Data-parallel kernels behind the subset dynamic program. Every kernel has a
// scalar reference in namespace scalar and an AVX2 variant in namespace avx2;
// active() picks one at startup (MMS_SCHED_SIMD=scalar forces the reference).
// Tables are indexed by job bitmask, so sizes are powers of two, but the
// kernels accept any size.

namespace mmsched::kernels {

/// Table entry for an infeasible subset in value tables.
inline constexpr Value kNegInf = std::numeric_limits<Value>::min();

enum class Backend { scalar, avx2 };

struct KernelTable {
  /// out[mask] = sum of weights[b] over set bits b; out has 2^count entries.
  void (*subset_sums)(const Value* weights, int count, Value* out);
  /// ok[i] &= (sums[i] <= bound).
  void (*mark_within)(const Value* sums, std::size_t size, Value bound, std::uint8_t* ok);
  /// out[i] = ok[i] ? sums[i] : kNegInf.
  void (*gate_values)(const Value* sums, const std::uint8_t* ok, std::size_t size, Value* out);
  /// out[i] = ok[i] && sums[i] >= threshold.
  void (*gate_threshold)(const Value* sums, const std::uint8_t* ok, std::size_t size, Value threshold,
                         std::uint8_t* out);
  /// max over i of min(a[size-1-i], b[i]); kNegInf for size 0.
  Value (*max_min_reversed)(const Value* a, const Value* b, std::size_t size);
  /// Smallest i with a[size-1-i] && b[i], or -1.
  std::int64_t (*first_and_reversed)(const std::uint8_t* a, const std::uint8_t* b, std::size_t size);
};

const KernelTable& table(Backend backend);
const KernelTable& active();
Backend active_backend();
bool avx2_available();
/// Overrides the startup choice; throws if the backend is unavailable.
void force_backend(Backend backend);
std::string_view backend_name(Backend backend);

namespace scalar {
void subset_sums(const Value* weights, int count, Value* out);
void mark_within(const Value* sums, std::size_t size, Value bound, std::uint8_t* ok);
void gate_values(const Value* sums, const std::uint8_t* ok, std::size_t size, Value* out);
void gate_threshold(const Value* sums, const std::uint8_t* ok, std::size_t size, Value threshold,
                    std::uint8_t* out);
Value max_min_reversed(const Value* a, const Value* b, std::size_t size);
std::int64_t first_and_reversed(const std::uint8_t* a, const std::uint8_t* b, std::size_t size);
}  // namespace scalar

namespace avx2 {
void subset_sums(const Value* weights, int count, Value* out);
void mark_within(const Value* sums, std::size_t size, Value bound, std::uint8_t* ok);
void gate_values(const Value* sums, const std::uint8_t* ok, std::size_t size, Value* out);
void gate_threshold(const Value* sums, const std::uint8_t* ok, std::size_t size, Value threshold,
                    std::uint8_t* out);
Value max_min_reversed(const Value* a, const Value* b, std::size_t size);
std::int64_t first_and_reversed(const std::uint8_t* a, const std::uint8_t* b, std::size_t size);
}  // namespace avx2

}  // namespace mmsched::kernels
