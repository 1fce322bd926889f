#include <algorithm>

#include "mmsched/kernels.hpp"

namespace mmsched::kernels::scalar {

void subset_sums(const Value* weights, int count, Value* out) {
  out[0] = 0;
  for (int b = 0; b < count; ++b) {
    const std::size_t half = std::size_t{1} << b;
    const Value w = weights[b];
    for (std::size_t j = 0; j < half; ++j) out[half + j] = out[j] + w;
  }
}

void mark_within(const Value* sums, std::size_t size, Value bound, std::uint8_t* ok) {
  for (std::size_t i = 0; i < size; ++i) ok[i] = static_cast<std::uint8_t>(ok[i] & (sums[i] <= bound));
}

void gate_values(const Value* sums, const std::uint8_t* ok, std::size_t size, Value* out) {
  for (std::size_t i = 0; i < size; ++i) out[i] = ok[i] ? sums[i] : kNegInf;
}

void gate_threshold(const Value* sums, const std::uint8_t* ok, std::size_t size, Value threshold,
                    std::uint8_t* out) {
  for (std::size_t i = 0; i < size; ++i) out[i] = static_cast<std::uint8_t>(ok[i] && sums[i] >= threshold);
}

Value max_min_reversed(const Value* a, const Value* b, std::size_t size) {
  Value best = kNegInf;
  for (std::size_t i = 0; i < size; ++i) best = std::max(best, std::min(a[size - 1 - i], b[i]));
  return best;
}

std::int64_t first_and_reversed(const std::uint8_t* a, const std::uint8_t* b, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i)
    if (a[size - 1 - i] && b[i]) return static_cast<std::int64_t>(i);
  return -1;
}

}  // namespace mmsched::kernels::scalar
