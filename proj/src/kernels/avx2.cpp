// AVX2 variants of the subset-table kernels. This file is compiled with -mavx2;
// nothing here may run unless the dispatcher confirmed CPU support.

#include "mmsched/kernels.hpp"

#if defined(MMSCHED_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cstring>

namespace mmsched::kernels::avx2 {

namespace {

// Four 0/1 flag bytes for each 4-bit lane mask.
constexpr std::uint32_t kByteFlags[16] = {
    0x00000000, 0x00000001, 0x00000100, 0x00000101, 0x00010000, 0x00010001, 0x00010100, 0x00010101,
    0x01000000, 0x01000001, 0x01000100, 0x01000101, 0x01010000, 0x01010001, 0x01010100, 0x01010101,
};

inline std::uint32_t load4(const std::uint8_t* p) {
  std::uint32_t v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

inline void store4(std::uint8_t* p, std::uint32_t v) { std::memcpy(p, &v, sizeof v); }

inline int lane_mask(__m256i m) { return _mm256_movemask_pd(_mm256_castsi256_pd(m)); }

inline __m256i flags_to_lanes(const std::uint8_t* p) {
  const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(load4(p))));
  return _mm256_cmpgt_epi64(wide, _mm256_setzero_si256());
}

}  // namespace

void subset_sums(const Value* weights, int count, Value* out) {
  out[0] = 0;
  for (int b = 0; b < count; ++b) {
    const std::size_t half = std::size_t{1} << b;
    const Value w = weights[b];
    if (half < 4) {
      for (std::size_t j = 0; j < half; ++j) out[half + j] = out[j] + w;
      continue;
    }
    const __m256i vw = _mm256_set1_epi64x(w);
    for (std::size_t j = 0; j < half; j += 4) {
      const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(out + j));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + half + j), _mm256_add_epi64(v, vw));
    }
  }
}

void mark_within(const Value* sums, std::size_t size, Value bound, std::uint8_t* ok) {
  const __m256i vb = _mm256_set1_epi64x(bound);
  std::size_t i = 0;
  for (; i + 4 <= size; i += 4) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sums + i));
    const int over = lane_mask(_mm256_cmpgt_epi64(s, vb));
    store4(ok + i, load4(ok + i) & kByteFlags[~over & 0xF]);
  }
  for (; i < size; ++i) ok[i] = static_cast<std::uint8_t>(ok[i] & (sums[i] <= bound));
}

void gate_values(const Value* sums, const std::uint8_t* ok, std::size_t size, Value* out) {
  const __m256i neg = _mm256_set1_epi64x(kNegInf);
  std::size_t i = 0;
  for (; i + 4 <= size; i += 4) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sums + i));
    const __m256i keep = flags_to_lanes(ok + i);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_blendv_epi8(neg, s, keep));
  }
  for (; i < size; ++i) out[i] = ok[i] ? sums[i] : kNegInf;
}

void gate_threshold(const Value* sums, const std::uint8_t* ok, std::size_t size, Value threshold,
                    std::uint8_t* out) {
  const __m256i vt = _mm256_set1_epi64x(threshold);
  std::size_t i = 0;
  for (; i + 4 <= size; i += 4) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sums + i));
    const int below = lane_mask(_mm256_cmpgt_epi64(vt, s));
    const int flagged = lane_mask(flags_to_lanes(ok + i));
    store4(out + i, kByteFlags[flagged & ~below & 0xF]);
  }
  for (; i < size; ++i) out[i] = static_cast<std::uint8_t>(ok[i] && sums[i] >= threshold);
}

Value max_min_reversed(const Value* a, const Value* b, std::size_t size) {
  __m256i best = _mm256_set1_epi64x(kNegInf);
  std::size_t i = 0;
  for (; i + 4 <= size; i += 4) {
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i va = _mm256_permute4x64_epi64(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + size - 4 - i)), 0x1B);
    const __m256i lo = _mm256_blendv_epi8(vb, va, _mm256_cmpgt_epi64(vb, va));
    best = _mm256_blendv_epi8(best, lo, _mm256_cmpgt_epi64(lo, best));
  }
  alignas(32) Value lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
  Value result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < size; ++i) result = std::max(result, std::min(a[size - 1 - i], b[i]));
  return result;
}

std::int64_t first_and_reversed(const std::uint8_t* a, const std::uint8_t* b, std::size_t size) {
  const __m256i reverse_lane = _mm256_setr_epi8(15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0,
                                                15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= size; i += 32) {
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + size - 32 - i));
    va = _mm256_permute4x64_epi64(_mm256_shuffle_epi8(va, reverse_lane), 0x4E);
    const auto empty = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(_mm256_and_si256(va, vb), zero)));
    if (empty != 0xFFFFFFFFu) return static_cast<std::int64_t>(i) + __builtin_ctz(~empty);
  }
  for (; i < size; ++i)
    if (a[size - 1 - i] && b[i]) return static_cast<std::int64_t>(i);
  return -1;
}

}  // namespace mmsched::kernels::avx2

#else

// Non-x86 builds: the AVX2 entry points forward to the reference kernels so
// the table stays complete; avx2_available() reports false there.
namespace mmsched::kernels::avx2 {
void subset_sums(const Value* w, int c, Value* o) { scalar::subset_sums(w, c, o); }
void mark_within(const Value* s, std::size_t n, Value b, std::uint8_t* ok) { scalar::mark_within(s, n, b, ok); }
void gate_values(const Value* s, const std::uint8_t* ok, std::size_t n, Value* o) { scalar::gate_values(s, ok, n, o); }
void gate_threshold(const Value* s, const std::uint8_t* ok, std::size_t n, Value t, std::uint8_t* o) {
  scalar::gate_threshold(s, ok, n, t, o);
}
Value max_min_reversed(const Value* a, const Value* b, std::size_t n) { return scalar::max_min_reversed(a, b, n); }
std::int64_t first_and_reversed(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  return scalar::first_and_reversed(a, b, n);
}
}  // namespace mmsched::kernels::avx2

#endif
