#include <immintrin.h>

#include "liftgap/kernels.hpp"

namespace liftgap::kernels::avx2 {

bool available() { return __builtin_cpu_supports("avx2"); }

void wht_i64(std::span<std::int64_t> data) {
  const std::size_t n = data.size();
  std::int64_t* p = data.data();
  // Strides below one vector width stay scalar.
  std::size_t h = 1;
  for (; h < n && h < 4; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t a = p[j];
        const std::int64_t b = p[j + h];
        p[j] = a + b;
        p[j + h] = a - b;
      }
    }
  }
  for (; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; j += 4) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + j));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + j + h));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(p + j), _mm256_add_epi64(a, b));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(p + j + h), _mm256_sub_epi64(a, b));
      }
    }
  }
}

void count_satisfied(std::span<const PackedConstraint> constraints, std::uint32_t first,
                     std::span<std::uint32_t> counts) {
  const std::size_t total = counts.size();
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t k = 0;
  for (; k + 8 <= total; k += 8) {
    const __m256i idx = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(first + k)), lane);
    __m256i acc = _mm256_setzero_si256();
    for (const auto& c : constraints) {
      __m256i local = _mm256_setzero_si256();
      for (int j = 0; j < c.arity; ++j) {
        const __m256i bit = _mm256_and_si256(_mm256_srlv_epi32(idx, _mm256_set1_epi32(c.vars[j])), one);
        local = _mm256_or_si256(local, _mm256_slli_epi32(bit, j));
      }
      const __m256i sat = _mm256_and_si256(_mm256_srlv_epi32(_mm256_set1_epi32(c.table), local), one);
      acc = _mm256_add_epi32(acc, sat);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(counts.data() + k), acc);
  }
  if (k < total)
    scalar::count_satisfied(constraints, first + static_cast<std::uint32_t>(k), counts.subspan(k));
}

}  // namespace liftgap::kernels::avx2
