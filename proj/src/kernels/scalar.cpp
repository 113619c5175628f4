#include "liftgap/kernels.hpp"

namespace liftgap::kernels::scalar {

void wht_i64(std::span<std::int64_t> data) {
  const std::size_t n = data.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t a = data[j];
        const std::int64_t b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

void count_satisfied(std::span<const PackedConstraint> constraints, std::uint32_t first,
                     std::span<std::uint32_t> counts) {
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const std::uint32_t idx = first + static_cast<std::uint32_t>(k);
    std::uint32_t total = 0;
    for (const auto& c : constraints) {
      std::uint32_t local = 0;
      for (std::uint32_t j = 0; j < c.arity; ++j) local |= ((idx >> c.vars[j]) & 1u) << j;
      total += (c.table >> local) & 1u;
    }
    counts[k] = total;
  }
}

}  // namespace liftgap::kernels::scalar
