#pragma once

#include <cstdint>
#include <span>
#include <string>

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant selected at runtime. Both
// variants are required to produce bit-identical results.
namespace liftgap::kernels {

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);

/// Best instruction set supported by this CPU and build.
Isa detected_isa();
/// The variant the dispatching entry points use. Defaults to detected_isa();
/// LIFTGAP_KERNELS=scalar in the environment forces the reference path.
Isa active_isa();
void set_active_isa(Isa isa);

/// One predicate application: bit j of the truth-table index is 1 iff the
/// j-th argument variable equals -1, matching the assignment index convention.
struct PackedConstraint {
  std::uint8_t arity = 0;
  std::uint8_t vars[4] = {0, 0, 0, 0};
  std::uint16_t table = 0;
};

/// In-place unnormalized Walsh-Hadamard transform:
/// out[a] = sum_x in[x] * (-1)^popcount(a & x). data.size() must be a power
/// of two. Callers guarantee no int64 overflow (|entries| * size < 2^63).
void wht_i64(std::span<std::int64_t> data);

/// counts[k] = number of satisfied constraints under assignment index
/// first + k. All variable indices must be < 31.
void count_satisfied(std::span<const PackedConstraint> constraints, std::uint32_t first,
                     std::span<std::uint32_t> counts);

namespace scalar {
void wht_i64(std::span<std::int64_t> data);
void count_satisfied(std::span<const PackedConstraint> constraints, std::uint32_t first,
                     std::span<std::uint32_t> counts);
}  // namespace scalar

namespace avx2 {
bool available();
void wht_i64(std::span<std::int64_t> data);
void count_satisfied(std::span<const PackedConstraint> constraints, std::uint32_t first,
                     std::span<std::uint32_t> counts);
}  // namespace avx2

}  // namespace liftgap::kernels
