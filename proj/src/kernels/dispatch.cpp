#include <atomic>
#include <cstdlib>
#include <cstring>

#include "liftgap/kernels.hpp"

namespace liftgap::kernels {

#if !(defined(__x86_64__) || defined(_M_X64))
namespace avx2 {
bool available() { return false; }
void wht_i64(std::span<std::int64_t> data) { scalar::wht_i64(data); }
void count_satisfied(std::span<const PackedConstraint> c, std::uint32_t first, std::span<std::uint32_t> counts) {
  scalar::count_satisfied(c, first, counts);
}
}  // namespace avx2
#endif

namespace {

Isa initial_isa() {
  const char* env = std::getenv("LIFTGAP_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() { return avx2::available() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2::available()) isa = Isa::Scalar;
  active().store(isa, std::memory_order_relaxed);
}

void wht_i64(std::span<std::int64_t> data) {
  if (active_isa() == Isa::Avx2) avx2::wht_i64(data);
  else scalar::wht_i64(data);
}

void count_satisfied(std::span<const PackedConstraint> constraints, std::uint32_t first,
                     std::span<std::uint32_t> counts) {
  if (active_isa() == Isa::Avx2) avx2::count_satisfied(constraints, first, counts);
  else scalar::count_satisfied(constraints, first, counts);
}

}  // namespace liftgap::kernels
