#include "nilbench/kernels.hpp"

#include <atomic>

namespace nilbench::kernels {

namespace {

Isa probe() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void compose_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] == kThetaByte ? kThetaByte : b[a[i]];
}

void gather_mul_scalar(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                       const std::uint32_t* rhs, std::uint32_t* out, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) out[k] = table[std::size_t(lhs[k]) * stride + rhs[k]];
}

void gather_mul_const_scalar(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                             std::uint32_t rhs, std::uint32_t* out, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) out[k] = table[std::size_t(lhs[k]) * stride + rhs];
}

void compose(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  if (active_isa() == Isa::Avx2) {
    compose_avx2(a, b, out, n);
  } else {
    compose_scalar(a, b, out, n);
  }
}

void gather_mul(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                const std::uint32_t* rhs, std::uint32_t* out, std::size_t count) {
  if (active_isa() == Isa::Avx2) {
    gather_mul_avx2(table, stride, lhs, rhs, out, count);
  } else {
    gather_mul_scalar(table, stride, lhs, rhs, out, count);
  }
}

void gather_mul_const(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                      std::uint32_t rhs, std::uint32_t* out, std::size_t count) {
  if (active_isa() == Isa::Avx2) {
    gather_mul_const_avx2(table, stride, lhs, rhs, out, count);
  } else {
    gather_mul_const_scalar(table, stride, lhs, rhs, out, count);
  }
}

}  // namespace nilbench::kernels
