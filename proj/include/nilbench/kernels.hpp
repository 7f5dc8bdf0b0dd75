#pragma once
// Hot loops with a scalar reference and an AVX2 variant picked at runtime.

#include <cstddef>
#include <cstdint>

namespace nilbench::kernels {

inline constexpr std::uint8_t kThetaByte = 0xFF;

enum class Isa { Scalar, Avx2 };

// Highest ISA the running CPU supports.
Isa detected_isa();
// ISA currently used by the dispatching entry points.
Isa active_isa();
// Pins dispatch to `isa` (clamped to what the CPU supports). Returns the ISA in effect.
Isa set_isa(Isa isa);
const char* isa_name(Isa isa);

// out[i] = a[i] == theta ? theta : b[a[i]]   (apply a, then b)
void compose_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
void compose_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
void compose(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);

// out[k] = table[lhs[k] * stride + rhs[k]]
void gather_mul_scalar(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                       const std::uint32_t* rhs, std::uint32_t* out, std::size_t count);
void gather_mul_avx2(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                     const std::uint32_t* rhs, std::uint32_t* out, std::size_t count);
void gather_mul(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                const std::uint32_t* rhs, std::uint32_t* out, std::size_t count);

// out[k] = table[lhs[k] * stride + rhs]
void gather_mul_const_scalar(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                             std::uint32_t rhs, std::uint32_t* out, std::size_t count);
void gather_mul_const_avx2(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                           std::uint32_t rhs, std::uint32_t* out, std::size_t count);
void gather_mul_const(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                      std::uint32_t rhs, std::uint32_t* out, std::size_t count);

}  // namespace nilbench::kernels
