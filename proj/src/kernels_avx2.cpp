#include "nilbench/kernels.hpp"

#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define NILBENCH_X86 1
#else
#define NILBENCH_X86 0
#endif

namespace nilbench::kernels {

#if NILBENCH_X86

// Degree <= 32: two pshufb lookups (low/high half of b), theta lanes forced to 0xFF.
__attribute__((target("avx2"))) void compose_avx2(const std::uint8_t* a, const std::uint8_t* b,
                                                  std::uint8_t* out, std::size_t n) {
  if (n > 32) {
    compose_scalar(a, b, out, n);
    return;
  }
  alignas(32) std::uint8_t ia[32];
  alignas(32) std::uint8_t tb[32];
  alignas(32) std::uint8_t res[32];
  std::memset(ia, kThetaByte, sizeof ia);
  std::memset(tb, kThetaByte, sizeof tb);
  std::memcpy(ia, a, n);
  std::memcpy(tb, b, n);

  const __m256i idx = _mm256_load_si256(reinterpret_cast<const __m256i*>(ia));
  const __m128i lo128 = _mm_load_si128(reinterpret_cast<const __m128i*>(tb));
  const __m128i hi128 = _mm_load_si128(reinterpret_cast<const __m128i*>(tb + 16));
  const __m256i lo = _mm256_broadcastsi128_si256(lo128);
  const __m256i hi = _mm256_broadcastsi128_si256(hi128);

  const __m256i theta = _mm256_cmpeq_epi8(idx, _mm256_set1_epi8(char(0xFF)));
  const __m256i below16 = _mm256_andnot_si256(theta, _mm256_cmpgt_epi8(_mm256_set1_epi8(16), idx));
  const __m256i r_lo = _mm256_shuffle_epi8(lo, idx);
  const __m256i r_hi = _mm256_shuffle_epi8(hi, _mm256_sub_epi8(idx, _mm256_set1_epi8(16)));
  __m256i r = _mm256_blendv_epi8(r_hi, r_lo, below16);
  r = _mm256_or_si256(r, theta);
  _mm256_store_si256(reinterpret_cast<__m256i*>(res), r);
  std::memcpy(out, res, n);
}

__attribute__((target("avx2"))) void gather_mul_avx2(const std::uint32_t* table, std::size_t stride,
                                                     const std::uint32_t* lhs, const std::uint32_t* rhs,
                                                     std::uint32_t* out, std::size_t count) {
  const __m256i vstride = _mm256_set1_epi32(int(stride));
  const int* base = reinterpret_cast<const int*>(table);
  std::size_t k = 0;
  for (; k + 8 <= count; k += 8) {
    const __m256i l = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lhs + k));
    const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rhs + k));
    const __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(l, vstride), r);
    const __m256i v = _mm256_i32gather_epi32(base, idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k), v);
  }
  gather_mul_scalar(table, stride, lhs + k, rhs + k, out + k, count - k);
}

__attribute__((target("avx2"))) void gather_mul_const_avx2(const std::uint32_t* table, std::size_t stride,
                                                           const std::uint32_t* lhs, std::uint32_t rhs,
                                                           std::uint32_t* out, std::size_t count) {
  const __m256i vstride = _mm256_set1_epi32(int(stride));
  const __m256i vr = _mm256_set1_epi32(int(rhs));
  const int* base = reinterpret_cast<const int*>(table);
  std::size_t k = 0;
  for (; k + 8 <= count; k += 8) {
    const __m256i l = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lhs + k));
    const __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(l, vstride), vr);
    const __m256i v = _mm256_i32gather_epi32(base, idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k), v);
  }
  gather_mul_const_scalar(table, stride, lhs + k, rhs, out + k, count - k);
}

#else

void compose_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  compose_scalar(a, b, out, n);
}
void gather_mul_avx2(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                     const std::uint32_t* rhs, std::uint32_t* out, std::size_t count) {
  gather_mul_scalar(table, stride, lhs, rhs, out, count);
}
void gather_mul_const_avx2(const std::uint32_t* table, std::size_t stride, const std::uint32_t* lhs,
                           std::uint32_t rhs, std::uint32_t* out, std::size_t count) {
  gather_mul_const_scalar(table, stride, lhs, rhs, out, count);
}

#endif

}  // namespace nilbench::kernels
