#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "nilbench/kernels.hpp"

using namespace nilbench::kernels;

TEST_CASE("compose kernels agree") {
  std::mt19937 rng(7);
  for (std::size_t n : {1u, 5u, 16u, 31u, 32u, 33u, 100u, 254u}) {
    std::vector<std::uint8_t> a(n), b(n), x(n), y(n);
    for (int trial = 0; trial < 20; ++trial) {
      for (auto& v : a) v = rng() % 5 == 0 ? kThetaByte : std::uint8_t(rng() % n);
      for (auto& v : b) v = rng() % 5 == 0 ? kThetaByte : std::uint8_t(rng() % n);
      compose_scalar(a.data(), b.data(), x.data(), n);
      compose(a.data(), b.data(), y.data(), n);
      CHECK(x == y);
      if (detected_isa() == Isa::Avx2) {
        compose_avx2(a.data(), b.data(), y.data(), n);
        CHECK(x == y);
      }
    }
  }
}

TEST_CASE("gather kernels agree") {
  std::mt19937 rng(11);
  const std::size_t n = 37;
  std::vector<std::uint32_t> table(n * n);
  for (auto& v : table) v = rng() % n;
  for (std::size_t count : {1u, 7u, 8u, 9u, 64u, 1000u}) {
    std::vector<std::uint32_t> lhs(count), rhs(count), x(count), y(count);
    for (auto& v : lhs) v = rng() % n;
    for (auto& v : rhs) v = rng() % n;
    gather_mul_scalar(table.data(), n, lhs.data(), rhs.data(), x.data(), count);
    gather_mul(table.data(), n, lhs.data(), rhs.data(), y.data(), count);
    CHECK(x == y);
    gather_mul_const_scalar(table.data(), n, lhs.data(), 3, x.data(), count);
    gather_mul_const(table.data(), n, lhs.data(), 3, y.data(), count);
    CHECK(x == y);
  }
}

TEST_CASE("isa dispatch can be pinned") {
  const Isa before = active_isa();
  CHECK(set_isa(Isa::Scalar) == Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  set_isa(before);
  CHECK(std::string(isa_name(Isa::Avx2)) == "avx2");
}
