#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nilbench/semigroup.hpp"

namespace nilbench {

struct OmegaData {
  std::vector<Elem> omega;            // x^omega
  std::vector<Elem> omega_minus_one;  // x^(omega-1)
  std::vector<std::uint32_t> index;   // least i with x^i = x^(i+period)
  std::vector<std::uint32_t> period;
};

struct OmegaPower {
  Elem omega;
  Elem omega_minus_one;
};

OmegaPower omega_power(const Semigroup& s, Elem x);
OmegaData omega_data(const Semigroup& s);

// Substitution on t-tuples. Variable v < t is y_v, v >= t is z_(v-t).
struct Substitution {
  std::size_t t = 0;
  std::vector<std::vector<std::uint32_t>> updates;  // one word per component
};

// phi_t: y_i -> lambda_{t,i}(y_1..y_t; z_1..z_t).
Substitution lambda_substitution(std::size_t t);

std::vector<Elem> apply_substitution(const Semigroup& s, const Substitution& f, const std::vector<Elem>& y,
                                     const std::vector<Elem>& z);

struct Lasso {
  std::size_t mu = 0;   // entry index
  std::size_t rho = 1;  // period
};

// F^k(y0) for the least k >= mu with rho | k.
std::vector<Elem> omega_iterate(const Semigroup& s, const Substitution& f, const std::vector<Elem>& y0,
                                const std::vector<Elem>& z, Lasso* lasso = nullptr,
                                std::uint64_t* evaluations = nullptr);

}  // namespace nilbench
