#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilbench/automaton.hpp"

namespace nilbench {

bool is_prime(std::uint64_t p);
std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> rows, std::size_t cols, std::uint64_t p);

struct IntegerInvariants {
  std::vector<std::string> elementary_divisors;  // nonzero diagonal of a diagonal form, decimal
  std::size_t rational_rank = 0;
  std::vector<std::uint64_t> primes;  // dividing some elementary divisor
  bool primes_complete = true;        // false if a cofactor could not be factored
};

IntegerInvariants integer_invariants(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols);

// Abelianized translation of H (given by its automaton) into the subgroup read by `b`.
struct ModPData {
  std::uint64_t p = 0;
  std::vector<std::vector<std::int64_t>> rows;  // one per basis element of H, over Z
  std::size_t cols = 0;                         // |A_i|
  std::size_t rank = 0;                         // over Z/pZ
};

struct ClosureResult {
  InverseAutomaton automaton;              // trimmed, canonical
  std::vector<std::uint32_t> congruence;   // class per input vertex, numbered by first vertex
  std::size_t classes = 0;
  std::vector<ModPData> steps;
};

// Throws NotPrime.
ClosureResult p_closure(const InverseAutomaton& h, std::uint64_t p);

struct NilClosure {
  InverseAutomaton automaton;
  std::vector<std::uint32_t> congruence;
  std::size_t classes = 0;
  std::vector<std::uint64_t> primes;
  bool exact = false;
  IntegerInvariants invariants;  // of the step-0 integer matrix
  std::size_t columns = 0;
};

// primes empty = Auto: elementary-divisor primes plus every prime <= floor.
NilClosure nil_closure(const InverseAutomaton& h, const std::vector<std::uint64_t>& primes = {},
                       std::uint64_t floor = 7);

enum class Extendible { Yes, No, UnknownAtBound };
const char* extendible_name(Extendible e);

struct Extendibility {
  Extendible verdict = Extendible::UnknownAtBound;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;  // identified vertices
  NilClosure closure;
};

Extendibility is_gnil_extendible(const InverseAutomaton& h, const std::vector<std::uint64_t>& primes = {},
                                 std::uint64_t floor = 7);

}  // namespace nilbench
