#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilbench/partial_map.hpp"

namespace nilbench {

using Elem = std::uint32_t;
inline constexpr Elem kNoElem = 0xFFFFFFFFu;
inline constexpr std::size_t kDefaultCap = 200000;
inline constexpr std::size_t kAssocExhaustiveCap = 512;

struct Generator {
  std::string name;
  Elem element;
};

using NamedMap = std::pair<std::string, PartialMap>;

// Finite semigroup with a full multiplication table. Elements may carry a
// PartialMap realization (transformation semigroups) or be abstract.
class Semigroup {
public:
  Semigroup() = default;

  // Abstract semigroup from a table. Words are found by breadth-first search
  // over the generators; throws SemanticError if some element is not reached.
  static Semigroup from_table(std::size_t n, std::vector<Elem> table, std::vector<Generator> gens,
                              std::vector<std::string> labels = {}, std::vector<PartialMap> maps = {});

  std::size_t size() const { return n_; }
  Elem mul(Elem a, Elem b) const { return table_[std::size_t(a) * n_ + b]; }
  const std::vector<Elem>& table() const { return table_; }

  const std::vector<Generator>& generators() const { return gens_; }
  Elem right(Elem x, std::size_t g) const { return mul(x, gens_[g].element); }
  Elem left(std::size_t g, Elem x) const { return mul(gens_[g].element, x); }

  // Generator indices; empty for an adjoined identity.
  const std::vector<std::uint32_t>& word(Elem x) const { return words_[x]; }
  std::string word_string(Elem x) const;
  std::string label(Elem x) const;
  Elem evaluate(const std::vector<std::uint32_t>& word) const;

  bool is_transformation() const { return !maps_.empty(); }
  std::size_t degree() const { return maps_.empty() ? 0 : maps_[0].degree(); }
  const PartialMap& map(Elem x) const { return maps_[x]; }
  std::optional<Elem> find(const PartialMap& m) const;

  bool has_adjoined_identity() const { return adjoined_identity_; }
  std::optional<Elem> identity() const { return identity_; }
  std::optional<Elem> zero() const { return zero_; }
  bool is_idempotent(Elem x) const { return mul(x, x) == x; }

  std::uint64_t digest() const;

private:
  friend Semigroup close_generators(const std::vector<NamedMap>&, std::size_t);
  friend Semigroup adjoin_identity(const Semigroup&);
  friend Semigroup permuted(const Semigroup&, const std::vector<Elem>&);

  void detect_units();
  void index_maps();

  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Generator> gens_;
  std::vector<std::vector<std::uint32_t>> words_;
  std::vector<PartialMap> maps_;
  std::unordered_map<PartialMap, Elem, PartialMapHash> index_;
  std::vector<std::string> labels_;
  bool adjoined_identity_ = false;
  std::optional<Elem> identity_;
  std::optional<Elem> zero_;
};

// Breadth-first closure under right multiplication; elements deduplicated by image array.
Semigroup close_generators(const std::vector<NamedMap>& gens, std::size_t cap = kDefaultCap);

// S^1. Reorders an existing identity to index 0 instead of adding one.
Semigroup adjoin_identity(const Semigroup& s);

// Renumbers so that old element order[k] becomes element k.
Semigroup permuted(const Semigroup& s, const std::vector<Elem>& order);

// Subsemigroup generated by the given elements; generator names are the parent labels.
Semigroup subsemigroup(const Semigroup& s, const std::vector<Elem>& gens);

// Exhaustive for size <= exhaustive_cap, otherwise (g x) y = g (x y) for generators g.
bool is_associative(const Semigroup& s, std::size_t exhaustive_cap = kAssocExhaustiveCap);

}  // namespace nilbench
