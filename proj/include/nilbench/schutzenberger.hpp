#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilbench/automaton.hpp"
#include "nilbench/green.hpp"
#include "nilbench/nilpotency.hpp"
#include "nilbench/semigroup.hpp"

namespace nilbench {

enum class Side { Right, Left };

inline constexpr std::uint32_t kNoVertex = 0xFFFFFFFFu;

struct SchutzGraph {
  Side side = Side::Right;
  std::uint32_t class_id = 0;  // R-class id (right) or L-class id (left)
  std::vector<Elem> vertices;
  std::vector<std::string> letters;
  std::vector<std::uint32_t> edges;  // edges[v * letters + a]
  std::vector<std::uint32_t> h_class;
  bool is_inverse = false;

  std::size_t size() const { return vertices.size(); }
  std::uint32_t target(std::uint32_t v, std::size_t a) const { return edges[v * letters.size() + a]; }
  std::uint32_t vertex_of(Elem x) const;
};

SchutzGraph schutz_graph(const Semigroup& s, const GreensStructure& g, Side side, std::uint32_t class_id);
// Regular R-classes first, then regular L-classes.
std::vector<SchutzGraph> schutz_graphs(const Semigroup& s);

// Nonempty intersection of L_{beta_k, alpha_k} over A^+, by product-automaton reachability.
bool l_intersection_nonempty(const SchutzGraph& g, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                             std::uint64_t max_states = 5'000'000);

// Partial maps on vertices induced by nonempty words.
std::vector<std::vector<std::uint32_t>> transition_maps(const SchutzGraph& g, std::uint64_t max_maps = 1'000'000);

enum class Variant { Plain, H };

// Universal reading; strong rotations range over 1..n-1. n_max == 0 means the H-class count.
bool rclass_nilpotent(const SchutzGraph& g, Variant variant, bool strong, std::size_t n_max = 0,
                      const Budget& budget = Budget::from_env());

// Throws NotInverse unless every letter acts as a partial injection.
InverseAutomaton to_automaton(const SchutzGraph& g, std::uint32_t base = 0);

std::string to_dot(const SchutzGraph& g, const Semigroup& s);

}  // namespace nilbench
