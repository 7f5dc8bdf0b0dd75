#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nilbench/semigroup.hpp"

namespace nilbench {

inline constexpr std::uint32_t kThetaIndex = 0xFFFFFFFFu;

// Class ids are numbered by least member.
struct GreensStructure {
  std::vector<std::uint32_t> r, l, j, h;
  std::size_t num_r = 0, num_l = 0, num_j = 0, num_h = 0;
  std::vector<std::vector<Elem>> j_members;
  std::vector<std::vector<Elem>> r_members;
  std::vector<std::vector<Elem>> l_members;
  std::vector<std::vector<Elem>> h_members;
  std::vector<bool> j_regular;
  std::vector<Elem> idempotents;
  // Cover edges of the J-order: j_below[a] lists classes directly reachable from a.
  std::vector<std::vector<std::uint32_t>> j_below;

  // J_a <= J_b, i.e. a in S^1 b S^1.
  bool j_leq(std::uint32_t a, std::uint32_t b) const;
};

GreensStructure greens_structure(const Semigroup& s);

// layers[0] is the top J-class; S_p is the union of layers p, p+1, ...
struct PrincipalSeries {
  std::vector<std::uint32_t> layers;
  std::vector<std::uint32_t> layer_of_j;

  std::size_t length() const { return layers.size(); }
  // true if x lies in S_p (p may equal length(), giving the empty ideal)
  bool in_ideal(const GreensStructure& g, Elem x, std::size_t p) const { return layer_of_j[g.j[x]] >= p; }
};

PrincipalSeries principal_series(const Semigroup& s, const GreensStructure& g);

struct GroupTable {
  std::size_t order = 0;
  std::vector<std::uint32_t> table;  // identity is 0
  std::vector<std::uint32_t> inverse;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * order + b]; }
  static GroupTable from_semigroup(const Semigroup& s);  // throws NotAGroup
  static GroupTable trivial();
};

// Lower central series length; 0 for the trivial group, nullopt if not nilpotent.
std::optional<unsigned> group_nilpotency_class(const GroupTable& g);

struct ReesCoord {
  std::uint32_t g = kThetaIndex;
  std::uint32_t row = kThetaIndex;
  std::uint32_t col = kThetaIndex;
};

// Regular J-class rendered as M^0(G, rows, cols; P), P stored cols x rows.
struct ReesCoordinatization {
  std::uint32_t j_class = 0;
  std::size_t rows = 0, cols = 0;
  GroupTable group;
  std::vector<Elem> group_elements;  // ambient element for each group index
  std::vector<Elem> row_reps;        // r_i in H_{i,1}
  std::vector<Elem> col_reps;        // q_j in H_{1,j}
  std::vector<std::uint32_t> sandwich;
  std::vector<ReesCoord> coord;  // per ambient element, row == kThetaIndex outside J
  std::vector<Elem> elements;    // index (g * rows + i) * cols + j
  bool inverse_square = false;

  std::uint32_t p(std::size_t j, std::size_t i) const { return sandwich[j * rows + i]; }
  Elem element(std::uint32_t g, std::uint32_t i, std::uint32_t j) const {
    return elements[(std::size_t(g) * rows + i) * cols + j];
  }
  bool contains(Elem x) const { return coord[x].row != kThetaIndex; }
};

ReesCoordinatization rees_coordinatize(const Semigroup& s, const GreensStructure& g, std::uint32_t j_class);

}  // namespace nilbench
