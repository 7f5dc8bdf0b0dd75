#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilbench/green.hpp"
#include "nilbench/partial_map.hpp"
#include "nilbench/semigroup.hpp"

namespace nilbench {

// Gamma and Psi of one inverse principal factor S_p / S_{p+1}.
struct LayerRep {
  std::size_t layer = 0;
  ReesCoordinatization rees;
  std::vector<PartialMap> gamma;           // per element, on columns 0..n-1
  std::vector<std::vector<std::uint32_t>> psi;  // per element and column, group index or kThetaIndex
  bool right_action = false;  // Gamma(st) = Gamma(s) then Gamma(t)
  bool left_action = false;   // Gamma(st) = Gamma(t) then Gamma(s)
  bool cocycle = false;
  bool injective = false;  // every Gamma(s) is a partial injection

  std::size_t width() const { return rees.rows; }
  bool acts(Elem s) const { return !gamma[s].is_zero(); }
};

// Throws NotInverseSquare unless the layer is M^0(G, n, n; I_n).
LayerRep gamma_psi(const Semigroup& s, const GreensStructure& g, const PrincipalSeries& ps, std::size_t p);

struct OrbitSpec {
  std::vector<std::vector<PartialMap::Point>> cycles;      // fixed points are 1-cycles
  std::vector<std::vector<PartialMap::Point>> theta_runs;  // last point maps to theta
};

// Partial injections only (throws BadParameter otherwise). Points with no
// preimage that go straight to theta are omitted.
OrbitSpec orbit_decomposition(const PartialMap& m);
PartialMap from_orbits(std::size_t degree, const OrbitSpec& spec);

// "(1,2,3)(4,5,#)", 1-based; '#', '0' or "θ" denote theta. A lone "0" is the zero map.
PartialMap parse_orbits(std::string_view text, std::size_t degree);
// "[2,3,#,1]"
PartialMap parse_image_list(std::string_view text, std::size_t degree);
// Orbit notation for partial injections, image list otherwise.
std::string format_map(const PartialMap& m);

struct LinkPattern {
  std::vector<std::pair<PartialMap::Point, PartialMap::Point>> pairs;
  bool is_consistent() const;
};

bool has_link_pattern(const PartialMap& m, const LinkPattern& pat);

}  // namespace nilbench
