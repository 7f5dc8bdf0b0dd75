#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nilbench/nilpotency.hpp"
#include "nilbench/partial_map.hpp"
#include "nilbench/semigroup.hpp"

namespace nilbench {

// Rank-one partial injections i -> i+1 and i+1 -> i on the given points, named E<i><j> (1-based).
std::vector<NamedMap> brandt_chain(std::size_t degree, std::size_t first, std::size_t count);

Semigroup build_sp(std::size_t p);  // p prime
Semigroup build_n(std::size_t n);   // n >= 2
Semigroup build_n1();
Semigroup build_m1();
Semigroup build_m2();
Semigroup build_m3();
Semigroup build_example18();
Semigroup build_brandt(std::size_t n);
Semigroup build_rees(const ReesDesc& desc);
// Bijections of {1..n}, 1-based images.
Semigroup build_su(std::size_t n, const std::vector<std::vector<int>>& bijections);

Semigroup build_cyclic(std::size_t n);
Semigroup build_dihedral(std::size_t n);  // order 2n
Semigroup build_q8();
Semigroup build_s3();

GroupTable cyclic_group(std::size_t n);
GroupTable symmetric3_group();

// M^0({1}, n, n; I_n) glued to T along delta (one map on n points per element of T).
// Throws InvalidDelta.
Semigroup build_theta_union(std::size_t n, const Semigroup& t, const std::vector<PartialMap>& delta);

struct GalleryEntry {
  std::string id;
  std::string params;
  std::string description;
};

const std::vector<GalleryEntry>& gallery_list();

// Generating partial maps of a gallery member, e.g. ("N", {"3"}), ("SU", {"3", "(1,2,3)"}).
// Throws BadParameter.
std::vector<NamedMap> gallery_generators(const std::string& id, const std::vector<std::string>& params = {});
Semigroup build_gallery(const std::string& id, const std::vector<std::string>& params = {});

// Gallery members small enough for a multiplication table (N2 is not among them).
struct NamedSemigroup {
  std::string name;
  Semigroup semigroup;
};
std::vector<NamedSemigroup> gallery_members();

}  // namespace nilbench
