#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilbench/nilpotency.hpp"
#include "nilbench/schutzenberger.hpp"
#include "nilbench/semigroup.hpp"

namespace nilbench {

inline constexpr std::size_t kCayleyCap = 2'000'000;

// Transformation semigroup kept as right and left Cayley graphs, without a table.
class CayleySemigroup {
public:
  static CayleySemigroup build(const std::vector<NamedMap>& gens, std::size_t cap = kCayleyCap);

  std::size_t size() const { return n_; }
  std::size_t letters() const { return names_.size(); }
  const std::string& letter_name(std::size_t a) const { return names_[a]; }
  std::size_t degree() const { return degree_; }
  Elem generator(std::size_t a) const { return gens_[a]; }

  PartialMap map(Elem x) const;
  Elem right(Elem x, std::size_t a) const { return right_[std::size_t(x) * names_.size() + a]; }
  Elem left(std::size_t a, Elem x) const { return left_[std::size_t(x) * names_.size() + a]; }
  std::optional<Elem> find(const PartialMap& m) const;
  Elem product(Elem x, Elem y) const;
  bool is_idempotent(Elem x) const;

  std::vector<std::uint32_t> word(Elem x) const;
  std::string word_string(Elem x) const;
  Elem evaluate(const std::vector<std::uint32_t>& word) const;
  bool all_partial_injections() const { return injective_; }
  std::uint64_t digest() const;

  // Generated by the given elements, with a table; generator names are word strings.
  Semigroup subsemigroup(const std::vector<Elem>& gens, std::vector<Elem>* origin = nullptr) const;

private:
  struct Hash;
  struct Eq;
  Elem lookup(const PartialMap::Point* img) const;

  std::size_t n_ = 0, degree_ = 0;
  std::vector<std::string> names_;
  std::vector<Elem> gens_;
  std::vector<PartialMap::Point> pool_;
  std::vector<Elem> parent_;
  std::vector<std::uint32_t> last_;
  std::vector<Elem> right_, left_;
  std::vector<std::uint32_t> buckets_;
  bool injective_ = true;
};

struct CayleyGreens {
  std::vector<std::uint32_t> r, l, j;
  std::size_t num_r = 0, num_l = 0, num_j = 0;
  std::vector<std::vector<Elem>> j_members;
  std::vector<bool> j_regular;
  std::vector<Elem> idempotents;
  std::vector<std::uint32_t> layers;  // top first
  std::vector<std::uint32_t> layer_of_j;
};

CayleyGreens cayley_greens(const CayleySemigroup& s);

struct CayleyLayer {
  std::size_t layer = 0;
  std::uint32_t j_class = 0;
  std::size_t size = 0, rows = 0, cols = 0;
  bool inverse = false;
  std::vector<std::uint32_t> col_l;  // column -> L-class
  std::vector<std::uint32_t> row_r;  // column -> R-class of its idempotent
  std::vector<Elem> col_rep;         // x_c in R(e_0) and column c
  std::vector<Elem> group;           // H-class of the column-0 idempotent
  std::vector<std::vector<std::uint32_t>> gamma;  // per letter, column -> column or kThetaIndex
  bool injective = true;
  std::optional<std::pair<Elem, Elem>> clash;  // two idempotents sharing an R- or L-class

  std::size_t width() const { return cols; }
  std::uint32_t column_of(const CayleyGreens& g, Elem x) const;
  Elem at(const CayleySemigroup& s, const CayleyGreens& g, std::uint32_t row, std::uint32_t col) const;
};

CayleyLayer cayley_layer(const CayleySemigroup& s, const CayleyGreens& g, std::size_t p);

// Witness living in the small subsemigroup generated by the elements it mentions.
struct LocalCertificate {
  Semigroup sub;
  std::vector<Elem> origin;  // sub element -> element of the large semigroup
  TupleCycleWitness witness;

  bool replay() const { return nilbench::replay(sub, witness); }
};

struct CayleyBgNil {
  bool bg = true;
  bool bg_nil = true;
  std::string detail;
  std::optional<LocalCertificate> certificate;
  std::vector<CayleyLayer> layers;  // regular layers, bottom-up
  std::vector<unsigned> group_classes;
};

CayleyBgNil cayley_bg_nil(const CayleySemigroup& s, const CayleyGreens& g);

struct CayleyMembership {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  std::optional<RotationWitness> rotation;
  std::optional<LocalCertificate> certificate;
};

CayleyMembership cayley_check(const CayleySemigroup& s, const CayleyGreens& g, const CayleyBgNil& bg, Mode mode,
                              const Budget& budget = Budget::from_env());

// Rotation witness on large elements, iterated to a tuple cycle and re-expressed in a small subsemigroup.
LocalCertificate certify(const CayleySemigroup& s, const RotationWitness& w);

SchutzGraph cayley_schutz(const CayleySemigroup& s, const CayleyGreens& g, Side side, Elem rep);

}  // namespace nilbench
