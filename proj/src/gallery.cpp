#include "nilbench/gallery.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

#include "nilbench/closure.hpp"
#include "nilbench/errors.hpp"
#include "nilbench/lm_representation.hpp"

namespace nilbench {

namespace {

PartialMap rank_one(std::size_t degree, std::size_t from, std::size_t to) {
  PartialMap m(degree);
  m[from] = PartialMap::Point(to);
  return m;
}

PartialMap orbits(const std::string& text, std::size_t degree) { return parse_orbits(text, degree); }

std::string cycle_text(std::size_t first, std::size_t last) {
  std::string s = "(";
  for (std::size_t k = first; k <= last; ++k) s += (k > first ? "," : "") + std::to_string(k);
  return s + ")";
}

std::vector<NamedMap> with_ideal(std::size_t degree, std::vector<NamedMap> gens) {
  auto chain = brandt_chain(degree, 0, degree);
  gens.insert(gens.end(), chain.begin(), chain.end());
  return gens;
}

std::vector<NamedMap> permutations(const std::vector<std::pair<std::string, std::vector<int>>>& gens) {
  std::vector<NamedMap> named;
  for (const auto& [name, images] : gens) named.push_back({name, PartialMap::from_one_based(images)});
  return named;
}

std::size_t to_size(const std::string& s) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    throw BadParameter("expected a number, got '" + s + "'");
  }
  if (pos != s.size()) throw BadParameter("expected a number, got '" + s + "'");
  return v;
}

}  // namespace

std::vector<NamedMap> brandt_chain(std::size_t degree, std::size_t first, std::size_t count) {
  std::vector<NamedMap> out;
  for (std::size_t i = first; i + 1 < first + count; ++i) {
    std::string a = std::to_string(i + 1), b = std::to_string(i + 2);
    out.push_back({"E" + a + "_" + b, rank_one(degree, i, i + 1)});
    out.push_back({"E" + b + "_" + a, rank_one(degree, i + 1, i)});
  }
  if (count == 1) out.push_back({"E" + std::to_string(first + 1) + "_" + std::to_string(first + 1), rank_one(degree, first, first)});
  return out;
}

static std::vector<NamedMap> gens_sp(std::size_t p) {
  if (!is_prime(p)) throw BadParameter("S_p needs a prime p");
  const std::size_t degree = 2 * p;  // alpha_i = i, beta_i = p + i
  std::vector<NamedMap> gens;
  for (std::size_t i = 0; i < p; ++i) gens.push_back({"X" + std::to_string(i + 1), rank_one(degree, i, p + i)});
  for (std::size_t i = 1; i <= p; ++i) {
    PartialMap w(degree);
    for (std::size_t j = 0; j < p; ++j) w[p + j] = PartialMap::Point((j + i) % p);
    gens.push_back({"W" + std::to_string(i), w});
  }
  return gens;
}

static std::vector<NamedMap> gens_n(std::size_t n) {
  if (n < 2 || n + 1 > PartialMap::kMaxDegree) throw BadParameter("N(n) needs 2 <= n <= 253");
  const std::size_t degree = n + 1;
  PartialMap a = orbits(cycle_text(1, n), degree);
  PartialMap b(degree);
  b[n] = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) b[i] = PartialMap::Point(i + 1);
  return with_ideal(degree, {{"a", a}, {"b", b}, {"one", PartialMap::identity(degree)}});
}


static std::vector<NamedMap> gens_m1() {
  return with_ideal(6, {{"c", orbits("(1,4,#)(2,5,#)(3,6,#)", 6)},
                        {"d", orbits("(1,5,#)(2,6,#)(3,4,#)", 6)},
                        {"one", PartialMap::identity(6)}});
}

static std::vector<NamedMap> gens_m2() {
  return with_ideal(6, {{"c", orbits("(1,4,#)(2,5,#)(3,6,#)", 6)},
                        {"d", orbits("(1,5,#)(2,6,#)(3,4,#)", 6)},
                        {"e", orbits("(1,6,#)(2,4,#)(3,5,#)", 6)},
                        {"one", PartialMap::identity(6)}});
}

static std::vector<NamedMap> gens_m3() {
  return with_ideal(4, {{"c", orbits("(1,2,#)(3,4,#)", 4)},
                        {"d", orbits("(1,4,#)(3,2,#)", 4)},
                        {"one", PartialMap::identity(4)}});
}

static std::vector<NamedMap> gens_example18() {
  const std::size_t d = 18;
  return std::vector<NamedMap>{
      {"y1", orbits("(1,2,0)(13,14,0)(15,16,0)", d)},
      {"y2", orbits("(5,6,0)(7,8,0)(17,18,0)", d)},
      {"y3", orbits("(3,4,0)(9,10,0)(11,12,0)", d)},
      {"z1", orbits("(2,7,0)(4,15,0)(6,11,0)(8,9,0)(10,1,0)(12,13,0)(14,5,0)(16,17,0)(18,3,0)", d)},
      {"z2", orbits("(2,3,0)(4,5,0)(6,1,0)", d)},
      {"z3", orbits("(2,1,0)(4,3,0)(6,5,0)(8,7,0)(10,9,0)(12,11,0)(14,13,0)(16,15,0)(18,17,0)", d)},
  };
}

static std::vector<NamedMap> gens_brandt(std::size_t n) {
  if (n < 1 || n > PartialMap::kMaxDegree) throw BadParameter("Brandt(n) needs 1 <= n <= 254");
  return brandt_chain(n, 0, n);
}

Semigroup build_rees(const ReesDesc& desc) {
  validate_rees(desc);
  const std::size_t order = desc.group.order, rows = desc.rows, cols = desc.cols;
  const std::size_t live = order * rows * cols, n = live + 1;
  const Elem zero = Elem(live);
  auto index = [&](std::size_t g, std::size_t i, std::size_t j) { return Elem((g * rows + i) * cols + j); };
  std::vector<Elem> table(n * n, zero);
  std::vector<std::string> labels(n);
  labels[zero] = "0";
  for (std::size_t g = 0; g < order; ++g)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        Elem x = index(g, i, j);
        labels[x] = "(" + std::to_string(g) + ";" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        for (std::size_t h = 0; h < order; ++h)
          for (std::size_t k = 0; k < rows; ++k) {
            std::uint32_t p = desc.sandwich[j * rows + k];
            if (p == kThetaIndex) continue;
            for (std::size_t l = 0; l < cols; ++l)
              table[std::size_t(x) * n + index(h, k, l)] = index(desc.group.mul(desc.group.mul(g, p), h), i, l);
          }
      }
  std::vector<Generator> gens;
  for (Elem x = 0; x < live; ++x) gens.push_back({"r" + std::to_string(x), x});
  // without a theta entry in P no product reaches the zero
  if (std::find(desc.sandwich.begin(), desc.sandwich.end(), kThetaIndex) == desc.sandwich.end())
    gens.push_back({"0", zero});
  return Semigroup::from_table(n, std::move(table), std::move(gens), std::move(labels));
}

static std::vector<NamedMap> gens_su(std::size_t n, const std::vector<std::vector<int>>& bijections) {
  if (n < 1 || 2 * n > PartialMap::kMaxDegree) throw BadParameter("S(U) needs 1 <= n <= 127");
  const std::size_t degree = 2 * n;
  std::vector<NamedMap> gens;
  for (std::size_t k = 0; k < bijections.size(); ++k) {
    const auto& b = bijections[k];
    std::vector<bool> seen(n, false);
    if (b.size() != n) throw BadParameter("bijection has the wrong length");
    PartialMap m(degree);
    for (std::size_t i = 0; i < n; ++i) {
      if (b[i] < 1 || std::size_t(b[i]) > n || seen[b[i] - 1]) throw BadParameter("not a bijection of 1..n");
      seen[b[i] - 1] = true;
      m[i] = PartialMap::Point(n + b[i] - 1);
    }
    gens.push_back({"b" + std::to_string(k + 1) + "'", m});
  }
  PartialMap a(degree);
  for (std::size_t i = 0; i < n; ++i) a[i] = PartialMap::Point(n + i);
  gens.push_back({"a'", a});
  return with_ideal(degree, std::move(gens));
}

static std::vector<NamedMap> gens_cyclic(std::size_t n) {
  if (n < 1 || n > PartialMap::kMaxDegree) throw BadParameter("C_n needs 1 <= n <= 254");
  std::vector<int> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = int((i + 1) % n) + 1;
  return permutations({{"g", r}});
}

static std::vector<NamedMap> gens_dihedral(std::size_t n) {
  if (n < 3 || n > PartialMap::kMaxDegree) throw BadParameter("D_n needs 3 <= n <= 254");
  std::vector<int> r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = int((i + 1) % n) + 1;
    s[i] = int((n - i) % n) + 1;
  }
  return permutations({{"r", r}, {"s", s}});
}

static std::vector<NamedMap> gens_q8() {
  // unit index u in 0..7: sign = u / 4, basis = u % 4 over 1, i, j, k
  static const std::array<std::array<int, 4>, 4> basis = {{{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}}};
  auto mul = [&](int x, int y) {
    int r = basis[x % 4][y % 4];
    int sign = (x / 4 + y / 4 + r / 4) % 2;
    return (r % 4) + 4 * sign;
  };
  std::vector<int> i(8), j(8);
  for (int u = 0; u < 8; ++u) {
    i[u] = mul(u, 1) + 1;
    j[u] = mul(u, 2) + 1;
  }
  return permutations({{"i", i}, {"j", j}});
}

static std::vector<NamedMap> gens_s3() { return permutations({{"r", {2, 3, 1}}, {"s", {2, 1, 3}}}); }

GroupTable cyclic_group(std::size_t n) {
  GroupTable g;
  g.order = n;
  g.table.resize(n * n);
  g.inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    g.inverse[a] = std::uint32_t((n - a) % n);
    for (std::size_t b = 0; b < n; ++b) g.table[a * n + b] = std::uint32_t((a + b) % n);
  }
  return g;
}

GroupTable symmetric3_group() { return GroupTable::from_semigroup(close_generators(gens_s3())); }

Semigroup build_theta_union(std::size_t n, const Semigroup& t, const std::vector<PartialMap>& delta) {
  auto zt = t.zero();
  if (!zt) throw InvalidDelta("T has no zero");
  if (delta.size() != t.size()) throw InvalidDelta("one map per element of T is required");
  for (Elem x = 0; x < t.size(); ++x) {
    const PartialMap& d = delta[x];
    std::string who = "Delta(" + t.label(x) + ")";
    if (d.degree() != n) throw InvalidDelta(who + " has the wrong degree");
    if (d.is_zero() != (x == *zt)) throw InvalidDelta(who + ": only the zero of T may act as the zero map");
    if (!d.is_partial_injection()) throw InvalidDelta(who + " is not injective off its kernel");
  }
  for (Elem x = 0; x < t.size(); ++x)
    for (Elem y = 0; y < t.size(); ++y)
      if (delta[x] * delta[y] != delta[t.mul(x, y)])
        throw InvalidDelta("Delta is not a homomorphism at (" + t.label(x) + ", " + t.label(y) + ")");

  // T keeps its indices (its zero is the shared zero), then (1; i, j) at tn + i * n + j
  const std::size_t tn = t.size(), size = tn + n * n;
  const Elem zero = *zt;
  auto m = [&](std::size_t i, std::size_t j) { return Elem(tn + i * n + j); };
  std::vector<Elem> table(size * size, zero);
  for (Elem x = 0; x < tn; ++x)
    for (Elem y = 0; y < tn; ++y) table[x * size + y] = t.mul(x, y);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elem a = m(i, j);
      for (std::size_t l = 0; l < n; ++l) table[a * size + m(j, l)] = m(i, l);
      for (Elem x = 0; x < tn; ++x) {
        const PartialMap& d = delta[x];
        if (d[j] != PartialMap::kTheta) table[a * size + x] = m(i, d[j]);
        for (std::size_t k = 0; k < n; ++k)
          if (d[k] == i) table[x * size + a] = m(k, j);
      }
    }
  std::vector<std::string> labels(size);
  std::vector<Generator> gens = t.generators();
  for (Elem x = 0; x < tn; ++x) labels[x] = t.label(x);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      labels[m(i, j)] = "(1;" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      bool chain = (i + 1 == j) || (j + 1 == i) || (n == 1);
      if (chain) gens.push_back({"E" + std::to_string(i + 1) + "_" + std::to_string(j + 1), m(i, j)});
    }
  return Semigroup::from_table(size, std::move(table), std::move(gens), std::move(labels));
}

const std::vector<GalleryEntry>& gallery_list() {
  static const std::vector<GalleryEntry> list = {
      {"Sp", "p", "X_{p,i}, W_{p,i} on 2p points; not strongly nilpotent, small subsemigroups are"},
      {"N", "n", "M^0({1},n+1,n+1;I) with a = (1..n), b = (n+1,1,..,n,#)"},
      {"N1", "", "N 6"},
      {"N2", "", "N 15"},
      {"M1", "", "M^0({1},6,6;I) with c, d, 1"},
      {"M2", "", "M^0({1},6,6;I) with c, d, e, 1"},
      {"M3", "", "M^0({1},4,4;I) with c, d, 1"},
      {"Example18", "", "aperiodic semigroup on 18 points, y1..y3, z1..z3"},
      {"Brandt", "n", "M^0({1},n,n;I_n)"},
      {"SU", "n bijection...", "S(U) on n + n' points, bijections in orbit notation"},
      {"C", "n", "cyclic group"},
      {"D", "n", "dihedral group of order 2n"},
      {"Q8", "", "quaternion group"},
      {"S3", "", "symmetric group on 3 points"},
      {"Rees", "", "M^0(G,n,m;P), input via a rees block"},
      {"ThetaUnion", "", "M u^Delta T, library only"},
  };
  return list;
}

std::vector<NamedMap> gallery_generators(const std::string& id, const std::vector<std::string>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw BadParameter(id + " takes " + std::to_string(k) + " parameter" + (k == 1 ? "" : "s"));
  };
  if (id == "Sp") return need(1), gens_sp(to_size(params[0]));
  if (id == "N") return need(1), gens_n(to_size(params[0]));
  if (id == "N1") return need(0), gens_n(6);
  if (id == "N2") return need(0), gens_n(15);
  if (id == "M1") return need(0), gens_m1();
  if (id == "M2") return need(0), gens_m2();
  if (id == "M3") return need(0), gens_m3();
  if (id == "Example18") return need(0), gens_example18();
  if (id == "Brandt") return need(1), gens_brandt(to_size(params[0]));
  if (id == "C") return need(1), gens_cyclic(to_size(params[0]));
  if (id == "D") return need(1), gens_dihedral(to_size(params[0]));
  if (id == "Q8") return need(0), gens_q8();
  if (id == "S3") return need(0), gens_s3();
  if (id == "SU") {
    if (params.empty()) throw BadParameter("SU takes n and at least one bijection");
    std::size_t n = to_size(params[0]);
    std::vector<std::vector<int>> bijections;
    for (std::size_t k = 1; k < params.size(); ++k) {
      PartialMap m;
      try {
        m = parse_orbits(params[k], n);
      } catch (const Error& e) {
        throw BadParameter("bad bijection '" + params[k] + "': " + e.what());
      }
      std::vector<int> images(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i] == PartialMap::kTheta) throw BadParameter("bijection '" + params[k] + "' is partial");
        images[i] = m[i] + 1;
      }
      bijections.push_back(images);
    }
    return gens_su(n, bijections);
  }
  if (id == "Rees" || id == "ThetaUnion") throw BadParameter(id + " is not built from a gallery line");
  throw BadParameter("unknown gallery id '" + id + "'");
}

Semigroup build_gallery(const std::string& id, const std::vector<std::string>& params) {
  return close_generators(gallery_generators(id, params));
}

Semigroup build_sp(std::size_t p) { return close_generators(gens_sp(p)); }
Semigroup build_n(std::size_t n) { return close_generators(gens_n(n)); }
Semigroup build_n1() { return build_n(6); }
Semigroup build_m1() { return close_generators(gens_m1()); }
Semigroup build_m2() { return close_generators(gens_m2()); }
Semigroup build_m3() { return close_generators(gens_m3()); }
Semigroup build_example18() { return close_generators(gens_example18()); }
Semigroup build_brandt(std::size_t n) { return close_generators(gens_brandt(n)); }
Semigroup build_su(std::size_t n, const std::vector<std::vector<int>>& bijections) {
  return close_generators(gens_su(n, bijections));
}
Semigroup build_cyclic(std::size_t n) { return close_generators(gens_cyclic(n)); }
Semigroup build_dihedral(std::size_t n) { return close_generators(gens_dihedral(n)); }
Semigroup build_q8() { return close_generators(gens_q8()); }
Semigroup build_s3() { return close_generators(gens_s3()); }

std::vector<NamedSemigroup> gallery_members() {
  std::vector<NamedSemigroup> out;
  out.push_back({"M1", build_m1()});
  out.push_back({"M2", build_m2()});
  out.push_back({"M3", build_m3()});
  out.push_back({"N1", build_n1()});
  for (std::size_t n = 2; n <= 8; ++n) out.push_back({"N " + std::to_string(n), build_n(n)});
  out.push_back({"Example18", build_example18()});
  out.push_back({"Sp 2", build_sp(2)});
  out.push_back({"Sp 3", build_sp(3)});
  for (std::size_t n = 1; n <= 3; ++n) out.push_back({"Brandt " + std::to_string(n), build_brandt(n)});
  out.push_back({"SU 3 (1,2,3)", build_su(3, {{2, 3, 1}})});
  out.push_back({"SU 2 (1,2)", build_su(2, {{2, 1}})});
  out.push_back({"C 6", build_cyclic(6)});
  out.push_back({"D 4", build_dihedral(4)});
  out.push_back({"Q8", build_q8()});
  out.push_back({"S3", build_s3()});
  return out;
}

}  // namespace nilbench
