#include "nilbench/lm_representation.hpp"

#include <algorithm>
#include <map>

#include "nilbench/errors.hpp"

namespace nilbench {

using Point = PartialMap::Point;

LayerRep gamma_psi(const Semigroup& s, const GreensStructure& g, const PrincipalSeries& ps, std::size_t p) {
  if (p >= ps.length()) throw BadParameter("layer out of range");
  LayerRep rep;
  rep.layer = p;
  rep.rees = rees_coordinatize(s, g, ps.layers[p]);
  if (!rep.rees.inverse_square) throw NotInverseSquare("layer " + std::to_string(p) + " is not M^0(G,n,n;I_n)");
  const std::size_t n = rep.rees.rows;
  const std::size_t size = s.size();

  rep.gamma.assign(size, PartialMap(n));
  rep.psi.assign(size, std::vector<std::uint32_t>(n, kThetaIndex));
  for (Elem x = 0; x < size; ++x) {
    for (std::uint32_t j = 0; j < n; ++j) {
      Elem y = s.mul(rep.rees.element(0, 0, j), x);
      if (!rep.rees.contains(y)) continue;
      const ReesCoord& c = rep.rees.coord[y];
      if (c.row != 0) throw InternalInconsistency("right multiplication left the R-class");
      rep.gamma[x][j] = Point(c.col);
      rep.psi[x][j] = c.g;
    }
  }

  // generator checks suffice: Gamma(x g) against Gamma(x), Gamma(g)
  rep.right_action = rep.left_action = rep.cocycle = true;
  for (Elem x = 0; x < size; ++x) {
    for (const auto& gen : s.generators()) {
      Elem xg = s.mul(x, gen.element);
      const PartialMap& a = rep.gamma[x];
      const PartialMap& b = rep.gamma[gen.element];
      if (rep.gamma[xg] != a * b) rep.right_action = false;
      if (rep.gamma[xg] != b * a) rep.left_action = false;
      for (std::uint32_t j = 0; j < n && rep.cocycle; ++j) {
        if (rep.gamma[xg][j] == PartialMap::kTheta) continue;
        std::uint32_t lhs = rep.psi[xg][j];
        Point k = a[j];
        if (k == PartialMap::kTheta) {
          rep.cocycle = false;
          break;
        }
        std::uint32_t rhs = rep.rees.group.mul(rep.psi[x][j], rep.psi[gen.element][k]);
        if (lhs != rhs) rep.cocycle = false;
      }
    }
  }
  if (!rep.right_action) throw InternalInconsistency("Gamma is not a right action");
  if (!rep.cocycle) throw InternalInconsistency("Psi violates the cocycle law");
  rep.injective = true;
  for (Elem x = 0; x < size && rep.injective; ++x) rep.injective = rep.gamma[x].is_partial_injection();
  return rep;
}

OrbitSpec orbit_decomposition(const PartialMap& m) {
  if (!m.is_partial_injection()) throw BadParameter("orbit notation needs a partial injection");
  const std::size_t n = m.degree();
  std::vector<bool> has_pre(n, false), seen(n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (m[i] != PartialMap::kTheta) has_pre[m[i]] = true;
  OrbitSpec spec;
  for (std::size_t i = 0; i < n; ++i) {
    if (has_pre[i]) continue;
    seen[i] = true;
    if (m[i] == PartialMap::kTheta) continue;
    std::vector<Point> run{Point(i)};
    for (Point k = m[i]; k != PartialMap::kTheta; k = m[k]) {
      run.push_back(k);
      seen[k] = true;
    }
    spec.theta_runs.push_back(std::move(run));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<Point> cyc;
    for (Point k = Point(i); !seen[k]; k = m[k]) {
      seen[k] = true;
      cyc.push_back(k);
    }
    spec.cycles.push_back(std::move(cyc));
  }
  return spec;
}

PartialMap from_orbits(std::size_t degree, const OrbitSpec& spec) {
  PartialMap m(degree);
  std::vector<bool> used(degree, false);
  auto claim = [&](Point k) {
    if (k >= degree) throw SemanticError("point " + std::to_string(k + 1) + " out of range");
    if (used[k]) throw SemanticError("point " + std::to_string(k + 1) + " appears twice");
    used[k] = true;
  };
  for (const auto& c : spec.cycles) {
    for (Point k : c) claim(k);
    for (std::size_t i = 0; i < c.size(); ++i) m[c[i]] = c[(i + 1) % c.size()];
  }
  for (const auto& r : spec.theta_runs) {
    for (Point k : r) claim(k);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) m[r[i]] = r[i + 1];
  }
  return m;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos + 1); }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  // 0 means theta
  int point() {
    skip_space();
    if (text.substr(pos, 1) == "#") {
      ++pos;
      return 0;
    }
    if (text.substr(pos, 2) == "\xCE\xB8") {
      pos += 2;
      return 0;
    }
    std::size_t start = pos;
    int v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos] - '0');
      if (v > 100000) fail("number too large");
      ++pos;
    }
    if (pos == start) fail("expected a point");
    return v;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
};

}  // namespace

PartialMap parse_orbits(std::string_view text, std::size_t degree) {
  Cursor cur{text};
  PartialMap m(degree);
  if (cur.done()) return m;
  {
    Cursor probe = cur;
    if (!probe.eat('(')) {
      if (probe.point() == 0 && probe.done()) return m;
      cur.fail("expected '('");
    }
  }
  std::vector<bool> used(degree, false);
  while (!cur.done()) {
    cur.expect('(');
    std::vector<int> seq;
    seq.push_back(cur.point());
    while (cur.eat(',')) seq.push_back(cur.point());
    cur.expect(')');
    bool run = seq.back() == 0;
    if (run) seq.pop_back();
    if (seq.empty()) cur.fail("empty orbit");
    for (int v : seq) {
      if (v == 0) cur.fail("theta only allowed at the end of an orbit");
      if (std::size_t(v) > degree) throw SemanticError("point " + std::to_string(v) + " out of range 1.." + std::to_string(degree));
      if (used[v - 1]) throw SemanticError("point " + std::to_string(v) + " appears twice");
      used[v - 1] = true;
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) m[seq[i] - 1] = Point(seq[i + 1] - 1);
    if (!run) m[seq.back() - 1] = Point(seq.front() - 1);
  }
  return m;
}

PartialMap parse_image_list(std::string_view text, std::size_t degree) {
  Cursor cur{text};
  cur.expect('[');
  std::vector<int> images;
  if (!cur.eat(']')) {
    images.push_back(cur.point());
    while (cur.eat(',')) images.push_back(cur.point());
    cur.expect(']');
  }
  if (!cur.done()) cur.fail("trailing characters");
  if (images.size() != degree)
    throw SemanticError("image list has " + std::to_string(images.size()) + " entries, expected " + std::to_string(degree));
  for (int v : images)
    if (std::size_t(v) > degree) throw SemanticError("point " + std::to_string(v) + " out of range 1.." + std::to_string(degree));
  return PartialMap::from_one_based(images);
}

std::string format_map(const PartialMap& m) {
  if (!m.is_partial_injection()) return m.to_image_list();
  if (m.is_zero()) return "0";
  OrbitSpec spec = orbit_decomposition(m);
  std::map<Point, std::string> parts;
  auto render = [](const std::vector<Point>& seq, bool run) {
    std::string s = "(";
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(seq[i] + 1);
    }
    if (run) s += ",#";
    return s + ")";
  };
  for (const auto& c : spec.cycles) parts[c.front()] = render(c, false);
  for (const auto& r : spec.theta_runs) parts[r.front()] = render(r, true);
  std::string out;
  for (const auto& [k, v] : parts) out += v;
  return out;
}

bool LinkPattern::is_consistent() const {
  std::map<Point, Point> seen;
  for (auto [a, b] : pairs) {
    auto [it, fresh] = seen.emplace(a, b);
    if (!fresh && it->second != b) return false;
  }
  return true;
}

bool has_link_pattern(const PartialMap& m, const LinkPattern& pat) {
  if (!pat.is_consistent()) throw InconsistentPattern("a source point has two targets");
  for (auto [a, b] : pat.pairs) {
    if (a >= m.degree()) return false;
    if (m[a] != b) return false;
  }
  return true;
}

}  // namespace nilbench
