#include "nilbench/schutzenberger.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "nilbench/errors.hpp"

namespace nilbench {

using Map = std::vector<std::uint32_t>;

std::uint32_t SchutzGraph::vertex_of(Elem x) const {
  auto it = std::find(vertices.begin(), vertices.end(), x);
  return it == vertices.end() ? kNoVertex : std::uint32_t(it - vertices.begin());
}

SchutzGraph schutz_graph(const Semigroup& s, const GreensStructure& g, Side side, std::uint32_t class_id) {
  SchutzGraph out;
  out.side = side;
  out.class_id = class_id;
  const auto& ids = side == Side::Right ? g.r : g.l;
  out.vertices = side == Side::Right ? g.r_members.at(class_id) : g.l_members.at(class_id);
  for (const auto& gen : s.generators()) out.letters.push_back(gen.name);
  const std::size_t k = out.letters.size();
  std::map<Elem, std::uint32_t> index;
  for (std::uint32_t v = 0; v < out.vertices.size(); ++v) index[out.vertices[v]] = v;
  out.edges.assign(out.vertices.size() * k, kNoVertex);
  out.is_inverse = true;
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<bool> hit(out.vertices.size(), false);
    for (std::uint32_t v = 0; v < out.vertices.size(); ++v) {
      Elem x = out.vertices[v];
      Elem y = side == Side::Right ? s.right(x, a) : s.left(a, x);
      if (ids[y] != class_id) continue;
      std::uint32_t w = index.at(y);
      out.edges[v * k + a] = w;
      if (hit[w]) out.is_inverse = false;
      hit[w] = true;
    }
  }
  for (Elem x : out.vertices) out.h_class.push_back(g.h[x]);
  return out;
}

std::vector<SchutzGraph> schutz_graphs(const Semigroup& s) {
  GreensStructure g = greens_structure(s);
  std::vector<SchutzGraph> out;
  for (std::uint32_t r = 0; r < g.num_r; ++r)
    if (g.j_regular[g.j[g.r_members[r][0]]]) out.push_back(schutz_graph(s, g, Side::Right, r));
  for (std::uint32_t l = 0; l < g.num_l; ++l)
    if (g.j_regular[g.j[g.l_members[l][0]]]) out.push_back(schutz_graph(s, g, Side::Left, l));
  return out;
}

bool l_intersection_nonempty(const SchutzGraph& g, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                             std::uint64_t max_states) {
  if (pairs.empty()) throw BadParameter("no vertex pairs");
  for (auto [b, a] : pairs)
    if (b >= g.size() || a >= g.size()) throw BadParameter("vertex out of range");
  const std::size_t k = pairs.size();
  Map start(k), goal(k);
  for (std::size_t i = 0; i < k; ++i) {
    start[i] = pairs[i].first;
    goal[i] = pairs[i].second;
  }
  std::set<Map> seen;
  std::vector<Map> frontier;
  // successors of the start only; the empty word is not allowed
  auto expand = [&](const Map& state, std::vector<Map>& out) {
    for (std::size_t a = 0; a < g.letters.size(); ++a) {
      Map next(k);
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        next[i] = g.target(state[i], a);
        ok = next[i] != kNoVertex;
      }
      if (ok) out.push_back(std::move(next));
    }
  };
  std::vector<Map> first;
  expand(start, first);
  for (auto& m : first)
    if (seen.insert(m).second) frontier.push_back(m);
  while (!frontier.empty()) {
    if (seen.count(goal)) return true;
    if (seen.size() > max_states) throw BudgetExceeded("product automaton exceeds state budget");
    std::vector<Map> next_frontier, succ;
    for (const Map& st : frontier) {
      succ.clear();
      expand(st, succ);
      for (auto& m : succ)
        if (seen.insert(m).second) next_frontier.push_back(std::move(m));
    }
    frontier = std::move(next_frontier);
  }
  return seen.count(goal) > 0;
}

std::vector<Map> transition_maps(const SchutzGraph& g, std::uint64_t max_maps) {
  const std::size_t n = g.size();
  std::vector<Map> letters;
  for (std::size_t a = 0; a < g.letters.size(); ++a) {
    Map m(n);
    for (std::uint32_t v = 0; v < n; ++v) m[v] = g.target(v, a);
    letters.push_back(std::move(m));
  }
  std::set<Map> seen(letters.begin(), letters.end());
  std::vector<Map> out(seen.begin(), seen.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const Map& l : letters) {
      Map m(n);
      for (std::uint32_t v = 0; v < n; ++v) m[v] = out[i][v] == kNoVertex ? kNoVertex : l[out[i][v]];
      if (seen.insert(m).second) {
        out.push_back(std::move(m));
        if (out.size() > max_maps) throw BudgetExceeded("transition semigroup exceeds budget");
      }
    }
  }
  return out;
}

namespace {

bool distinct_pair(const SchutzGraph& g, Variant variant, std::uint32_t a, std::uint32_t b) {
  return variant == Variant::Plain ? a != b : g.h_class[a] != g.h_class[b];
}

bool injective(const Map& m) {
  std::vector<bool> hit(m.size(), false);
  for (auto v : m) {
    if (v == kNoVertex) continue;
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool plain_nilpotent(const SchutzGraph& g, Variant variant, const std::vector<Map>& maps) {
  const std::uint64_t n = g.size();
  auto key = [n](std::uint64_t b, std::uint64_t b2, std::uint64_t a, std::uint64_t a2) {
    return ((b * n + b2) * n + a) * n + a2;
  };
  std::unordered_set<std::uint64_t> links;
  for (const Map& m : maps)
    for (std::uint32_t b = 0; b < n; ++b) {
      if (m[b] == kNoVertex) continue;
      for (std::uint32_t b2 = 0; b2 < n; ++b2)
        if (b2 != b && m[b2] != kNoVertex) links.insert(key(b, b2, m[b], m[b2]));
    }
  for (const Map& m : maps)
    for (std::uint32_t b = 0; b < n; ++b) {
      if (m[b] == kNoVertex) continue;
      for (std::uint32_t b2 = 0; b2 < n; ++b2) {
        if (b2 == b || m[b2] == kNoVertex || !distinct_pair(g, variant, m[b], m[b2])) continue;
        if (links.count(key(b2, b, m[b], m[b2]))) return false;
      }
    }
  return true;
}

// Injective transitions: a failing tuple reduces to distinct alphas forming a cycle of
// tau_u^{-1} tau_v, as in the layer search of the engine.
bool strong_nilpotent_injective(const SchutzGraph& g, Variant variant, const std::vector<Map>& maps,
                                std::size_t n_max) {
  const std::size_t n = g.size();
  std::vector<Map> inverses;
  for (const Map& m : maps) {
    Map inv(n, kNoVertex);
    for (std::uint32_t v = 0; v < n; ++v)
      if (m[v] != kNoVertex) inv[m[v]] = v;
    inverses.push_back(std::move(inv));
  }
  for (std::size_t u = 0; u < maps.size(); ++u)
    for (std::size_t w = 0; w < maps.size(); ++w) {
      if (u == w) continue;
      Map h(n, kNoVertex);
      for (std::uint32_t v = 0; v < n; ++v)
        if (inverses[u][v] != kNoVertex) h[v] = maps[w][inverses[u][v]];
      std::vector<int> state(n, 0);
      for (std::uint32_t s0 = 0; s0 < n; ++s0) {
        if (state[s0]) continue;
        std::vector<std::uint32_t> path;
        std::uint32_t k = s0;
        while (k != kNoVertex && state[k] == 0) {
          state[k] = 1;
          path.push_back(k);
          k = h[k];
        }
        std::vector<std::uint32_t> alpha;
        if (k != kNoVertex && state[k] == 1) alpha.assign(std::find(path.begin(), path.end(), k), path.end());
        for (auto p : path) state[p] = 2;
        const std::size_t t = alpha.size();
        if (t < 2 || t > n_max) continue;
        bool separated = false;
        for (std::size_t i = 0; i < t && !separated; ++i)
          for (std::size_t j = i + 1; j < t && !separated; ++j) separated = distinct_pair(g, variant, alpha[i], alpha[j]);
        if (!separated) continue;
        std::vector<std::uint32_t> beta(t);
        for (std::size_t j = 0; j < t; ++j) beta[j] = inverses[u][alpha[j]];
        bool all = true;
        for (std::size_t shift = 2; shift < t && all; ++shift) {
          all = false;
          for (const Map& m : maps) {
            bool fits = true;
            for (std::size_t j = 0; j < t && fits; ++j) fits = m[beta[j]] == alpha[(j + shift) % t];
            if (fits) {
              all = true;
              break;
            }
          }
        }
        if (all) return false;
      }
    }
  return true;
}

bool strong_nilpotent_brute(const SchutzGraph& g, Variant variant, const std::vector<Map>& maps, std::size_t n_max,
                            const Budget& budget) {
  const std::size_t n = g.size();
  std::uint64_t work = 0;
  for (std::size_t len = 2; len <= n_max; ++len) {
    std::vector<std::uint32_t> beta(len, 0);
    for (;;) {
      work += maps.size() * len;
      if (work > budget.max_evaluations) throw BudgetExceeded("strong R-class predicate exceeds budget");
      std::set<Map> images;
      for (const Map& m : maps) {
        Map a(len);
        bool ok = true;
        for (std::size_t i = 0; i < len && ok; ++i) ok = (a[i] = m[beta[i]]) != kNoVertex;
        if (ok) images.insert(std::move(a));
      }
      for (const Map& a : images) {
        bool separated = false;
        for (std::size_t i = 0; i < len && !separated; ++i)
          for (std::size_t j = i + 1; j < len && !separated; ++j) separated = distinct_pair(g, variant, a[i], a[j]);
        if (!separated) continue;
        bool all = true;
        for (std::size_t k = 1; k < len && all; ++k) {
          Map r(len);
          for (std::size_t i = 0; i < len; ++i) r[i] = a[(i + k) % len];
          all = images.count(r) > 0;
        }
        if (all) return false;
      }
      std::size_t i = 0;
      while (i < len && ++beta[i] == n) beta[i++] = 0;
      if (i == len) break;
    }
  }
  return true;
}

}  // namespace

bool rclass_nilpotent(const SchutzGraph& g, Variant variant, bool strong, std::size_t n_max, const Budget& budget) {
  if (n_max == 0) n_max = std::set<std::uint32_t>(g.h_class.begin(), g.h_class.end()).size();
  if (n_max > g.size()) throw BadParameter("n_max exceeds the vertex count");
  if (g.size() <= 1 || n_max < 2) return true;
  std::vector<Map> maps = transition_maps(g, budget.max_nodes);
  if (!strong) return plain_nilpotent(g, variant, maps);
  bool inj = std::all_of(maps.begin(), maps.end(), injective);
  if (inj) return strong_nilpotent_injective(g, variant, maps, n_max);
  return strong_nilpotent_brute(g, variant, maps, n_max, budget);
}

std::string to_dot(const SchutzGraph& g, const Semigroup& s) {
  std::ostringstream out;
  out << "digraph " << (g.side == Side::Right ? "R" : "L") << g.class_id << " {\n";
  for (std::uint32_t v = 0; v < g.size(); ++v)
    out << "  v" << v << " [label=\"" << s.word_string(g.vertices[v]) << "\"];\n";
  for (std::uint32_t v = 0; v < g.size(); ++v)
    for (std::size_t a = 0; a < g.letters.size(); ++a)
      if (g.target(v, a) != kNoVertex)
        out << "  v" << v << " -> v" << g.target(v, a) << " [label=\"" << g.letters[a] << "\"];\n";
  out << "}\n";
  return out.str();
}

InverseAutomaton to_automaton(const SchutzGraph& g, std::uint32_t base) {
  if (!g.is_inverse) throw NotInverse("Schutzenberger graph is not an inverse graph");
  if (base >= g.size()) throw BadParameter("base vertex out of range");
  InverseAutomaton a(g.size(), g.letters.size());
  for (std::uint32_t v = 0; v < g.size(); ++v)
    for (std::size_t l = 0; l < g.letters.size(); ++l)
      if (g.target(v, l) != kNoVertex) a.add_edge(v, l, g.target(v, l));
  a.set_base(base);
  return a;
}

}  // namespace nilbench
