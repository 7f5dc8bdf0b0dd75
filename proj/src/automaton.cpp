#include "nilbench/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "nilbench/errors.hpp"

namespace nilbench {

Word parse_word(std::string_view text) {
  Word w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c >= 'a' && c <= 'z') w.push_back(c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z') w.push_back(-(c - 'A' + 1));
    else if (c == ' ' || c == '\t' || c == '\r') continue;
    else throw ParseError(std::string("bad letter '") + c + "'", 1, i + 1);
  }
  return free_reduce(w);
}

std::string format_word(const Word& w) {
  std::string s;
  for (int x : w) {
    int a = std::abs(x) - 1;
    if (a < 26) s += char((x > 0 ? 'a' : 'A') + a);
    else s += (x > 0 ? "x" : "X") + std::to_string(a);
  }
  return s.empty() ? "1" : s;
}

Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

InverseAutomaton::InverseAutomaton(std::size_t states, std::size_t letters)
    : states_(states), letters_(letters), out_(states * letters, kNoState), in_(states * letters, kNoState) {}

std::uint32_t InverseAutomaton::step(std::uint32_t v, int letter) const {
  if (v == kNoState) return kNoState;
  std::size_t a = std::size_t(std::abs(letter) - 1);
  if (a >= letters_) return kNoState;
  return letter > 0 ? out(v, a) : in(v, a);
}

std::uint32_t InverseAutomaton::read(std::uint32_t v, const Word& w) const {
  for (int x : w) v = step(v, x);
  return v;
}

bool InverseAutomaton::accepts(const Word& w) const { return read(base_, free_reduce(w)) == base_; }

void InverseAutomaton::add_edge(std::uint32_t p, std::size_t a, std::uint32_t q) {
  auto& o = out_[p * letters_ + a];
  auto& i = in_[q * letters_ + a];
  if ((o != kNoState && o != q) || (i != kNoState && i != p)) throw NotInverse("letter is not a partial injection");
  o = q;
  i = p;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> InverseAutomaton::edges(std::size_t a) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t v = 0; v < size(); ++v)
    if (out(v, a) != kNoState) e.emplace_back(v, out(v, a));
  return e;
}

std::size_t InverseAutomaton::edge_count() const {
  return std::count_if(out_.begin(), out_.end(), [](std::uint32_t x) { return x != kNoState; });
}

std::size_t InverseAutomaton::degree(std::uint32_t v) const {
  std::size_t d = 0;
  for (std::size_t a = 0; a < letters_; ++a) d += (out(v, a) != kNoState) + (in(v, a) != kNoState);
  return d;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

FoldResult fold_graph(std::size_t vertices, std::size_t letters, const std::vector<Edge>& edges, std::uint32_t base,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& merge) {
  UnionFind uf(vertices);
  for (auto [x, y] : merge) uf.unite(x, y);
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<std::uint32_t, std::size_t>, std::uint32_t> fwd, bwd;
    for (const Edge& e : edges) {
      std::uint32_t p = uf.find(e.from), q = uf.find(e.to);
      auto [it, fresh] = fwd.emplace(std::make_pair(p, e.letter), q);
      if (!fresh && uf.find(it->second) != q) changed |= uf.unite(it->second, q);
      auto [jt, fresh2] = bwd.emplace(std::make_pair(uf.find(e.to), e.letter), uf.find(e.from));
      if (!fresh2 && uf.find(jt->second) != uf.find(e.from)) changed |= uf.unite(jt->second, e.from);
    }
  }
  std::vector<std::uint32_t> cls(vertices, kNoState);
  std::uint32_t count = 0;
  std::vector<std::uint32_t> image(vertices);
  for (std::uint32_t v = 0; v < vertices; ++v) {
    std::uint32_t r = uf.find(v);
    if (cls[r] == kNoState) cls[r] = count++;
    image[v] = cls[r];
  }
  InverseAutomaton a(count, letters);
  a.set_base(image[base]);
  for (const Edge& e : edges) a.add_edge(image[e.from], e.letter, image[e.to]);
  return {std::move(a), std::move(image)};
}

FoldResult trim(const InverseAutomaton& a) {
  const std::size_t n = a.size();
  std::vector<bool> alive(n, false);
  // reachable part
  std::deque<std::uint32_t> queue{a.base()};
  alive[a.base()] = true;
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < a.letters(); ++l)
      for (std::uint32_t w : {a.out(v, l), a.in(v, l)})
        if (w != kNoState && !alive[w]) {
          alive[w] = true;
          queue.push_back(w);
        }
  }
  std::vector<std::size_t> deg(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) deg[v] = alive[v] ? a.degree(v) : 0;
  std::vector<std::uint32_t> todo;
  for (std::uint32_t v = 0; v < n; ++v)
    if (alive[v] && v != a.base() && deg[v] <= 1) todo.push_back(v);
  while (!todo.empty()) {
    std::uint32_t v = todo.back();
    todo.pop_back();
    if (!alive[v]) continue;
    alive[v] = false;
    for (std::size_t l = 0; l < a.letters(); ++l)
      for (std::uint32_t w : {a.out(v, l), a.in(v, l)})
        if (w != kNoState && alive[w] && w != v) {
          if (--deg[w] <= 1 && w != a.base()) todo.push_back(w);
        }
  }
  std::vector<std::uint32_t> image(n, kNoState);
  std::uint32_t count = 0;
  for (std::uint32_t v = 0; v < n; ++v)
    if (alive[v]) image[v] = count++;
  InverseAutomaton t(count, a.letters());
  t.set_base(image[a.base()]);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (std::size_t l = 0; l < a.letters(); ++l) {
      std::uint32_t w = a.out(v, l);
      if (w != kNoState && alive[w]) t.add_edge(image[v], l, image[w]);
    }
  }
  return {std::move(t), std::move(image)};
}

InverseAutomaton fold(const std::vector<Word>& basis, std::size_t letters) {
  std::vector<Edge> edges;
  std::uint32_t next = 1;
  for (const Word& raw : basis) {
    Word w = free_reduce(raw);
    if (w.empty()) continue;
    std::uint32_t prev = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::uint32_t cur = k + 1 == w.size() ? 0 : next++;
      std::size_t a = std::size_t(std::abs(w[k]) - 1);
      if (a >= letters) throw BadParameter("letter outside the alphabet");
      if (w[k] > 0) edges.push_back({prev, a, cur});
      else edges.push_back({cur, a, prev});
      prev = cur;
    }
  }
  FoldResult f = fold_graph(next, letters, edges, 0);
  return canonical(trim(f.automaton).automaton).automaton;
}

FoldResult canonical(const InverseAutomaton& a) {
  const std::size_t n = a.size();
  std::vector<std::uint32_t> image(n, kNoState);
  std::vector<std::uint32_t> order;
  image[a.base()] = 0;
  order.push_back(a.base());
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::uint32_t v = order[k];
    for (std::size_t l = 0; l < a.letters(); ++l)
      for (std::uint32_t w : {a.out(v, l), a.in(v, l)})
        if (w != kNoState && image[w] == kNoState) {
          image[w] = std::uint32_t(order.size());
          order.push_back(w);
        }
  }
  InverseAutomaton c(order.size(), a.letters());
  c.set_base(0);
  for (std::uint32_t v : order)
    for (std::size_t l = 0; l < a.letters(); ++l)
      if (a.out(v, l) != kNoState) c.add_edge(image[v], l, image[a.out(v, l)]);
  return {std::move(c), std::move(image)};
}

bool isomorphic(const InverseAutomaton& x, const InverseAutomaton& y) {
  std::size_t letters = std::max(x.letters(), y.letters());
  auto widen = [letters](const InverseAutomaton& a) {
    if (a.letters() == letters) return a;
    InverseAutomaton w(a.size(), letters);
    w.set_base(a.base());
    for (std::size_t l = 0; l < a.letters(); ++l)
      for (auto [p, q] : a.edges(l)) w.add_edge(p, l, q);
    return w;
  };
  return canonical(widen(x)).automaton == canonical(widen(y)).automaton;
}

bool SpanningTree::is_tree_edge(std::uint32_t p, std::size_t a, std::uint32_t q) const {
  const int letter = int(a + 1);
  return (parent[q].first == p && parent[q].second == letter) || (parent[p].first == q && parent[p].second == -letter);
}

SpanningTree spanning_tree(const InverseAutomaton& a) {
  const std::size_t n = a.size();
  SpanningTree t;
  t.paths.assign(n, {});
  t.parent.assign(n, {kNoState, 0});
  std::vector<bool> seen(n, false);
  seen[a.base()] = true;
  t.order.push_back(a.base());
  for (std::size_t k = 0; k < t.order.size(); ++k) {
    std::uint32_t v = t.order[k];
    for (std::size_t l = 0; l < a.letters(); ++l)
      for (int sign : {1, -1}) {
        std::uint32_t w = sign > 0 ? a.out(v, l) : a.in(v, l);
        if (w == kNoState || seen[w]) continue;
        seen[w] = true;
        t.parent[w] = {v, sign * int(l + 1)};
        t.paths[w] = t.paths[v];
        t.paths[w].push_back(sign * int(l + 1));
        t.order.push_back(w);
      }
  }
  return t;
}

std::vector<Word> tree_basis(const InverseAutomaton& a) {
  SpanningTree t = spanning_tree(a);
  std::vector<Word> basis;
  for (std::uint32_t p = 0; p < a.size(); ++p)
    for (std::size_t l = 0; l < a.letters(); ++l) {
      std::uint32_t q = a.out(p, l);
      if (q == kNoState) continue;
      const int letter = int(l + 1);
      if (t.is_tree_edge(p, l, q)) continue;
      Word w = t.paths[p];
      w.push_back(letter);
      Word back = inverse_word(t.paths[q]);
      w.insert(w.end(), back.begin(), back.end());
      basis.push_back(free_reduce(w));
    }
  return basis;
}

InverseAutomaton build_family(Family kind, std::size_t l) {
  if (l < 2) throw BadParameter("family automata need l >= 2");
  const std::size_t states = kind == Family::A ? l + 1 : l;
  InverseAutomaton a(states, 2);
  for (std::uint32_t i = 0; i + 1 < l; ++i) {
    a.add_edge(i, 0, i + 1);
    a.add_edge(i, 1, i + 1);
  }
  a.add_edge(std::uint32_t(l - 1), 0, 0);
  if (kind == Family::C) a.add_edge(std::uint32_t(l - 1), 1, 0);
  if (kind == Family::A) {
    a.add_edge(std::uint32_t(l), 1, 0);
    a.set_base(std::uint32_t(l));
  }
  return a;
}

std::string dump(const InverseAutomaton& a) {
  std::ostringstream out;
  out << "base " << a.base() << "\n";
  for (std::uint32_t v = 0; v < a.size(); ++v)
    for (std::size_t l = 0; l < a.letters(); ++l)
      if (a.out(v, l) != kNoState) out << v << " " << format_word({int(l + 1)}) << " " << a.out(v, l) << "\n";
  return out.str();
}

}  // namespace nilbench
