#include "nilbench/cayley.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "nilbench/errors.hpp"
#include "scc.hpp"

namespace nilbench {

namespace {

constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;
constexpr std::size_t kImageCap = 4000;
constexpr std::size_t kPairReps = 400;
constexpr std::uint64_t kTupleBudget = 2'000'000;

std::uint64_t hash_bytes(const PartialMap::Point* p, std::size_t n) {
  return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(p), n));
}

}  // namespace

Elem CayleySemigroup::lookup(const PartialMap::Point* img) const {
  const std::size_t mask = buckets_.size() - 1;
  for (std::size_t b = hash_bytes(img, degree_) & mask;; b = (b + 1) & mask) {
    const std::uint32_t e = buckets_[b];
    if (e == kEmpty) return kNoElem;
    if (std::memcmp(&pool_[std::size_t(e) * degree_], img, degree_) == 0) return e;
  }
}

CayleySemigroup CayleySemigroup::build(const std::vector<NamedMap>& gens, std::size_t cap) {
  if (gens.empty()) throw SemanticError("no generators");
  CayleySemigroup s;
  s.degree_ = gens[0].second.degree();
  for (const auto& [name, m] : gens) {
    if (m.degree() != s.degree_) throw DegreeMismatch("generator '" + name + "' has a different degree");
    s.names_.push_back(name);
    s.injective_ = s.injective_ && m.is_partial_injection();
  }
  const std::size_t d = s.degree_, k = gens.size();
  s.buckets_.assign(1u << 16, kEmpty);

  auto grow = [&] {
    std::vector<std::uint32_t> next(s.buckets_.size() * 2, kEmpty);
    const std::size_t mask = next.size() - 1;
    for (Elem e = 0; e < s.n_; ++e) {
      std::size_t b = hash_bytes(&s.pool_[std::size_t(e) * d], d) & mask;
      while (next[b] != kEmpty) b = (b + 1) & mask;
      next[b] = e;
    }
    s.buckets_ = std::move(next);
  };
  // The candidate sits at the end of the pool; kept if new.
  auto insert = [&](Elem from, std::uint32_t letter) -> Elem {
    const PartialMap::Point* img = &s.pool_[std::size_t(s.n_) * d];
    const std::size_t mask = s.buckets_.size() - 1;
    std::size_t b = hash_bytes(img, d) & mask;
    for (;; b = (b + 1) & mask) {
      const std::uint32_t e = s.buckets_[b];
      if (e == kEmpty) break;
      if (std::memcmp(&s.pool_[std::size_t(e) * d], img, d) == 0) {
        s.pool_.resize(std::size_t(s.n_) * d);
        return e;
      }
    }
    if (s.n_ >= cap) throw CapExceeded("closure exceeds " + std::to_string(cap) + " elements");
    s.buckets_[b] = Elem(s.n_);
    s.parent_.push_back(from);
    s.last_.push_back(letter);
    const Elem e = Elem(s.n_++);
    if (s.n_ * 2 > s.buckets_.size()) grow();
    return e;
  };

  for (std::uint32_t a = 0; a < k; ++a) {
    s.pool_.insert(s.pool_.end(), gens[a].second.images().begin(), gens[a].second.images().end());
    s.gens_.push_back(insert(kNoElem, a));
  }
  for (Elem x = 0; x < s.n_; ++x) {
    for (std::uint32_t a = 0; a < k; ++a) {
      const std::size_t base = std::size_t(s.n_) * d;
      s.pool_.resize(base + d);
      const std::size_t gx = std::size_t(s.gens_[a]) * d, xx = std::size_t(x) * d;
      for (std::size_t i = 0; i < d; ++i) {
        const auto p = s.pool_[xx + i];
        s.pool_[base + i] = p == PartialMap::kTheta ? p : s.pool_[gx + p];
      }
      s.right_.push_back(insert(x, a));
    }
  }
  s.pool_.resize(s.n_ * d);
  s.pool_.shrink_to_fit();

  s.left_.resize(s.n_ * k);
  std::vector<PartialMap::Point> img(d);
  for (Elem x = 0; x < s.n_; ++x) {
    const std::size_t xx = std::size_t(x) * d;
    for (std::uint32_t a = 0; a < k; ++a) {
      const std::size_t gx = std::size_t(s.gens_[a]) * d;
      for (std::size_t i = 0; i < d; ++i) {
        const auto p = s.pool_[gx + i];
        img[i] = p == PartialMap::kTheta ? p : s.pool_[xx + p];
      }
      const Elem y = s.lookup(img.data());
      if (y == kNoElem) throw InternalInconsistency("left product escaped the closure");
      s.left_[std::size_t(x) * k + a] = y;
    }
  }
  return s;
}

PartialMap CayleySemigroup::map(Elem x) const {
  const auto* p = &pool_[std::size_t(x) * degree_];
  return PartialMap(std::vector<PartialMap::Point>(p, p + degree_));
}

std::optional<Elem> CayleySemigroup::find(const PartialMap& m) const {
  if (m.degree() != degree_) return std::nullopt;
  const Elem e = lookup(m.data());
  if (e == kNoElem) return std::nullopt;
  return e;
}

Elem CayleySemigroup::product(Elem x, Elem y) const {
  std::vector<PartialMap::Point> img(degree_);
  const auto* px = &pool_[std::size_t(x) * degree_];
  const auto* py = &pool_[std::size_t(y) * degree_];
  for (std::size_t i = 0; i < degree_; ++i) img[i] = px[i] == PartialMap::kTheta ? px[i] : py[px[i]];
  const Elem e = lookup(img.data());
  if (e == kNoElem) throw InternalInconsistency("product escaped the closure");
  return e;
}

bool CayleySemigroup::is_idempotent(Elem x) const {
  const auto* p = &pool_[std::size_t(x) * degree_];
  for (std::size_t i = 0; i < degree_; ++i)
    if (p[i] != PartialMap::kTheta && p[p[i]] != p[i]) return false;
  return true;
}

std::vector<std::uint32_t> CayleySemigroup::word(Elem x) const {
  std::vector<std::uint32_t> w;
  for (; x != kNoElem; x = parent_[x]) w.push_back(last_[x]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::string CayleySemigroup::word_string(Elem x) const {
  std::string out;
  for (auto a : word(x)) {
    if (!out.empty()) out += '.';
    out += names_[a];
  }
  return out;
}

Elem CayleySemigroup::evaluate(const std::vector<std::uint32_t>& w) const {
  if (w.empty()) throw BadParameter("empty word");
  Elem x = gens_[w[0]];
  for (std::size_t i = 1; i < w.size(); ++i) x = right(x, w[i]);
  return x;
}

std::uint64_t CayleySemigroup::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 1099511628211ull;
    }
  };
  mix(n_);
  for (Elem e : right_) mix(e);
  return h;
}

Semigroup CayleySemigroup::subsemigroup(const std::vector<Elem>& gens, std::vector<Elem>* origin) const {
  std::vector<Elem> uniq;
  for (Elem e : gens)
    if (std::find(uniq.begin(), uniq.end(), e) == uniq.end()) uniq.push_back(e);
  std::vector<NamedMap> named;
  for (Elem e : uniq) named.emplace_back(word_string(e), map(e));
  Semigroup sub = close_generators(named);
  if (origin) {
    origin->resize(sub.size());
    for (Elem x = 0; x < sub.size(); ++x) {
      auto e = find(sub.map(x));
      if (!e) throw InternalInconsistency("subsemigroup element missing from the closure");
      (*origin)[x] = *e;
    }
  }
  return sub;
}

CayleyGreens cayley_greens(const CayleySemigroup& s) {
  CayleyGreens g;
  const std::size_t n = s.size(), k = s.letters();
  {
    auto comp = detail::strongly_connected(n, [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
      for (std::size_t a = 0; a < k; ++a) out.push_back(s.right(v, a));
    });
    g.r = detail::renumber_by_first(comp, &g.num_r);
  }
  {
    auto comp = detail::strongly_connected(n, [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
      for (std::size_t a = 0; a < k; ++a) out.push_back(s.left(a, v));
    });
    g.l = detail::renumber_by_first(comp, &g.num_l);
  }
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = root(a), b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::vector<std::uint32_t> first_r(g.num_r, kEmpty), first_l(g.num_l, kEmpty);
  for (Elem x = 0; x < n; ++x) {
    if (first_r[g.r[x]] == kEmpty) first_r[g.r[x]] = x;
    if (first_l[g.l[x]] == kEmpty) first_l[g.l[x]] = x;
    unite(x, first_r[g.r[x]]);
    unite(x, first_l[g.l[x]]);
  }
  std::vector<std::uint32_t> comp(n);
  for (Elem x = 0; x < n; ++x) comp[x] = root(x);
  g.j = detail::renumber_by_first(comp, &g.num_j);
  g.j_members.assign(g.num_j, {});
  for (Elem x = 0; x < n; ++x) g.j_members[g.j[x]].push_back(x);
  g.j_regular.assign(g.num_j, false);
  for (Elem x = 0; x < n; ++x)
    if (s.is_idempotent(x)) {
      g.idempotents.push_back(x);
      g.j_regular[g.j[x]] = true;
    }

  // J-order edges point downwards; top classes have no incoming edge.
  std::vector<std::vector<std::uint32_t>> below(g.num_j);
  std::vector<std::uint32_t> indeg(g.num_j, 0);
  for (std::uint32_t j = 0; j < g.num_j; ++j) {
    auto& out = below[j];
    for (Elem x : g.j_members[j])
      for (std::size_t a = 0; a < k; ++a) {
        const std::uint32_t r = g.j[s.right(x, a)], l = g.j[s.left(a, x)];
        if (r != j) out.push_back(r);
        if (l != j) out.push_back(l);
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (auto b : out) ++indeg[b];
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::uint32_t j = 0; j < g.num_j; ++j)
    if (indeg[j] == 0) ready.push(j);
  g.layer_of_j.assign(g.num_j, 0);
  while (!ready.empty()) {
    const std::uint32_t j = ready.top();
    ready.pop();
    g.layer_of_j[j] = std::uint32_t(g.layers.size());
    g.layers.push_back(j);
    for (auto b : below[j])
      if (--indeg[b] == 0) ready.push(b);
  }
  if (g.layers.size() != g.num_j) throw InternalInconsistency("J-order has a cycle");
  return g;
}

std::uint32_t CayleyLayer::column_of(const CayleyGreens& g, Elem x) const {
  if (g.j[x] != j_class) return kThetaIndex;
  auto it = std::find(col_l.begin(), col_l.end(), g.l[x]);
  return it == col_l.end() ? kThetaIndex : std::uint32_t(it - col_l.begin());
}

Elem CayleyLayer::at(const CayleySemigroup& s, const CayleyGreens& g, std::uint32_t row, std::uint32_t col) const {
  (void)s;
  for (Elem x : g.j_members[j_class])
    if (g.r[x] == row_r[row] && g.l[x] == col_l[col]) return x;
  throw InternalInconsistency("empty H-class in a regular J-class");
}

CayleyLayer cayley_layer(const CayleySemigroup& s, const CayleyGreens& g, std::size_t p) {
  CayleyLayer out;
  out.layer = p;
  out.j_class = g.layers.at(p);
  if (!g.j_regular[out.j_class]) throw BadParameter("layer is not regular");
  const auto& members = g.j_members[out.j_class];
  out.size = members.size();

  std::unordered_map<std::uint32_t, std::uint32_t> col_of, row_count;
  std::unordered_map<std::uint32_t, Elem> idem_of_l, idem_of_r;
  std::set<std::uint32_t> rows;
  out.inverse = true;
  for (Elem x : members) {
    rows.insert(g.r[x]);
    if (col_of.emplace(g.l[x], std::uint32_t(out.col_l.size())).second) out.col_l.push_back(g.l[x]);
    if (!s.is_idempotent(x)) continue;
    auto [il, fl] = idem_of_l.emplace(g.l[x], x);
    auto [ir, fr] = idem_of_r.emplace(g.r[x], x);
    if (!fl && out.inverse) {
      out.inverse = false;
      out.clash = std::make_pair(il->second, x);
    } else if (!fr && out.inverse) {
      out.inverse = false;
      out.clash = std::make_pair(ir->second, x);
    }
  }
  out.rows = rows.size();
  out.cols = out.col_l.size();
  if (!out.inverse) return out;

  for (auto l : out.col_l) out.row_r.push_back(g.r[idem_of_l.at(l)]);
  const Elem e0 = idem_of_l.at(out.col_l[0]);
  out.col_rep.assign(out.cols, kNoElem);
  for (Elem x : members) {
    if (g.r[x] != g.r[e0]) continue;
    const std::uint32_t c = col_of.at(g.l[x]);
    if (out.col_rep[c] == kNoElem) out.col_rep[c] = x;
    if (g.l[x] == g.l[e0]) out.group.push_back(x);
  }
  for (std::size_t a = 0; a < s.letters(); ++a) {
    std::vector<std::uint32_t> gm(out.cols, kThetaIndex);
    std::vector<bool> hit(out.cols, false);
    for (std::uint32_t c = 0; c < out.cols; ++c) {
      const Elem y = s.right(out.col_rep[c], a);
      if (g.j[y] != out.j_class) continue;
      gm[c] = col_of.at(g.l[y]);
      if (hit[gm[c]]) out.injective = false;
      hit[gm[c]] = true;
    }
    out.gamma.push_back(std::move(gm));
  }
  return out;
}

namespace {

std::vector<Elem> lambda_step_large(const CayleySemigroup& s, const std::vector<Elem>& x, Elem z) {
  const std::size_t t = x.size();
  std::vector<Elem> out(t);
  for (std::size_t i = 0; i < t; ++i) {
    Elem acc = x[i];
    for (std::size_t r = 1; r < t; ++r) acc = s.product(z == kNoElem ? acc : s.product(acc, z), x[(i + r) % t]);
    out[i] = acc;
  }
  return out;
}

LocalCertificate localize(const CayleySemigroup& s, const TupleCycleWitness& big) {
  std::vector<Elem> gens = big.tuple;
  for (Elem z : big.words)
    if (z != kNoElem) gens.push_back(z);
  LocalCertificate cert;
  cert.sub = s.subsemigroup(gens, &cert.origin);
  std::unordered_map<Elem, Elem> back;
  for (Elem x = 0; x < cert.origin.size(); ++x) back.emplace(cert.origin[x], x);
  cert.witness = big;
  for (Elem& e : cert.witness.tuple) e = back.at(e);
  for (Elem& e : cert.witness.words)
    if (e != kNoElem) e = back.at(e);
  return cert;
}

using ColMap = std::vector<std::uint32_t>;

ColMap compose(const ColMap& a, const ColMap& b) {
  ColMap out(a.size(), kThetaIndex);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != kThetaIndex) out[i] = b[a[i]];
  return out;
}

std::size_t rank_of(const ColMap& m) {
  return std::size_t(std::count_if(m.begin(), m.end(), [](auto v) { return v != kThetaIndex; }));
}

ColMap invert(const ColMap& m) {
  ColMap out(m.size(), kThetaIndex);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != kThetaIndex) out[m[i]] = std::uint32_t(i);
  return out;
}

std::vector<std::vector<std::uint32_t>> cycles_of(const ColMap& h) {
  const std::size_t n = h.size();
  std::vector<int> state(n, 0);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start]) continue;
    std::vector<std::uint32_t> path;
    std::size_t k = start;
    while (k != kThetaIndex && state[k] == 0) {
      state[k] = 1;
      path.push_back(std::uint32_t(k));
      k = h[k];
    }
    if (k != kThetaIndex && state[k] == 1) {
      auto pos = std::find(path.begin(), path.end(), std::uint32_t(k));
      std::vector<std::uint32_t> cyc(pos, path.end());
      if (cyc.size() >= 2) out.push_back(std::move(cyc));
    }
    for (auto q : path) state[q] = 2;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

struct Image {
  ColMap map;
  Elem element;
};

struct ImageClosure {
  std::vector<Image> images;
  bool complete = true;
};

// Gamma-images of S on one layer, breadth-first over the letters.
ImageClosure image_closure(const CayleySemigroup& s, const CayleyLayer& L, const std::vector<std::size_t>& letters,
                           std::size_t cap) {
  ImageClosure out;
  std::map<ColMap, std::size_t> seen;
  auto push = [&](ColMap m, Elem e) {
    if (rank_of(m) == 0 || seen.count(m)) return;
    if (out.images.size() >= cap) {
      out.complete = false;
      return;
    }
    seen.emplace(m, out.images.size());
    out.images.push_back({std::move(m), e});
  };
  for (auto a : letters) push(L.gamma[a], s.generator(a));
  for (std::size_t i = 0; i < out.images.size() && out.complete; ++i)
    for (auto a : letters) push(compose(out.images[i].map, L.gamma[a]), s.right(out.images[i].element, a));
  return out;
}

std::vector<std::size_t> active_letters(const CayleyLayer& L) {
  std::vector<std::size_t> out;
  std::set<ColMap> seen;
  for (std::size_t a = 0; a < L.gamma.size(); ++a)
    if (rank_of(L.gamma[a]) > 0 && seen.insert(L.gamma[a]).second) out.push_back(a);
  return out;
}

RotationWitness make_rotation(const CayleySemigroup& s, const CayleyGreens& g, const CayleyLayer& L,
                              const std::vector<std::uint32_t>& alpha, const std::vector<std::uint32_t>& beta,
                              const std::vector<Elem>& v) {
  RotationWitness rw;
  rw.layer = L.layer;
  rw.j_class = L.j_class;
  rw.t = alpha.size();
  rw.alpha = alpha;
  rw.beta = beta;
  rw.v = v;
  for (std::size_t j = 0; j < rw.t; ++j) rw.y.push_back(L.at(s, g, alpha[j], beta[j]));
  return rw;
}

// Pair reachability: some beta != beta' reaches both (alpha', alpha) and (alpha, alpha').
std::optional<RotationWitness> pair_search(const CayleySemigroup& s, const CayleyGreens& g, const CayleyLayer& L) {
  const std::size_t w = L.cols;
  const auto letters = active_letters(L);
  std::vector<std::uint32_t> from(w * w), via(w * w);
  for (std::uint32_t b1 = 0; b1 < w; ++b1)
    for (std::uint32_t b2 = 0; b2 < w; ++b2) {
      if (b1 == b2) continue;
      std::fill(from.begin(), from.end(), kEmpty);
      std::deque<std::uint32_t> queue;
      const std::uint32_t src = b1 * std::uint32_t(w) + b2;
      auto visit = [&](std::uint32_t prev, std::size_t a) {
        const std::uint32_t p = prev / w, q = prev % w;
        const std::uint32_t x = L.gamma[a][p], y = L.gamma[a][q];
        if (x == kThetaIndex || y == kThetaIndex) return;
        const std::uint32_t st = x * std::uint32_t(w) + y;
        if (from[st] != kEmpty) return;
        from[st] = prev;
        via[st] = std::uint32_t(a);
        queue.push_back(st);
      };
      for (auto a : letters) visit(src, a);
      while (!queue.empty()) {
        const std::uint32_t st = queue.front();
        queue.pop_front();
        for (auto a : letters) visit(st, a);
      }
      auto path = [&](std::uint32_t st) {
        std::vector<std::uint32_t> word;
        for (;;) {
          word.push_back(via[st]);
          if (from[st] == src) break;
          st = from[st];
        }
        std::reverse(word.begin(), word.end());
        return s.evaluate(word);
      };
      for (std::uint32_t a1 = 0; a1 < w; ++a1)
        for (std::uint32_t a2 = 0; a2 < w; ++a2) {
          if (a1 == a2) continue;
          const std::uint32_t keep = a1 * std::uint32_t(w) + a2, swap = a2 * std::uint32_t(w) + a1;
          if (from[keep] == kEmpty || from[swap] == kEmpty) continue;
          const Elem u = path(keep), v = path(swap);
          return make_rotation(s, g, L, {a1, a2}, {b1, b2}, {v, u});
        }
    }
  return std::nullopt;
}

// Breadth-first over t-tuples of columns from beta; records the first word reaching each tuple.
std::optional<Elem> tuple_reach(const CayleySemigroup& s, const CayleyLayer& L, const std::vector<std::size_t>& letters,
                                const std::vector<std::uint32_t>& beta, const std::vector<std::uint32_t>& target,
                                std::uint64_t& budget) {
  std::map<std::vector<std::uint32_t>, std::pair<Elem, bool>> seen;
  std::deque<std::pair<std::vector<std::uint32_t>, Elem>> queue;
  auto step = [&](const std::vector<std::uint32_t>& cur, Elem e, std::size_t a) -> std::optional<Elem> {
    std::vector<std::uint32_t> next(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) {
      next[j] = L.gamma[a][cur[j]];
      if (next[j] == kThetaIndex) return std::nullopt;
    }
    const Elem x = e == kNoElem ? s.generator(a) : s.right(e, a);
    if (next == target) return x;
    if (seen.emplace(next, std::make_pair(x, true)).second) queue.emplace_back(std::move(next), x);
    return std::nullopt;
  };
  for (auto a : letters)
    if (auto hit = step(beta, kNoElem, a)) return hit;
  while (!queue.empty()) {
    if (budget == 0) return std::nullopt;
    --budget;
    auto [cur, e] = std::move(queue.front());
    queue.pop_front();
    for (auto a : letters)
      if (auto hit = step(cur, e, a)) return hit;
  }
  return std::nullopt;
}

struct SmnLayer {
  std::optional<RotationWitness> witness;
  bool exact = true;
};

SmnLayer rotation_search(const CayleySemigroup& s, const CayleyGreens& g, const CayleyLayer& L) {
  SmnLayer out;
  const auto letters = active_letters(L);
  ImageClosure img = image_closure(s, L, letters, kImageCap);
  out.exact = img.complete;
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < img.images.size(); ++i)
    if (rank_of(img.images[i].map) >= 2) reps.push_back(i);
  if (!img.complete && reps.size() > kPairReps) reps.resize(kPairReps);
  std::uint64_t budget = kTupleBudget;

  for (auto ui : reps) {
    const ColMap inv_u = invert(img.images[ui].map);
    for (auto vi : reps) {
      if (vi == ui) continue;
      const ColMap h = compose(inv_u, img.images[vi].map);
      for (const auto& alpha : cycles_of(h)) {
        const std::size_t t = alpha.size();
        std::vector<std::uint32_t> beta(t);
        for (std::size_t j = 0; j < t; ++j) beta[j] = inv_u[alpha[j]];
        std::vector<Elem> middle;
        bool ok = true;
        for (std::size_t i = 2; i < t && ok; ++i) {
          ok = false;
          for (auto wi : reps) {
            const ColMap& gw = img.images[wi].map;
            bool fits = true;
            for (std::size_t j = 0; j < t && fits; ++j) fits = gw[beta[j]] == alpha[(j + i) % t];
            if (fits) {
              middle.push_back(img.images[wi].element);
              ok = true;
              break;
            }
          }
          if (!ok && !img.complete && budget > 0) {
            std::vector<std::uint32_t> target(t);
            for (std::size_t j = 0; j < t; ++j) target[j] = alpha[(j + i) % t];
            if (auto e = tuple_reach(s, L, letters, beta, target, budget)) {
              middle.push_back(*e);
              ok = true;
            }
          }
        }
        if (!ok) continue;
        std::vector<Elem> v{img.images[vi].element};
        v.insert(v.end(), middle.begin(), middle.end());
        v.push_back(img.images[ui].element);
        out.witness = make_rotation(s, g, L, alpha, beta, v);
        return out;
      }
    }
  }
  return out;
}

}  // namespace

LocalCertificate certify(const CayleySemigroup& s, const RotationWitness& w) {
  if (w.t < 2 || w.y.size() != w.t || w.v.size() != w.t) throw BadParameter("malformed rotation witness");
  std::map<std::vector<Elem>, std::size_t> seen;
  std::vector<std::vector<Elem>> starts{w.y};
  seen.emplace(w.y, 0);
  for (;;) {
    std::vector<Elem> cur = starts.back();
    for (Elem z : w.v) cur = lambda_step_large(s, cur, z);
    auto it = seen.find(cur);
    if (it != seen.end()) {
      TupleCycleWitness big;
      big.t = w.t;
      big.tuple = starts[it->second];
      for (std::size_t k = it->second; k < starts.size(); ++k) big.words.insert(big.words.end(), w.v.begin(), w.v.end());
      std::vector<Elem> sorted = big.tuple;
      std::sort(sorted.begin(), sorted.end());
      big.distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      return localize(s, big);
    }
    seen.emplace(cur, starts.size());
    starts.push_back(std::move(cur));
  }
}

CayleyBgNil cayley_bg_nil(const CayleySemigroup& s, const CayleyGreens& g) {
  CayleyBgNil out;
  std::string group_detail;
  std::optional<LocalCertificate> group_cert;
  for (std::size_t p = g.layers.size(); p-- > 0;) {
    const std::uint32_t j = g.layers[p];
    if (!g.j_regular[j]) continue;
    CayleyLayer L = cayley_layer(s, g, p);
    if (!L.inverse) {
      if (out.bg) {
        out.detail = "J-class " + std::to_string(j) + " has two idempotents in one R- or L-class";
        auto [e, f] = *L.clash;
        TupleCycleWitness big;
        big.t = 2;
        big.tuple = {e, f};
        big.words = s.product(e, f) == e ? std::vector<Elem>{e} : std::vector<Elem>{e, e};
        big.distinct = true;
        out.certificate = localize(s, big);
      }
      out.bg = out.bg_nil = false;
      out.layers.push_back(std::move(L));
      continue;
    }
    std::vector<Elem> origin;
    Semigroup grp = s.subsemigroup(L.group, &origin);
    GroupTable table = GroupTable::from_semigroup(grp);
    auto cls = group_nilpotency_class(table);
    out.group_classes.push_back(cls ? *cls : 0);
    if (!cls && !group_cert) {
      group_detail = "maximal subgroup of order " + std::to_string(table.order) + " in J-class " +
                     std::to_string(j) + " is not nilpotent";
      Budget unlimited{~std::uint64_t(0), ~std::uint64_t(0)};
      OracleRun run = oracle_run(grp, 2, unlimited);
      if (run.witness) {
        TupleCycleWitness big = *run.witness;
        for (Elem& e : big.tuple) e = origin[e];
        for (Elem& e : big.words)
          if (e != kNoElem) e = origin[e];
        group_cert = localize(s, big);
      }
      if (group_detail.empty()) group_detail = "non-nilpotent maximal subgroup";
    }
    if (!cls) out.bg_nil = false;
    out.layers.push_back(std::move(L));
  }
  if (out.bg && !out.bg_nil) {
    out.detail = group_detail;
    out.certificate = std::move(group_cert);
  }
  return out;
}

CayleyMembership cayley_check(const CayleySemigroup& s, const CayleyGreens& g, const CayleyBgNil& bg, Mode mode,
                              const Budget& budget) {
  (void)budget;
  CayleyMembership res;
  if (!bg.bg_nil) {
    res.verdict = Verdict::NotMember;
    res.reason = "not in BG_nil: " + bg.detail;
    res.certificate = bg.certificate;
    return res;
  }
  bool exact = true;
  for (const CayleyLayer& L : bg.layers) {
    if (!L.injective) {
      res.verdict = Verdict::Unknown;
      res.reason = "Gamma not injective on layer " + std::to_string(L.layer) + "; no tuple oracle at this size";
      return res;
    }
    if (L.cols < 2) continue;
    std::optional<RotationWitness> rw;
    if (mode == Mode::MN) {
      rw = pair_search(s, g, L);
    } else {
      SmnLayer r = rotation_search(s, g, L);
      exact = exact && r.exact;
      rw = std::move(r.witness);
    }
    if (rw) {
      res.verdict = Verdict::NotMember;
      res.reason = "rotation pattern with t = " + std::to_string(rw->t) + " on layer " + std::to_string(L.layer);
      try {
        res.certificate = certify(s, *rw);
      } catch (const CapExceeded&) {
      }
      res.rotation = std::move(rw);
      return res;
    }
  }
  res.verdict = exact ? Verdict::Member : Verdict::Unknown;
  res.reason = exact ? "no rotation pattern on any inverse layer"
                     : "no rotation pattern found within the search bound on some layer";
  return res;
}

SchutzGraph cayley_schutz(const CayleySemigroup& s, const CayleyGreens& g, Side side, Elem rep) {
  SchutzGraph out;
  out.side = side;
  const auto& cls = side == Side::Right ? g.r : g.l;
  out.class_id = cls[rep];
  for (Elem x : g.j_members[g.j[rep]])
    if (cls[x] == out.class_id) out.vertices.push_back(x);
  std::unordered_map<Elem, std::uint32_t> index;
  for (std::uint32_t v = 0; v < out.vertices.size(); ++v) index.emplace(out.vertices[v], v);
  for (std::size_t a = 0; a < s.letters(); ++a) out.letters.push_back(s.letter_name(a));
  const std::size_t k = s.letters();
  out.edges.assign(out.vertices.size() * k, kNoVertex);
  out.is_inverse = true;
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<bool> hit(out.vertices.size(), false);
    for (std::uint32_t v = 0; v < out.vertices.size(); ++v) {
      const Elem y = side == Side::Right ? s.right(out.vertices[v], a) : s.left(a, out.vertices[v]);
      auto it = index.find(y);
      if (it == index.end()) continue;
      out.edges[v * k + a] = it->second;
      if (hit[it->second]) out.is_inverse = false;
      hit[it->second] = true;
    }
  }
  const auto& other = side == Side::Right ? g.l : g.r;
  for (Elem x : out.vertices) out.h_class.push_back(other[x]);
  return out;
}

}  // namespace nilbench
