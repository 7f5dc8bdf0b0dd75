#include "nilbench/semigroup.hpp"

#include <deque>

#include "nilbench/errors.hpp"

namespace nilbench {

namespace {

std::vector<std::vector<std::uint32_t>> bfs_words(std::size_t n, const std::vector<Elem>& table,
                                                  const std::vector<Generator>& gens) {
  std::vector<std::vector<std::uint32_t>> words(n);
  std::vector<bool> seen(n, false);
  std::deque<Elem> queue;
  for (std::uint32_t g = 0; g < gens.size(); ++g) {
    Elem e = gens[g].element;
    if (e >= n) throw SemanticError("generator '" + gens[g].name + "' out of range");
    if (!seen[e]) {
      seen[e] = true;
      words[e] = {g};
      queue.push_back(e);
    }
  }
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
      Elem y = table[std::size_t(x) * n + gens[g].element];
      if (!seen[y]) {
        seen[y] = true;
        words[y] = words[x];
        words[y].push_back(g);
        queue.push_back(y);
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (!seen[x]) throw SemanticError("element " + std::to_string(x) + " is not generated");
  return words;
}

}  // namespace

Semigroup Semigroup::from_table(std::size_t n, std::vector<Elem> table, std::vector<Generator> gens,
                                std::vector<std::string> labels, std::vector<PartialMap> maps) {
  if (n == 0) throw SemanticError("empty semigroup");
  if (table.size() != n * n) throw SemanticError("table has wrong size");
  for (Elem e : table)
    if (e >= n) throw SemanticError("table entry out of range");
  if (!labels.empty() && labels.size() != n) throw SemanticError("label count mismatch");
  if (!maps.empty() && maps.size() != n) throw SemanticError("map count mismatch");
  Semigroup s;
  s.n_ = n;
  s.table_ = std::move(table);
  s.gens_ = std::move(gens);
  s.labels_ = std::move(labels);
  s.maps_ = std::move(maps);
  s.words_ = bfs_words(n, s.table_, s.gens_);
  s.index_maps();
  s.detect_units();
  return s;
}

void Semigroup::index_maps() {
  index_.clear();
  for (Elem x = 0; x < maps_.size(); ++x) index_.emplace(maps_[x], x);
}

void Semigroup::detect_units() {
  identity_.reset();
  zero_.reset();
  for (Elem e = 0; e < n_; ++e) {
    bool id = true, zr = true;
    for (Elem x = 0; x < n_ && (id || zr); ++x) {
      Elem l = mul(e, x), r = mul(x, e);
      if (l != x || r != x) id = false;
      if (l != e || r != e) zr = false;
    }
    if (id && !identity_) identity_ = e;
    if (zr && !zero_) zero_ = e;
  }
}

std::string Semigroup::word_string(Elem x) const {
  const auto& w = words_[x];
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += gens_[w[i]].name;
  }
  return s;
}

std::string Semigroup::label(Elem x) const {
  if (!labels_.empty() && !labels_[x].empty()) return labels_[x];
  return word_string(x);
}

Elem Semigroup::evaluate(const std::vector<std::uint32_t>& word) const {
  if (word.empty()) {
    if (!identity_) throw SemanticError("empty word in a semigroup without identity");
    return *identity_;
  }
  Elem x = gens_.at(word[0]).element;
  for (std::size_t i = 1; i < word.size(); ++i) x = mul(x, gens_.at(word[i]).element);
  return x;
}

std::optional<Elem> Semigroup::find(const PartialMap& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Semigroup::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 1099511628211ull;
    }
  };
  mix(n_);
  for (Elem e : table_) mix(e);
  return h;
}

Semigroup close_generators(const std::vector<NamedMap>& gens, std::size_t cap) {
  if (gens.empty()) throw SemanticError("no generators");
  if (cap < 1) throw BadParameter("cap must be positive");
  const std::size_t degree = gens[0].second.degree();
  for (const auto& [name, m] : gens)
    if (m.degree() != degree) throw DegreeMismatch("generator '" + name + "' has a different degree");

  Semigroup s;
  std::vector<Elem> prefix;       // element this one was reached from
  std::vector<std::uint32_t> last;  // generator applied last
  auto insert = [&](PartialMap m, Elem from, std::uint32_t g) -> Elem {
    auto [it, fresh] = s.index_.emplace(m, Elem(s.maps_.size()));
    if (!fresh) return it->second;
    if (s.maps_.size() >= cap) throw CapExceeded("closure exceeds " + std::to_string(cap) + " elements");
    s.maps_.push_back(std::move(m));
    prefix.push_back(from);
    last.push_back(g);
    if (from == kNoElem) {
      s.words_.push_back({g});
    } else {
      auto w = s.words_[from];
      w.push_back(g);
      s.words_.push_back(std::move(w));
    }
    return it->second;
  };

  for (std::uint32_t g = 0; g < gens.size(); ++g) {
    Elem e = insert(gens[g].second, kNoElem, g);
    s.gens_.push_back({gens[g].first, e});
  }
  const std::size_t k = gens.size();
  std::vector<Elem> right;  // right Cayley graph, row-major by element
  for (Elem x = 0; x < s.maps_.size(); ++x) {
    for (std::uint32_t g = 0; g < k; ++g) {
      PartialMap y = s.maps_[x] * s.maps_[s.gens_[g].element];
      right.push_back(insert(std::move(y), x, g));
    }
  }

  const std::size_t n = s.maps_.size();
  s.n_ = n;
  s.table_.assign(n * n, 0);
  for (Elem x = 0; x < n; ++x) {
    Elem* row = &s.table_[std::size_t(x) * n];
    for (Elem y = 0; y < n; ++y) {
      Elem base = prefix[y] == kNoElem ? x : row[prefix[y]];
      row[y] = right[std::size_t(base) * k + last[y]];
    }
  }
  s.detect_units();
  return s;
}

Semigroup permuted(const Semigroup& s, const std::vector<Elem>& order) {
  const std::size_t n = s.size();
  if (order.size() != n) throw BadParameter("permutation size mismatch");
  std::vector<Elem> pos(n, kNoElem);
  for (Elem k = 0; k < n; ++k) pos[order[k]] = k;
  Semigroup t;
  t.n_ = n;
  t.table_.resize(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t.table_[std::size_t(a) * n + b] = pos[s.mul(order[a], order[b])];
  for (const auto& g : s.gens_) t.gens_.push_back({g.name, pos[g.element]});
  t.words_.resize(n);
  for (Elem k = 0; k < n; ++k) t.words_[k] = s.words_[order[k]];
  if (!s.labels_.empty()) {
    t.labels_.resize(n);
    for (Elem k = 0; k < n; ++k) t.labels_[k] = s.labels_[order[k]];
  }
  if (!s.maps_.empty()) {
    t.maps_.resize(n);
    for (Elem k = 0; k < n; ++k) t.maps_[k] = s.maps_[order[k]];
    t.index_maps();
  }
  t.adjoined_identity_ = s.adjoined_identity_;
  t.detect_units();
  return t;
}

Semigroup adjoin_identity(const Semigroup& s) {
  if (s.has_adjoined_identity()) return s;
  if (auto id = s.identity()) {
    std::vector<Elem> order{*id};
    for (Elem x = 0; x < s.size(); ++x)
      if (x != *id) order.push_back(x);
    Semigroup t = permuted(s, order);
    t.adjoined_identity_ = true;
    return t;
  }
  const std::size_t n = s.size() + 1;
  Semigroup t;
  t.n_ = n;
  t.table_.resize(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      Elem v;
      if (a == 0) v = b;
      else if (b == 0) v = a;
      else v = s.mul(a - 1, b - 1) + 1;
      t.table_[std::size_t(a) * n + b] = v;
    }
  }
  for (const auto& g : s.gens_) t.gens_.push_back({g.name, g.element + 1});
  t.words_.push_back({});
  for (Elem x = 0; x < s.size(); ++x) t.words_.push_back(s.words_[x]);
  if (!s.labels_.empty()) {
    t.labels_.push_back("1");
    t.labels_.insert(t.labels_.end(), s.labels_.begin(), s.labels_.end());
  }
  if (!s.maps_.empty()) {
    t.maps_.push_back(PartialMap::identity(s.degree()));
    t.maps_.insert(t.maps_.end(), s.maps_.begin(), s.maps_.end());
    t.index_maps();
  }
  t.adjoined_identity_ = true;
  t.detect_units();
  return t;
}

Semigroup subsemigroup(const Semigroup& s, const std::vector<Elem>& gens) {
  if (gens.empty()) throw BadParameter("no generators");
  std::vector<Elem> local(s.size(), kNoElem);
  std::vector<Elem> members;
  for (Elem g : gens) {
    if (local[g] == kNoElem) {
      local[g] = Elem(members.size());
      members.push_back(g);
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem g : gens) {
      Elem y = s.mul(members[i], g);
      if (local[y] == kNoElem) {
        local[y] = Elem(members.size());
        members.push_back(y);
      }
    }
  }
  const std::size_t n = members.size();
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[std::size_t(a) * n + b] = local[s.mul(members[a], members[b])];
  std::vector<Generator> named;
  for (Elem g : gens) named.push_back({s.label(g), local[g]});
  std::vector<std::string> labels;
  std::vector<PartialMap> maps;
  for (Elem m : members) {
    labels.push_back(s.label(m));
    if (s.is_transformation()) maps.push_back(s.map(m));
  }
  return Semigroup::from_table(n, std::move(table), std::move(named), std::move(labels), std::move(maps));
}

bool is_associative(const Semigroup& s, std::size_t exhaustive_cap) {
  const std::size_t n = s.size();
  if (n <= exhaustive_cap) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        Elem ab = s.mul(a, b);
        for (Elem c = 0; c < n; ++c)
          if (s.mul(ab, c) != s.mul(a, s.mul(b, c))) return false;
      }
    return true;
  }
  for (const auto& g : s.generators())
    for (Elem x = 0; x < n; ++x) {
      Elem gx = s.mul(g.element, x);
      for (Elem y = 0; y < n; ++y)
        if (s.mul(gx, y) != s.mul(g.element, s.mul(x, y))) return false;
    }
  return true;
}

}  // namespace nilbench
