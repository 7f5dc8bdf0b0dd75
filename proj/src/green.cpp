#include "nilbench/green.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "nilbench/errors.hpp"
#include "scc.hpp"

namespace nilbench {

bool GreensStructure::j_leq(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return true;
  std::vector<bool> seen(num_j, false);
  std::vector<std::uint32_t> todo{b};
  seen[b] = true;
  while (!todo.empty()) {
    std::uint32_t c = todo.back();
    todo.pop_back();
    for (std::uint32_t d : j_below[c]) {
      if (d == a) return true;
      if (!seen[d]) {
        seen[d] = true;
        todo.push_back(d);
      }
    }
  }
  return false;
}

GreensStructure greens_structure(const Semigroup& s) {
  const std::size_t n = s.size();
  const auto& gens = s.generators();
  GreensStructure g;

  auto right = [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
    for (const auto& gen : gens) out.push_back(s.mul(v, gen.element));
  };
  auto left = [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
    for (const auto& gen : gens) out.push_back(s.mul(gen.element, v));
  };
  auto both = [&](std::uint32_t v, std::vector<std::uint32_t>& out) {
    right(v, out);
    left(v, out);
  };
  g.r = detail::renumber_by_first(detail::strongly_connected(n, right), &g.num_r);
  g.l = detail::renumber_by_first(detail::strongly_connected(n, left), &g.num_l);
  g.j = detail::renumber_by_first(detail::strongly_connected(n, both), &g.num_j);

  {
    std::unordered_map<std::uint64_t, std::uint32_t> seen;
    g.h.resize(n);
    for (Elem x = 0; x < n; ++x) {
      std::uint64_t key = (std::uint64_t(g.r[x]) << 32) | g.l[x];
      auto [it, fresh] = seen.emplace(key, std::uint32_t(seen.size()));
      g.h[x] = it->second;
    }
    g.num_h = seen.size();
  }

  g.j_members.resize(g.num_j);
  g.r_members.resize(g.num_r);
  g.l_members.resize(g.num_l);
  g.h_members.resize(g.num_h);
  g.j_regular.assign(g.num_j, false);
  for (Elem x = 0; x < n; ++x) {
    g.j_members[g.j[x]].push_back(x);
    g.r_members[g.r[x]].push_back(x);
    g.l_members[g.l[x]].push_back(x);
    g.h_members[g.h[x]].push_back(x);
    if (s.is_idempotent(x)) {
      g.idempotents.push_back(x);
      g.j_regular[g.j[x]] = true;
    }
  }

  std::vector<std::set<std::uint32_t>> below(g.num_j);
  for (Elem x = 0; x < n; ++x) {
    for (const auto& gen : gens) {
      std::uint32_t a = g.j[s.mul(x, gen.element)];
      std::uint32_t b = g.j[s.mul(gen.element, x)];
      if (a != g.j[x]) below[g.j[x]].insert(a);
      if (b != g.j[x]) below[g.j[x]].insert(b);
    }
  }
  g.j_below.resize(g.num_j);
  for (std::uint32_t c = 0; c < g.num_j; ++c) g.j_below[c].assign(below[c].begin(), below[c].end());
  return g;
}

PrincipalSeries principal_series(const Semigroup&, const GreensStructure& g) {
  PrincipalSeries ps;
  std::vector<std::uint32_t> indegree(g.num_j, 0);
  for (std::uint32_t c = 0; c < g.num_j; ++c)
    for (std::uint32_t d : g.j_below[c]) ++indegree[d];
  // J-class ids are ordered by least member, so the smallest id is the tie-break.
  std::set<std::uint32_t> ready;
  for (std::uint32_t c = 0; c < g.num_j; ++c)
    if (indegree[c] == 0) ready.insert(c);
  ps.layer_of_j.assign(g.num_j, 0);
  while (!ready.empty()) {
    std::uint32_t c = *ready.begin();
    ready.erase(ready.begin());
    ps.layer_of_j[c] = std::uint32_t(ps.layers.size());
    ps.layers.push_back(c);
    for (std::uint32_t d : g.j_below[c])
      if (--indegree[d] == 0) ready.insert(d);
  }
  if (ps.layers.size() != g.num_j) throw InternalInconsistency("J-order is not acyclic");
  return ps;
}

GroupTable GroupTable::trivial() {
  GroupTable t;
  t.order = 1;
  t.table = {0};
  t.inverse = {0};
  return t;
}

GroupTable GroupTable::from_semigroup(const Semigroup& s) {
  auto id = s.identity();
  if (!id) throw NotAGroup("no identity");
  const std::size_t n = s.size();
  std::vector<Elem> order{*id};
  for (Elem x = 0; x < n; ++x)
    if (x != *id) order.push_back(x);
  std::vector<std::uint32_t> pos(n);
  for (std::uint32_t k = 0; k < n; ++k) pos[order[k]] = k;
  GroupTable t;
  t.order = n;
  t.table.resize(n * n);
  t.inverse.assign(n, kThetaIndex);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      std::uint32_t v = pos[s.mul(order[a], order[b])];
      t.table[a * n + b] = v;
      if (v == 0) t.inverse[a] = b;
    }
  for (std::uint32_t a = 0; a < n; ++a) {
    if (t.inverse[a] == kThetaIndex || t.mul(t.inverse[a], a) != 0) throw NotAGroup("element without inverse");
  }
  return t;
}

namespace {

std::vector<bool> generated_subgroup(const GroupTable& g, const std::vector<std::uint32_t>& gens) {
  std::vector<bool> in(g.order, false);
  std::vector<std::uint32_t> members{0};
  in[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::uint32_t x : gens) {
      std::uint32_t y = g.mul(members[i], x);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  }
  return in;
}

}  // namespace

std::optional<unsigned> group_nilpotency_class(const GroupTable& g) {
  for (std::size_t a = 0; a < g.order; ++a)
    if (g.inverse.size() != g.order || g.mul(std::uint32_t(a), g.inverse[a]) != 0) throw NotAGroup("bad group table");
  std::vector<bool> current(g.order, true);
  std::size_t current_size = g.order;
  unsigned cls = 0;
  while (current_size > 1) {
    std::set<std::uint32_t> commutators;
    for (std::uint32_t x = 0; x < g.order; ++x) {
      if (!current[x]) continue;
      for (std::uint32_t y = 0; y < g.order; ++y) {
        std::uint32_t c = g.mul(g.mul(g.inverse[x], g.inverse[y]), g.mul(x, y));
        commutators.insert(c);
      }
    }
    auto next = generated_subgroup(g, {commutators.begin(), commutators.end()});
    std::size_t next_size = std::count(next.begin(), next.end(), true);
    if (next_size == current_size) return std::nullopt;
    current = std::move(next);
    current_size = next_size;
    ++cls;
  }
  return cls;
}

ReesCoordinatization rees_coordinatize(const Semigroup& s, const GreensStructure& g, std::uint32_t j_class) {
  if (j_class >= g.num_j) throw BadParameter("no such J-class");
  const auto& members = g.j_members[j_class];
  Elem e = kNoElem;
  for (Elem x : members)
    if (s.is_idempotent(x)) {
      e = x;
      break;
    }
  if (e == kNoElem) throw NotRegular("J-class " + std::to_string(j_class) + " has no idempotent");

  ReesCoordinatization rc;
  rc.j_class = j_class;

  // rows = R-classes, cols = L-classes; e's first, then by least member
  std::vector<std::uint32_t> row_ids{g.r[e]}, col_ids{g.l[e]};
  for (Elem x : members) {
    if (std::find(row_ids.begin(), row_ids.end(), g.r[x]) == row_ids.end()) row_ids.push_back(g.r[x]);
    if (std::find(col_ids.begin(), col_ids.end(), g.l[x]) == col_ids.end()) col_ids.push_back(g.l[x]);
  }
  const std::size_t n = row_ids.size(), m = col_ids.size();
  rc.rows = n;
  rc.cols = m;

  auto find_in = [&](std::uint32_t r, std::uint32_t l) {
    for (Elem x : members)
      if (g.r[x] == r && g.l[x] == l) return x;
    return kNoElem;
  };

  // maximal subgroup H_e, identity first
  std::vector<Elem> grp{e};
  for (Elem x : members)
    if (x != e && g.r[x] == g.r[e] && g.l[x] == g.l[e]) grp.push_back(x);
  const std::size_t order = grp.size();
  std::unordered_map<Elem, std::uint32_t> gpos;
  for (std::uint32_t k = 0; k < order; ++k) gpos[grp[k]] = k;
  rc.group.order = order;
  rc.group.table.resize(order * order);
  rc.group.inverse.assign(order, kThetaIndex);
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b) {
      auto it = gpos.find(s.mul(grp[a], grp[b]));
      if (it == gpos.end()) throw InternalInconsistency("H-class of an idempotent is not closed");
      rc.group.table[a * order + b] = it->second;
      if (it->second == 0) rc.group.inverse[a] = b;
    }
  rc.group_elements = grp;

  std::vector<Elem> r(n), q(m);
  for (std::size_t i = 0; i < n; ++i) r[i] = find_in(row_ids[i], g.l[e]);
  for (std::size_t j = 0; j < m; ++j) q[j] = find_in(g.r[e], col_ids[j]);
  r[0] = q[0] = e;
  for (Elem x : r)
    if (x == kNoElem) throw InternalInconsistency("empty H-class in a regular J-class");
  for (Elem x : q)
    if (x == kNoElem) throw InternalInconsistency("empty H-class in a regular J-class");

  auto sandwich_entry = [&](Elem qj, Elem ri) -> std::uint32_t {
    auto it = gpos.find(s.mul(qj, ri));
    return it == gpos.end() ? kThetaIndex : it->second;
  };
  auto to_elem = [&](std::uint32_t k) { return grp[k]; };

  // monomial P means the principal factor is inverse
  std::vector<std::uint32_t> row_hits(n, 0), col_hits(m, 0), col_of_row(n, kThetaIndex);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sandwich_entry(q[j], r[i]) != kThetaIndex) {
        ++row_hits[i];
        ++col_hits[j];
        col_of_row[i] = std::uint32_t(j);
      }
  bool monomial = n == m;
  for (auto c : row_hits) monomial = monomial && c == 1;
  for (auto c : col_hits) monomial = monomial && c == 1;
  rc.inverse_square = monomial;

  if (monomial) {
    std::vector<Elem> q2(n);
    std::vector<std::uint32_t> cols2(n);
    for (std::size_t i = 0; i < n; ++i) {
      q2[i] = q[col_of_row[i]];
      cols2[i] = col_ids[col_of_row[i]];
    }
    q = q2;
    col_ids = cols2;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t pii = sandwich_entry(q[i], r[i]);
      q[i] = s.mul(to_elem(rc.group.inverse[pii]), q[i]);
    }
  } else {
    for (std::size_t i = 1; i < n; ++i) {
      std::uint32_t p1i = sandwich_entry(q[0], r[i]);
      if (p1i != kThetaIndex) r[i] = s.mul(r[i], to_elem(rc.group.inverse[p1i]));
    }
    for (std::size_t j = 1; j < m; ++j) {
      std::uint32_t pj1 = sandwich_entry(q[j], r[0]);
      if (pj1 != kThetaIndex) q[j] = s.mul(to_elem(rc.group.inverse[pj1]), q[j]);
    }
  }

  rc.row_reps = r;
  rc.col_reps = q;
  rc.sandwich.resize(m * n);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) rc.sandwich[j * n + i] = sandwich_entry(q[j], r[i]);

  rc.coord.assign(s.size(), ReesCoord{});
  rc.elements.assign(order * n * m, kNoElem);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < m; ++j)
      for (std::uint32_t k = 0; k < order; ++k) {
        Elem x = s.mul(s.mul(r[i], grp[k]), q[j]);
        if (g.j[x] != j_class || rc.coord[x].row != kThetaIndex)
          throw InternalInconsistency("Rees coordinates are not a bijection");
        rc.coord[x] = {k, i, j};
        rc.elements[(std::size_t(k) * n + i) * m + j] = x;
      }
  if (order * n * m != members.size()) throw InternalInconsistency("Rees coordinates do not cover the J-class");
  return rc;
}

}  // namespace nilbench
