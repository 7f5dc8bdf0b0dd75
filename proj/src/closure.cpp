#include "nilbench/closure.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>

#include "nilbench/errors.hpp"

namespace nilbench {

using boost::multiprecision::cpp_int;
using Vec = std::vector<std::int64_t>;

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

std::int64_t mod(std::int64_t x, std::uint64_t p) {
  std::int64_t r = x % std::int64_t(p);
  return r < 0 ? r + std::int64_t(p) : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::uint64_t p) {
  return std::int64_t((__int128)a * b % (__int128)p);
}

std::int64_t inv_mod(std::int64_t a, std::uint64_t p) {
  // p prime: a^(p-2)
  std::int64_t result = 1, base = mod(a, p);
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return result;
}

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(std::vector<Vec>& rows, std::size_t cols, std::uint64_t p) {
  for (auto& r : rows)
    for (auto& x : r) x = mod(x, p);
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    std::size_t sel = top;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[top], rows[sel]);
    std::int64_t inv = inv_mod(rows[top][c], p);
    for (auto& x : rows[top]) x = mulmod(x, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == top || rows[r][c] == 0) continue;
      std::int64_t f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = mod(rows[r][k] - mulmod(f, rows[top][k], p), p);
    }
    pivots.push_back(c);
    ++top;
  }
  rows.resize(top);
  return pivots;
}

Vec reduce(Vec v, const std::vector<Vec>& rref, const std::vector<std::size_t>& pivots, std::uint64_t p) {
  for (auto& x : v) x = mod(x, p);
  for (std::size_t r = 0; r < rref.size(); ++r) {
    std::int64_t f = v[pivots[r]];
    if (!f) continue;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = mod(v[k] - mulmod(f, rref[r][k], p), p);
  }
  return v;
}

struct Translation {
  std::vector<std::uint32_t> phi;  // vertex of h -> vertex of the folded union
  std::vector<Vec> pot;            // abelianized image of u_r
  std::vector<Vec> rows;
  std::size_t cols = 0;
  InverseAutomaton united;
};

Translation translate(const InverseAutomaton& h, const InverseAutomaton& b) {
  const std::uint32_t nh = std::uint32_t(h.size());
  std::vector<Edge> edges;
  for (std::size_t l = 0; l < h.letters(); ++l)
    for (auto [p, q] : h.edges(l)) edges.push_back({p, l, q});
  for (std::size_t l = 0; l < b.letters(); ++l)
    for (auto [p, q] : b.edges(l)) edges.push_back({nh + p, l, nh + q});
  FoldResult u = fold_graph(nh + b.size(), h.letters(), edges, h.base(), {{h.base(), nh + b.base()}});
  Translation t;
  t.phi.assign(u.image.begin(), u.image.begin() + nh);
  t.united = std::move(u.automaton);

  SpanningTree ut = spanning_tree(t.united);
  std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> column;
  for (std::uint32_t p = 0; p < t.united.size(); ++p)
    for (std::size_t l = 0; l < t.united.letters(); ++l) {
      std::uint32_t q = t.united.out(p, l);
      if (q != kNoState && !ut.is_tree_edge(p, l, q)) column.emplace(std::make_pair(p, l), column.size());
    }
  t.cols = column.size();
  auto chi = [&](std::uint32_t p, std::size_t l) -> long {
    auto it = column.find({p, l});
    return it == column.end() ? -1 : long(it->second);
  };

  SpanningTree ht = spanning_tree(h);
  t.pot.assign(nh, Vec(t.cols, 0));
  for (std::uint32_t w : ht.order) {
    auto [v, letter] = ht.parent[w];
    if (v == kNoState) continue;
    t.pot[w] = t.pot[v];
    std::size_t l = std::size_t(std::abs(letter) - 1);
    if (letter > 0) {
      if (long c = chi(t.phi[v], l); c >= 0) t.pot[w][c] += 1;
    } else {
      if (long c = chi(t.phi[w], l); c >= 0) t.pot[w][c] -= 1;
    }
  }
  for (std::uint32_t p = 0; p < nh; ++p)
    for (std::size_t l = 0; l < h.letters(); ++l) {
      std::uint32_t q = h.out(p, l);
      if (q == kNoState || ht.is_tree_edge(p, l, q)) continue;
      Vec row = t.pot[p];
      if (long c = chi(t.phi[p], l); c >= 0) row[c] += 1;
      for (std::size_t k = 0; k < t.cols; ++k) row[k] -= t.pot[q][k];
      t.rows.push_back(std::move(row));
    }
  return t;
}

InverseAutomaton bouquet(const InverseAutomaton& h) {
  InverseAutomaton b(1, h.letters());
  for (std::size_t l = 0; l < h.letters(); ++l)
    if (!h.edges(l).empty()) b.add_edge(0, l, 0);
  return b;
}

std::vector<std::uint32_t> number_classes(const std::vector<std::uint32_t>& raw, std::size_t* count) {
  std::map<std::uint32_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out;
  for (auto r : raw) out.push_back(ids.emplace(r, std::uint32_t(ids.size())).first->second);
  *count = ids.size();
  return out;
}

}  // namespace

std::size_t rank_mod_p(std::vector<Vec> rows, std::size_t cols, std::uint64_t p) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  return echelon(rows, cols, p).size();
}

IntegerInvariants integer_invariants(const std::vector<Vec>& rows_in, std::size_t cols) {
  std::vector<std::vector<cpp_int>> m(rows_in.size(), std::vector<cpp_int>(cols));
  for (std::size_t r = 0; r < rows_in.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = rows_in[r][c];
  const std::size_t R = m.size();
  std::vector<cpp_int> diag;
  for (std::size_t t = 0; t < std::min(R, cols); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block to (t, t)
      std::size_t br = R, bc = cols;
      for (std::size_t r = t; r < R; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (m[r][c] != 0 && (br == R || abs(m[r][c]) < abs(m[br][bc]))) {
            br = r;
            bc = c;
          }
      if (br == R) break;
      std::swap(m[t], m[br]);
      for (auto& row : m) std::swap(row[t], row[bc]);
      bool clean = true;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (m[r][t] == 0) continue;
        cpp_int q = m[r][t] / m[t][t];
        for (std::size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
        if (m[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m[t][c] == 0) continue;
        cpp_int q = m[t][c] / m[t][t];
        for (std::size_t r = t; r < R; ++r) m[r][c] -= q * m[r][t];
        if (m[t][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (t >= R || m[t][t] == 0) break;
    diag.push_back(abs(m[t][t]));
  }
  IntegerInvariants inv;
  inv.rational_rank = diag.size();
  std::set<std::uint64_t> primes;
  for (const cpp_int& d0 : diag) {
    inv.elementary_divisors.push_back(d0.str());
    cpp_int d = d0;
    for (std::uint64_t q = 2; q < 1000000 && d > 1; ++q) {
      if (d % q != 0) continue;
      primes.insert(q);
      while (d % q == 0) d /= q;
    }
    if (d > 1) {
      if (d < cpp_int(1000000000000ULL)) primes.insert(d.convert_to<std::uint64_t>());
      else inv.primes_complete = false;
    }
  }
  inv.primes.assign(primes.begin(), primes.end());
  return inv;
}

ClosureResult p_closure(const InverseAutomaton& h, std::uint64_t p) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  ClosureResult res;
  InverseAutomaton b = bouquet(h);
  std::size_t previous = 0;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > 256) throw InternalInconsistency("p-closure did not terminate");
    Translation t = translate(h, b);
    std::size_t classes = 0;
    std::vector<std::uint32_t> cong = number_classes(t.phi, &classes);
    if (iter > 0 && classes <= previous) throw InternalInconsistency("p-closure iteration did not refine");
    previous = classes;
    std::vector<Vec> rref = t.rows;
    std::vector<std::size_t> pivots = echelon(rref, t.cols, p);
    res.steps.push_back({p, t.rows, t.cols, pivots.size()});
    if (pivots.size() == t.cols) {
      res.automaton = canonical(trim(t.united).automaton).automaton;
      res.congruence = std::move(cong);
      res.classes = classes;
      return res;
    }
    std::map<std::pair<std::uint32_t, Vec>, std::uint32_t> keys;
    std::vector<std::uint32_t> cls(h.size());
    for (std::uint32_t r = 0; r < h.size(); ++r) {
      auto key = std::make_pair(t.phi[r], reduce(t.pot[r], rref, pivots, p));
      cls[r] = keys.emplace(std::move(key), std::uint32_t(keys.size())).first->second;
    }
    std::vector<Edge> edges;
    for (std::size_t l = 0; l < h.letters(); ++l)
      for (auto [x, y] : h.edges(l)) edges.push_back({cls[x], l, cls[y]});
    b = fold_graph(keys.size(), h.letters(), edges, cls[h.base()]).automaton;
  }
}

NilClosure nil_closure(const InverseAutomaton& h, const std::vector<std::uint64_t>& primes, std::uint64_t floor) {
  NilClosure out;
  Translation t0 = translate(h, bouquet(h));
  out.columns = t0.cols;
  out.invariants = integer_invariants(t0.rows, t0.cols);
  std::set<std::uint64_t> use;
  if (primes.empty()) {
    use.insert(out.invariants.primes.begin(), out.invariants.primes.end());
    for (std::uint64_t q = 2; q <= floor; ++q)
      if (is_prime(q)) use.insert(q);
  } else {
    for (auto q : primes) {
      if (!is_prime(q)) throw NotPrime(std::to_string(q) + " is not prime");
      use.insert(q);
    }
  }
  out.primes.assign(use.begin(), use.end());
  bool covered = std::includes(use.begin(), use.end(), out.invariants.primes.begin(), out.invariants.primes.end());
  out.exact = out.invariants.rational_rank == t0.cols && out.invariants.primes_complete && covered;

  std::vector<ClosureResult> per;
  for (auto q : out.primes) {
    ClosureResult c = p_closure(h, q);
    if (c.classes > 1 || c.automaton.size() > 1) per.push_back(std::move(c));
  }
  // congruence: common refinement
  std::map<std::vector<std::uint32_t>, std::uint32_t> keys;
  out.congruence.resize(h.size());
  for (std::uint32_t v = 0; v < h.size(); ++v) {
    std::vector<std::uint32_t> key;
    for (const auto& c : per) key.push_back(c.congruence[v]);
    out.congruence[v] = keys.emplace(std::move(key), std::uint32_t(keys.size())).first->second;
  }
  out.classes = keys.size();

  // automaton: core of the product of the per-prime closures
  if (per.empty()) {
    out.automaton = canonical(trim(bouquet(h)).automaton).automaton;
    return out;
  }
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> states;
  std::vector<Edge> edges;
  std::vector<std::uint32_t> start;
  for (const auto& c : per) start.push_back(c.automaton.base());
  ids.emplace(start, 0);
  states.push_back(start);
  for (std::size_t k = 0; k < states.size(); ++k) {
    for (std::size_t l = 0; l < h.letters(); ++l)
      for (int sign : {1, -1}) {
        std::vector<std::uint32_t> next(per.size());
        bool ok = true;
        for (std::size_t i = 0; i < per.size() && ok; ++i) {
          const auto& a = per[i].automaton;
          next[i] = l < a.letters() ? (sign > 0 ? a.out(states[k][i], l) : a.in(states[k][i], l)) : kNoState;
          ok = next[i] != kNoState;
        }
        if (!ok) continue;
        auto [it, fresh] = ids.emplace(next, std::uint32_t(states.size()));
        if (fresh) states.push_back(next);
        if (sign > 0) edges.push_back({std::uint32_t(k), l, it->second});
      }
  }
  FoldResult prod = fold_graph(states.size(), h.letters(), edges, 0);
  out.automaton = canonical(trim(prod.automaton).automaton).automaton;
  return out;
}

const char* extendible_name(Extendible e) {
  switch (e) {
    case Extendible::Yes: return "yes";
    case Extendible::No: return "no";
    case Extendible::UnknownAtBound: return "unknown_at_bound";
  }
  return "unknown_at_bound";
}

Extendibility is_gnil_extendible(const InverseAutomaton& h, const std::vector<std::uint64_t>& primes,
                                 std::uint64_t floor) {
  Extendibility e;
  e.closure = nil_closure(h, primes, floor);
  if (e.closure.classes == h.size()) {
    e.verdict = Extendible::Yes;
    return e;
  }
  for (std::uint32_t a = 0; a < h.size() && !e.witness; ++a)
    for (std::uint32_t b = a + 1; b < h.size(); ++b)
      if (e.closure.congruence[a] == e.closure.congruence[b]) {
        e.witness = std::make_pair(a, b);
        break;
      }
  e.verdict = e.closure.exact ? Extendible::No : Extendible::UnknownAtBound;
  return e;
}

}  // namespace nilbench
