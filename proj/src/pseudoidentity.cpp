#include <algorithm>
#include <string>

#include "nilbench/errors.hpp"
#include "nilbench/nilpotency.hpp"
#include "nilbench/omega.hpp"

namespace nilbench {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap, const char* what) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    v *= base;
    if (v > cap) throw BudgetExceeded(std::string(what) + " needs more than " + std::to_string(cap) + " evaluations");
  }
  return v;
}

}  // namespace

bool check_mn_star(const Semigroup& s, const Budget& budget) {
  const std::size_t n = s.size();
  checked_power(n, 4, budget.max_evaluations, "MN* check");
  OmegaData om = omega_data(s);
  // a[(y * n + z2) * n + z1] = (y z2)^(omega-1) y z1
  std::vector<Elem> a(n * n * n);
  for (Elem y = 0; y < n; ++y)
    for (Elem z2 = 0; z2 < n; ++z2) {
      Elem head = s.mul(om.omega_minus_one[s.mul(y, z2)], y);
      for (Elem z1 = 0; z1 < n; ++z1) a[(std::size_t(y) * n + z2) * n + z1] = s.mul(head, z1);
    }
  for (Elem y1 = 0; y1 < n; ++y1)
    for (Elem y2 = y1 + 1; y2 < n; ++y2)
      for (Elem z2 = 0; z2 < n; ++z2) {
        const Elem* a1 = &a[(std::size_t(y1) * n + z2) * n];
        const Elem* a2 = &a[(std::size_t(y2) * n + z2) * n];
        const Elem tail1 = om.omega[s.mul(y1, z2)];
        const Elem tail2 = om.omega[s.mul(y2, z2)];
        for (Elem z1 = 0; z1 < n; ++z1) {
          Elem d12 = s.mul(om.omega[s.mul(a1[z1], a2[z1])], tail1);
          Elem d21 = s.mul(om.omega[s.mul(a2[z1], a1[z1])], tail2);
          if (d12 != d21) return false;
        }
      }
  return true;
}

bool check_p2(const Semigroup& s) {
  GreensStructure g = greens_structure(s);
  const std::size_t n = s.size();
  auto in = [&](Elem x, std::uint32_t j) { return g.j[x] == j; };
  for (std::uint32_t j = 0; j < g.num_j; ++j) {
    const auto& members = g.j_members[j];
    for (Elem y1 : members)
      for (Elem y2 : members) {
        if (g.h[y1] == g.h[y2]) continue;
        bool z1_ok = false, z2_ok = false;
        for (Elem z = 0; z < n && !z1_ok; ++z)
          z1_ok = in(s.mul(s.mul(y1, z), y2), j) && in(s.mul(s.mul(y2, z), y1), j);
        if (!z1_ok) continue;
        for (Elem z = 0; z < n && !z2_ok; ++z)
          z2_ok = in(s.mul(s.mul(y1, z), y1), j) && in(s.mul(s.mul(y2, z), y2), j);
        if (z2_ok) return false;
      }
  }
  return true;
}

namespace {

// Every periodic point of y -> phi_t(y; z) is constant.
bool periodic_points_constant(const Semigroup& s, std::size_t t, const std::vector<Elem>& z) {
  const std::size_t n = s.size();
  std::size_t nodes = 1;
  for (std::size_t i = 0; i < t; ++i) nodes *= n;
  std::vector<std::uint32_t> next(nodes);
  std::vector<Elem> cur(t), tmp(t);
  for (std::size_t code = 0; code < nodes; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < t; ++i) {
      cur[i] = Elem(c % n);
      c /= n;
    }
    for (Elem zi : z) {
      for (std::size_t i = 0; i < t; ++i) {
        Elem acc = cur[i];
        for (std::size_t r = 1; r < t; ++r) acc = s.mul(s.mul(acc, zi), cur[(i + r) % t]);
        tmp[i] = acc;
      }
      std::swap(cur, tmp);
    }
    std::size_t out = 0;
    for (std::size_t i = t; i-- > 0;) out = out * n + cur[i];
    next[code] = std::uint32_t(out);
  }
  auto constant = [&](std::size_t code) {
    std::size_t first = code % n;
    for (std::size_t i = 1; i < t; ++i) {
      code /= n;
      if (code % n != first) return false;
    }
    return true;
  };
  // 0 unvisited, 1 on current path, 2 done
  std::vector<std::uint8_t> state(nodes, 0);
  std::vector<std::uint32_t> path;
  for (std::size_t start = 0; start < nodes; ++start) {
    if (state[start]) continue;
    path.clear();
    std::size_t k = start;
    while (state[k] == 0) {
      state[k] = 1;
      path.push_back(std::uint32_t(k));
      k = next[k];
    }
    if (state[k] == 1) {
      std::size_t c = k;
      do {
        if (!constant(c)) return false;
        c = next[c];
      } while (c != k);
    }
    for (auto p : path) state[p] = 2;
  }
  return true;
}

}  // namespace

bool check_smn_circ_t(const Semigroup& s, std::size_t t, const Budget& budget, const RotationWitness* hint) {
  if (t < 2) throw BadParameter("t must be at least 2");
  const std::size_t n = s.size();
  if (hint && hint->t == t && hint->v.size() == t) {
    checked_power(n, t, budget.max_nodes, "SMN-circ check");
    if (!periodic_points_constant(s, t, hint->v)) return false;
  }
  checked_power(n, 2 * t, budget.max_evaluations, "SMN-circ check");
  std::vector<Elem> z(t, 0);
  for (;;) {
    if (!periodic_points_constant(s, t, z)) return false;
    std::size_t i = 0;
    while (i < t && ++z[i] == n) z[i++] = 0;
    if (i == t) break;
  }
  return true;
}

}  // namespace nilbench
