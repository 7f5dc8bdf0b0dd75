#include <algorithm>
#include <map>
#include <unordered_map>

#include "nilbench/errors.hpp"
#include "nilbench/lm_representation.hpp"
#include "nilbench/nilpotency.hpp"

namespace nilbench {

namespace {

TupleCycleWitness block_cycle(const Semigroup& s, std::vector<Elem> start, const std::vector<Elem>& block) {
  std::map<std::vector<Elem>, std::size_t> seen;
  std::vector<std::vector<Elem>> starts{start};
  seen.emplace(start, 0);
  for (;;) {
    std::vector<Elem> cur = starts.back();
    for (Elem z : block) cur = lambda_step(s, cur, z);
    auto it = seen.find(cur);
    if (it != seen.end()) {
      TupleCycleWitness w;
      w.t = start.size();
      w.tuple = starts[it->second];
      for (std::size_t k = it->second; k < starts.size(); ++k) w.words.insert(w.words.end(), block.begin(), block.end());
      std::vector<Elem> sorted = w.tuple;
      std::sort(sorted.begin(), sorted.end());
      w.distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      return w;
    }
    seen.emplace(cur, starts.size());
    starts.push_back(std::move(cur));
  }
}

std::optional<TupleCycleWitness> non_monomial_witness(const Semigroup& s, const ReesCoordinatization& rc) {
  for (std::uint32_t j = 0; j < rc.cols; ++j) {
    std::vector<std::uint32_t> hits;
    for (std::uint32_t i = 0; i < rc.rows; ++i)
      if (rc.p(j, i) != kThetaIndex) hits.push_back(i);
    if (hits.size() >= 2) {
      Elem x = rc.element(0, hits[0], j), y = rc.element(0, hits[1], j);
      return block_cycle(s, {x, y}, {x});
    }
  }
  for (std::uint32_t i = 0; i < rc.rows; ++i) {
    std::vector<std::uint32_t> hits;
    for (std::uint32_t j = 0; j < rc.cols; ++j)
      if (rc.p(j, i) != kThetaIndex) hits.push_back(j);
    if (hits.size() >= 2) {
      Elem x = rc.element(0, i, hits[0]), y = rc.element(0, i, hits[1]);
      return block_cycle(s, {x, y}, {x});
    }
  }
  return std::nullopt;
}

std::optional<TupleCycleWitness> group_witness(const Semigroup& s, const ReesCoordinatization& rc) {
  Semigroup grp = subsemigroup(s, rc.group_elements);
  Budget unlimited{~std::uint64_t(0), ~std::uint64_t(0)};
  OracleRun run = oracle_run(grp, 2, unlimited);
  if (!run.witness) return std::nullopt;
  TupleCycleWitness w = *run.witness;
  for (Elem& e : w.tuple) e = rc.group_elements[e];
  for (Elem& e : w.words)
    if (e != kNoElem) e = rc.group_elements[e];
  return w;
}

std::vector<std::vector<std::uint32_t>> cycles_of(const PartialMap& h) {
  const std::size_t n = h.degree();
  std::vector<int> state(n, 0);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start]) continue;
    std::vector<std::uint32_t> path;
    std::size_t k = start;
    while (k != PartialMap::kTheta && state[k] == 0) {
      state[k] = 1;
      path.push_back(std::uint32_t(k));
      k = h[k];
    }
    if (k != PartialMap::kTheta && state[k] == 1) {
      auto pos = std::find(path.begin(), path.end(), std::uint32_t(k));
      std::vector<std::uint32_t> cyc(pos, path.end());
      if (cyc.size() >= 2) out.push_back(std::move(cyc));
    }
    for (auto p : path) state[p] = 2;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::optional<RotationWitness> search_layer(const LayerRep& rep, std::size_t t_limit) {
  const std::size_t size = rep.gamma.size();
  std::vector<Elem> reps;
  std::unordered_map<PartialMap, Elem, PartialMapHash> seen;
  for (Elem x = 0; x < size; ++x)
    if (rep.gamma[x].rank() >= 2 && seen.emplace(rep.gamma[x], x).second) reps.push_back(x);

  for (Elem u : reps) {
    const PartialMap inv_u = rep.gamma[u].inverse();
    for (Elem v : reps) {
      if (v == u) continue;
      PartialMap h = inv_u * rep.gamma[v];
      for (const auto& alpha : cycles_of(h)) {
        const std::size_t t = alpha.size();
        if (t > t_limit) break;
        std::vector<std::uint32_t> beta(t);
        for (std::size_t j = 0; j < t; ++j) beta[j] = inv_u[alpha[j]];
        std::vector<Elem> middle;
        bool ok = true;
        for (std::size_t i = 2; i < t && ok; ++i) {
          ok = false;
          for (Elem w : reps) {
            const PartialMap& gw = rep.gamma[w];
            bool fits = true;
            for (std::size_t j = 0; j < t && fits; ++j) fits = gw[beta[j]] == alpha[(j + i) % t];
            if (fits) {
              middle.push_back(w);
              ok = true;
              break;
            }
          }
        }
        if (!ok) continue;
        RotationWitness rw;
        rw.layer = rep.layer;
        rw.j_class = rep.rees.j_class;
        rw.t = t;
        rw.alpha = alpha;
        rw.beta = beta;
        rw.v.push_back(v);
        rw.v.insert(rw.v.end(), middle.begin(), middle.end());
        rw.v.push_back(u);
        for (std::size_t j = 0; j < t; ++j) rw.y.push_back(rep.rees.element(0, alpha[j], beta[j]));
        return rw;
      }
    }
  }
  return std::nullopt;
}

MembershipResult structural_check(const Semigroup& s, const Budget& budget, Mode mode) {
  MembershipResult res;
  GreensStructure g = greens_structure(s);
  PrincipalSeries ps = principal_series(s, g);
  BgNilReport bg = check_bg_nil(s, g, ps);
  if (!bg.bg_nil) {
    res.verdict = Verdict::NotMember;
    res.reason = "not in BG_nil: " + bg.failure->detail;
    res.bg_failure = bg.failure;
    res.tuple = bg.failure->witness;
    return res;
  }
  std::size_t max_width = 2;
  for (std::size_t p = ps.length(); p-- > 0;) {
    if (!g.j_regular[ps.layers[p]]) continue;
    LayerRep rep = gamma_psi(s, g, ps, p);
    max_width = std::max(max_width, rep.width());
    if (!rep.injective) {
      res.oracle_fallback = true;
      try {
        std::size_t t_max = 2;
        if (mode == Mode::SMN)
          for (std::uint32_t j = 0; j < g.num_j; ++j)
            if (g.j_regular[j]) t_max = std::max(t_max, rees_coordinatize(s, g, j).rows);
        auto w = oracle_not_nilpotent(s, mode, t_max, budget);
        if (w) {
          res.verdict = Verdict::NotMember;
          res.reason = "tuple-graph cycle (Gamma not injective on layer " + std::to_string(p) + ")";
          res.tuple = w;
        } else {
          res.verdict = Verdict::Member;
          res.reason = "no tuple-graph cycle (Gamma not injective on layer " + std::to_string(p) + ")";
        }
      } catch (const BudgetExceeded& e) {
        res.verdict = Verdict::Unknown;
        res.reason = e.what();
      }
      return res;
    }
    auto rw = search_layer(rep, mode == Mode::MN ? 2 : rep.width());
    if (rw) {
      res.verdict = Verdict::NotMember;
      res.reason = "rotation pattern with t = " + std::to_string(rw->t) + " on layer " + std::to_string(p);
      res.tuple = rotation_to_tuple(s, *rw);
      res.rotation = std::move(rw);
      return res;
    }
  }
  res.verdict = Verdict::Member;
  res.reason = "no rotation pattern on any inverse layer";
  return res;
}

}  // namespace

BgNilReport check_bg_nil(const Semigroup& s, const GreensStructure& g, const PrincipalSeries& ps) {
  BgNilReport out;
  std::optional<BgNilFailure> group_failure;
  for (std::size_t p = ps.length(); p-- > 0;) {
    const std::uint32_t j = ps.layers[p];
    if (!g.j_regular[j]) continue;
    ReesCoordinatization rc = rees_coordinatize(s, g, j);
    if (!rc.inverse_square) {
      out.bg = out.bg_nil = false;
      if (!out.failure) {
        BgNilFailure f;
        f.kind = BgNilFailure::Kind::NotInverse;
        f.j_class = j;
        f.detail = "J-class " + std::to_string(j) + " is M^0(G," + std::to_string(rc.rows) + "," +
                   std::to_string(rc.cols) + ";P) with P not a permuted identity";
        f.witness = non_monomial_witness(s, rc);
        out.failure = std::move(f);
      }
      continue;
    }
    if (!group_nilpotency_class(rc.group) && !group_failure) {
      BgNilFailure f;
      f.kind = BgNilFailure::Kind::NotNilpotentGroup;
      f.j_class = j;
      f.detail = "maximal subgroup of order " + std::to_string(rc.group.order) + " in J-class " +
                 std::to_string(j) + " is not nilpotent";
      f.witness = group_witness(s, rc);
      group_failure = std::move(f);
    }
  }
  if (group_failure) {
    out.bg_nil = false;
    if (!out.failure) out.failure = std::move(group_failure);
  }
  return out;
}

MembershipResult check_mn(const Semigroup& s, const Budget& budget) { return structural_check(s, budget, Mode::MN); }
MembershipResult check_smn(const Semigroup& s, const Budget& budget) { return structural_check(s, budget, Mode::SMN); }

void validate_rees(const ReesDesc& d) {
  const std::size_t order = d.group.order;
  if (order == 0 || d.group.table.size() != order * order || d.group.inverse.size() != order)
    throw MalformedRees("group table has wrong shape");
  for (auto e : d.group.table)
    if (e >= order) throw MalformedRees("group table entry out of range");
  try {
    group_nilpotency_class(d.group);
  } catch (const NotAGroup& e) {
    throw MalformedRees(std::string("not a group: ") + e.what());
  }
  if (d.rows == 0 || d.cols == 0) throw MalformedRees("empty index set");
  if (d.sandwich.size() != d.rows * d.cols) throw MalformedRees("sandwich matrix has wrong shape");
  for (auto e : d.sandwich)
    if (e != kThetaIndex && e >= order) throw MalformedRees("sandwich entry out of range");
  for (std::size_t i = 0; i < d.rows; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < d.cols; ++j) any = any || d.sandwich[j * d.rows + i] != kThetaIndex;
    if (!any) throw MalformedRees("sandwich column for row " + std::to_string(i + 1) + " is all theta");
  }
  for (std::size_t j = 0; j < d.cols; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < d.rows; ++i) any = any || d.sandwich[j * d.rows + i] != kThetaIndex;
    if (!any) throw MalformedRees("sandwich row " + std::to_string(j + 1) + " is all theta");
  }
}

FastPathVerdict rees_fast_path(const ReesDesc& d) {
  validate_rees(d);
  FastPathVerdict v;
  bool monomial = d.rows == d.cols;
  for (std::size_t j = 0; j < d.cols && monomial; ++j) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < d.rows; ++i) c += d.sandwich[j * d.rows + i] != kThetaIndex;
    monomial = c == 1;
  }
  for (std::size_t i = 0; i < d.rows && monomial; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < d.cols; ++j) c += d.sandwich[j * d.rows + i] != kThetaIndex;
    monomial = c == 1;
  }
  bool nilpotent = group_nilpotency_class(d.group).has_value();
  if (!monomial) {
    v.mn = v.smn = Verdict::NotMember;
    v.reason = d.rows == d.cols ? "P is not a permuted identity (not inverse)" : "n != m (not inverse)";
  } else if (!nilpotent) {
    v.mn = v.smn = Verdict::NotMember;
    v.reason = "group is not nilpotent";
  } else {
    v.mn = v.smn = Verdict::Member;
    v.reason = "inverse with nilpotent group";
  }
  return v;
}

}  // namespace nilbench
