#include <algorithm>
#include <map>

#include "nilbench/errors.hpp"
#include "nilbench/nilpotency.hpp"

namespace nilbench {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::NotMember: return "not_member";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::vector<Elem> lambda_step(const Semigroup& s, const std::vector<Elem>& x, Elem z) {
  const std::size_t t = x.size();
  if (t < 2) throw BadParameter("lambda step needs t >= 2");
  auto times_z = [&](Elem a) { return z == kNoElem ? a : s.mul(a, z); };
  std::vector<Elem> out(t);
  for (std::size_t i = 0; i < t; ++i) {
    Elem acc = x[i];
    for (std::size_t r = 1; r < t; ++r) acc = s.mul(times_z(acc), x[(i + r) % t]);
    out[i] = acc;
  }
  return out;
}

std::vector<std::vector<Elem>> lambda_sequences(const Semigroup& s, const std::vector<Elem>& xs,
                                                const std::vector<Elem>& zs) {
  std::vector<std::vector<Elem>> rows{xs};
  for (Elem z : zs) rows.push_back(lambda_step(s, rows.back(), z));
  return rows;
}

bool replay(const Semigroup& s, const TupleCycleWitness& w) {
  if (w.t < 2 || w.tuple.size() != w.t || w.words.empty()) return false;
  for (Elem a : w.tuple)
    if (a >= s.size()) return false;
  for (Elem z : w.words)
    if (z != kNoElem && z >= s.size()) return false;
  if (std::all_of(w.tuple.begin(), w.tuple.end(), [&](Elem a) { return a == w.tuple[0]; })) return false;
  std::vector<Elem> cur = w.tuple;
  for (Elem z : w.words) cur = lambda_step(s, cur, z);
  return cur == w.tuple;
}

namespace {

bool pairwise_distinct(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

TupleCycleWitness rotation_to_tuple(const Semigroup& s, const RotationWitness& w) {
  if (w.t < 2 || w.y.size() != w.t || w.v.size() != w.t) throw BadParameter("malformed rotation witness");
  std::map<std::vector<Elem>, std::size_t> seen;
  std::vector<std::vector<Elem>> starts{w.y};
  seen.emplace(w.y, 0);
  for (;;) {
    std::vector<Elem> cur = starts.back();
    for (Elem z : w.v) cur = lambda_step(s, cur, z);
    auto it = seen.find(cur);
    if (it != seen.end()) {
      TupleCycleWitness out;
      out.t = w.t;
      out.tuple = starts[it->second];
      const std::size_t rho = starts.size() - it->second;
      for (std::size_t k = 0; k < rho; ++k) out.words.insert(out.words.end(), w.v.begin(), w.v.end());
      out.distinct = pairwise_distinct(out.tuple);
      return out;
    }
    seen.emplace(cur, starts.size());
    starts.push_back(std::move(cur));
  }
}

bool replay(const Semigroup& s, const RotationWitness& w) {
  if (w.t < 2 || w.y.size() != w.t || w.v.size() != w.t || w.alpha.size() != w.t) return false;
  for (Elem e : w.y)
    if (e >= s.size()) return false;
  for (Elem e : w.v)
    if (e >= s.size()) return false;
  if (!pairwise_distinct(w.y)) return false;
  TupleCycleWitness tw = rotation_to_tuple(s, w);
  return tw.distinct && replay(s, tw);
}

}  // namespace nilbench
