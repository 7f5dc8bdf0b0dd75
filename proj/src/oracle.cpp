#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "nilbench/errors.hpp"
#include "nilbench/kernels.hpp"
#include "nilbench/nilpotency.hpp"

namespace nilbench {

Budget Budget::from_env() {
  Budget b;
  const char* env = std::getenv("NILBENCH_BUDGET");
  if (!env || !*env) return b;
  std::string text(env);
  try {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
      b.max_nodes = b.max_evaluations = std::stoull(text);
    } else {
      b.max_nodes = std::stoull(text.substr(0, colon));
      b.max_evaluations = std::stoull(text.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw BadParameter("NILBENCH_BUDGET must be N or NODES:EVALS");
  }
  return b;
}

namespace {

class Bitset {
public:
  explicit Bitset(std::uint64_t n) : words_((n + 63) / 64, 0) {}
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool test(std::uint64_t i) const { return words_[i >> 6] >> (i & 63) & 1; }
  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  template <class F>
  void for_each(F f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(std::uint64_t(k) * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }
  void fill(std::uint64_t n) {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t(0));
    if (n % 64) words_.back() = (std::uint64_t(1) << (n % 64)) - 1;
  }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

private:
  std::vector<std::uint64_t> words_;
};

// One lambda-step from a tuple for every z at once, structure of arrays.
class StepKernel {
public:
  StepKernel(const Semigroup& s, std::size_t t, bool with_identity)
      : s_(s), n_(s.size()), t_(t), zc_(n_ + (with_identity ? 1 : 0)), u_(t * zc_), acc_(zc_), tmp_(zc_),
        codes_(zc_) {
    pow_.resize(t);
    pow_[0] = 1;
    for (std::size_t i = 1; i < t; ++i) pow_[i] = pow_[i - 1] * n_;
  }

  std::size_t z_count() const { return zc_; }
  std::uint64_t encode(const std::vector<Elem>& x) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < t_; ++i) c += x[i] * pow_[i];
    return c;
  }
  void decode(std::uint64_t code, std::vector<Elem>& x) const {
    x.resize(t_);
    for (std::size_t i = 0; i < t_; ++i) {
      x[i] = Elem(code % n_);
      code /= n_;
    }
  }
  bool constant(std::uint64_t code) const {
    Elem first = Elem(code % n_);
    for (std::size_t i = 1; i < t_; ++i) {
      code /= n_;
      if (code % n_ != first) return false;
    }
    return true;
  }
  Elem z_elem(std::size_t z) const { return z < n_ ? Elem(z) : kNoElem; }

  // codes()[z] = encoded lambda-step of x with z
  const std::vector<std::uint64_t>& step(const std::vector<Elem>& x) {
    const auto& table = s_.table();
    for (std::size_t i = 0; i < t_; ++i) {
      std::uint32_t* u = &u_[i * zc_];
      std::copy_n(&table[std::size_t(x[i]) * n_], n_, u);
      if (zc_ > n_) u[n_] = x[i];
    }
    std::fill(codes_.begin(), codes_.end(), 0);
    for (std::size_t i = 0; i < t_; ++i) {
      const std::uint32_t* acc = &u_[i * zc_];
      for (std::size_t r = 1; r + 1 < t_; ++r) {
        kernels::gather_mul(table.data(), n_, acc, &u_[((i + r) % t_) * zc_], tmp_.data(), zc_);
        std::swap(acc_, tmp_);
        acc = acc_.data();
      }
      kernels::gather_mul_const(table.data(), n_, acc, x[(i + t_ - 1) % t_], tmp_.data(), zc_);
      for (std::size_t z = 0; z < zc_; ++z) codes_[z] += tmp_[z] * pow_[i];
    }
    return codes_;
  }

private:
  const Semigroup& s_;
  std::size_t n_, t_, zc_;
  std::vector<std::uint32_t> u_, acc_, tmp_;
  std::vector<std::uint64_t> codes_;
  std::vector<std::uint64_t> pow_;
};

}  // namespace

OracleRun oracle_run(const Semigroup& s, std::size_t t, const Budget& budget, bool with_identity) {
  if (t < 2) throw BadParameter("t must be at least 2");
  const std::uint64_t n = s.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < t; ++i) {
    total *= n;
    if (total > budget.max_nodes)
      throw BudgetExceeded("tuple graph has more than " + std::to_string(budget.max_nodes) + " nodes (|S| = " +
                           std::to_string(n) + ", t = " + std::to_string(t) + ")");
  }
  OracleRun run;
  run.nodes = total;
  StepKernel kernel(s, t, with_identity);
  Bitset cur(total), next(total);
  cur.fill(total);
  std::uint64_t cur_count = total;
  std::vector<Elem> x;
  for (unsigned k = 0;; ++k) {
    bool all_constant = true;
    cur.for_each([&](std::uint64_t c) {
      if (all_constant && !kernel.constant(c)) all_constant = false;
    });
    if (all_constant) {
      run.nil_class = std::max(k, 1u);
      return run;
    }
    next.clear();
    run.evaluations += cur_count * kernel.z_count();
    if (run.evaluations > budget.max_evaluations)
      throw BudgetExceeded("tuple graph iteration exceeded " + std::to_string(budget.max_evaluations) +
                           " evaluations");
    cur.for_each([&](std::uint64_t c) {
      kernel.decode(c, x);
      for (std::uint64_t d : kernel.step(x)) next.set(d);
    });
    std::uint64_t next_count = next.count();
    std::swap(cur, next);
    if (next_count == cur_count) break;
    cur_count = next_count;
  }

  // cur is the stable set; every non-constant member has a non-constant predecessor in it
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, Elem>> pred;
  std::uint64_t start = 0;
  bool have_start = false;
  cur.for_each([&](std::uint64_t c) {
    if (kernel.constant(c)) return;
    if (!have_start) {
      start = c;
      have_start = true;
    }
    kernel.decode(c, x);
    const auto& codes = kernel.step(x);
    for (std::size_t z = 0; z < codes.size(); ++z) {
      std::uint64_t d = codes[z];
      if (!kernel.constant(d) && cur.test(d)) pred.try_emplace(d, c, kernel.z_elem(z));
    }
  });
  if (!have_start) throw InternalInconsistency("stable tuple set has no non-constant tuple");
  std::unordered_set<std::uint64_t> visited;
  std::uint64_t node = start;
  while (visited.insert(node).second) {
    auto it = pred.find(node);
    if (it == pred.end()) throw InternalInconsistency("stable tuple without predecessor");
    node = it->second.first;
  }
  // node is on a cycle; walk it backwards once
  std::vector<Elem> back_words;
  std::uint64_t walk = node;
  do {
    const auto& [p, z] = pred.at(walk);
    back_words.push_back(z);
    walk = p;
  } while (walk != node);
  TupleCycleWitness w;
  w.t = t;
  kernel.decode(node, w.tuple);
  w.words.assign(back_words.rbegin(), back_words.rend());
  {
    std::vector<Elem> sorted = w.tuple;
    std::sort(sorted.begin(), sorted.end());
    w.distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }
  run.witness = std::move(w);
  return run;
}

std::optional<TupleCycleWitness> oracle_not_nilpotent(const Semigroup& s, Mode mode, std::size_t t_max,
                                                      const Budget& budget) {
  const std::size_t top = mode == Mode::MN ? 2 : t_max;
  for (std::size_t t = 2; t <= top; ++t) {
    OracleRun run = oracle_run(s, t, budget);
    if (run.witness) return run.witness;
  }
  return std::nullopt;
}

NilpotencyClasses nilpotency_classes(const Semigroup& s, std::size_t t_max, const Budget& budget) {
  NilpotencyClasses out;
  unsigned strong = 0;
  bool infinite = false;
  for (std::size_t t = 2; t <= std::max<std::size_t>(t_max, 2); ++t) {
    OracleRun run = oracle_run(s, t, budget);
    if (t == 2) out.mn_class = run.nil_class;
    if (!run.nil_class) {
      infinite = true;
      break;
    }
    strong = std::max(strong, *run.nil_class);
  }
  if (!infinite) out.smn_class = strong;
  return out;
}

}  // namespace nilbench
