#include "nilbench/omega.hpp"

#include <map>

#include "nilbench/errors.hpp"

namespace nilbench {

OmegaPower omega_power(const Semigroup& s, Elem x) {
  std::vector<std::uint32_t> first(s.size(), 0xFFFFFFFFu);
  // powers[i] = x^(i+1)
  std::vector<Elem> powers{x};
  first[x] = 0;
  for (;;) {
    Elem next = s.mul(powers.back(), x);
    if (first[next] != 0xFFFFFFFFu) {
      const std::size_t index = first[next] + 1;
      const std::size_t period = powers.size() + 1 - index;
      // least multiple of the period with x^(k-1) already on the cycle
      std::size_t k = period;
      while (k < index + 1) k += period;
      while (powers.size() < k) powers.push_back(s.mul(powers.back(), x));
      return {powers[k - 1], powers[k - 2]};
    }
    first[next] = std::uint32_t(powers.size());
    powers.push_back(next);
  }
}

OmegaData omega_data(const Semigroup& s) {
  OmegaData d;
  const std::size_t n = s.size();
  d.omega.resize(n);
  d.omega_minus_one.resize(n);
  d.index.resize(n);
  d.period.resize(n);
  std::vector<std::uint32_t> first(n, 0xFFFFFFFFu);
  std::vector<Elem> powers;
  for (Elem x = 0; x < n; ++x) {
    powers.assign(1, x);
    first[x] = 0;
    for (;;) {
      Elem next = s.mul(powers.back(), x);
      if (first[next] != 0xFFFFFFFFu) {
        const std::size_t index = first[next] + 1;
        const std::size_t period = powers.size() + 1 - index;
        std::size_t k = period;
        while (k < index + 1) k += period;
        while (powers.size() < k) powers.push_back(s.mul(powers.back(), x));
        d.omega[x] = powers[k - 1];
        d.omega_minus_one[x] = powers[k - 2];
        d.index[x] = std::uint32_t(index);
        d.period[x] = std::uint32_t(period);
        break;
      }
      first[next] = std::uint32_t(powers.size());
      powers.push_back(next);
    }
    for (Elem p : powers) first[p] = 0xFFFFFFFFu;
  }
  return d;
}

Substitution lambda_substitution(std::size_t t) {
  if (t < 2) throw BadParameter("t must be at least 2");
  using Word = std::vector<std::uint32_t>;
  std::vector<Word> cur(t);
  for (std::size_t i = 0; i < t; ++i) cur[i] = {std::uint32_t(i)};
  for (std::size_t step = 0; step < t; ++step) {
    const std::uint32_t z = std::uint32_t(t + step);
    std::vector<Word> next(t);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t r = 0; r < t; ++r) {
        if (r) next[i].push_back(z);
        const Word& part = cur[(i + r) % t];
        next[i].insert(next[i].end(), part.begin(), part.end());
      }
    }
    cur = std::move(next);
  }
  return {t, std::move(cur)};
}

std::vector<Elem> apply_substitution(const Semigroup& s, const Substitution& f, const std::vector<Elem>& y,
                                     const std::vector<Elem>& z) {
  std::vector<Elem> out(f.t);
  for (std::size_t i = 0; i < f.t; ++i) {
    const auto& w = f.updates[i];
    auto value = [&](std::uint32_t v) { return v < f.t ? y[v] : z[v - f.t]; };
    Elem acc = value(w[0]);
    for (std::size_t k = 1; k < w.size(); ++k) acc = s.mul(acc, value(w[k]));
    out[i] = acc;
  }
  return out;
}

std::vector<Elem> omega_iterate(const Semigroup& s, const Substitution& f, const std::vector<Elem>& y0,
                                const std::vector<Elem>& z, Lasso* lasso, std::uint64_t* evaluations) {
  for (const auto& w : f.updates) {
    if (w.empty()) throw BadParameter("empty update word");
    for (std::uint32_t v : w)
      if (v >= f.t + z.size()) throw BadParameter("undeclared variable in update");
  }
  std::map<std::vector<Elem>, std::size_t> seen;
  std::vector<std::vector<Elem>> orbit{y0};
  seen.emplace(y0, 0);
  for (;;) {
    auto next = apply_substitution(s, f, orbit.back(), z);
    if (evaluations) ++*evaluations;
    auto it = seen.find(next);
    if (it != seen.end()) {
      const std::size_t mu = it->second;
      const std::size_t rho = orbit.size() - mu;
      std::size_t k = (mu + rho - 1) / rho * rho;
      if (lasso) *lasso = {mu, rho};
      return orbit[k];
    }
    seen.emplace(next, orbit.size());
    orbit.push_back(std::move(next));
  }
}

}  // namespace nilbench
