#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilbench/green.hpp"
#include "nilbench/semigroup.hpp"

namespace nilbench {

enum class Verdict { Member, NotMember, Unknown };
const char* verdict_name(Verdict v);

enum class Mode { MN, SMN };

// NILBENCH_BUDGET="nodes:evaluations" or a single number for both.
struct Budget {
  std::uint64_t max_nodes = 5'000'000;
  std::uint64_t max_evaluations = 100'000'000;
  static Budget from_env();
};

// z == kNoElem stands for the identity of S^1.
std::vector<Elem> lambda_step(const Semigroup& s, const std::vector<Elem>& x, Elem z);
// Rows k = 0..|zs|; for t = 2 the columns are (lambda_k, rho_k).
std::vector<std::vector<Elem>> lambda_sequences(const Semigroup& s, const std::vector<Elem>& xs,
                                                const std::vector<Elem>& zs);

struct TupleCycleWitness {
  std::size_t t = 0;
  std::vector<Elem> tuple;
  std::vector<Elem> words;  // w_1..w_m
  bool distinct = false;    // tuple entries pairwise distinct
};

// a_i = lambda_{m,i}(a; w) with a non-constant; uses only the multiplication table.
bool replay(const Semigroup& s, const TupleCycleWitness& w);

struct RotationWitness {
  std::size_t layer = 0;
  std::uint32_t j_class = 0;
  std::size_t t = 0;
  std::vector<std::uint32_t> alpha;  // columns, 0-based
  std::vector<std::uint32_t> beta;
  std::vector<Elem> v;  // v[i-1] sends beta_j to alpha_{j+i mod t}; v[t-1] is the shift by 0
  std::vector<Elem> y;  // (1_G; alpha_j, beta_j)
};

// Iterates t-step blocks z = v_1..v_t from y until a block start repeats.
TupleCycleWitness rotation_to_tuple(const Semigroup& s, const RotationWitness& w);
bool replay(const Semigroup& s, const RotationWitness& w);

struct BgNilFailure {
  enum class Kind { NotInverse, NotNilpotentGroup };
  Kind kind = Kind::NotInverse;
  std::uint32_t j_class = 0;
  std::string detail;
  std::optional<TupleCycleWitness> witness;
};

struct BgNilReport {
  bool bg = true;
  bool bg_nil = true;
  std::optional<BgNilFailure> failure;  // first failing regular J-class, bottom-up
};

BgNilReport check_bg_nil(const Semigroup& s, const GreensStructure& g, const PrincipalSeries& ps);

struct MembershipResult {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  std::optional<RotationWitness> rotation;
  std::optional<BgNilFailure> bg_failure;
  std::optional<TupleCycleWitness> tuple;  // replayable certificate for NotMember
  bool oracle_fallback = false;
};

MembershipResult check_mn(const Semigroup& s, const Budget& budget = Budget::from_env());
MembershipResult check_smn(const Semigroup& s, const Budget& budget = Budget::from_env());

struct OracleRun {
  std::optional<unsigned> nil_class;  // nullopt when not nilpotent
  std::optional<TupleCycleWitness> witness;
  std::uint64_t nodes = 0;
  std::uint64_t evaluations = 0;
};

// Tuple-graph iteration T_0 = S^t, T_{k+1} = one lambda-step image of T_k.
// Throws BudgetExceeded.
OracleRun oracle_run(const Semigroup& s, std::size_t t, const Budget& budget = Budget::from_env(),
                     bool with_identity = false);

// MN: t = 2. SMN: t = 2..t_max, first witness wins.
std::optional<TupleCycleWitness> oracle_not_nilpotent(const Semigroup& s, Mode mode, std::size_t t_max,
                                                      const Budget& budget = Budget::from_env());

struct NilpotencyClasses {
  std::optional<unsigned> mn_class;   // nullopt = infinite
  std::optional<unsigned> smn_class;  // up to t_max
};

NilpotencyClasses nilpotency_classes(const Semigroup& s, std::size_t t_max,
                                     const Budget& budget = Budget::from_env());

// Throws BudgetExceeded.
bool check_mn_star(const Semigroup& s, const Budget& budget = Budget::from_env());
bool check_p2(const Semigroup& s);
bool check_smn_circ_t(const Semigroup& s, std::size_t t, const Budget& budget = Budget::from_env(),
                      const RotationWitness* hint = nullptr);

struct ReesDesc {
  GroupTable group;
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint32_t> sandwich;  // cols x rows, kThetaIndex for theta
};

struct FastPathVerdict {
  Verdict mn = Verdict::Unknown;
  Verdict smn = Verdict::Unknown;
  std::string reason;
};

// Throws MalformedRees.
FastPathVerdict rees_fast_path(const ReesDesc& desc);
void validate_rees(const ReesDesc& desc);

}  // namespace nilbench
