#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilbench/cayley.hpp"
#include "nilbench/closure.hpp"
#include "nilbench/nilpotency.hpp"
#include "nilbench/schutzenberger.hpp"
#include "nilbench/semigroup.hpp"

namespace nilbench {

// Semigroups above this size are analysed on Cayley graphs instead of a table.
inline constexpr std::size_t kTableCap = 6000;

struct ClassifyOptions {
  bool skip_mn_star = false;
  bool skip_smn_circ = false;
  Budget budget = Budget::from_env();
  std::size_t table_cap = kTableCap;
};

// Witness data with elements rendered as generator words.
struct RenderedTuple {
  std::size_t t = 0;
  std::vector<std::string> tuple;
  std::vector<std::string> words;  // "1" for the identity of S^1
  bool distinct = false;
  bool replayed = false;
};

struct RenderedRotation {
  std::size_t layer = 0;
  std::uint32_t j_class = 0;
  std::size_t t = 0;
  std::vector<std::uint32_t> alpha, beta;
  std::vector<std::string> v, y;
};

struct ExtendibilityEvidence {
  Side side = Side::Right;
  std::uint32_t class_id = 0;
  std::string representative;
  std::size_t vertices = 0;
  bool inverse_graph = true;
  Extendible verdict = Extendible::UnknownAtBound;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
  std::vector<std::uint32_t> congruence;
  std::vector<std::uint64_t> primes;
  bool exact = false;
};

struct VerdictEntry {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  std::optional<RenderedTuple> tuple;
  std::optional<RenderedRotation> rotation;
  std::vector<ExtendibilityEvidence> classes;
  double millis = 0;
};

inline const std::vector<std::string>& pseudovariety_keys() {
  static const std::vector<std::string> keys{"A",  "Inv", "idempotents_commute", "BG",        "BG_nil", "BI",
                                             "MN", "SMN", "MN_star",             "SMN_circ_2", "JmGnil"};
  return keys;
}

struct ClassificationReport {
  std::string name;
  std::uint64_t digest = 0;
  std::size_t size = 0;
  std::string engine;  // "table" or "cayley"
  std::map<std::string, VerdictEntry> verdicts;
  std::map<std::string, bool> consistency;
  std::vector<std::string> notes;
  bool budget_exceeded = false;
  double millis = 0;

  const VerdictEntry& at(const std::string& key) const { return verdicts.at(key); }
};

ClassificationReport classify(const Semigroup& s, const ClassifyOptions& options = {});
// Builds a table when the closure fits under options.table_cap, otherwise uses Cayley graphs.
ClassificationReport classify(const std::vector<NamedMap>& gens, const ClassifyOptions& options = {});
ClassificationReport classify(const CayleySemigroup& s, const ClassifyOptions& options = {});

VerdictEntry check_jm_gnil(const Semigroup& s);
VerdictEntry check_jm_gnil(const CayleySemigroup& s, const CayleyGreens& g);

// Lower central series and the phi-pseudoidentity on a group given as a semigroup; nullopt if they disagree.
std::optional<bool> group_in_gnil(const Semigroup& group);

// Throws InternalInconsistency on a breach of the verdict chain.
void check_verdict_chain(const ClassificationReport& r);

}  // namespace nilbench
