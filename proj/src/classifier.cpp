#include "nilbench/classifier.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>

#include "nilbench/errors.hpp"
#include "nilbench/green.hpp"
#include "nilbench/omega.hpp"

namespace nilbench {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

VerdictEntry entry(Verdict v, std::string reason) {
  VerdictEntry e;
  e.verdict = v;
  e.reason = std::move(reason);
  return e;
}

VerdictEntry from_bool(bool member, const std::string& yes, const std::string& no) {
  return entry(member ? Verdict::Member : Verdict::NotMember, member ? yes : no);
}

std::string elem_word(const Semigroup& s, Elem e) { return e == kNoElem ? "1" : s.word_string(e); }

RenderedTuple render(const Semigroup& s, const TupleCycleWitness& w) {
  RenderedTuple out;
  out.t = w.t;
  for (Elem e : w.tuple) out.tuple.push_back(elem_word(s, e));
  for (Elem e : w.words) out.words.push_back(elem_word(s, e));
  out.distinct = w.distinct;
  out.replayed = replay(s, w);
  return out;
}

RenderedRotation render(const std::vector<std::string>& v, const std::vector<std::string>& y, const RotationWitness& w) {
  RenderedRotation out;
  out.layer = w.layer;
  out.j_class = w.j_class;
  out.t = w.t;
  out.alpha = w.alpha;
  out.beta = w.beta;
  out.v = v;
  out.y = y;
  return out;
}

RenderedRotation render(const Semigroup& s, const RotationWitness& w) {
  std::vector<std::string> v, y;
  for (Elem e : w.v) v.push_back(elem_word(s, e));
  for (Elem e : w.y) y.push_back(elem_word(s, e));
  return render(v, y, w);
}

RenderedRotation render(const CayleySemigroup& s, const RotationWitness& w) {
  std::vector<std::string> v, y;
  for (Elem e : w.v) v.push_back(s.word_string(e));
  for (Elem e : w.y) y.push_back(s.word_string(e));
  return render(v, y, w);
}

VerdictEntry from_membership(const Semigroup& s, const MembershipResult& r) {
  VerdictEntry e = entry(r.verdict, r.reason);
  if (r.tuple) e.tuple = render(s, *r.tuple);
  if (r.rotation) e.rotation = render(s, *r.rotation);
  return e;
}

VerdictEntry from_membership(const CayleySemigroup& s, const CayleyMembership& r) {
  VerdictEntry e = entry(r.verdict, r.reason);
  if (r.certificate) e.tuple = render(r.certificate->sub, r.certificate->witness);
  if (r.rotation) e.rotation = render(s, *r.rotation);
  return e;
}

template <class F>
VerdictEntry timed(F&& f) {
  auto t0 = Clock::now();
  VerdictEntry e = f();
  e.millis = since(t0);
  return e;
}

// phi(x) = x^(omega-1) y^(omega-1) x y must satisfy phi^omega(x) = x^omega, with x^omega y = y x^omega = y.
bool phi_pseudoidentity(const Semigroup& g) {
  const std::size_t n = g.size();
  OmegaData om = omega_data(g);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (g.mul(om.omega[x], y) != y || g.mul(y, om.omega[x]) != y) return false;
      auto phi = [&](Elem u) { return g.mul(g.mul(g.mul(om.omega_minus_one[u], om.omega_minus_one[y]), u), y); };
      std::vector<Elem> orbit{x};
      std::vector<std::size_t> seen(n, SIZE_MAX);
      seen[x] = 0;
      for (;;) {
        Elem next = phi(orbit.back());
        if (seen[next] != SIZE_MAX) {
          const std::size_t mu = seen[next], rho = orbit.size() - mu;
          std::size_t k = ((mu + rho - 1) / rho) * rho;
          if (k == 0) k = rho;
          Elem limit = orbit[mu + (k - mu) % rho];
          if (limit != om.omega[x]) return false;
          break;
        }
        seen[next] = orbit.size();
        orbit.push_back(next);
      }
    }
  return true;
}

struct ExtOutcome {
  bool no = false;
  bool unknown = false;
};

ExtendibilityEvidence evaluate_graph(const SchutzGraph& sg, std::uint32_t base, const std::string& rep,
                                     ExtOutcome& out) {
  ExtendibilityEvidence ev;
  ev.side = sg.side;
  ev.class_id = sg.class_id;
  ev.representative = rep;
  ev.vertices = sg.size();
  ev.inverse_graph = sg.is_inverse;
  if (!sg.is_inverse) {
    ev.verdict = Extendible::No;
    out.no = true;
    return ev;
  }
  Extendibility ext = is_gnil_extendible(to_automaton(sg, base));
  ev.verdict = ext.verdict;
  ev.witness = ext.witness;
  ev.congruence = ext.closure.congruence;
  ev.primes = ext.closure.primes;
  ev.exact = ext.closure.exact;
  if (ext.verdict == Extendible::No) out.no = true;
  if (ext.verdict == Extendible::UnknownAtBound) out.unknown = true;
  return ev;
}

VerdictEntry jm_gnil_verdict(std::vector<ExtendibilityEvidence> classes, const ExtOutcome& out) {
  VerdictEntry e;
  if (out.no) {
    const auto& bad = classes.back();
    e = entry(Verdict::NotMember, std::string(bad.side == Side::Right ? "right" : "left") +
                                      " Schutzenberger graph of " + bad.representative +
                                      (bad.inverse_graph ? " is not G_nil-extendible" : " is not an inverse graph"));
  } else if (out.unknown) {
    e = entry(Verdict::Unknown, "extendibility undecided at the prime bound");
  } else {
    e = entry(Verdict::Member, "every regular Schutzenberger graph is G_nil-extendible");
  }
  e.classes = std::move(classes);
  return e;
}

// x^omega on Cayley elements.
Elem omega_of(const CayleySemigroup& s, Elem x) {
  Elem p = x;
  std::size_t guard = 0;
  while (!s.is_idempotent(p)) {
    p = s.product(p, x);
    if (++guard > s.size()) throw InternalInconsistency("no idempotent power");
  }
  return p;
}

void finish(ClassificationReport& r, Clock::time_point t0) {
  for (const auto& [key, v] : r.verdicts)
    if (v.tuple && !v.tuple->replayed) r.consistency["certificates_replay"] = false;
  if (!r.consistency.count("certificates_replay")) r.consistency["certificates_replay"] = true;
  check_verdict_chain(r);
  r.consistency["verdict_chain"] = true;
  r.millis = since(t0);
}

}  // namespace

std::optional<bool> group_in_gnil(const Semigroup& group) {
  const bool lcs = group_nilpotency_class(GroupTable::from_semigroup(group)).has_value();
  const bool phi = phi_pseudoidentity(group);
  if (lcs != phi) return std::nullopt;
  return lcs;
}

void check_verdict_chain(const ClassificationReport& r) {
  auto is = [&](const char* k, Verdict v) {
    auto it = r.verdicts.find(k);
    return it != r.verdicts.end() && it->second.verdict == v;
  };
  auto implies = [&](const char* a, const char* b) {
    if (is(a, Verdict::Member) && is(b, Verdict::NotMember))
      throw InternalInconsistency(std::string(a) + " member but " + b + " not");
  };
  implies("SMN", "MN");
  implies("MN", "BG_nil");
  implies("BG_nil", "BG");
  implies("BI", "BG");
  implies("BI", "A");
  implies("Inv", "BG");
  implies("Inv", "idempotents_commute");
}

VerdictEntry check_jm_gnil(const Semigroup& s) {
  GreensStructure g = greens_structure(s);
  PrincipalSeries ps = principal_series(s, g);
  std::vector<ExtendibilityEvidence> classes;
  ExtOutcome out;
  for (std::size_t p = ps.length(); p-- > 0 && !out.no;) {
    const std::uint32_t j = ps.layers[p];
    if (!g.j_regular[j]) continue;
    Elem e = kNoElem;
    for (Elem x : g.j_members[j])
      if (s.is_idempotent(x)) {
        e = x;
        break;
      }
    for (Side side : {Side::Right, Side::Left}) {
      SchutzGraph sg = schutz_graph(s, g, side, side == Side::Right ? g.r[e] : g.l[e]);
      classes.push_back(evaluate_graph(sg, sg.vertex_of(e), s.word_string(e), out));
      if (out.no) break;
    }
  }
  return jm_gnil_verdict(std::move(classes), out);
}

VerdictEntry check_jm_gnil(const CayleySemigroup& s, const CayleyGreens& g) {
  std::vector<ExtendibilityEvidence> classes;
  ExtOutcome out;
  for (std::size_t p = g.layers.size(); p-- > 0 && !out.no;) {
    const std::uint32_t j = g.layers[p];
    if (!g.j_regular[j]) continue;
    Elem e = kNoElem;
    for (Elem x : g.j_members[j])
      if (s.is_idempotent(x)) {
        e = x;
        break;
      }
    for (Side side : {Side::Right, Side::Left}) {
      SchutzGraph sg = cayley_schutz(s, g, side, e);
      classes.push_back(evaluate_graph(sg, sg.vertex_of(e), s.word_string(e), out));
      if (out.no) break;
    }
  }
  return jm_gnil_verdict(std::move(classes), out);
}

ClassificationReport classify(const Semigroup& s, const ClassifyOptions& options) {
  const auto t0 = Clock::now();
  ClassificationReport r;
  r.digest = s.digest();
  r.size = s.size();
  r.engine = "table";
  const std::size_t n = s.size();

  GreensStructure g = greens_structure(s);
  PrincipalSeries ps = principal_series(s, g);

  // Maximal subgroups, one per regular J-class.
  bool trivial_groups = true, nil_groups = true;
  std::string group_note;
  auto tg = Clock::now();
  for (std::uint32_t j = 0; j < g.num_j; ++j) {
    if (!g.j_regular[j]) continue;
    ReesCoordinatization rc = rees_coordinatize(s, g, j);
    if (rc.group.order > 1 && trivial_groups) {
      trivial_groups = false;
      group_note = "maximal subgroup of order " + std::to_string(rc.group.order) + " in J-class " + std::to_string(j);
    }
    auto gnil = group_in_gnil(subsemigroup(s, rc.group_elements));
    if (!gnil) throw InternalInconsistency("lower central series and phi-pseudoidentity disagree");
    nil_groups = nil_groups && *gnil;
  }
  r.consistency["gnil_double_derivation"] = true;
  const double group_ms = since(tg);

  r.verdicts["A"] = timed([&] {
    return from_bool(trivial_groups, "all subgroups trivial", group_note.empty() ? "nontrivial subgroup" : group_note);
  });

  // Inverse counting.
  auto ti = Clock::now();
  std::size_t max_inverses = 0;
  bool every_has_inverse = true;
  Elem many = kNoElem;
  for (Elem x = 0; x < n; ++x) {
    std::size_t count = 0;
    for (Elem y = 0; y < n && count < 2; ++y)
      if (s.mul(s.mul(x, y), x) == x && s.mul(s.mul(y, x), y) == y) ++count;
    if (count == 0) every_has_inverse = false;
    if (count > max_inverses) {
      max_inverses = count;
      if (count > 1) many = x;
    }
  }
  const bool bg_count = max_inverses <= 1;
  const double inverse_ms = since(ti);

  // (ef)^omega = (fe)^omega over idempotent pairs.
  auto tb = Clock::now();
  OmegaData om = omega_data(s);
  std::vector<Elem> idem;
  for (Elem x = 0; x < n; ++x)
    if (s.is_idempotent(x)) idem.push_back(x);
  bool bg_identity = true, commute = true;
  std::pair<Elem, Elem> non_commuting{kNoElem, kNoElem};
  for (Elem e : idem)
    for (Elem f : idem) {
      if (om.omega[s.mul(e, f)] != om.omega[s.mul(f, e)]) bg_identity = false;
      if (commute && s.mul(e, f) != s.mul(f, e)) {
        commute = false;
        non_commuting = {e, f};
      }
    }
  if (bg_count != bg_identity) throw InternalInconsistency("inverse counting and (ef)^omega = (fe)^omega disagree");
  r.consistency["bg_double_derivation"] = true;

  r.verdicts["idempotents_commute"] = from_bool(
      commute, "idempotents commute",
      commute ? "" : "idempotents " + s.word_string(non_commuting.first) + " and " + s.word_string(non_commuting.second) + " do not commute");
  r.verdicts["BG"] = from_bool(bg_count, "every element has at most one inverse",
                               many == kNoElem ? "" : s.word_string(many) + " has two inverses");
  r.verdicts["BG"].millis = inverse_ms + since(tb);
  r.verdicts["Inv"] = from_bool(bg_count && every_has_inverse, "regular with unique inverses",
                                every_has_inverse ? "some element has two inverses" : "not regular");

  r.verdicts["BG_nil"] = timed([&] {
    if (!bg_count) return entry(Verdict::NotMember, "not in BG");
    BgNilReport bg = check_bg_nil(s, g, ps);
    if (bg.bg != bg_count) throw InternalInconsistency("block-group verdicts disagree");
    if (bg.bg_nil != nil_groups) throw InternalInconsistency("subgroup nilpotency verdicts disagree");
    VerdictEntry e = from_bool(bg.bg_nil, "block group with nilpotent maximal subgroups",
                               bg.failure ? bg.failure->detail : "");
    if (bg.failure && bg.failure->witness) e.tuple = render(s, *bg.failure->witness);
    return e;
  });
  r.verdicts["BG_nil"].millis += group_ms;
  r.verdicts["BI"] = from_bool(bg_count && trivial_groups, "block group with trivial subgroups",
                               bg_count ? "nontrivial subgroup" : "not in BG");

  MembershipResult mn;
  r.verdicts["MN"] = timed([&] {
    mn = check_mn(s, options.budget);
    return from_membership(s, mn);
  });
  r.verdicts["SMN"] = timed([&] { return from_membership(s, check_smn(s, options.budget)); });

  r.verdicts["MN_star"] = timed([&] {
    if (options.skip_mn_star) return entry(Verdict::Unknown, "skipped");
    try {
      return from_bool(check_mn_star(s, options.budget), "MN* identity holds", "MN* identity fails");
    } catch (const BudgetExceeded& e) {
      r.budget_exceeded = true;
      return entry(Verdict::Unknown, e.what());
    }
  });
  r.verdicts["SMN_circ_2"] = timed([&] {
    if (options.skip_smn_circ) return entry(Verdict::Unknown, "skipped");
    try {
      const RotationWitness* hint = mn.rotation ? &*mn.rotation : nullptr;
      return from_bool(check_smn_circ_t(s, 2, options.budget, hint), "every periodic point is constant",
                       "non-constant periodic point");
    } catch (const BudgetExceeded& e) {
      r.budget_exceeded = true;
      return entry(Verdict::Unknown, e.what());
    }
  });
  r.verdicts["JmGnil"] = timed([&] { return check_jm_gnil(s); });
  for (const auto& [key, v] : r.verdicts)
    if (v.verdict == Verdict::Unknown && v.reason.find("budget") != std::string::npos) r.budget_exceeded = true;
  finish(r, t0);
  return r;
}

ClassificationReport classify(const CayleySemigroup& s, const ClassifyOptions& options) {
  const auto t0 = Clock::now();
  ClassificationReport r;
  r.digest = s.digest();
  r.size = s.size();
  r.engine = "cayley";
  CayleyGreens g = cayley_greens(s);
  CayleyBgNil bg = cayley_bg_nil(s, g);

  bool regular = std::all_of(g.j_regular.begin(), g.j_regular.end(), [](bool b) { return b; });
  bool trivial_groups = true, nil_groups = true;
  std::string group_note;
  for (const CayleyLayer& L : bg.layers) {
    const std::size_t order = L.size / (L.rows * L.cols);
    if (order > 1 && trivial_groups) {
      trivial_groups = false;
      group_note = "maximal subgroup of order " + std::to_string(order) + " in J-class " + std::to_string(L.j_class);
    }
    if (!L.inverse) continue;
    auto gnil = group_in_gnil(s.subsemigroup(L.group));
    if (!gnil) throw InternalInconsistency("lower central series and phi-pseudoidentity disagree");
    nil_groups = nil_groups && *gnil;
  }
  r.consistency["gnil_double_derivation"] = true;
  r.verdicts["A"] = from_bool(trivial_groups, "all subgroups trivial", group_note);

  // Idempotents of a semigroup of partial injections are partial identities.
  VerdictEntry commute;
  std::optional<bool> bg_identity;
  if (s.all_partial_injections()) {
    commute = entry(Verdict::Member, "generated by partial injections");
    bg_identity = true;
  } else if (g.idempotents.size() <= 2000) {
    bool ok = true, id = true;
    for (Elem e : g.idempotents)
      for (Elem f : g.idempotents) {
        const Elem ef = s.product(e, f), fe = s.product(f, e);
        if (ef != fe) ok = false;
        if (omega_of(s, ef) != omega_of(s, fe)) id = false;
      }
    commute = from_bool(ok, "idempotents commute", "two idempotents do not commute");
    bg_identity = id;
  } else {
    commute = entry(Verdict::Unknown, "too many idempotents for a pairwise check");
    r.notes.push_back("BG identity cross-check not evaluated");
  }
  if (bg_identity && *bg_identity != bg.bg)
    throw InternalInconsistency("inverse counting and (ef)^omega = (fe)^omega disagree");
  r.consistency["bg_double_derivation"] = bg_identity.has_value();
  r.verdicts["idempotents_commute"] = commute;
  r.verdicts["BG"] = from_bool(bg.bg, "every regular D-class has one idempotent per R- and L-class", bg.detail);
  r.verdicts["Inv"] =
      from_bool(bg.bg && regular, "regular with unique inverses", regular ? "some element has two inverses" : "not regular");
  r.verdicts["BG_nil"] = from_bool(bg.bg_nil, "block group with nilpotent maximal subgroups", bg.detail);
  if (bg.bg_nil != (bg.bg && nil_groups)) throw InternalInconsistency("subgroup nilpotency verdicts disagree");
  if (bg.certificate) r.verdicts["BG_nil"].tuple = render(bg.certificate->sub, bg.certificate->witness);
  r.verdicts["BI"] = from_bool(bg.bg && trivial_groups, "block group with trivial subgroups",
                               bg.bg ? "nontrivial subgroup" : "not in BG");

  r.verdicts["MN"] = timed([&] { return from_membership(s, cayley_check(s, g, bg, Mode::MN, options.budget)); });
  r.verdicts["SMN"] = timed([&] { return from_membership(s, cayley_check(s, g, bg, Mode::SMN, options.budget)); });
  r.verdicts["MN_star"] =
      entry(Verdict::Unknown, options.skip_mn_star ? "skipped" : "needs a multiplication table; size " + std::to_string(s.size()));
  r.verdicts["SMN_circ_2"] = entry(Verdict::Unknown, options.skip_smn_circ
                                                         ? "skipped"
                                                         : "needs a multiplication table; size " + std::to_string(s.size()));
  r.verdicts["JmGnil"] = timed([&] { return check_jm_gnil(s, g); });
  r.notes.push_back("analysed on Cayley graphs (" + std::to_string(s.size()) + " elements)");
  finish(r, t0);
  return r;
}

ClassificationReport classify(const std::vector<NamedMap>& gens, const ClassifyOptions& options) {
  try {
    return classify(close_generators(gens, options.table_cap), options);
  } catch (const CapExceeded&) {
  }
  return classify(CayleySemigroup::build(gens), options);
}

}  // namespace nilbench
