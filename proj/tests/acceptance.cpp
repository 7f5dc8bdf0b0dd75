// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nilbench/automaton.hpp"
#include "nilbench/classifier.hpp"
#include "nilbench/closure.hpp"
#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/green.hpp"
#include "nilbench/nilpotency.hpp"
#include "nilbench/schutzenberger.hpp"

using namespace nilbench;
using Clock = std::chrono::steady_clock;

namespace {

struct Tally {
  bool ok = true;
  std::vector<std::string> failures;
  void check(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      if (failures.size() < 8) failures.push_back(what);
    }
  }
};

// Witness bookkeeping for the replay criterion.
struct Replays {
  std::size_t seen = 0;
  std::vector<std::string> failed;
  void note(bool replayed, const std::string& what) {
    ++seen;
    if (!replayed) failed.push_back(what);
  }
};
Replays replays;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool run(int id, const char* title, const std::function<void(Tally&)>& body) {
  Tally t;
  auto t0 = Clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.ok = false;
    t.failures.push_back(std::string("exception: ") + e.what());
  }
  std::printf("%s  %2d  %-58s %8.2f s\n", t.ok ? "PASS" : "FAIL", id, title, seconds_since(t0));
  for (const auto& f : t.failures) std::printf("          %s\n", f.c_str());
  std::fflush(stdout);
  return t.ok;
}

void note_report(const ClassificationReport& r, const std::string& name) {
  for (const auto& [key, v] : r.verdicts) {
    if (v.verdict != Verdict::NotMember) continue;
    if (key == "MN" || key == "SMN" || key == "BG_nil") {
      const bool bg_non_inverse = key != "BG_nil" ? false : !v.tuple.has_value() && r.at("BG").verdict == Verdict::NotMember;
      if (bg_non_inverse) continue;
      replays.note(v.tuple && v.tuple->replayed, name + " " + key);
    }
    if (key == "JmGnil") {
      bool evidence = false;
      for (const auto& c : v.classes) evidence = evidence || !c.inverse_graph || (c.verdict == Extendible::No && c.witness);
      replays.note(evidence, name + " JmGnil");
    }
  }
}

void note_result(const Semigroup& s, const MembershipResult& r, const std::string& name) {
  if (r.verdict == Verdict::NotMember) replays.note(r.tuple && replay(s, *r.tuple), name);
}

bool oracle_member(const Semigroup& s, Mode mode, const std::string& name) {
  auto w = oracle_not_nilpotent(s, mode, mode == Mode::MN ? 2 : 4);
  if (w) replays.note(replay(s, *w), name + " oracle");
  return !w;
}

std::mt19937_64 rng(20261015);

PartialMap random_map(std::size_t degree) {
  PartialMap m(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    std::size_t r = rng() % (degree + 2);
    if (r < degree) m[i] = PartialMap::Point(r);
  }
  return m;
}

// Random semigroups generated by at most three maps on at most five points, kept when small.
std::vector<Semigroup> random_semigroups(std::size_t count, std::size_t max_size) {
  std::vector<Semigroup> out;
  while (out.size() < count) {
    const std::size_t degree = 1 + rng() % 5, k = 1 + rng() % 3;
    std::vector<NamedMap> gens;
    for (std::size_t i = 0; i < k; ++i) gens.emplace_back(std::string(1, char('a' + i)), random_map(degree));
    try {
      Semigroup s = close_generators(gens, max_size);
      out.push_back(std::move(s));
    } catch (const CapExceeded&) {
    }
  }
  return out;
}

std::vector<NamedSemigroup> small_members(std::size_t max_size) {
  std::vector<NamedSemigroup> out;
  for (auto& m : gallery_members())
    if (m.semigroup.size() <= max_size) out.push_back(std::move(m));
  for (auto& s : random_semigroups(60, max_size)) out.push_back({"random", std::move(s)});
  return out;
}

GroupTable random_group() {
  switch (rng() % 5) {
    case 0: return GroupTable::trivial();
    case 1: return cyclic_group(2);
    case 2: return cyclic_group(3);
    case 3: return cyclic_group(4);
    default: return symmetric3_group();
  }
}

ReesDesc random_rees() {
  for (;;) {
    ReesDesc d;
    d.group = random_group();
    const std::size_t cap = 29 / d.group.order;
    d.rows = 1 + rng() % 4;
    d.cols = 1 + rng() % 4;
    const bool brandt = rng() % 3 == 0;
    if (brandt) d.cols = d.rows;
    if (d.rows * d.cols > cap) continue;
    d.sandwich.resize(d.rows * d.cols);
    for (auto& p : d.sandwich) p = rng() % 3 == 0 ? kThetaIndex : std::uint32_t(rng() % d.group.order);
    // Brandt shape: group entries on the diagonal only
    if (brandt)
      for (std::size_t j = 0; j < d.cols; ++j)
        for (std::size_t i = 0; i < d.rows; ++i)
          if (i != j) d.sandwich[j * d.rows + i] = kThetaIndex;
    try {
      validate_rees(d);
      return d;
    } catch (const MalformedRees&) {
    }
  }
}

InverseAutomaton random_automaton() {
  const std::size_t n = 1 + rng() % 12, letters = 1 + rng() % 3;
  std::vector<Edge> edges;
  for (std::uint32_t v = 1; v < n; ++v) edges.push_back({std::uint32_t(rng() % v), std::size_t(rng() % letters), v});
  const std::size_t extra = rng() % 6;
  for (std::size_t k = 0; k < extra; ++k)
    edges.push_back({std::uint32_t(rng() % n), std::size_t(rng() % letters), std::uint32_t(rng() % n)});
  return trim(fold_graph(n, letters, edges, 0).automaton).automaton;
}

}  // namespace

int main() {
  bool all = true;

  all &= run(1, "verdict table for the named semigroups", [](Tally& t) {
    struct Row {
      const char* id;
      std::vector<std::string> params;
      std::vector<std::pair<const char*, Verdict>> expect;
    };
    const Verdict in = Verdict::Member, out = Verdict::NotMember;
    std::vector<Row> rows{
        {"M1", {}, {{"SMN", in}, {"JmGnil", in}}},
        {"M2", {}, {{"MN", in}, {"SMN", out}, {"JmGnil", in}}},
        {"M3", {}, {{"MN", out}, {"JmGnil", in}}},
        {"N1", {}, {{"BG_nil", in}, {"MN", out}, {"JmGnil", out}}},
        {"N2", {}, {{"MN", in}, {"SMN", out}, {"JmGnil", out}}},
        {"Example18", {}, {{"A", in}, {"SMN", in}}},
        {"Sp", {"2"}, {{"SMN", out}}},
        {"Sp", {"3"}, {{"SMN", out}}},
    };
    for (const auto& row : rows) {
      std::string name = row.id;
      for (const auto& p : row.params) name += " " + p;
      auto t0 = Clock::now();
      ClassificationReport r = classify(gallery_generators(row.id, row.params));
      const double secs = seconds_since(t0);
      std::printf("          %-10s |S| = %-8zu %-6s %6.2f s\n", name.c_str(), r.size, r.engine.c_str(), secs);
      t.check(secs < 120, name + " took " + std::to_string(secs) + " s");
      for (const auto& [key, want] : row.expect)
        t.check(r.at(key).verdict == want, name + " " + key + ": " + verdict_name(r.at(key).verdict));
      for (const auto& [k, ok] : r.consistency) t.check(ok, name + " consistency " + k);
      note_report(r, name);
    }
  });

  all &= run(2, "N(n) is Mal'cev nilpotent exactly for odd n", [](Tally& t) {
    for (std::size_t n = 2; n <= 8; ++n) {
      Semigroup s = build_n(n);
      MembershipResult r = check_mn(s);
      t.check((r.verdict == Verdict::Member) == (n % 2 == 1), "N " + std::to_string(n) + ": " + verdict_name(r.verdict));
      note_result(s, r, "N " + std::to_string(n) + " MN");
    }
  });

  all &= run(3, "strong Mal'cev class of groups equals the nilpotency class", [](Tally& t) {
    struct G {
      const char* name;
      Semigroup s;
      std::optional<unsigned> cls;
    };
    std::vector<G> groups{{"C6", build_cyclic(6), 1u}, {"D4", build_dihedral(4), 2u}, {"Q8", build_q8(), 2u},
                          {"S3", build_s3(), std::nullopt}};
    for (const auto& g : groups) {
      auto lcs = group_nilpotency_class(GroupTable::from_semigroup(g.s));
      NilpotencyClasses c = nilpotency_classes(g.s, 4);
      t.check(lcs == g.cls, std::string(g.name) + " lower central series");
      t.check(c.smn_class == lcs, std::string(g.name) + " strong class " +
                                      (c.smn_class ? std::to_string(*c.smn_class) : std::string("infinite")));
      if (!c.smn_class) oracle_member(g.s, Mode::SMN, g.name);
    }
  });

  all &= run(4, "Rees matrix fast path agrees with the oracle on 50 inputs", [](Tally& t) {
    std::size_t mn_in = 0, smn_in = 0;
    for (int k = 0; k < 50; ++k) {
      ReesDesc d = random_rees();
      Semigroup s = build_rees(d);
      t.check(s.size() <= 30, "size " + std::to_string(s.size()));
      FastPathVerdict f = rees_fast_path(d);
      const std::string name = "rees #" + std::to_string(k);
      const bool mn = oracle_member(s, Mode::MN, name + " MN");
      const bool smn = oracle_member(s, Mode::SMN, name + " SMN");
      t.check(f.mn == (mn ? Verdict::Member : Verdict::NotMember), name + " MN: " + f.reason);
      t.check(f.smn == (smn ? Verdict::Member : Verdict::NotMember), name + " SMN: " + f.reason);
      mn_in += mn;
      smn_in += smn;
    }
    std::printf("          members: MN %zu/50, SMN %zu/50\n", mn_in, smn_in);
  });

  all &= run(5, "engine verdicts agree with the oracle (t <= 4)", [](Tally& t) {
    std::vector<NamedSemigroup> inputs;
    for (auto& m : gallery_members())
      if (m.semigroup.size() <= 30) inputs.push_back(std::move(m));
    std::size_t gallery = inputs.size();
    for (auto& s : random_semigroups(100, 30)) inputs.push_back({"random", std::move(s)});
    std::printf("          %zu gallery members, %zu random\n", gallery, inputs.size() - gallery);
    std::size_t mn_in = 0, smn_in = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto& [name0, s] = inputs[i];
      const std::string name = name0 + " #" + std::to_string(i);
      MembershipResult mn = check_mn(s), smn = check_smn(s);
      note_result(s, mn, name + " MN");
      note_result(s, smn, name + " SMN");
      t.check((mn.verdict == Verdict::Member) == oracle_member(s, Mode::MN, name), name + " MN");
      t.check((smn.verdict == Verdict::Member) == oracle_member(s, Mode::SMN, name), name + " SMN");
      t.check(mn.verdict != Verdict::Unknown && smn.verdict != Verdict::Unknown, name + " unknown verdict");
      mn_in += mn.verdict == Verdict::Member;
      smn_in += smn.verdict == Verdict::Member;
    }
    std::printf("          members: MN %zu/%zu, SMN %zu/%zu\n", mn_in, inputs.size(), smn_in, inputs.size());
  });

  all &= run(6, "MN* with BG_nil is equivalent to MN (|S| <= 60)", [](Tally& t) {
    for (const auto& [name, s] : small_members(60)) {
      GreensStructure g = greens_structure(s);
      BgNilReport bg = check_bg_nil(s, g, principal_series(s, g));
      const bool lhs = check_mn_star(s) && bg.bg_nil;
      t.check(lhs == (check_mn(s).verdict == Verdict::Member), name + " size " + std::to_string(s.size()));
    }
  });

  all &= run(7, "SMN-circ at t = 2 is equivalent to MN (|S| <= 25)", [](Tally& t) {
    for (const auto& [name, s] : small_members(25))
      t.check(check_smn_circ_t(s, 2) == (check_mn(s).verdict == Verdict::Member),
              name + " size " + std::to_string(s.size()));
  });

  all &= run(8, "S_2 is not SMN but its 3-generated subsemigroups are", [](Tally& t) {
    auto t0 = Clock::now();
    Semigroup s = build_sp(2);
    MembershipResult whole = check_smn(s);
    t.check(whole.verdict == Verdict::NotMember, std::string("S_2: ") + verdict_name(whole.verdict));
    std::size_t subs = 0;
    for (Elem a = 0; a < s.size(); ++a)
      for (Elem b = a; b < s.size(); ++b)
        for (Elem c = b; c < s.size(); ++c) {
          Semigroup sub = subsemigroup(s, {a, b, c});
          ++subs;
          MembershipResult r = check_smn(sub);
          t.check(r.verdict == Verdict::Member, "subsemigroup <" + s.word_string(a) + ", " + s.word_string(b) + ", " +
                                                    s.word_string(c) + ">: " + verdict_name(r.verdict));
        }
    std::printf("          |S_2| = %zu, %zu multisets\n", s.size(), subs);
    t.check(seconds_since(t0) < 600, "over ten minutes");
  });

  all &= run(9, "Stallings suite", [](Tally& t) {
    auto timed = [&](const std::string& name, const std::function<bool()>& f) {
      auto t0 = Clock::now();
      const bool ok = f();
      t.check(ok, name);
      t.check(seconds_since(t0) < 5, name + " over 5 s");
    };
    const std::vector<std::vector<std::int64_t>> m{{1, -1}, {6, 0}};
    timed("rank mod 5", [&] { return rank_mod_p(m, 2, 5) == 2; });
    timed("rank mod 2", [&] { return rank_mod_p(m, 2, 2) < 2; });
    timed("rank mod 3", [&] { return rank_mod_p(m, 2, 3) < 2; });
    const InverseAutomaton b6 = build_family(Family::B, 6);
    timed("Cl_2(B6) = C2", [&] { return isomorphic(p_closure(b6, 2).automaton, build_family(Family::C, 2)); });
    timed("Cl_3(B6) = C3", [&] { return isomorphic(p_closure(b6, 3).automaton, build_family(Family::C, 3)); });
    timed("Cl_nil(B6) = C6", [&] { return isomorphic(nil_closure(b6).automaton, build_family(Family::C, 6)); });
    for (std::size_t l : {4u, 5u}) {
      const InverseAutomaton b = build_family(Family::B, l);
      timed("Cl_nil(B" + std::to_string(l) + ") = B" + std::to_string(l),
            [&] { return isomorphic(nil_closure(b).automaton, b); });
    }
    for (std::size_t l : {6u, 15u})
      timed("A" + std::to_string(l) + " not extendible",
            [&] { return is_gnil_extendible(build_family(Family::A, l)).verdict == Extendible::No; });
  });

  all &= run(10, "Schutzenberger predicates match the engine on BI", [](Tally& t) {
    std::size_t checked = 0;
    for (const auto& [name, s] : small_members(200)) {
      ClassificationReport r = classify(s);
      if (r.at("BI").verdict != Verdict::Member) continue;
      ++checked;
      bool mn = true, smn = true;
      for (const auto& g : schutz_graphs(s)) {
        if (g.side != Side::Right) continue;
        mn = mn && rclass_nilpotent(g, Variant::H, false);
        smn = smn && rclass_nilpotent(g, Variant::H, true);
      }
      t.check(mn == (r.at("MN").verdict == Verdict::Member), name + " MN");
      t.check(smn == (r.at("SMN").verdict == Verdict::Member), name + " SMN");
    }
    std::printf("          %zu members in BI\n", checked);
    t.check(checked >= 5, "too few BI members");
  });

  all &= run(11, "tree basis round trip and idempotent p-closure", [](Tally& t) {
    for (int k = 0; k < 100; ++k) {
      InverseAutomaton a = random_automaton();
      const std::string name = "automaton #" + std::to_string(k) + " (" + std::to_string(a.size()) + " states)";
      t.check(a.size() <= 12, name + " too large");
      t.check(isomorphic(fold(tree_basis(a), a.letters()), a), name + " round trip");
      for (std::uint64_t p : {2u, 3u, 5u}) {
        InverseAutomaton c = p_closure(a, p).automaton;
        t.check(isomorphic(p_closure(c, p).automaton, c), name + " closure at " + std::to_string(p));
      }
    }
  });

  all &= run(12, "every NotMember verdict above has a replaying witness", [](Tally& t) {
    std::printf("          %zu witnesses\n", replays.seen);
    t.check(replays.seen > 0, "no witnesses recorded");
    for (const auto& f : replays.failed) t.check(false, f);
  });

  return all ? 0 : 1;
}
