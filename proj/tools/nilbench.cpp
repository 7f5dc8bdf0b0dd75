#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "nilbench/cayley.hpp"
#include "nilbench/classifier.hpp"
#include "nilbench/closure.hpp"
#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/green.hpp"
#include "nilbench/parse.hpp"
#include "nilbench/report.hpp"
#include "nilbench/schutzenberger.hpp"

using namespace nilbench;

namespace {

enum Exit { kOk = 0, kInput = 1, kBudget = 2, kInternal = 3 };

using Loaded = std::variant<Semigroup, CayleySemigroup>;

Loaded load(const std::string& path, std::size_t table_cap = kTableCap) {
  ParsedInput in = parse_file(path);
  if (in.kind == ParsedInput::Kind::Rees) return build_rees(in.rees);
  auto gens = input_generators(in);
  try {
    Semigroup s = close_generators(gens, table_cap);
    return in.adjoin_identity ? adjoin_identity(s) : s;
  } catch (const CapExceeded&) {
  }
  if (in.adjoin_identity) gens.emplace_back("1", PartialMap::identity(gens[0].second.degree()));
  return CayleySemigroup::build(gens);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SemanticError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_classify(const std::string& path, const std::string& format, const std::vector<std::string>& skip,
                 std::uint64_t budget) {
  ClassifyOptions opt;
  for (const auto& s : skip) {
    if (s == "mnstar") opt.skip_mn_star = true;
    else if (s == "smncirc") opt.skip_smn_circ = true;
    else throw BadParameter("unknown --skip entry '" + s + "' (mnstar, smncirc)");
  }
  if (budget) opt.budget.max_nodes = opt.budget.max_evaluations = budget;
  Loaded s = load(path);
  ClassificationReport r = std::visit([&](const auto& x) { return classify(x, opt); }, s);
  r.name = path;
  std::cout << emit_report(r, format == "json" ? ReportFormat::Json : ReportFormat::Text);
  return r.budget_exceeded ? kBudget : kOk;
}

int run_green(const std::string& path) {
  Loaded loaded = load(path);
  if (auto* s = std::get_if<Semigroup>(&loaded)) {
    GreensStructure g = greens_structure(*s);
    PrincipalSeries ps = principal_series(*s, g);
    std::printf("size %zu  R %zu  L %zu  H %zu  J %zu  idempotents %zu\n", s->size(), g.num_r, g.num_l, g.num_h,
                g.num_j, g.idempotents.size());
    for (std::size_t p = 0; p < ps.length(); ++p) {
      const std::uint32_t j = ps.layers[p];
      std::printf("layer %zu: J%u size %zu %s", p, j, g.j_members[j].size(), g.j_regular[j] ? "regular" : "null");
      if (g.j_regular[j]) {
        ReesCoordinatization rc = rees_coordinatize(*s, g, j);
        std::printf(" %zux%zu group %zu%s", rc.rows, rc.cols, rc.group.order, rc.inverse_square ? " inverse" : "");
      }
      std::printf("  %s\n", s->word_string(g.j_members[j][0]).c_str());
    }
    return kOk;
  }
  const auto& s = std::get<CayleySemigroup>(loaded);
  CayleyGreens g = cayley_greens(s);
  std::size_t regular = std::count(g.j_regular.begin(), g.j_regular.end(), true);
  std::printf("size %zu  R %zu  L %zu  J %zu (regular %zu)  idempotents %zu\n", s.size(), g.num_r, g.num_l, g.num_j,
              regular, g.idempotents.size());
  for (std::size_t p = 0; p < g.layers.size(); ++p) {
    const std::uint32_t j = g.layers[p];
    if (!g.j_regular[j]) continue;
    CayleyLayer L = cayley_layer(s, g, p);
    std::printf("layer %zu: J%u size %zu regular %zux%zu%s  %s\n", p, j, L.size, L.rows, L.cols,
                L.inverse ? " inverse" : "", s.word_string(g.j_members[j][0]).c_str());
  }
  return kOk;
}

int run_schutz(const std::string& path, bool dot) {
  Loaded loaded = load(path);
  if (auto* s = std::get_if<Semigroup>(&loaded)) {
    for (const SchutzGraph& g : schutz_graphs(*s)) {
      if (dot) {
        std::cout << to_dot(g, *s);
        continue;
      }
      std::printf("%s class %u: %zu vertices%s\n", side_name(g.side), g.class_id, g.size(),
                  g.is_inverse ? ", inverse" : "");
    }
    return kOk;
  }
  if (dot) throw BadParameter("--dot needs a semigroup small enough for a table");
  const auto& s = std::get<CayleySemigroup>(loaded);
  CayleyGreens g = cayley_greens(s);
  for (std::uint32_t j = 0; j < g.num_j; ++j) {
    if (!g.j_regular[j]) continue;
    Elem e = kNoElem;
    for (Elem x : g.j_members[j])
      if (s.is_idempotent(x)) {
        e = x;
        break;
      }
    for (Side side : {Side::Right, Side::Left}) {
      SchutzGraph sg = cayley_schutz(s, g, side, e);
      std::printf("%s class %u (D-class %u): %zu vertices%s\n", side_name(side), sg.class_id, j, sg.size(),
                  sg.is_inverse ? ", inverse" : "");
    }
  }
  return kOk;
}

InverseAutomaton load_basis(const std::string& path) {
  std::size_t letters = 0;
  auto basis = parse_basis(read_text(path), &letters);
  return fold(basis, letters);
}

void print_classes(const std::vector<std::uint32_t>& congruence) {
  std::printf("congruence");
  for (auto c : congruence) std::printf(" %u", c);
  std::printf("\n");
}

int run_stallings(const std::string& op, const std::string& path, std::uint64_t p) {
  InverseAutomaton h = load_basis(path);
  if (op == "fold") {
    std::cout << dump(h);
  } else if (op == "closure") {
    ClosureResult c = p_closure(h, p);
    std::printf("p %llu  states %zu  classes %zu\n", static_cast<unsigned long long>(p), c.automaton.size(), c.classes);
    print_classes(c.congruence);
    std::cout << dump(c.automaton);
  } else if (op == "nilclosure") {
    NilClosure c = nil_closure(h);
    std::printf("states %zu  classes %zu  %s  primes", c.automaton.size(), c.classes, c.exact ? "exact" : "up_to_bound");
    for (auto q : c.primes) std::printf(" %llu", static_cast<unsigned long long>(q));
    std::printf("\n");
    print_classes(c.congruence);
    std::cout << dump(c.automaton);
  } else if (op == "extendible") {
    Extendibility e = is_gnil_extendible(h);
    std::printf("%s", extendible_name(e.verdict));
    if (e.witness) std::printf("  identified %u %u", e.witness->first, e.witness->second);
    std::printf("\n");
    print_classes(e.closure.congruence);
  }
  return kOk;
}

int run_oracle(const std::string& path, std::size_t t_max) {
  Loaded loaded = load(path);
  auto* s = std::get_if<Semigroup>(&loaded);
  if (!s) throw BadParameter("the tuple-graph oracle needs a semigroup small enough for a table");
  NilpotencyClasses c = nilpotency_classes(*s, t_max);
  auto show = [](const std::optional<unsigned>& k) { return k ? std::to_string(*k) : std::string("infinite"); };
  std::printf("size %zu\nmn_class %s\nsmn_class %s (t <= %zu)\n", s->size(), show(c.mn_class).c_str(),
              show(c.smn_class).c_str(), t_max);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mal'cev nilpotency toolkit for finite semigroups"};
  app.require_subcommand(1);

  std::string file, format = "text", op, id;
  std::vector<std::string> skip, params;
  std::uint64_t budget = 0, prime = 0;
  std::size_t t_max = 4;
  bool dot = false;

  auto* classify_cmd = app.add_subcommand("classify", "membership verdicts for all pseudovarieties");
  classify_cmd->add_option("file", file, "semigroup file")->required();
  classify_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  classify_cmd->add_option("--skip", skip, "mnstar,smncirc")->delimiter(',');
  classify_cmd->add_option("--budget", budget, "node and evaluation budget");

  auto* green_cmd = app.add_subcommand("green", "Green's relations and principal series");
  green_cmd->add_option("file", file)->required();

  auto* schutz_cmd = app.add_subcommand("schutz", "Schutzenberger graphs of regular classes");
  schutz_cmd->add_option("file", file)->required();
  schutz_cmd->add_flag("--dot", dot, "Graphviz output");

  auto* stallings_cmd = app.add_subcommand("stallings", "Stallings automata of subgroups given by a basis file");
  stallings_cmd->add_option("op", op, "fold, closure, nilclosure or extendible")
      ->required()
      ->check(CLI::IsMember({"fold", "closure", "nilclosure", "extendible"}));
  stallings_cmd->add_option("file", file)->required();
  stallings_cmd->add_option("-p", prime, "prime for closure");

  auto* gallery_cmd = app.add_subcommand("gallery", "named semigroups");
  gallery_cmd->add_option("op", op, "list or build")->required()->check(CLI::IsMember({"list", "build"}));
  gallery_cmd->add_option("id", id);
  gallery_cmd->add_option("params", params);

  auto* oracle_cmd = app.add_subcommand("oracle", "tuple-graph nilpotency classes");
  oracle_cmd->add_option("file", file)->required();
  oracle_cmd->add_option("--t-max", t_max, "largest tuple width")->check(CLI::Range(2, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  try {
    if (*classify_cmd) return run_classify(file, format, skip, budget);
    if (*green_cmd) return run_green(file);
    if (*schutz_cmd) return run_schutz(file, dot);
    if (*stallings_cmd) {
      if (op == "closure" && prime == 0) throw BadParameter("closure needs -p P");
      return run_stallings(op, file, prime);
    }
    if (*gallery_cmd) {
      if (op == "list") {
        for (const auto& e : gallery_list())
          std::printf("%-11s %-16s %s\n", e.id.c_str(), e.params.c_str(), e.description.c_str());
        return kOk;
      }
      if (id.empty()) throw BadParameter("gallery build needs an id");
      std::cout << "// " << id;
      for (const auto& p : params) std::cout << " " << p;
      std::cout << "\n" << format_input(gallery_generators(id, params));
      return kOk;
    }
    if (*oracle_cmd) return run_oracle(file, t_max);
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return kBudget;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return kBudget;
  } catch (const InternalInconsistency& e) {
    std::fprintf(stderr, "internal inconsistency: %s\n", e.what());
    return kInternal;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  }
  return kOk;
}
