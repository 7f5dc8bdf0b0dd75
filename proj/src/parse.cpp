#include "nilbench/parse.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/lm_representation.hpp"

namespace nilbench {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped, right-trimmed
  std::size_t indent;     // column offset of text within the raw line
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const std::size_t nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = raw.find("//"); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view t = trim(raw);
    if (t.empty()) {
      if (text.empty()) break;
      continue;
    }
    out.push_back({number, t, std::size_t(t.data() - raw.data())});
    if (text.empty()) break;
  }
  return out;
}

std::size_t parse_count(const Line& line, std::string_view value, std::size_t column) {
  value = trim(value);
  if (value.empty()) throw ParseError("expected a number", line.number, column);
  std::size_t v = 0;
  for (char c : value) {
    if (c < '0' || c > '9') throw ParseError("expected a number", line.number, column);
    v = v * 10 + std::size_t(c - '0');
    if (v > 1'000'000) throw ParseError("number too large", line.number, column);
  }
  return v;
}

// "key: value" split; npos if no colon.
std::pair<std::string_view, std::string_view> key_value(std::string_view t) {
  const std::size_t colon = t.find(':');
  if (colon == std::string_view::npos) return {t, {}};
  return {trim(t.substr(0, colon)), t.substr(colon + 1)};
}

}  // namespace

GroupTable named_group(const std::string& spec) {
  auto w = split_words(spec);
  if (w.empty()) throw SemanticError("missing group");
  auto arg = [&]() -> std::size_t {
    if (w.size() != 2) throw SemanticError("group '" + w[0] + "' takes one parameter");
    try {
      return std::stoul(w[1]);
    } catch (const std::exception&) {
      throw SemanticError("bad group parameter '" + w[1] + "'");
    }
  };
  if (w[0] == "trivial" || w[0] == "1") return GroupTable::trivial();
  if (w[0] == "C") return cyclic_group(arg());
  if (w[0] == "S3") return symmetric3_group();
  try {
    if (w[0] == "D") return GroupTable::from_semigroup(build_dihedral(arg()));
    if (w[0] == "Q8") return GroupTable::from_semigroup(build_q8());
  } catch (const BadParameter& e) {
    throw SemanticError(e.what());
  }
  throw SemanticError("unknown group '" + w[0] + "'");
}

ParsedInput parse_input(std::string_view text) {
  ParsedInput in;
  const auto lines = split_lines(text);
  std::set<std::string> names;
  bool saw_points = false, saw_rees = false;
  std::vector<const Line*> pending;  // generator lines, parsed once points are known

  for (std::size_t k = 0; k < lines.size(); ++k) {
    const Line& line = lines[k];
    auto [key, value] = key_value(line.text);
    const std::size_t vcol = line.indent + std::size_t(value.data() - line.text.data()) + 1;
    if (line.text.rfind("gen ", 0) == 0 || line.text.rfind("gen\t", 0) == 0) {
      pending.push_back(&line);
      continue;
    }
    if (value.data() == nullptr) throw ParseError("expected 'key: value' or 'gen <name> = <map>'", line.number, line.indent + 1);
    if (key == "points") {
      in.points = parse_count(line, value, vcol);
      if (in.points == 0 || in.points > PartialMap::kMaxDegree)
        throw SemanticError("points must be between 1 and " + std::to_string(PartialMap::kMaxDegree));
      saw_points = true;
    } else if (key == "adjoin-identity") {
      auto v = trim(value);
      if (v == "true") in.adjoin_identity = true;
      else if (v == "false") in.adjoin_identity = false;
      else throw ParseError("expected true or false", line.number, vcol);
    } else if (key == "gallery") {
      auto w = split_words(value);
      if (w.empty()) throw ParseError("expected a gallery id", line.number, vcol);
      in.kind = ParsedInput::Kind::Gallery;
      in.gallery_id = w[0];
      in.gallery_params.assign(w.begin() + 1, w.end());
    } else if (key == "rees") {
      in.kind = ParsedInput::Kind::Rees;
      saw_rees = true;
      bool have_rows = false, have_cols = false, have_p = false;
      for (++k; k < lines.size(); ++k) {
        const Line& sub = lines[k];
        auto [sk, sv] = key_value(sub.text);
        const std::size_t scol = sub.indent + std::size_t(sv.data() - sub.text.data()) + 1;
        if (sk == "group") {
          in.group_name = std::string(trim(sv));
          in.rees.group = named_group(in.group_name);
        } else if (sk == "rows") {
          in.rees.rows = parse_count(sub, sv, scol);
          have_rows = true;
        } else if (sk == "cols") {
          in.rees.cols = parse_count(sub, sv, scol);
          have_cols = true;
        } else if (sk == "sandwich") {
          if (!have_rows || !have_cols) throw ParseError("rows and cols must precede the sandwich", sub.number, 1);
          in.rees.sandwich.clear();
          for (std::size_t j = 0; j < in.rees.cols; ++j) {
            if (++k >= lines.size()) throw ParseError("sandwich needs one line per column", sub.number, 1);
            const Line& row = lines[k];
            auto entries = split_words(row.text);
            if (entries.size() != in.rees.rows)
              throw ParseError("expected " + std::to_string(in.rees.rows) + " entries", row.number, row.indent + 1);
            for (const auto& e : entries) {
              if (e == "#" || e == "0") {
                in.rees.sandwich.push_back(kThetaIndex);
                continue;
              }
              // Group elements are written g<k>, with g0 the identity.
              if (e.size() < 2 || e[0] != 'g') throw ParseError("bad sandwich entry '" + e + "'", row.number, row.indent + 1);
              std::size_t g = 0;
              for (std::size_t i = 1; i < e.size(); ++i) {
                if (e[i] < '0' || e[i] > '9') throw ParseError("bad sandwich entry '" + e + "'", row.number, row.indent + 1);
                g = g * 10 + std::size_t(e[i] - '0');
              }
              if (g >= in.rees.group.order) throw SemanticError("group element " + e + " out of range");
              in.rees.sandwich.push_back(std::uint32_t(g));
            }
          }
          have_p = true;
        } else {
          --k;
          break;
        }
      }
      if (in.group_name.empty()) {
        in.group_name = "trivial";
        in.rees.group = GroupTable::trivial();
      }
      if (!have_rows || !have_cols || !have_p) throw ParseError("rees block needs rows, cols and sandwich", line.number, 1);
      try {
        validate_rees(in.rees);
      } catch (const MalformedRees& e) {
        throw SemanticError(e.what());
      }
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line.number, line.indent + 1);
    }
  }

  if (in.kind == ParsedInput::Kind::Generators) {
    if (!saw_points) throw SemanticError("missing 'points: n'");
    if (pending.empty()) throw SemanticError("no generators");
  } else if (!pending.empty()) {
    throw SemanticError("generator lines cannot be combined with a gallery or rees input");
  }
  if (saw_rees && in.adjoin_identity) throw SemanticError("adjoin-identity is not supported for rees input");

  for (const Line* line : pending) {
    std::string_view rest = trim(line->text.substr(3));
    const std::size_t eq = rest.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected '='", line->number, line->indent + 1);
    std::string name(trim(rest.substr(0, eq)));
    if (name.empty() || name.find_first_of(" \t.()[],#") != std::string::npos)
      throw ParseError("bad generator name", line->number, line->indent + 5);
    if (!names.insert(name).second) throw SemanticError("duplicate generator name '" + name + "'");
    std::string_view body = trim(rest.substr(eq + 1));
    const std::size_t bcol = line->indent + std::size_t(body.data() - line->text.data()) + 1;
    try {
      PartialMap m = !body.empty() && body.front() == '[' ? parse_image_list(body, in.points)
                                                          : parse_orbits(body, in.points);
      in.generators.emplace_back(std::move(name), std::move(m));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), line->number,
                       bcol + e.column() - 1);
    }
  }
  return in;
}

ParsedInput parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SemanticError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_input(ss.str());
}

std::vector<NamedMap> input_generators(const ParsedInput& in) {
  switch (in.kind) {
    case ParsedInput::Kind::Generators: return in.generators;
    case ParsedInput::Kind::Gallery: return gallery_generators(in.gallery_id, in.gallery_params);
    case ParsedInput::Kind::Rees: break;
  }
  throw BadParameter("rees input has no generating maps");
}

std::string format_input(const std::vector<NamedMap>& gens) {
  if (gens.empty()) throw BadParameter("no generators");
  std::string out = "points: " + std::to_string(gens[0].second.degree()) + "\n";
  for (const auto& [name, m] : gens) out += "gen " + name + " = " + format_map(m) + "\n";
  return out;
}

std::vector<Word> parse_basis(std::string_view text, std::size_t* letters) {
  std::vector<Word> out;
  int top = 0;
  for (const Line& line : split_lines(text)) {
    try {
      Word w = parse_word(line.text);
      for (int x : w) top = std::max(top, std::abs(x));
      out.push_back(std::move(w));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), line.number,
                       line.indent + e.column());
    }
  }
  if (letters) *letters = std::size_t(std::max(top, 2));
  return out;
}

}  // namespace nilbench
