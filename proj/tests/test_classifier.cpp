#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "nilbench/classifier.hpp"
#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/parse.hpp"
#include "nilbench/report.hpp"

using namespace nilbench;
using nlohmann::json;

namespace {

Verdict v(const ClassificationReport& r, const char* key) { return r.at(key).verdict; }

// Enough of JSON Schema for the report schema: type, required, enum, pattern, minimum,
// properties, additionalProperties, items, minItems, maxItems and local $ref.
void validate(const json& schema, const json& root, const json& x, const std::string& where,
              std::vector<std::string>& errors) {
  if (schema.contains("$ref")) {
    std::string ref = schema["$ref"].get<std::string>().substr(2);
    const json* s = &root;
    for (std::size_t p = 0, q; p < ref.size(); p = q + 1) {
      q = ref.find('/', p);
      if (q == std::string::npos) q = ref.size();
      s = &(*s)[ref.substr(p, q - p)];
    }
    validate(*s, root, x, where, errors);
    return;
  }
  auto fail = [&](const std::string& m) { errors.push_back(where + ": " + m); };
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    bool ok = (t == "object" && x.is_object()) || (t == "array" && x.is_array()) || (t == "string" && x.is_string()) ||
              (t == "boolean" && x.is_boolean()) || (t == "integer" && x.is_number_integer()) ||
              (t == "number" && x.is_number());
    if (!ok) return fail("expected " + t);
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == x;
    if (!found) fail("not in enum");
  }
  if (schema.contains("pattern") && x.is_string() &&
      !std::regex_match(x.get<std::string>(), std::regex(schema["pattern"].get<std::string>())))
    fail("pattern mismatch");
  if (schema.contains("minimum") && x.is_number() && x.get<double>() < schema["minimum"].get<double>())
    fail("below minimum");
  if (x.is_object()) {
    for (const auto& k : schema.value("required", json::array()))
      if (!x.contains(k.get<std::string>())) fail("missing " + k.get<std::string>());
    for (const auto& [k, val] : x.items()) {
      if (schema.contains("properties") && schema["properties"].contains(k))
        validate(schema["properties"][k], root, val, where + "." + k, errors);
      else if (schema.contains("additionalProperties") && schema["additionalProperties"].is_object())
        validate(schema["additionalProperties"], root, val, where + "." + k, errors);
    }
  }
  if (x.is_array()) {
    if (schema.contains("minItems") && x.size() < schema["minItems"].get<std::size_t>()) fail("too few items");
    if (schema.contains("maxItems") && x.size() > schema["maxItems"].get<std::size_t>()) fail("too many items");
    if (schema.contains("items"))
      for (std::size_t i = 0; i < x.size(); ++i)
        validate(schema["items"], root, x[i], where + "[" + std::to_string(i) + "]", errors);
  }
}

json load_schema() {
  std::ifstream f(std::string(NILBENCH_SOURCE_DIR) + "/docs/report.schema.json");
  REQUIRE(f);
  return json::parse(f);
}

}  // namespace

TEST_CASE("semigroup files") {
  ParsedInput in = parse_input("points: 4\n// two orbits\ngen c = (1,2,#)(3,4,#)\n");
  REQUIRE(in.generators.size() == 1);
  CHECK(in.generators[0].first == "c");
  CHECK(in.generators[0].second.degree() == 4);

  ParsedInput g = parse_input("gallery: N 3\n");
  CHECK(g.kind == ParsedInput::Kind::Gallery);
  CHECK(input_generators(g).size() == gallery_generators("N", {"3"}).size());

  CHECK_THROWS_AS(parse_input("points: 4\ngen x = [5]\n"), SemanticError);
  CHECK_THROWS_AS(parse_input("gen x = [1]\n"), SemanticError);
  CHECK_THROWS_AS(parse_input("points: 2\ngen x = [1,2]\ngen x = [2,1]\n"), SemanticError);
  try {
    parse_input("points: 3\n\n  colour: red\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("rees blocks") {
  ParsedInput in = parse_input("rees:\ngroup: C 2\nrows: 2\ncols: 2\nsandwich:\ng0 #\ng1 g0\n");
  REQUIRE(in.kind == ParsedInput::Kind::Rees);
  CHECK(in.rees.group.order == 2);
  CHECK(build_rees(in.rees).size() == 9);
  CHECK_THROWS_AS(parse_input("rees:\nrows: 2\ncols: 1\nsandwich:\n# #\n"), SemanticError);
  CHECK_THROWS_AS(input_generators(in), BadParameter);
}

TEST_CASE("round trip through the file format") {
  auto gens = gallery_generators("M3");
  ParsedInput in = parse_input(format_input(gens));
  REQUIRE(in.generators.size() == gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) CHECK(in.generators[i].second == gens[i].second);
}

TEST_CASE("trivial semigroup is in everything") {
  ClassificationReport r = classify(build_cyclic(1));
  for (const auto& key : pseudovariety_keys()) CHECK_MESSAGE(v(r, key.c_str()) == Verdict::Member, key);
}

TEST_CASE("reports for M1 and N1") {
  ClassificationReport m1 = classify(build_gallery("M1"));
  CHECK(v(m1, "SMN") == Verdict::Member);
  CHECK(v(m1, "JmGnil") == Verdict::Member);
  ClassificationReport n1 = classify(build_gallery("N1"));
  CHECK(v(n1, "BG_nil") == Verdict::Member);
  CHECK(v(n1, "MN") == Verdict::NotMember);
  CHECK(v(n1, "JmGnil") == Verdict::NotMember);
  CHECK_FALSE(n1.at("JmGnil").classes.empty());
  for (const auto& [k, ok] : n1.consistency) CHECK_MESSAGE(ok, k);
}

TEST_CASE("json reports match the schema and read back") {
  const json schema = load_schema();
  for (const char* id : {"M3", "N1", "Example18"}) {
    ClassificationReport r = classify(build_gallery(id));
    r.name = id;
    const std::string text = emit_report(r, ReportFormat::Json);
    std::vector<std::string> errors;
    validate(schema, schema, json::parse(text), "$", errors);
    for (const auto& e : errors) FAIL(e);
    ClassificationReport back = report_from_json(text);
    CHECK(back.digest == r.digest);
    CHECK(emit_report(back, ReportFormat::Json) == text);
  }
  CHECK_THROWS_AS(report_from_json("{"), ParseError);
}

TEST_CASE("text report lists every key") {
  ClassificationReport r = classify(build_gallery("M2"));
  std::string text = emit_report(r, ReportFormat::Text);
  for (const auto& key : pseudovariety_keys()) CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("verdict chain") {
  ClassificationReport r = classify(build_gallery("M1"));
  CHECK_NOTHROW(check_verdict_chain(r));
  r.verdicts["MN"].verdict = Verdict::NotMember;
  CHECK_THROWS_AS(check_verdict_chain(r), InternalInconsistency);
}

TEST_CASE("Cayley engine agrees with the table") {
  for (const char* n : {"5", "8"}) {
    auto gens = gallery_generators("N", {n});
    ClassifyOptions tiny;
    tiny.table_cap = 10;
    ClassificationReport big = classify(gens, tiny);
    ClassificationReport small = classify(gens);
    CHECK(big.engine == "cayley");
    CHECK(small.engine == "table");
    CHECK(big.size == small.size);
    for (const char* key : {"A", "BG", "BG_nil", "BI", "MN", "SMN", "JmGnil"})
      CHECK_MESSAGE(v(big, key) == v(small, key), n, " ", key);
  }
}

TEST_CASE("groups in the nilpotent pseudovariety") {
  CHECK(group_in_gnil(build_q8()) == std::optional<bool>(true));
  CHECK(group_in_gnil(build_s3()) == std::optional<bool>(false));
}
