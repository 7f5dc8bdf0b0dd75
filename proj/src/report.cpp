#include "nilbench/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "nilbench/errors.hpp"

namespace nilbench {

using nlohmann::json;

const char* side_name(Side s) { return s == Side::Right ? "right" : "left"; }

namespace {

Verdict verdict_from(const std::string& s) {
  if (s == "member") return Verdict::Member;
  if (s == "not_member") return Verdict::NotMember;
  if (s == "unknown") return Verdict::Unknown;
  throw ParseError("bad verdict '" + s + "'", 1, 1);
}

Extendible extendible_from(const std::string& s) {
  if (s == "yes") return Extendible::Yes;
  if (s == "no") return Extendible::No;
  if (s == "unknown_at_bound") return Extendible::UnknownAtBound;
  throw ParseError("bad extendibility '" + s + "'", 1, 1);
}

json to_json(const VerdictEntry& v) {
  json j;
  j["verdict"] = verdict_name(v.verdict);
  j["reason"] = v.reason;
  j["millis"] = v.millis;
  if (v.tuple) {
    j["tuple"] = {{"t", v.tuple->t},
                  {"tuple", v.tuple->tuple},
                  {"words", v.tuple->words},
                  {"distinct", v.tuple->distinct},
                  {"replayed", v.tuple->replayed}};
  }
  if (v.rotation) {
    const auto& r = *v.rotation;
    j["rotation"] = {{"layer", r.layer}, {"j_class", r.j_class}, {"t", r.t}, {"alpha", r.alpha},
                     {"beta", r.beta},   {"v", r.v},             {"y", r.y}};
  }
  if (!v.classes.empty()) {
    json arr = json::array();
    for (const auto& c : v.classes) {
      json e{{"side", side_name(c.side)},
             {"class_id", c.class_id},
             {"representative", c.representative},
             {"vertices", c.vertices},
             {"inverse_graph", c.inverse_graph},
             {"extendible", extendible_name(c.verdict)},
             {"congruence", c.congruence},
             {"primes", c.primes},
             {"exact", c.exact}};
      if (c.witness) e["witness"] = {c.witness->first, c.witness->second};
      arr.push_back(std::move(e));
    }
    j["classes"] = std::move(arr);
  }
  return j;
}

VerdictEntry entry_from(const json& j) {
  VerdictEntry v;
  v.verdict = verdict_from(j.at("verdict").get<std::string>());
  v.reason = j.at("reason").get<std::string>();
  v.millis = j.at("millis").get<double>();
  if (j.contains("tuple")) {
    const json& t = j["tuple"];
    RenderedTuple r;
    r.t = t.at("t").get<std::size_t>();
    r.tuple = t.at("tuple").get<std::vector<std::string>>();
    r.words = t.at("words").get<std::vector<std::string>>();
    r.distinct = t.at("distinct").get<bool>();
    r.replayed = t.at("replayed").get<bool>();
    v.tuple = std::move(r);
  }
  if (j.contains("rotation")) {
    const json& t = j["rotation"];
    RenderedRotation r;
    r.layer = t.at("layer").get<std::size_t>();
    r.j_class = t.at("j_class").get<std::uint32_t>();
    r.t = t.at("t").get<std::size_t>();
    r.alpha = t.at("alpha").get<std::vector<std::uint32_t>>();
    r.beta = t.at("beta").get<std::vector<std::uint32_t>>();
    r.v = t.at("v").get<std::vector<std::string>>();
    r.y = t.at("y").get<std::vector<std::string>>();
    v.rotation = std::move(r);
  }
  if (j.contains("classes")) {
    for (const json& e : j["classes"]) {
      ExtendibilityEvidence c;
      c.side = e.at("side").get<std::string>() == "right" ? Side::Right : Side::Left;
      c.class_id = e.at("class_id").get<std::uint32_t>();
      c.representative = e.at("representative").get<std::string>();
      c.vertices = e.at("vertices").get<std::size_t>();
      c.inverse_graph = e.at("inverse_graph").get<bool>();
      c.verdict = extendible_from(e.at("extendible").get<std::string>());
      c.congruence = e.at("congruence").get<std::vector<std::uint32_t>>();
      c.primes = e.at("primes").get<std::vector<std::uint64_t>>();
      c.exact = e.at("exact").get<bool>();
      if (e.contains("witness")) c.witness = std::make_pair(e["witness"].at(0).get<std::uint32_t>(), e["witness"].at(1).get<std::uint32_t>());
      v.classes.push_back(std::move(c));
    }
  }
  return v;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string text_table(const ClassificationReport& r) {
  std::ostringstream out;
  if (!r.name.empty()) out << r.name << "\n";
  out << "size " << r.size << "  engine " << r.engine << "  digest " << hex(r.digest) << "\n\n";
  for (const auto& key : pseudovariety_keys()) {
    auto it = r.verdicts.find(key);
    if (it == r.verdicts.end()) continue;
    const VerdictEntry& v = it->second;
    char line[64];
    std::snprintf(line, sizeof line, "%-20s %-11s ", key.c_str(), verdict_name(v.verdict));
    out << line << v.reason << "\n";
    if (v.rotation) {
      out << "    rotation t=" << v.rotation->t << " layer " << v.rotation->layer << ":";
      for (const auto& w : v.rotation->v) out << " " << w;
      out << "\n";
    }
    if (v.tuple) {
      out << "    tuple (";
      for (std::size_t i = 0; i < v.tuple->tuple.size(); ++i) out << (i ? ", " : "") << v.tuple->tuple[i];
      out << ") words " << v.tuple->words.size() << (v.tuple->replayed ? ", replayed" : ", REPLAY FAILED") << "\n";
    }
  }
  out << "\n";
  for (const auto& [k, ok] : r.consistency) out << "consistency " << k << ": " << (ok ? "ok" : "FAILED") << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  if (r.budget_exceeded) out << "budget exceeded; some verdicts are unknown\n";
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.1f ms", r.millis);
  out << "time " << ms << "\n";
  return out.str();
}

}  // namespace

std::string emit_report(const ClassificationReport& r, ReportFormat format) {
  if (format == ReportFormat::Text) return text_table(r);
  json j;
  j["name"] = r.name;
  j["digest"] = hex(r.digest);
  j["size"] = r.size;
  j["engine"] = r.engine;
  json verdicts = json::object();
  for (const auto& [k, v] : r.verdicts) verdicts[k] = to_json(v);
  j["verdicts"] = std::move(verdicts);
  j["consistency"] = r.consistency;
  j["notes"] = r.notes;
  j["budget_exceeded"] = r.budget_exceeded;
  j["millis"] = r.millis;
  return j.dump(2) + "\n";
}

ClassificationReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 1, e.byte);
  }
  try {
    ClassificationReport r;
    r.name = j.at("name").get<std::string>();
    r.digest = std::stoull(j.at("digest").get<std::string>(), nullptr, 16);
    r.size = j.at("size").get<std::size_t>();
    r.engine = j.at("engine").get<std::string>();
    for (const auto& [k, v] : j.at("verdicts").items()) r.verdicts[k] = entry_from(v);
    r.consistency = j.at("consistency").get<std::map<std::string, bool>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.budget_exceeded = j.at("budget_exceeded").get<bool>();
    r.millis = j.at("millis").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

}  // namespace nilbench
