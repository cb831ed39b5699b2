#include "liegrade/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "liegrade/error.hpp"

namespace liegrade {

using nlohmann::ordered_json;

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
    case Status::Skipped: return "SKIPPED";
  }
  return "FAIL";
}

Status parse_status(std::string_view text) {
  if (text == "PASS") return Status::Pass;
  if (text == "FAIL") return Status::Fail;
  if (text == "INCONCLUSIVE") return Status::Inconclusive;
  if (text == "SKIPPED") return Status::Skipped;
  throw Error("unknown status '" + std::string(text) + "'");
}

void finalize(VerificationReport& r) {
  r.vacuous = r.checks.empty();
  bool fail = false, inconclusive = false, skipped = false;
  for (const auto& c : r.checks) {
    fail |= c.status == Status::Fail;
    inconclusive |= c.status == Status::Inconclusive;
    skipped |= c.status == Status::Skipped;
  }
  r.status = fail ? Status::Fail : inconclusive ? Status::Inconclusive : skipped ? Status::Skipped : Status::Pass;
}

Format parse_format(std::string_view text) {
  if (text == "text") return Format::Text;
  if (text == "json") return Format::Json;
  throw Error("unknown format '" + std::string(text) + "'");
}

namespace {

ordered_json to_json(const VerificationReport& r) {
  ordered_json j;
  j["version"] = r.version;
  j["case"] = r.case_id;
  j["status"] = to_string(r.status);
  j["vacuous"] = r.vacuous;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json cj;
    cj["id"] = c.id;
    cj["status"] = to_string(c.status);
    if (!c.dims.empty()) {
      ordered_json d = ordered_json::object();
      for (const auto& [k, v] : c.dims) d[k] = v;
      cj["dims"] = d;
    }
    if (!c.values.empty()) {
      ordered_json d = ordered_json::object();
      for (const auto& [k, v] : c.values) d[k] = v;
      cj["values"] = d;
    }
    if (!c.witnesses.empty()) cj["witnesses"] = c.witnesses;
    cj["mode"] = c.mode;
    cj["millis"] = c.millis;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  ordered_json env;
  env["seed"] = r.seed;
  env["primes"] = r.primes;
  j["environment"] = std::move(env);
  j["notes"] = r.notes;
  return j;
}

VerificationReport from_json(const ordered_json& j) {
  VerificationReport r;
  r.version = j.at("version").get<std::string>();
  r.case_id = j.at("case").get<std::string>();
  r.status = parse_status(j.at("status").get<std::string>());
  r.vacuous = j.value("vacuous", false);
  for (const auto& cj : j.at("checks")) {
    CheckRecord c;
    c.id = cj.at("id").get<std::string>();
    c.status = parse_status(cj.at("status").get<std::string>());
    if (cj.contains("dims")) {
      for (const auto& [k, v] : cj["dims"].items()) c.dims[k] = v.get<long long>();
    }
    if (cj.contains("values")) {
      for (const auto& [k, v] : cj["values"].items()) c.values[k] = v.get<std::string>();
    }
    if (cj.contains("witnesses")) c.witnesses = cj["witnesses"].get<std::vector<std::string>>();
    c.mode = cj.at("mode").get<std::string>();
    c.millis = cj.at("millis").get<long long>();
    r.checks.push_back(std::move(c));
  }
  const auto& env = j.at("environment");
  r.seed = env.at("seed").get<std::uint64_t>();
  r.primes = env.at("primes").get<std::vector<std::uint64_t>>();
  if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();
  return r;
}

void emit_text(std::ostream& os, const VerificationReport& r) {
  os << "case " << r.case_id << ": " << to_string(r.status) << (r.vacuous ? " (vacuous: no checks)" : "")
     << "  [liegrade " << r.version << ", seed " << r.seed << "]\n";
  std::size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.id.size());
  for (const auto& c : r.checks) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << c.id << "  " << std::setw(12)
       << to_string(c.status) << " " << c.mode;
    if (c.millis) os << " " << c.millis << "ms";
    os << "\n";
    if (!c.dims.empty()) {
      os << "      dims:";
      for (const auto& [k, v] : c.dims) os << " " << k << "=" << v;
      os << "\n";
    }
    if (!c.values.empty()) {
      os << "      values:";
      for (const auto& [k, v] : c.values) os << " " << k << "=" << v;
      os << "\n";
    }
    for (const auto& w : c.witnesses) os << "      witness: " << w << "\n";
  }
  if (!r.primes.empty()) {
    os << "  primes:";
    for (auto p : r.primes) os << " " << p;
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
}

}  // namespace

std::string emit(const std::vector<VerificationReport>& reports, Format format) {
  if (format == Format::Json) {
    if (reports.size() == 1) return to_json(reports[0]).dump(2) + "\n";
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& r : reports) emit_text(os, r);
  return os.str();
}

std::string emit(const VerificationReport& report, Format format) {
  return emit(std::vector<VerificationReport>{report}, format);
}

std::vector<VerificationReport> parse_reports_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  std::vector<VerificationReport> out;
  if (j.is_array()) {
    for (const auto& r : j) out.push_back(from_json(r));
  } else {
    out.push_back(from_json(j));
  }
  return out;
}

int exit_code(const std::vector<VerificationReport>& reports) {
  bool degraded = false;
  for (const auto& r : reports) {
    if (r.status == Status::Fail) return 1;
    if (r.status != Status::Pass) degraded = true;
  }
  return degraded ? 2 : 0;
}

}  // namespace liegrade
