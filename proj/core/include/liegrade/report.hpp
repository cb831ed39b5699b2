#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace liegrade {

enum class Status { Pass, Fail, Inconclusive, Skipped };

std::string to_string(Status s);
Status parse_status(std::string_view text);

struct CheckRecord {
  std::string id;
  Status status = Status::Pass;
  std::map<std::string, long long> dims;
  std::map<std::string, std::string> values;  // rationals as "p/q" (integers without "/1")
  std::vector<std::string> witnesses;
  std::string mode = "exact";
  long long millis = 0;

  bool operator==(const CheckRecord&) const = default;
};

struct VerificationReport {
  std::string version;
  std::string case_id;
  Status status = Status::Pass;
  bool vacuous = false;  // no checks ran
  std::vector<CheckRecord> checks;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::string> notes;

  bool operator==(const VerificationReport&) const = default;
};

/// FAIL dominates, then INCONCLUSIVE, then SKIPPED; no checks gives a vacuous PASS.
void finalize(VerificationReport& r);

enum class Format { Text, Json };
Format parse_format(std::string_view text);

/// One report renders as a JSON object, several as an array. Output is deterministic.
std::string emit(const std::vector<VerificationReport>& reports, Format format);
std::string emit(const VerificationReport& report, Format format);

/// Inverse of the JSON emitter (object or array).
std::vector<VerificationReport> parse_reports_json(const std::string& text);

/// CLI exit code: 0 all PASS, 1 any FAIL, 2 only INCONCLUSIVE/SKIPPED degradations.
int exit_code(const std::vector<VerificationReport>& reports);

}  // namespace liegrade
