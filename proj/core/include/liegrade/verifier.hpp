#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "liegrade/linalg.hpp"
#include "liegrade/registry.hpp"
#include "liegrade/report.hpp"

namespace liegrade {

enum class CheckGroup { Jacobi, Forms, Xvv, GStructure, Prolong, Spencer, Weights };

using CheckSet = std::set<CheckGroup>;

std::string to_string(CheckGroup g);
/// Comma-separated group names or "all"; an empty string is the empty set. Throws Error
/// on unknown names.
CheckSet parse_check_set(std::string_view text);
CheckSet all_checks();

struct VerifyOptions {
  /// Unset: exact for the B, D and F4 cases, modp-certify for the E series.
  std::optional<SolveMode> mode;
  bool heavy = false;          // E-series prolongation and Spencer solvers
  std::uint64_t seed = 0;
  int kmin = -7;
  bool timings = false;        // millis stay 0 otherwise, keeping output reproducible
  std::size_t xvv_budget = 10;       // samples per irreducible summand of l_1
  std::size_t xvv_max_budget = 160;  // INCONCLUSIVE doubles the budget up to this
  std::size_t expansion_trials = 2;
  /// Exact-mode systems with more rows than this are SKIPPED rather than attempted.
  std::size_t exact_row_limit = 1000000;
};

std::string library_version();

/// Runs the selected groups for one registry case in dependency order. Throws
/// ExcludedCase for G2 and InvalidLabel for unknown ids.
VerificationReport run(const std::string& case_id, const CheckSet& checks, const VerifyOptions& options = {});

/// Runs several cases on up to `jobs` worker threads; reports keep the order of `case_ids`.
std::vector<VerificationReport> run_many(const std::vector<std::string>& case_ids, const CheckSet& checks,
                                         const VerifyOptions& options = {}, unsigned jobs = 1);

/// Ids of the active registry cases.
std::vector<std::string> active_case_ids(const RegistryConfig& config = {});

}  // namespace liegrade
