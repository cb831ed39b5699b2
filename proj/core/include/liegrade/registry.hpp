#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "liegrade/rootsys.hpp"

namespace liegrade {

/// One row of the classification with dimensions from the classical formulas (not from
/// the construction, which the verifier compares against).
struct CaseDescriptor {
  std::string case_id;
  DynkinLabel s_label;
  bool excluded = false;
  std::string reason;               // why an excluded row is excluded
  std::size_t dim_V = 0;
  std::size_t dim_l1 = 0;
  std::size_t dim_l = 0;
  std::array<std::size_t, 5> g_dims{};  // g_{-1} .. g_3
  std::vector<int> marked_roots;    // 1-based nodes of s
  std::string notes;
};

struct RegistryConfig {
  int rank_ceiling = 8;             // largest rank of the B and D series
};

/// Active cases B3..B_c, D4..D_c, F4, E6, E7, E8, followed by the excluded G2 row.
std::vector<CaseDescriptor> list_cases(const RegistryConfig& config = {});

/// Registry lookup by id ("B5", "E7", "G2"); any valid B/D rank is accepted.
std::optional<CaseDescriptor> find_case(const std::string& case_id);

/// dim V = 2 dim l_1 + 2 and dim g = 1 + dim l + dim V.
bool descriptor_consistent(const CaseDescriptor& d);

}  // namespace liegrade
