#include "liegrade/registry.hpp"

#include "liegrade/error.hpp"
#include "liegrade/subadjoint.hpp"

namespace liegrade {

namespace {

CaseDescriptor make(DynkinLabel label, std::size_t dim_l, std::size_t dim_l1, std::string notes) {
  CaseDescriptor d;
  d.s_label = label;
  d.case_id = label.str();
  d.dim_l = dim_l;
  d.dim_l1 = dim_l1;
  d.dim_V = 2 * dim_l1 + 2;
  const std::size_t dim_l0 = dim_l - 2 * dim_l1;
  d.g_dims = {dim_l1, dim_l0 + 2, 2 * dim_l1, dim_l1, 1};
  d.marked_roots = expected_marked_roots(label);
  d.notes = std::move(notes);
  return d;
}

// l = sl_2 + so_m with its quadric Q^{m-2}: dim l_1 = 1 + (m - 2).
CaseDescriptor segre(DynkinLabel label, int m) {
  const std::size_t so = static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2;
  return make(label, 3 + so, static_cast<std::size_t>(m - 1),
              "Segre product P^1 x Q^" + std::to_string(m - 2) + ", l = sl_2 + so_" + std::to_string(m));
}

std::optional<CaseDescriptor> describe(const DynkinLabel& label) {
  switch (label.type) {
    case DynkinType::B:
      if (label.rank < 3) return std::nullopt;
      return segre(label, 2 * label.rank - 3);
    case DynkinType::D:
      return segre(label, 2 * label.rank - 4);
    case DynkinType::F:
      return make(label, 21, 6, "Lagrangian Grassmannian LG(3,6), l = sp_6");
    case DynkinType::E:
      if (label.rank == 6) return make(label, 35, 9, "Grassmannian Gr(3,6), l = sl_6");
      if (label.rank == 7) return make(label, 66, 15, "spinor variety S_6, l = so_12");
      return make(label, 133, 27, "27-dimensional minuscule E7/P7, l = e_7");
    case DynkinType::G: {
      CaseDescriptor d;
      d.s_label = label;
      d.case_id = label.str();
      d.excluded = true;
      d.reason = "twisted cubic case (0)";
      d.notes = "twisted cubic curve in P^3";
      return d;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::vector<CaseDescriptor> list_cases(const RegistryConfig& config) {
  std::vector<CaseDescriptor> out;
  for (int r = 3; r <= config.rank_ceiling; ++r) out.push_back(*describe({DynkinType::B, r}));
  for (int r = 4; r <= config.rank_ceiling; ++r) out.push_back(*describe({DynkinType::D, r}));
  out.push_back(*describe({DynkinType::F, 4}));
  for (int r = 6; r <= 8; ++r) out.push_back(*describe({DynkinType::E, r}));
  out.push_back(*describe({DynkinType::G, 2}));
  return out;
}

std::optional<CaseDescriptor> find_case(const std::string& case_id) {
  try {
    return describe(DynkinLabel::parse(case_id));
  } catch (const InvalidLabel&) {
    return std::nullopt;
  }
}

bool descriptor_consistent(const CaseDescriptor& d) {
  if (d.excluded) return true;
  std::size_t g = 0;
  for (auto x : d.g_dims) g += x;
  return d.dim_V == 2 * d.dim_l1 + 2 && g == 1 + d.dim_l + d.dim_V;
}

}  // namespace liegrade
