#pragma once

#include <vector>

#include "liegrade/subadjoint.hpp"

namespace liegrade {

/// g = (C Id_V + l) x| V with degrees Id -> 0, l_i -> i, V_j -> j.
/// Basis order: Id_V, the l basis of the case, the V basis of the case.
struct GAlgebra {
  LieAlgebraTable table;
  Grading grading;
  std::size_t dim_l = 0;
  std::size_t dim_V = 0;

  Index id = 0;
  Index v0 = 0;
  std::vector<Index> l1, V0, V1, V2, V3;  // g-indices of the markers
  /// Weight of each basis vector in simple-root coordinates of s (zero for Id and Cartan).
  std::vector<IntVector> root;

  std::size_t dim() const { return table.dim(); }
  Index from_l(Index l_local) const { return 1 + l_local; }
  Index from_V(Index v_local) const { return static_cast<Index>(1 + dim_l + v_local); }
  bool is_V(Index i) const { return i > dim_l; }
  bool is_l(Index i) const { return i >= 1 && i <= dim_l; }
  int degree(Index i) const { return grading.degree[i]; }
  std::vector<Index> part(int d) const { return grading.indices(d); }
  /// Basis of g_+ = g_1 + g_2 + g_3 in index order.
  std::vector<Index> plus() const;
};

GAlgebra build_g(const SubadjointCase& c);

/// Matrix of A = ad(v0) on g.
SparseRationalMatrix operator_A(const GAlgebra& g);

/// Structural invariants of g: component dims, [V, V] = 0, Id action, Jacobi, injectivity
/// of g_0 -> gl(g_1), invariance of V_1 with an honest l_0-action on g_1 / V_1, and the
/// c functional reproduced inside g.
std::vector<CaseCheck> check_g_invariants(const SubadjointCase& c, const GAlgebra& g);

/// The five identity checks: e.II coefficients, V_1 as annihilator of V_2, l_1 cap V_1 = 0,
/// A l_1 = V_1, and A^2 = 0 with Id + sA an automorphism (coefficientwise in s).
std::vector<CaseCheck> verify_structure_identities(const GAlgebra& g);

}  // namespace liegrade
