#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liegrade/lie_algebra.hpp"

namespace liegrade {

enum class DynkinType { A, B, C, D, E, F, G };

struct DynkinLabel {
  DynkinType type = DynkinType::A;
  int rank = 1;

  std::string str() const;
  /// "B3", "e8", ...; throws InvalidLabel on unknown type or rank out of range.
  static DynkinLabel parse(std::string_view text);
  bool operator==(const DynkinLabel&) const = default;
};

using IntVector = std::vector<int>;
using IntMatrix = std::vector<IntVector>;

/// Root data of a simple Lie algebra, Bourbaki numbering of simple roots.
struct RootSystem {
  DynkinLabel label;
  /// Integer multiple of the Gram matrix (alpha_i, alpha_j).
  IntMatrix gram;
  /// cartan[i][j] = <alpha_j, alpha_i^vee>.
  IntMatrix cartan;
  /// Simple-root coordinates, ordered by height then lexicographically descending.
  std::vector<IntVector> positive_roots;
  IntVector highest_root;

  int rank() const { return label.rank; }
  std::size_t dimension() const { return static_cast<std::size_t>(rank()) + 2 * positive_roots.size(); }
  int inner(const IntVector& a, const IntVector& b) const;
  /// <a, alpha_i^vee>
  int pairing(const IntVector& a, int i) const;
  /// Index in positive_roots, if a is a positive root.
  std::optional<std::size_t> positive_index(const IntVector& a) const;
  bool is_root(const IntVector& a) const;
};

int height(const IntVector& root);

RootSystem build_root_system(const DynkinLabel& label);

/// Chevalley basis: h_1..h_n, then e_alpha for positive roots, then e_{-alpha} in the same
/// order. Structure constants are fixed by positive extraspecial pairs.
LieAlgebraTable chevalley_table(const RootSystem& rs);

/// Basis index of e_alpha for a (possibly negative) root in the Chevalley table.
Index root_vector_index(const RootSystem& rs, const IntVector& root);
/// Root of basis index i (zero vector for Cartan elements).
IntVector root_of_index(const RootSystem& rs, Index i);

/// Coroot alpha^vee written in the basis h_1..h_n (integer coefficients).
SparseVector coroot(const RootSystem& rs, const IntVector& root);

enum class WeightBasis { Fundamental, SimpleRoot };

struct WeightVector {
  std::vector<Rational> coords;
  WeightBasis basis = WeightBasis::Fundamental;
  bool operator==(const WeightVector&) const = default;
};

/// c = A^{-1} m: fundamental-weight coordinates m to simple-root coordinates c.
WeightVector to_simple_root_coords(const WeightVector& w, const RootSystem& rs);
WeightVector to_fundamental_coords(const WeightVector& w, const RootSystem& rs);

/// Exact inverse of the Cartan matrix.
std::vector<std::vector<Rational>> inverse_cartan(const RootSystem& rs);

}  // namespace liegrade
