#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liegrade/linalg.hpp"

namespace liegrade {

/// Finite-dimensional Lie algebra over Q given by basis brackets. Tables are built once
/// and then treated as immutable.
class LieAlgebraTable {
 public:
  LieAlgebraTable() = default;
  explicit LieAlgebraTable(std::vector<std::string> labels);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Sets [e_i, e_j] = v and [e_j, e_i] = -v.
  void set_bracket(Index i, Index j, const SparseVector& v);
  const SparseVector& bracket(Index i, Index j) const { return table_[i * dim() + j]; }
  SparseVector bracket(const SparseVector& x, const SparseVector& y) const;
  /// [e_i, y]
  SparseVector ad(Index i, const SparseVector& y) const;
  /// [x, e_c]
  SparseVector ad_col(const SparseVector& x, Index c) const;
  /// Indices j with [e_i, e_j] != 0.
  const std::vector<Index>& partners(Index i) const { return partners_[i]; }

  /// Matrix of ad(x) acting on column vectors (row r = coordinate r of the output).
  SparseRationalMatrix ad_matrix(const SparseVector& x) const;

  bool is_integral() const;
  bool operator==(const LieAlgebraTable& o) const {
    return labels_ == o.labels_ && table_ == o.table_;
  }

  /// Subalgebra spanned by a set of basis vectors; throws if the span is not closed.
  LieAlgebraTable subalgebra(std::span<const Index> indices) const;

 private:
  std::vector<std::string> labels_;
  std::vector<SparseVector> table_;
  std::vector<std::vector<Index>> partners_;
};

using Triple = std::array<Index, 3>;

/// Basis triples i < j < k on which the Jacobi identity fails (at most `limit` reported).
std::vector<Triple> check_jacobi(const LieAlgebraTable& L, std::size_t limit = 64);

/// Decomposition of L into ad(h)-eigenspaces (or any other graded splitting).
struct Grading {
  /// Per basis index; only meaningful when `diagonal`.
  std::vector<int> degree;
  std::map<int, Subspace> components;
  bool diagonal = false;

  std::size_t dim(int d) const;
  int min_degree() const { return components.empty() ? 0 : components.begin()->first; }
  int max_degree() const { return components.empty() ? 0 : components.rbegin()->first; }
  /// Basis indices of degree d (diagonal gradings only).
  std::vector<Index> indices(int d) const;
};

/// Throws InvalidGradingElement unless ad(h) is diagonalizable over Q with integer spectrum.
Grading grade_by_element(const LieAlgebraTable& L, const SparseVector& h);

/// Grading from an explicit degree per basis vector.
Grading diagonal_grading(std::size_t dim, std::vector<int> degree);

/// [L_i, L_j] within L_{i+j} for every pair of components.
bool check_bracket_additivity(const LieAlgebraTable& L, const Grading& g);

/// Linear action of the basis element `i` of an algebra on a module vector.
using Action = std::function<SparseVector(Index, const SparseVector&)>;

/// {x : action(x, v) in span(v)} inside an algebra of dimension `dim`.
Subspace line_stabilizer(std::size_t dim, const SparseVector& v, const Action& action);
/// Adjoint-action convenience overload.
Subspace line_stabilizer(const LieAlgebraTable& L, const SparseVector& v);

/// Searches for an isomorphism a -> b whose matrix has integer entries in [-bound, bound].
/// Column j of the result is the image of the j-th basis vector of a.
std::optional<std::vector<std::vector<Rational>>> find_isomorphism(const LieAlgebraTable& a,
                                                                   const LieAlgebraTable& b,
                                                                   int bound = 2);

}  // namespace liegrade
