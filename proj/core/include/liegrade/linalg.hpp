#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liegrade/rational.hpp"

namespace liegrade {

using Index = std::uint32_t;

/// Sparse rational vector: entries sorted by index, no explicit zeros.
class SparseVector {
 public:
  using Entry = std::pair<Index, Rational>;

  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> entries);  // sorts, merges, drops zeros

  static SparseVector unit(Index i, const Rational& value = 1);
  static SparseVector from_dense(std::span<const Rational> values);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  Rational at(Index i) const;
  /// Largest index + 1, or 0 when empty.
  Index extent() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

  /// this += factor * other
  void add_scaled(const SparseVector& other, const Rational& factor);
  SparseVector scaled(const Rational& factor) const;
  std::vector<Rational> to_dense(std::size_t dim) const;
  /// Appends an entry whose index exceeds every stored index.
  void push_back(Index i, Rational value);

  SparseVector operator+(const SparseVector& o) const;
  SparseVector operator-(const SparseVector& o) const;
  SparseVector operator-() const;
  bool operator==(const SparseVector& o) const = default;

 private:
  std::vector<Entry> entries_;
};

Rational dot(const SparseVector& a, const SparseVector& b);

/// Exact sparse matrix stored by rows.
class SparseRationalMatrix {
 public:
  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), ncols_(cols) {}

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return ncols_; }
  const SparseVector& row(std::size_t r) const { return rows_[r]; }
  const std::vector<SparseVector>& rows() const { return rows_; }
  std::size_t nnz() const;

  void set_row(std::size_t r, SparseVector row) { rows_[r] = std::move(row); }
  void append_row(SparseVector row) { rows_.push_back(std::move(row)); }

  SparseVector multiply(const SparseVector& x) const;
  bool is_integral() const;
  SparseRationalMatrix transposed() const;
  SparseRationalMatrix submatrix(std::span<const Index> rows, std::span<const Index> cols) const;

 private:
  std::vector<SparseVector> rows_;
  std::size_t ncols_ = 0;
};

/// Accumulates (row, col, value) triplets; duplicates are summed.
class TripletBuilder {
 public:
  TripletBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  void add(std::size_t row, std::size_t col, const Rational& value);
  std::size_t num_rows() const { return rows_; }
  std::size_t num_cols() const { return cols_; }
  SparseRationalMatrix build() const;

 private:
  struct Triplet {
    Index row;
    Index col;
    Rational value;
  };
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Triplet> triplets_;
};

enum class SolveMode { Exact, ModP, ModPCertify };

std::string to_string(SolveMode mode);
SolveMode parse_solve_mode(std::string_view text);

struct ModpConfig {
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  int agreeing_primes = 2;
  int max_primes = 8;
};

struct RankResult {
  std::size_t rank = 0;
  SolveMode mode = SolveMode::Exact;
  /// Exact mode, or mod-p rank re-verified exactly on the pivot submatrix.
  bool certified = false;
  /// Mod-p rank equals the maximum possible (min(rows, cols)) so no prime can be unlucky.
  bool maximal = false;
  std::vector<std::uint64_t> primes;
};

/// Rank over Q (exact) or over F_p (two agreeing ~62-bit primes); certify re-checks the
/// mod-p pivot minor exactly, which makes the reported value a proven lower bound.
RankResult rank(const SparseRationalMatrix& m, SolveMode mode, const ModpConfig& config = {});

/// Exact kernel basis (column vectors as sparse vectors of length num_cols).
std::vector<SparseVector> kernel(const SparseRationalMatrix& m);

/// Rank modulo a single prime; throws PrimeCollision if p divides a denominator.
std::size_t rank_mod_p(const SparseRationalMatrix& m, std::uint64_t p,
                       std::vector<Index>* pivot_rows = nullptr,
                       std::vector<Index>* pivot_cols = nullptr);

/// Deterministic sequence of primes in [2^61, 2^62).
std::vector<std::uint64_t> generate_primes(std::uint64_t seed, std::size_t count);
bool is_prime_u64(std::uint64_t n);

/// Linear subspace of Q^n in canonical form: reduced echelon rows with leftmost pivots,
/// each row scaled to a primitive integer vector with positive pivot.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, std::span<const SparseVector> vectors);
  static Subspace full(std::size_t ambient_dim);
  static Subspace coordinate(std::size_t ambient_dim, std::span<const Index> indices);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<SparseVector>& basis() const { return rows_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  bool contains(const SparseVector& v) const;
  bool contains(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
  /// Coordinates of v in the canonical basis; v must lie in the subspace.
  std::vector<Rational> coordinates(const SparseVector& v) const;

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }

 private:
  std::size_t ambient_;
  std::vector<SparseVector> rows_;
  std::vector<Index> pivots_;
};

/// Exact determinant of a small square dense matrix.
Rational determinant(std::vector<std::vector<Rational>> a);
/// Exact inverse of a small square dense matrix; throws InternalError if singular.
std::vector<std::vector<Rational>> inverse_matrix(std::vector<std::vector<Rational>> a);

}  // namespace liegrade
