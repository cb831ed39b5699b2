#include "liegrade/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "echelon.hpp"
#include "liegrade/error.hpp"

namespace liegrade {

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return is_zero(e.second); });
}

SparseVector SparseVector::unit(Index i, const Rational& value) {
  SparseVector v;
  if (!is_zero(value)) v.entries_.emplace_back(i, value);
  return v;
}

SparseVector SparseVector::from_dense(std::span<const Rational> values) {
  SparseVector v;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!is_zero(values[i])) v.entries_.emplace_back(static_cast<Index>(i), values[i]);
  }
  return v;
}

Rational SparseVector::at(Index i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, Index k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return 0;
}

void SparseVector::add_scaled(const SparseVector& other, const Rational& factor) {
  if (is_zero(factor) || other.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational s = a->second + factor * b->second;
      if (!is_zero(s)) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

SparseVector SparseVector::scaled(const Rational& factor) const {
  SparseVector v;
  if (is_zero(factor)) return v;
  v.entries_.reserve(entries_.size());
  for (const auto& [i, x] : entries_) v.entries_.emplace_back(i, x * factor);
  return v;
}

std::vector<Rational> SparseVector::to_dense(std::size_t dim) const {
  std::vector<Rational> out(dim);
  for (const auto& [i, x] : entries_) {
    if (i >= dim) throw std::out_of_range("sparse index beyond dense dimension");
    out[i] = x;
  }
  return out;
}

void SparseVector::push_back(Index i, Rational value) {
  if (!entries_.empty() && entries_.back().first >= i) {
    throw InternalError("SparseVector::push_back out of order");
  }
  if (!is_zero(value)) entries_.emplace_back(i, std::move(value));
}

SparseVector SparseVector::operator+(const SparseVector& o) const {
  SparseVector r = *this;
  r.add_scaled(o, 1);
  return r;
}

SparseVector SparseVector::operator-(const SparseVector& o) const {
  SparseVector r = *this;
  r.add_scaled(o, -1);
  return r;
}

SparseVector SparseVector::operator-() const { return scaled(-1); }

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational s = 0;
  auto x = a.entries().begin();
  auto y = b.entries().begin();
  while (x != a.entries().end() && y != b.entries().end()) {
    if (x->first < y->first) {
      ++x;
    } else if (y->first < x->first) {
      ++y;
    } else {
      s += x->second * y->second;
      ++x;
      ++y;
    }
  }
  return s;
}

// --- matrices ---------------------------------------------------------------

std::size_t SparseRationalMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.nnz();
  return n;
}

SparseVector SparseRationalMatrix::multiply(const SparseVector& x) const {
  SparseVector out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out.push_back(static_cast<Index>(r), dot(rows_[r], x));
  }
  return out;
}

bool SparseRationalMatrix::is_integral() const {
  for (const auto& r : rows_) {
    for (const auto& e : r.entries()) {
      if (!is_integer(e.second)) return false;
    }
  }
  return true;
}

SparseRationalMatrix SparseRationalMatrix::transposed() const {
  std::vector<std::vector<SparseVector::Entry>> cols(ncols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [c, v] : rows_[r].entries()) cols[c].emplace_back(static_cast<Index>(r), v);
  }
  SparseRationalMatrix t(ncols_, rows_.size());
  for (std::size_t c = 0; c < ncols_; ++c) t.rows_[c] = SparseVector(std::move(cols[c]));
  return t;
}

SparseRationalMatrix SparseRationalMatrix::submatrix(std::span<const Index> rows,
                                                     std::span<const Index> cols) const {
  std::vector<long> remap(ncols_, -1);
  for (std::size_t j = 0; j < cols.size(); ++j) remap[cols[j]] = static_cast<long>(j);
  SparseRationalMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<SparseVector::Entry> e;
    for (const auto& [c, v] : rows_[rows[i]].entries()) {
      if (remap[c] >= 0) e.emplace_back(static_cast<Index>(remap[c]), v);
    }
    m.rows_[i] = SparseVector(std::move(e));
  }
  return m;
}

void TripletBuilder::add(std::size_t row, std::size_t col, const Rational& value) {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("triplet outside matrix");
  if (is_zero(value)) return;
  triplets_.push_back({static_cast<Index>(row), static_cast<Index>(col), value});
}

SparseRationalMatrix TripletBuilder::build() const {
  std::vector<std::vector<SparseVector::Entry>> rows(rows_);
  for (const auto& t : triplets_) rows[t.row].emplace_back(t.col, t.value);
  SparseRationalMatrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) m.set_row(r, SparseVector(std::move(rows[r])));
  return m;
}

std::string to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::Exact: return "exact";
    case SolveMode::ModP: return "modp";
    case SolveMode::ModPCertify: return "modp-certify";
  }
  return "exact";
}

SolveMode parse_solve_mode(std::string_view text) {
  if (text == "exact") return SolveMode::Exact;
  if (text == "modp") return SolveMode::ModP;
  if (text == "modp-certify") return SolveMode::ModPCertify;
  throw std::invalid_argument("unknown solve mode: " + std::string(text));
}

// --- subspaces --------------------------------------------------------------

namespace {

SparseVector primitive(std::vector<std::pair<Index, Rational>> row) {
  Integer l = 1;
  for (const auto& e : row) l = lcm(l, Integer(e.second.get_den()));
  Integer g = 0;
  for (auto& e : row) {
    e.second *= l;
    g = gcd(g, Integer(e.second.get_num()));
  }
  if (!row.empty() && sgn(row.front().second) < 0) g = -g;
  for (auto& e : row) e.second /= g;
  SparseVector v;
  for (auto& e : row) v.push_back(e.first, std::move(e.second));
  return v;
}

}  // namespace

Subspace Subspace::span(std::size_t ambient_dim, std::span<const SparseVector> vectors) {
  detail::Echelon<detail::RationalField> ech(ambient_dim);
  for (const auto& v : vectors) {
    if (v.extent() > ambient_dim) throw std::out_of_range("vector outside ambient space");
    if (ech.full()) break;
    ech.insert(v.entries());
  }
  Subspace s(ambient_dim);
  for (auto& row : ech.reduced()) {
    s.pivots_.push_back(row.front().first);
    s.rows_.push_back(primitive(std::move(row)));
  }
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (Index i = 0; i < ambient_dim; ++i) {
    s.rows_.push_back(SparseVector::unit(i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::coordinate(std::size_t ambient_dim, std::span<const Index> indices) {
  std::vector<SparseVector> v;
  for (Index i : indices) v.push_back(SparseVector::unit(i));
  return span(ambient_dim, v);
}

std::vector<Rational> Subspace::coordinates(const SparseVector& v) const {
  // Canonical rows are reduced, so the coefficient of row i is v[pivot_i] / row_i[pivot_i].
  std::vector<Rational> c(rows_.size());
  SparseVector rest = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    c[i] = v.at(pivots_[i]) / rows_[i].entries().front().second;
    rest.add_scaled(rows_[i], -c[i]);
  }
  if (!rest.empty()) throw std::invalid_argument("vector not in subspace");
  return c;
}

bool Subspace::contains(const SparseVector& v) const {
  if (v.extent() > ambient_) return false;
  SparseVector rest = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational f = v.at(pivots_[i]);
    if (!is_zero(f)) rest.add_scaled(rows_[i], -f / rows_[i].entries().front().second);
  }
  return rest.empty();
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.rows_) {
    if (!contains(v)) return false;
  }
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw std::invalid_argument("ambient dimension mismatch");
  std::vector<SparseVector> all = rows_;
  all.insert(all.end(), other.rows_.begin(), other.rows_.end());
  return span(ambient_, all);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw std::invalid_argument("ambient dimension mismatch");
  // Columns are the basis vectors of both spaces; a kernel vector (a, b) gives sum a_i u_i.
  const std::size_t n = rows_.size();
  TripletBuilder tb(ambient_, n + other.rows_.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [c, v] : rows_[i].entries()) tb.add(c, i, v);
  }
  for (std::size_t j = 0; j < other.rows_.size(); ++j) {
    for (const auto& [c, v] : other.rows_[j].entries()) tb.add(c, n + j, -v);
  }
  std::vector<SparseVector> out;
  for (const auto& k : kernel(tb.build())) {
    SparseVector w;
    for (const auto& [i, a] : k.entries()) {
      if (i < n) w.add_scaled(rows_[i], a);
    }
    out.push_back(std::move(w));
  }
  return span(ambient_, out);
}

Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a[r][col])) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

std::vector<std::vector<Rational>> inverse_matrix(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c])) ++p;
    if (p == n) throw InternalError("singular matrix");
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      const Rational f = a[r][c];
      for (std::size_t k = c; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  for (auto& row : a) row.erase(row.begin(), row.begin() + static_cast<long>(n));
  return a;
}

}  // namespace liegrade
