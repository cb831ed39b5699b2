#pragma once

// Incremental row echelon over Q or F_p. Rows are inserted one at a time; each pivot row
// is stored normalized to leading coefficient 1. Reduction uses a dense accumulator plus a
// min-heap of touched columns so the cost tracks fill-in rather than the column count.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "liegrade/linalg.hpp"

namespace liegrade::detail {

__extension__ using u128 = unsigned __int128;

struct RationalField {
  using value_type = Rational;
  static bool zero(const Rational& a) { return sgn(a) == 0; }
  static Rational inv(const Rational& a) { return 1 / a; }
  static void clear(Rational& a) { a = 0; }
  // acc -= f * v
  void submul(Rational& acc, const Rational& f, const Rational& v) {
    mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), v.get_mpq_t());
    mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational neg(const Rational& a) { return -a; }
  Rational tmp;
};

struct PrimeField {
  using value_type = std::uint64_t;
  std::uint64_t p;

  static bool zero(std::uint64_t a) { return a == 0; }
  static void clear(std::uint64_t& a) { a = 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p);
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  void submul(std::uint64_t& acc, std::uint64_t f, std::uint64_t v) const {
    const std::uint64_t t = mul(f, v);
    acc = acc >= t ? acc - t : acc + (p - t);
  }
  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
};

template <class Field>
class Echelon {
 public:
  using T = typename Field::value_type;
  using Row = std::vector<std::pair<Index, T>>;

  Echelon(std::size_t ncols, Field field = {})
      : field_(std::move(field)), ncols_(ncols), pivot_of_(ncols, -1), acc_(ncols), queued_(ncols, 0) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t num_cols() const { return ncols_; }
  bool full() const { return rows_.size() == ncols_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Index>& pivot_cols() const { return pivots_; }
  Field& field() { return field_; }

  /// Reduces `row` (sorted, distinct indices) and stores it if independent; returns the pivot.
  std::optional<Index> insert(const Row& row) {
    std::priority_queue<Index, std::vector<Index>, std::greater<>> heap;
    for (const auto& [c, v] : row) {
      if (Field::zero(v)) continue;
      acc_[c] = v;
      queued_[c] = 1;
      heap.push(c);
    }
    while (!heap.empty()) {
      const Index c = heap.top();
      heap.pop();
      queued_[c] = 0;
      if (Field::zero(acc_[c])) continue;
      const int pr = pivot_of_[c];
      if (pr < 0) {
        // New pivot: normalize what is left (c and everything still queued).
        const T scale = field_.inv(acc_[c]);
        Row out;
        out.emplace_back(c, T(1));
        Field::clear(acc_[c]);
        while (!heap.empty()) {
          const Index d = heap.top();
          heap.pop();
          queued_[d] = 0;
          if (!Field::zero(acc_[d])) out.emplace_back(d, field_.mul(acc_[d], scale));
          Field::clear(acc_[d]);
        }
        pivot_of_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(out));
        pivots_.push_back(c);
        return c;
      }
      const T f = acc_[c];
      Field::clear(acc_[c]);
      const Row& prow = rows_[static_cast<std::size_t>(pr)];
      for (std::size_t k = 1; k < prow.size(); ++k) {
        const Index d = prow[k].first;
        field_.submul(acc_[d], f, prow[k].second);
        if (!queued_[d]) {
          queued_[d] = 1;
          heap.push(d);
        }
      }
    }
    return std::nullopt;
  }

  /// Kernel basis of the stored rows: one vector per non-pivot column, by back-substitution.
  std::vector<std::vector<std::pair<Index, T>>> kernel() const {
    std::vector<Index> order(pivots_.begin(), pivots_.end());
    std::sort(order.begin(), order.end(), std::greater<>());
    std::vector<std::vector<std::pair<Index, T>>> basis;
    std::vector<T> x(ncols_);
    Field fld = field_;
    for (Index f = 0; f < ncols_; ++f) {
      if (pivot_of_[f] >= 0) continue;
      x[f] = T(1);
      for (Index pc : order) {
        if (pc > f) continue;  // pivot rows only reference columns >= their pivot
        const Row& r = rows_[static_cast<std::size_t>(pivot_of_[pc])];
        T s{};
        for (std::size_t k = 1; k < r.size(); ++k) {
          if (!Field::zero(x[r[k].first])) fld.submul(s, r[k].second, x[r[k].first]);
        }
        // s = -sum(v * x)
        x[pc] = s;
      }
      std::vector<std::pair<Index, T>> v;
      for (Index c = 0; c <= f; ++c) {
        if (!Field::zero(x[c])) v.emplace_back(c, x[c]);
        Field::clear(x[c]);
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Fully reduced echelon rows (zero above each pivot), sorted by pivot column.
  std::vector<Row> reduced() const {
    std::vector<std::size_t> idx(rows_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
    std::vector<Row> out(rows_.size());
    std::vector<int> slot(ncols_, -1);
    Field f = field_copy();
    std::vector<T> acc(ncols_);
    std::vector<char> mark(ncols_, 0);
    for (std::size_t k = idx.size(); k-- > 0;) {
      const Row& r = rows_[idx[k]];
      std::vector<Index> touched;
      for (const auto& [c, v] : r) {
        acc[c] = v;
        mark[c] = 1;
        touched.push_back(c);
      }
      // Eliminate later pivots; their reduced rows only add non-pivot columns.
      const std::size_t original = touched.size();
      for (std::size_t t = 1; t < original; ++t) {
        const Index c = touched[t];
        if (slot[c] < 0 || Field::zero(acc[c])) continue;
        const T factor = acc[c];
        for (const auto& [d, w] : out[static_cast<std::size_t>(slot[c])]) {
          if (!mark[d]) {
            mark[d] = 1;
            touched.push_back(d);
          }
          f.submul(acc[d], factor, w);
        }
      }
      std::sort(touched.begin(), touched.end());
      Row nr;
      for (Index c : touched) {
        if (!Field::zero(acc[c])) nr.emplace_back(c, acc[c]);
        Field::clear(acc[c]);
        mark[c] = 0;
      }
      out[k] = std::move(nr);
      slot[pivots_[idx[k]]] = static_cast<int>(k);
    }
    return out;
  }

 private:
  Field field_copy() const { return field_; }

  Field field_;
  std::size_t ncols_;
  std::vector<int> pivot_of_;
  std::vector<T> acc_;
  std::vector<char> queued_;
  std::vector<Row> rows_;
  std::vector<Index> pivots_;
};

}  // namespace liegrade::detail
