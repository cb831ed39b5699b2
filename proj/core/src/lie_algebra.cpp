#include "liegrade/lie_algebra.hpp"

#include <algorithm>
#include <cstdlib>

#include "liegrade/error.hpp"

namespace liegrade {

LieAlgebraTable::LieAlgebraTable(std::vector<std::string> labels)
    : labels_(std::move(labels)), table_(labels_.size() * labels_.size()), partners_(labels_.size()) {}

void LieAlgebraTable::set_bracket(Index i, Index j, const SparseVector& v) {
  if (i == j) {
    if (!v.empty()) throw InternalError("[x, x] must vanish");
    return;
  }
  const std::size_t n = dim();
  auto note = [&](Index a, Index b, bool present) {
    auto& p = partners_[a];
    auto it = std::lower_bound(p.begin(), p.end(), b);
    const bool has = it != p.end() && *it == b;
    if (present && !has) p.insert(it, b);
    if (!present && has) p.erase(it);
  };
  table_[i * n + j] = v;
  table_[j * n + i] = -v;
  note(i, j, !v.empty());
  note(j, i, !v.empty());
}

SparseVector LieAlgebraTable::ad(Index i, const SparseVector& y) const {
  SparseVector out;
  for (const auto& [c, a] : y.entries()) {
    const SparseVector& b = bracket(i, c);
    if (!b.empty()) out.add_scaled(b, a);
  }
  return out;
}

SparseVector LieAlgebraTable::bracket(const SparseVector& x, const SparseVector& y) const {
  SparseVector out;
  for (const auto& [i, a] : x.entries()) {
    for (const auto& [j, b] : y.entries()) {
      const SparseVector& v = bracket(i, j);
      if (!v.empty()) out.add_scaled(v, a * b);
    }
  }
  return out;
}

SparseRationalMatrix LieAlgebraTable::ad_matrix(const SparseVector& x) const {
  TripletBuilder tb(dim(), dim());
  for (Index c = 0; c < dim(); ++c) {
    const SparseVector col = ad_col(x, c);
    for (const auto& [r, v] : col.entries()) tb.add(r, c, v);
  }
  return tb.build();
}

SparseVector LieAlgebraTable::ad_col(const SparseVector& x, Index c) const {
  SparseVector out;
  for (const auto& [i, a] : x.entries()) {
    const SparseVector& v = bracket(i, c);
    if (!v.empty()) out.add_scaled(v, a);
  }
  return out;
}

bool LieAlgebraTable::is_integral() const {
  for (const auto& v : table_) {
    for (const auto& e : v.entries()) {
      if (!is_integer(e.second)) return false;
    }
  }
  return true;
}

LieAlgebraTable LieAlgebraTable::subalgebra(std::span<const Index> indices) const {
  std::vector<long> local(dim(), -1);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    local[indices[k]] = static_cast<long>(k);
    labels.push_back(labels_[indices[k]]);
  }
  LieAlgebraTable sub(std::move(labels));
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      std::vector<SparseVector::Entry> e;
      for (const auto& [c, v] : bracket(indices[a], indices[b]).entries()) {
        if (local[c] < 0) throw InvalidLabel("basis subset is not a subalgebra");
        e.emplace_back(static_cast<Index>(local[c]), v);
      }
      sub.set_bracket(static_cast<Index>(a), static_cast<Index>(b), SparseVector(std::move(e)));
    }
  }
  return sub;
}

std::vector<Triple> check_jacobi(const LieAlgebraTable& L, std::size_t limit) {
  std::vector<Triple> bad;
  const Index n = static_cast<Index>(L.dim());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const SparseVector& ij = L.bracket(i, j);
      for (Index k = j + 1; k < n; ++k) {
        const SparseVector& jk = L.bracket(j, k);
        const SparseVector& ki = L.bracket(k, i);
        if (ij.empty() && jk.empty() && ki.empty()) continue;
        SparseVector s = L.ad(i, jk);
        s.add_scaled(L.ad(j, ki), 1);
        s.add_scaled(L.ad(k, ij), 1);
        if (!s.empty()) {
          bad.push_back({i, j, k});
          if (bad.size() >= limit) return bad;
        }
      }
    }
  }
  return bad;
}

std::size_t Grading::dim(int d) const {
  auto it = components.find(d);
  return it == components.end() ? 0 : it->second.dim();
}

std::vector<Index> Grading::indices(int d) const {
  if (!diagonal) throw InternalError("indices() needs a diagonal grading");
  std::vector<Index> out;
  for (Index i = 0; i < degree.size(); ++i) {
    if (degree[i] == d) out.push_back(i);
  }
  return out;
}

Grading diagonal_grading(std::size_t dim, std::vector<int> degree) {
  Grading g;
  g.diagonal = true;
  std::map<int, std::vector<Index>> by;
  for (Index i = 0; i < dim; ++i) by[degree[i]].push_back(i);
  for (auto& [d, idx] : by) g.components.emplace(d, Subspace::coordinate(dim, idx));
  g.degree = std::move(degree);
  return g;
}

Grading grade_by_element(const LieAlgebraTable& L, const SparseVector& h) {
  const std::size_t n = L.dim();
  const SparseRationalMatrix M = L.ad_matrix(h);
  bool diag = true;
  std::vector<int> degree(n, 0);
  Rational bound = 0;
  for (Index r = 0; r < n; ++r) {
    Rational rowsum = 0;
    for (const auto& [c, v] : M.row(r).entries()) {
      rowsum += abs(v);
      if (c != r) {
        diag = false;
      } else if (!is_integer(v) || abs(v) > 1000000) {
        diag = false;
      } else {
        degree[r] = static_cast<int>(v.get_num().get_si());
      }
    }
    bound = std::max(bound, rowsum);
  }
  if (diag) return diagonal_grading(n, std::move(degree));

  // General path: integer eigenvalues are bounded by the max absolute row sum.
  const mpz_class B = bound.get_num() / bound.get_den() + 1;
  if (B > 4096) throw InvalidGradingElement("spectrum bound too large for an integer grading");
  Grading g;
  std::size_t total = 0;
  for (long lam = -B.get_si(); lam <= B.get_si(); ++lam) {
    TripletBuilder tb(n, n);
    for (Index r = 0; r < n; ++r) {
      for (const auto& [c, v] : M.row(r).entries()) tb.add(r, c, v);
      tb.add(r, r, Rational(-lam));
    }
    auto ker = kernel(tb.build());
    if (ker.empty()) continue;
    total += ker.size();
    g.components.emplace(static_cast<int>(lam), Subspace::span(n, ker));
  }
  if (total != n) {
    throw InvalidGradingElement("ad(h) is not diagonalizable with integer eigenvalues");
  }
  return g;
}

bool check_bracket_additivity(const LieAlgebraTable& L, const Grading& g) {
  if (g.diagonal) {
    for (Index i = 0; i < L.dim(); ++i) {
      for (Index j : L.partners(i)) {
        for (const auto& e : L.bracket(i, j).entries()) {
          if (g.degree[e.first] != g.degree[i] + g.degree[j]) return false;
        }
      }
    }
    return true;
  }
  for (const auto& [a, A] : g.components) {
    for (const auto& [b, B] : g.components) {
      auto target = g.components.find(a + b);
      for (const auto& u : A.basis()) {
        for (const auto& w : B.basis()) {
          SparseVector x = L.bracket(u, w);
          if (x.empty()) continue;
          if (target == g.components.end() || !target->second.contains(x)) return false;
        }
      }
    }
  }
  return true;
}

Subspace line_stabilizer(std::size_t dim, const SparseVector& v, const Action& action) {
  if (v.empty()) return Subspace::full(dim);
  std::vector<SparseVector> images;
  Index rows = v.extent();
  for (Index i = 0; i < dim; ++i) {
    images.push_back(action(i, v));
    rows = std::max(rows, images.back().extent());
  }
  TripletBuilder tb(rows, dim + 1);
  for (Index i = 0; i < dim; ++i) {
    for (const auto& [r, x] : images[i].entries()) tb.add(r, i, x);
  }
  for (const auto& [r, x] : v.entries()) tb.add(r, dim, -x);
  std::vector<SparseVector> gens;
  for (const auto& k : kernel(tb.build())) {
    SparseVector a;
    for (const auto& [c, x] : k.entries()) {
      if (c < dim) a.push_back(c, x);
    }
    if (!a.empty()) gens.push_back(std::move(a));
  }
  return Subspace::span(dim, gens);
}

Subspace line_stabilizer(const LieAlgebraTable& L, const SparseVector& v) {
  return line_stabilizer(L.dim(), v, [&](Index i, const SparseVector& w) { return L.ad(i, w); });
}

namespace {

struct IsoSearch {
  const LieAlgebraTable& a;
  const LieAlgebraTable& b;
  int bound;
  std::vector<SparseVector> image;

  SparseVector apply(const SparseVector& x) const {
    SparseVector out;
    for (const auto& [i, c] : x.entries()) out.add_scaled(image[i], c);
    return out;
  }

  // Checks every bracket among the first m+1 basis vectors whose value lies in that span.
  bool consistent(Index m) const {
    for (Index i = 0; i <= m; ++i) {
      const SparseVector& br = a.bracket(i, m);
      if (br.extent() > m + 1) continue;
      if (b.bracket(image[i], image[m]) != apply(br)) return false;
    }
    return true;
  }

  bool assign(Index m) {
    const std::size_t n = a.dim();
    if (m == n) {
      std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n));
      for (Index j = 0; j < n; ++j) {
        for (const auto& [r, v] : image[j].entries()) mat[r][j] = v;
      }
      if (is_zero(determinant(mat))) return false;
      // Brackets landing outside the assigned prefix were skipped above; verify all now.
      for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
          if (b.bracket(image[i], image[j]) != apply(a.bracket(i, j))) return false;
        }
      }
      return true;
    }
    std::vector<int> coords(n, -bound);
    while (true) {
      std::vector<Rational> dense(n);
      for (std::size_t k = 0; k < n; ++k) dense[k] = coords[k];
      image[m] = SparseVector::from_dense(dense);
      if (!image[m].empty() && consistent(m) && assign(m + 1)) return true;
      std::size_t k = 0;
      while (k < n && coords[k] == bound) coords[k++] = -bound;
      if (k == n) break;
      ++coords[k];
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::vector<Rational>>> find_isomorphism(const LieAlgebraTable& a,
                                                                   const LieAlgebraTable& b,
                                                                   int bound) {
  if (a.dim() != b.dim()) return std::nullopt;
  IsoSearch s{a, b, bound, std::vector<SparseVector>(a.dim())};
  if (!s.assign(0)) return std::nullopt;
  std::vector<std::vector<Rational>> mat(a.dim(), std::vector<Rational>(a.dim()));
  for (Index j = 0; j < a.dim(); ++j) {
    for (const auto& [r, v] : s.image[j].entries()) mat[r][j] = v;
  }
  return mat;
}

}  // namespace liegrade
