#include "liegrade/prolong.hpp"

#include <algorithm>

#include "echelon.hpp"
#include "liegrade/error.hpp"

namespace liegrade {

namespace {

// The accumulated tower n_{-j} + ... + n_0 + n_+ in level-local coordinates.
class Tower {
 public:
  explicit Tower(const ProlongInput& in) : in_(in), local_(in.n_plus.dim(), 0) {
    for (Index x = 0; x < in.n_plus.dim(); ++x) {
      auto& list = positive_[in.degree[x]];
      local_[x] = static_cast<Index>(list.size());
      list.push_back(x);
    }
    // Keep an independent subset of the derivations, in input order.
    const std::size_t n = in.n_plus.dim();
    detail::Echelon<detail::RationalField> ech(n * n);
    for (std::size_t i = 0; i < in.n0.size(); ++i) {
      std::vector<std::pair<Index, Rational>> flat;
      for (Index y = 0; y < n; ++y) {
        for (const auto& [r, v] : in.n0[i][y].entries()) flat.emplace_back(static_cast<Index>(y * n + r), v);
      }
      if (ech.insert(flat)) n0_.push_back(i);
    }
  }

  std::size_t n0_dim() const { return n0_.size(); }
  int degree(Index x) const { return in_.degree[x]; }

  std::size_t level_dim(int m) const {
    if (m >= 1) {
      auto it = positive_.find(m);
      return it == positive_.end() ? 0 : it->second.size();
    }
    if (m == 0) return n0_.size();
    auto it = negative_.find(-m);
    return it == negative_.end() ? 0 : it->second.size();
  }

  // Global n_+ vector of pure degree m -> level-local coordinates.
  SparseVector to_local(const SparseVector& v) const {
    std::vector<SparseVector::Entry> e;
    for (const auto& [i, x] : v.entries()) e.emplace_back(local_[i], x);
    return SparseVector(std::move(e));
  }

  // [b-th basis element of level m, e_y], in the coordinates of level m + deg(y).
  SparseVector bracket(int m, Index b, Index y) const {
    if (m >= 1) return to_local(in_.n_plus.bracket(positive_.at(m)[b], y));
    if (m == 0) return to_local(in_.n0[n0_[b]][y]);
    return negative_.at(-m)[b][y];
  }

  void set_level(int k, std::vector<ProlongMap> basis) { negative_[k] = std::move(basis); }

 private:
  const ProlongInput& in_;
  std::map<int, std::vector<Index>> positive_;
  std::vector<Index> local_;
  std::vector<std::size_t> n0_;
  std::map<int, std::vector<ProlongMap>> negative_;
};

struct System {
  SparseRationalMatrix matrix;
  std::vector<std::size_t> offset;  // per n_+ basis vector, into the unknowns
  std::vector<std::size_t> width;
};

System assemble(const ProlongInput& in, const Tower& t, int k) {
  const Index n = static_cast<Index>(in.n_plus.dim());
  System s;
  std::size_t cols = 0;
  for (Index x = 0; x < n; ++x) {
    s.offset.push_back(cols);
    s.width.push_back(t.level_dim(t.degree(x) - k));
    cols += s.width.back();
  }

  // Cache [level basis, e_y] per (level, basis element, y).
  std::map<int, std::vector<SparseVector>> cache;
  auto bracket = [&](int m, Index b, Index y) -> const SparseVector& {
    auto& slot = cache[m];
    if (slot.empty()) slot.resize(t.level_dim(m) * n);
    SparseVector& v = slot[b * n + y];
    if (v.empty()) v = t.bracket(m, b, y);
    return v;
  };

  std::vector<std::tuple<std::size_t, std::size_t, Rational>> trip;
  std::size_t rows = 0;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      const int level = t.degree(x) + t.degree(y) - k;
      const std::size_t h = t.level_dim(level);
      if (h == 0) continue;
      // phi([x,y]) - [phi(x), y] + [phi(y), x] = 0
      for (const auto& [z, c] : in.n_plus.bracket(x, y).entries()) {
        for (std::size_t i = 0; i < h; ++i) trip.emplace_back(rows + i, s.offset[z] + i, c);
      }
      const int mx = t.degree(x) - k;
      for (std::size_t b = 0; b < s.width[x]; ++b) {
        for (const auto& [i, v] : bracket(mx, static_cast<Index>(b), y).entries()) {
          trip.emplace_back(rows + i, s.offset[x] + b, -v);
        }
      }
      const int my = t.degree(y) - k;
      for (std::size_t b = 0; b < s.width[y]; ++b) {
        for (const auto& [i, v] : bracket(my, static_cast<Index>(b), x).entries()) {
          trip.emplace_back(rows + i, s.offset[y] + b, v);
        }
      }
      rows += h;
    }
  }
  TripletBuilder builder(rows, cols);
  for (const auto& [r, c, v] : trip) builder.add(r, c, v);
  s.matrix = builder.build();
  return s;
}

SparseVector flatten(const System& s, const ProlongMap& m) {
  std::vector<SparseVector::Entry> e;
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (const auto& [i, v] : m[x].entries()) {
      if (i >= s.width[x]) throw InternalError("prolongation map value outside its level");
      e.emplace_back(static_cast<Index>(s.offset[x] + i), v);
    }
  }
  return SparseVector(std::move(e));
}

ProlongMap unflatten(const System& s, const SparseVector& v) {
  ProlongMap m(s.offset.size());
  std::size_t x = 0;
  for (const auto& [c, val] : v.entries()) {
    while (x + 1 < s.offset.size() && s.offset[x + 1] <= c) ++x;
    m[x].push_back(static_cast<Index>(c - s.offset[x]), val);
  }
  return m;
}

bool independent(const std::vector<SparseVector>& vs, std::size_t cols) {
  detail::Echelon<detail::RationalField> ech(cols);
  for (const auto& v : vs) {
    if (!ech.insert(v.entries())) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> validate_input(const ProlongInput& in) {
  std::vector<std::string> problems;
  const Index n = static_cast<Index>(in.n_plus.dim());
  if (in.degree.size() != n) return {"degree map has the wrong size"};
  for (Index x = 0; x < n; ++x) {
    if (in.degree[x] < 1) problems.push_back("basis vector " + in.n_plus.labels()[x] + " has degree < 1");
  }
  if (!problems.empty()) return problems;
  for (Index x = 0; x < n; ++x) {
    for (Index y : in.n_plus.partners(x)) {
      for (const auto& e : in.n_plus.bracket(x, y).entries()) {
        if (in.degree[e.first] != in.degree[x] + in.degree[y]) problems.push_back("bracket is not graded");
      }
    }
  }
  for (std::size_t i = 0; i < in.n0.size(); ++i) {
    const auto& D = in.n0[i];
    bool ok = D.size() == n;
    for (Index x = 0; x < n && ok; ++x) {
      for (const auto& e : D[x].entries()) {
        if (in.degree[e.first] != in.degree[x]) ok = false;
      }
      for (Index y = x + 1; y < n && ok; ++y) {
        SparseVector lhs;
        for (const auto& [z, c] : in.n_plus.bracket(x, y).entries()) lhs.add_scaled(D[z], c);
        const SparseVector rhs = in.n_plus.bracket(D[x], SparseVector::unit(y)) +
                                 in.n_plus.bracket(SparseVector::unit(x), D[y]);
        if (lhs != rhs) ok = false;
      }
    }
    if (!ok) problems.push_back("n0 element " + std::to_string(i) + " is not a graded derivation");
  }
  // Generation by degree 1.
  std::vector<SparseVector> span;
  std::vector<Index> deg1;
  for (Index x = 0; x < n; ++x) {
    if (in.degree[x] == 1) {
      deg1.push_back(x);
      span.push_back(SparseVector::unit(x));
    }
  }
  std::vector<SparseVector> frontier = span;
  while (!frontier.empty()) {
    std::vector<SparseVector> next;
    for (const auto& f : frontier) {
      for (Index a : deg1) {
        SparseVector b = in.n_plus.bracket(f, SparseVector::unit(a));
        if (!b.empty()) next.push_back(std::move(b));
      }
    }
    const std::size_t before = Subspace::span(n, span).dim();
    span.insert(span.end(), next.begin(), next.end());
    if (Subspace::span(n, span).dim() == before) break;
    frontier = std::move(next);
  }
  if (Subspace::span(n, span).dim() != n) problems.push_back("n_+ is not generated in degree 1");
  return problems;
}

ProlongResult prolongation(const ProlongInput& in, const ProlongOptions& options) {
  if (options.k_max < 1) throw Error("k_max must be at least 1");
  if (options.k_max > options.safety_bound && !options.allow_unbounded) {
    throw ProlongationBoundExceeded("prolongation depth " + std::to_string(options.k_max) +
                                    " exceeds the safety bound " + std::to_string(options.safety_bound));
  }
  Tower tower(in);
  ProlongResult result;
  result.n0_dim = tower.n0_dim();
  for (int k = 1; k <= options.k_max; ++k) {
    const System sys = assemble(in, tower, k);
    const std::size_t cols = sys.matrix.num_cols();
    ProlongLevel lv;
    lv.k = k;
    lv.unknowns = cols;
    lv.equations = sys.matrix.num_rows();
    lv.mode = options.mode;

    std::vector<SparseVector> hint_vectors;
    if (auto it = options.hints.find(k); it != options.hints.end()) {
      lv.hint_count = it->second.size();
      lv.hints_valid = true;
      for (const auto& h : it->second) {
        hint_vectors.push_back(flatten(sys, h));
        if (!sys.matrix.multiply(hint_vectors.back()).empty()) lv.hints_valid = false;
      }
      if (lv.hints_valid) lv.hints_valid = independent(hint_vectors, cols);
    }

    std::vector<SparseVector> basis;
    bool have_basis = false;
    if (options.mode == SolveMode::Exact) {
      basis = kernel(sys.matrix);
      have_basis = true;
      lv.proven = true;
      lv.certified_rank = true;
      lv.dim = basis.size();
    } else {
      const RankResult r = rank(sys.matrix, options.mode, options.modp);
      lv.primes = r.primes;
      lv.certified_rank = r.certified;
      const std::size_t nullity = cols - r.rank;
      lv.dim = nullity;
      // rank over Q >= rank mod p, so nullity mod p bounds the true nullity from above;
      // exact independent solutions bound it from below.
      if (nullity == 0) {
        have_basis = true;
        lv.proven = true;
      } else if (lv.hints_valid && hint_vectors.size() == nullity) {
        basis = hint_vectors;
        have_basis = true;
        lv.proven = true;
      } else if (k < options.k_max) {
        basis = kernel(sys.matrix);
        have_basis = true;
        lv.proven = true;
        lv.mode = SolveMode::Exact;
        lv.dim = basis.size();
      }
    }

    if (have_basis) {
      lv.residual_zero = true;
      for (const auto& v : basis) {
        if (!sys.matrix.multiply(v).empty()) lv.residual_zero = false;
        lv.basis.push_back(unflatten(sys, v));
      }
      tower.set_level(k, lv.basis);
    }
    result.dims[k] = lv.dim;
    result.levels.push_back(std::move(lv));
    if (!have_basis) break;  // deeper levels need an exact basis of this one
  }
  bool seen_zero = false;
  for (const auto& [k, d] : result.dims) {
    if (seen_zero && d != 0) result.monotone = false;
    if (d == 0) seen_zero = true;
  }
  return result;
}

GProlongData g_prolong_input(const GAlgebra& g) {
  GProlongData out;
  out.plus = g.plus();
  out.g0 = g.part(0);
  const std::size_t n = out.plus.size();
  std::vector<long> local(g.dim(), -1);
  for (std::size_t i = 0; i < n; ++i) local[out.plus[i]] = static_cast<long>(i);
  auto to_plus = [&](const SparseVector& v) {
    SparseVector r;
    for (const auto& [i, x] : v.entries()) {
      if (local[i] < 0) throw InternalError("bracket leaves g_+");
      r.push_back(static_cast<Index>(local[i]), x);
    }
    return r;
  };

  out.input.n_plus = g.table.subalgebra(out.plus);
  for (Index x : out.plus) out.input.degree.push_back(g.degree(x));
  for (Index a : out.g0) {
    std::vector<SparseVector> D;
    for (Index y : out.plus) D.push_back(to_plus(g.table.bracket(a, y)));
    out.input.n0.push_back(std::move(D));
  }

  // Level-local positions: degree-m part of g_+ in index order, g_0 in index order.
  std::vector<long> pos(g.dim(), -1);
  std::map<int, long> count;
  for (Index x = 0; x < g.dim(); ++x) {
    if (g.degree(x) >= 0) pos[x] = count[g.degree(x)]++;
  }
  for (Index a : g.part(-1)) {
    ProlongMap m;
    for (Index y : out.plus) {
      SparseVector v;
      for (const auto& [i, x] : g.table.bracket(a, y).entries()) v.push_back(static_cast<Index>(pos[i]), x);
      m.push_back(std::move(v));
    }
    out.ad_minus_one.push_back(std::move(m));
  }
  return out;
}

ProlongInput l_prolong_input(const SubadjointCase& c, std::optional<std::size_t> ideal) {
  auto inside = [&](Index a) {
    if (!ideal) return true;
    const auto& nodes = c.ideals.at(*ideal);
    const IntVector r = c.l_root(a);
    bool zero = true;
    for (int x : r) zero = zero && x == 0;
    if (zero) {
      // Cartan element h_j: the l basis starts with h_j for j in J, in order.
      return std::find(nodes.begin(), nodes.end(), c.J.at(a)) != nodes.end();
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] != 0 && std::find(nodes.begin(), nodes.end(), static_cast<int>(i)) == nodes.end()) return false;
    }
    return true;
  };
  std::vector<Index> l1, l0;
  for (Index a : c.l_part(1)) {
    if (inside(a)) l1.push_back(a);
  }
  for (Index a : c.l_part(0)) {
    if (inside(a)) l0.push_back(a);
  }
  std::vector<long> pos(c.dim_l(), -1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < l1.size(); ++i) {
    pos[l1[i]] = static_cast<long>(i);
    labels.push_back(c.s.labels()[c.l[l1[i]]]);
  }
  ProlongInput in;
  in.n_plus = LieAlgebraTable(std::move(labels));
  in.degree.assign(l1.size(), 1);
  for (Index b : l0) {
    std::vector<SparseVector> D;
    for (Index a : l1) {
      SparseVector v;
      for (const auto& [i, x] : c.l_table.bracket(b, a).entries()) {
        if (pos[i] < 0) throw InternalError("[l_0, l_1] leaves the ideal");
        v.push_back(static_cast<Index>(pos[i]), x);
      }
      D.push_back(std::move(v));
    }
    in.n0.push_back(std::move(D));
  }
  return in;
}

ProlongInput direct_sum(const ProlongInput& a, const ProlongInput& b) {
  const Index na = static_cast<Index>(a.n_plus.dim());
  const Index nb = static_cast<Index>(b.n_plus.dim());
  std::vector<std::string> labels = a.n_plus.labels();
  for (const auto& s : b.n_plus.labels()) labels.push_back(s + "'");
  ProlongInput out;
  out.n_plus = LieAlgebraTable(std::move(labels));
  auto shifted = [](const SparseVector& v, Index off) {
    SparseVector r;
    for (const auto& [i, x] : v.entries()) r.push_back(i + off, x);
    return r;
  };
  for (Index x = 0; x < na; ++x) {
    for (Index y : a.n_plus.partners(x)) {
      if (y > x) out.n_plus.set_bracket(x, y, a.n_plus.bracket(x, y));
    }
  }
  for (Index x = 0; x < nb; ++x) {
    for (Index y : b.n_plus.partners(x)) {
      if (y > x) out.n_plus.set_bracket(na + x, na + y, shifted(b.n_plus.bracket(x, y), na));
    }
  }
  out.degree = a.degree;
  out.degree.insert(out.degree.end(), b.degree.begin(), b.degree.end());
  for (const auto& D : a.n0) {
    auto E = D;
    E.resize(na + nb);
    out.n0.push_back(std::move(E));
  }
  for (const auto& D : b.n0) {
    std::vector<SparseVector> E(na);
    for (const auto& v : D) E.push_back(shifted(v, na));
    out.n0.push_back(std::move(E));
  }
  return out;
}

ProlongInput zero_input() { return ProlongInput{}; }

ProlongInput p1_input() {
  ProlongInput in;
  in.n_plus = LieAlgebraTable({"d"});
  in.degree = {1};
  in.n0 = {{SparseVector::unit(0, -1)}};  // [t d, d] = -d
  return in;
}

DirectSumReport direct_sum_check(const ProlongInput& a, const ProlongInput& b, int k_max,
                                 bool allow_unbounded) {
  ProlongOptions opt;
  opt.k_max = k_max;
  opt.allow_unbounded = allow_unbounded;
  DirectSumReport r;
  r.dims_a = prolongation(a, opt).dims;
  r.dims_b = prolongation(b, opt).dims;
  r.dims_sum = prolongation(direct_sum(a, b), opt).dims;
  r.ok = true;
  for (int k = 1; k <= k_max; ++k) {
    if (r.dims_sum[k] != r.dims_a[k] + r.dims_b[k]) r.ok = false;
  }
  return r;
}

FormalVectorFields formal_vector_field_oracle(int k_max) {
  if (k_max < 1) throw Error("k_max must be at least 1");
  FormalVectorFields f;
  f.k_max = k_max;
  std::vector<std::string> labels;
  for (int a = -1; a <= k_max; ++a) {
    labels.push_back(a == -1 ? "d" : a == 0 ? "t d" : "t^" + std::to_string(a + 1) + " d");
    f.degree.push_back(-a);
  }
  f.table = LieAlgebraTable(std::move(labels));
  for (int a = -1; a <= k_max; ++a) {
    for (int b = a + 1; b <= k_max; ++b) {
      if (a + b > k_max || a + b < -1) continue;
      f.table.set_bracket(f.index_of(a), f.index_of(b), SparseVector::unit(f.index_of(a + b), b - a));
    }
  }
  return f;
}

bool formal_vector_field_nondegenerate(const FormalVectorFields& f) {
  const SparseVector a = SparseVector::unit(f.index_of(-1));
  for (int k = 1; k <= f.k_max; ++k) {
    const SparseVector b = SparseVector::unit(f.index_of(k));
    if (f.table.bracket(f.table.bracket(b, a), a).empty()) return false;
  }
  return true;
}

Sl2AdjointReport sl2_adjoint_check() {
  const FormalVectorFields f = formal_vector_field_oracle(2);
  const auto& L = f.table;
  const SparseVector a = SparseVector::unit(f.index_of(-1));
  const SparseVector w0 = SparseVector::unit(f.index_of(1));
  const SparseVector t3 = SparseVector::unit(f.index_of(2));
  Sl2AdjointReport r;
  const SparseVector phi_a = L.bracket(t3, a);
  r.phi_a_a = L.bracket(phi_a, a);
  r.phi_a_a_a = L.bracket(r.phi_a_a, a);
  r.lhs = L.bracket(r.phi_a_a_a, w0);
  r.rhs_inner = L.bracket(a, L.bracket(r.phi_a_a, w0));
  const Index td = f.index_of(0);
  r.ok = r.phi_a_a == SparseVector::unit(td, 6) && r.phi_a_a_a == SparseVector::unit(f.index_of(-1), -6) &&
         r.lhs == SparseVector::unit(td, -12) && r.rhs_inner == SparseVector::unit(td, 12) &&
         r.lhs == -r.rhs_inner && !r.lhs.empty();
  return r;
}

}  // namespace liegrade
