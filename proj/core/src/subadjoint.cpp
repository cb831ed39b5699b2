#include "liegrade/subadjoint.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "liegrade/error.hpp"

namespace liegrade {

namespace {

Rational coefficient(const SparseVector& v, Index i) { return v.at(i); }

bool only_on(const SparseVector& v, Index i) {
  return v.empty() || (v.nnz() == 1 && v.entries().front().first == i);
}

}  // namespace

std::vector<Index> SubadjointCase::l_part(int degree) const {
  std::vector<Index> out;
  for (Index i = 0; i < l_degree.size(); ++i) {
    if (l_degree[i] == degree) out.push_back(i);
  }
  return out;
}

std::vector<Index> SubadjointCase::V_part(int j) const {
  std::vector<Index> out;
  for (Index i = 0; i < V_degree.size(); ++i) {
    if (V_degree[i] == j) out.push_back(i);
  }
  return out;
}

Index SubadjointCase::v0_local() const { return V_local(v0); }

Index SubadjointCase::l_local(Index s_index) const {
  if (s_index >= s_to_l_.size() || s_to_l_[s_index] < 0) throw InternalError("not an l basis vector");
  return static_cast<Index>(s_to_l_[s_index]);
}

Index SubadjointCase::V_local(Index s_index) const {
  if (s_index >= s_to_V_.size() || s_to_V_[s_index] < 0) throw InternalError("not a V basis vector");
  return static_cast<Index>(s_to_V_[s_index]);
}

SparseVector SubadjointCase::l_to_s(const SparseVector& x) const {
  std::vector<SparseVector::Entry> e;
  for (const auto& [i, v] : x.entries()) e.emplace_back(l[i], v);
  return SparseVector(std::move(e));
}

SparseVector SubadjointCase::V_to_s(const SparseVector& x) const {
  std::vector<SparseVector::Entry> e;
  for (const auto& [i, v] : x.entries()) e.emplace_back(V[i], v);
  return SparseVector(std::move(e));
}

SparseVector SubadjointCase::s_to_l(const SparseVector& x) const {
  std::vector<SparseVector::Entry> e;
  for (const auto& [i, v] : x.entries()) e.emplace_back(l_local(i), v);
  return SparseVector(std::move(e));
}

SparseVector SubadjointCase::s_to_V(const SparseVector& x) const {
  std::vector<SparseVector::Entry> e;
  for (const auto& [i, v] : x.entries()) e.emplace_back(V_local(i), v);
  return SparseVector(std::move(e));
}

SparseVector SubadjointCase::act(Index l_idx, Index v_idx) const {
  return s_to_V(s.bracket(l[l_idx], V[v_idx]));
}

SparseVector SubadjointCase::act(const SparseVector& x, const SparseVector& v) const {
  SparseVector out;
  for (const auto& [i, a] : x.entries()) {
    for (const auto& [j, b] : v.entries()) {
      const SparseVector& br = s.bracket(l[i], V[j]);
      if (!br.empty()) out.add_scaled(s_to_V(br), a * b);
    }
  }
  return out;
}

IntVector SubadjointCase::l_root(Index l_idx) const { return root_of_index(rs, l[l_idx]); }
IntVector SubadjointCase::V_root(Index v_idx) const { return root_of_index(rs, V[v_idx]); }

Rational SubadjointCase::cI(const IntVector& w) const {
  Rational c = 0;
  for (std::size_t i = 0; i < w.size(); ++i) c += w[i] * cI_simple_[i];
  return c;
}

Rational SubadjointCase::cI_omega_star() const {
  IntVector ak(static_cast<std::size_t>(rs.rank()), 0);
  ak[static_cast<std::size_t>(contact_node)] = 1;
  return -cI(ak);
}

std::vector<int> expected_marked_roots(const DynkinLabel& label) {
  switch (label.type) {
    case DynkinType::B: return {1, 3};
    case DynkinType::D: return label.rank == 4 ? std::vector<int>{1, 3, 4} : std::vector<int>{1, 3};
    case DynkinType::F: return {2};
    case DynkinType::E:
      if (label.rank == 6) return {4};
      if (label.rank == 7) return {3};
      return {7};
    default: throw ExcludedCase("no subadjoint case for " + label.str());
  }
}

SubadjointCase build_case(std::string_view label) { return build_case(DynkinLabel::parse(label)); }

SubadjointCase build_case(const DynkinLabel& label) {
  if (label.type == DynkinType::G) throw ExcludedCase("excluded case: twisted cubic case (0)");
  if (label.type == DynkinType::A || label.type == DynkinType::C) {
    throw ExcludedCase("excluded case: types A and C have no subadjoint variety");
  }
  if (label.type == DynkinType::B && label.rank < 3) throw ExcludedCase("excluded case: B2 is of type C");

  SubadjointCase c;
  c.label = label;
  c.rs = build_root_system(label);
  c.s = chevalley_table(c.rs);
  const RootSystem& rs = c.rs;
  const int n = rs.rank();

  c.contact = grade_by_element(c.s, coroot(rs, rs.highest_root));
  if (!c.contact.diagonal || c.contact.min_degree() != -2 || c.contact.max_degree() != 2) {
    throw InternalError("contact grading out of range");
  }
  const auto& deg = c.contact.degree;

  c.contact_node = -1;
  for (int i = 0; i < n; ++i) {
    const int d = deg[static_cast<std::size_t>(n + i)];
    if (d == 0) {
      c.J.push_back(i);
    } else if (d == 1 && c.contact_node < 0) {
      c.contact_node = i;
    } else {
      throw InternalError("contact grading has more than one node of degree 1");
    }
  }
  for (Index i = 0; i < c.s.dim(); ++i) {
    if (deg[i] == 1) c.V.push_back(i);
  }
  for (int j : c.J) c.l.push_back(static_cast<Index>(j));
  for (Index i = static_cast<Index>(n); i < c.s.dim(); ++i) {
    if (deg[i] == 0) c.l.push_back(i);
  }
  c.s_to_l_.assign(c.s.dim(), -1);
  c.s_to_V_.assign(c.s.dim(), -1);
  for (std::size_t a = 0; a < c.l.size(); ++a) c.s_to_l_[c.l[a]] = static_cast<long>(a);
  for (std::size_t a = 0; a < c.V.size(); ++a) c.s_to_V_[c.V[a]] = static_cast<long>(a);
  c.l_table = c.s.subalgebra(c.l);
  c.theta = root_vector_index(rs, rs.highest_root);
  {
    IntVector ak(static_cast<std::size_t>(n), 0);
    ak[static_cast<std::size_t>(c.contact_node)] = 1;
    c.v0 = root_vector_index(rs, ak);
  }
  c.v_top = c.V.back();  // positive roots are height-ordered; degree-1 roots are positive

  // Parabolic p = stabilizer of [v0]; the opposite one stabilizes the highest weight line.
  const Action action = [&](Index i, const SparseVector& v) { return c.act(SparseVector::unit(i), v); };
  const Subspace p = line_stabilizer(c.dim_l(), SparseVector::unit(c.V_local(c.v0)), action);
  const Subspace p_opp = line_stabilizer(c.dim_l(), SparseVector::unit(c.V_local(c.v_top)), action);
  const Subspace l0 = p.intersect(p_opp);
  c.l_degree.assign(c.dim_l(), 0);
  for (Index i = 0; i < c.dim_l(); ++i) {
    const auto u = SparseVector::unit(i);
    const bool in_p = p.contains(u), in_opp = p_opp.contains(u);
    if (in_p && in_opp) {
      c.l_degree[i] = 0;
    } else if (in_p) {
      c.l_degree[i] = -1;
    } else if (in_opp) {
      c.l_degree[i] = 1;
    } else {
      throw InternalError("root vector of l outside both parabolics");
    }
  }
  if (l0.dim() != c.dim_l_part(0)) throw InternalError("l_0 is not spanned by basis vectors");

  // Grading element z = sum_j y_j h_j with alpha_j'(z) = degree of e_{alpha_j'} for j' in J.
  const std::size_t r = c.J.size();
  std::vector<std::vector<Rational>> M(r, std::vector<Rational>(r));
  std::vector<Rational> rhs(r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) M[a][b] = rs.cartan[c.J[b]][c.J[a]];
    IntVector aj(static_cast<std::size_t>(n), 0);
    aj[static_cast<std::size_t>(c.J[a])] = 1;
    rhs[a] = c.l_degree[c.l_local(root_vector_index(rs, aj))];
  }
  const auto Minv = inverse_matrix(M);
  std::vector<Rational> y(r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) y[a] += Minv[a][b] * rhs[b];
  }
  c.z = SparseVector::from_dense(y);  // h_j occupy the first r l-local slots
  const Grading zg = grade_by_element(c.l_table, c.z);
  if (zg.min_degree() < -1 || zg.max_degree() > 1 || zg.degree != c.l_degree) {
    throw InternalError("grading element does not reproduce the parabolic decomposition");
  }
  for (std::size_t a = 0; a < r; ++a) {
    if (!is_zero(rhs[a])) c.I.push_back(c.J[a]);
  }

  // V-grading: ad(z) eigenvalue shifted so that v0 has degree 0.
  const SparseVector zs = c.l_to_s(c.z);
  const Rational base = coefficient(c.s.ad_col(zs, c.v0), c.v0);
  for (Index v : c.V) {
    const SparseVector img = c.s.ad_col(zs, v);
    if (!only_on(img, v)) throw InternalError("z is not diagonal on V");
    const Rational d = coefficient(img, v) - base;
    if (!is_integer(d) || d < 0 || d > 3) throw InternalError("V-degree out of range");
    c.V_degree.push_back(static_cast<int>(d.get_num().get_si()));
  }

  // Simple ideals of l: connected components of J in the Dynkin graph.
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  for (int j : c.J) {
    if (comp[static_cast<std::size_t>(j)] >= 0) continue;
    const int id = static_cast<int>(c.ideals.size());
    c.ideals.emplace_back();
    std::vector<int> stack{j};
    comp[static_cast<std::size_t>(j)] = id;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      c.ideals.back().push_back(x);
      for (int w : c.J) {
        if (comp[static_cast<std::size_t>(w)] < 0 && rs.gram[x][w] != 0) {
          comp[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(c.ideals.back().begin(), c.ideals.back().end());
  }

  // c^I of each simple root of s restricted to the Cartan of l.
  std::vector<std::vector<Rational>> AJ(r, std::vector<Rational>(r));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) AJ[a][b] = rs.cartan[c.J[a]][c.J[b]];
  }
  const auto AJinv = inverse_matrix(AJ);
  c.cI_simple_.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < r; ++a) {
      if (std::find(c.I.begin(), c.I.end(), c.J[a]) == c.I.end()) continue;
      for (std::size_t b = 0; b < r; ++b) {
        c.cI_simple_[static_cast<std::size_t>(i)] += AJinv[a][b] * rs.cartan[c.J[b]][i];
      }
    }
  }
  c.embedding_weight.basis = WeightBasis::Fundamental;
  for (int j : c.J) c.embedding_weight.coords.push_back(-rs.cartan[j][c.contact_node]);
  return c;
}

std::vector<std::vector<Rational>> symplectic_form(const SubadjointCase& c) {
  const std::size_t n = c.dim_V();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m[a][b] = coefficient(c.s.bracket(c.V[a], c.V[b]), c.theta);
  }
  return m;
}

std::vector<Rational> c_functional(const SubadjointCase& c) {
  const Index v0 = c.v0_local();
  std::vector<Rational> out;
  for (Index b : c.l_part(0)) {
    const SparseVector img = c.act(b, v0);
    if (!only_on(img, v0)) throw InternalError("[l_0, v0] leaves span(v0)");
    out.push_back(coefficient(img, v0));
  }
  return out;
}

std::vector<CaseCheck> check_case_invariants(const SubadjointCase& c) {
  std::vector<CaseCheck> out;
  auto add = [&](std::string id, bool ok, std::string detail = {}) {
    out.push_back({std::move(id), ok, std::move(detail)});
  };
  const std::size_t l1 = c.dim_l_part(1);
  add("contact.extremes", c.contact.dim(2) == 1 && c.contact.dim(-2) == 1);
  add("contact.additivity", check_bracket_additivity(c.s, c.contact));
  add("dims.V0_V3", c.dim_V_part(0) == 1 && c.dim_V_part(3) == 1);
  add("dims.V1_V2", c.dim_V_part(1) == l1 && c.dim_V_part(2) == l1);
  add("dims.legendrian", c.dim_V() == 2 * l1 + 2);
  add("dims.l_pm1", c.dim_l_part(-1) == l1);

  std::vector<int> expected;
  for (int i : expected_marked_roots(c.label)) expected.push_back(i - 1);
  add("marked_roots", c.I == expected);

  add("l.additivity", check_bracket_additivity(c.l_table, diagonal_grading(c.dim_l(), c.l_degree)));

  bool v_additive = true;
  for (Index a = 0; a < c.dim_l(); ++a) {
    for (Index v = 0; v < c.dim_V(); ++v) {
      const int target = c.l_degree[a] + c.V_degree[v];
      const SparseVector img = c.act(a, v);
      for (const auto& e : img.entries()) {
        if (c.V_degree[e.first] != target) v_additive = false;
      }
    }
  }
  add("V.additivity", v_additive);

  const Index v0 = c.v0_local();
  bool lowest = true;
  for (Index a = 0; a < c.dim_l(); ++a) {
    if (c.l_degree[a] <= 0 && !only_on(c.act(a, v0), v0)) lowest = false;
  }
  add("v0.lowest_weight", lowest);

  // Osculating filtration: V_{j+1} = [l_1, V_j].
  bool osculating = true;
  std::vector<SparseVector> layer{SparseVector::unit(v0)};
  for (int j = 0; j <= 3; ++j) {
    std::vector<Index> idx = c.V_part(j);
    if (Subspace::span(c.dim_V(), layer) != Subspace::coordinate(c.dim_V(), idx)) osculating = false;
    std::vector<SparseVector> next;
    for (Index a : c.l_part(1)) {
      for (const auto& w : layer) {
        auto img = c.act(SparseVector::unit(a), w);
        if (!img.empty()) next.push_back(std::move(img));
      }
    }
    layer = Subspace::span(c.dim_V(), next).basis();
  }
  add("V.osculating", osculating && layer.empty());

  bool c_ok = true;
  try {
    c_functional(c);
  } catch (const InternalError&) {
    c_ok = false;
  }
  add("c_functional", c_ok);
  return out;
}

FundamentalForms fundamental_forms(const SubadjointCase& c) {
  FundamentalForms f;
  f.l1 = c.l_part(1);
  f.V2 = c.V_part(2);
  f.V3 = c.V_part(3).at(0);
  const std::size_t m = f.l1.size();
  const Index v0 = c.v0_local();
  std::vector<SparseVector> w1(m);
  for (std::size_t a = 0; a < m; ++a) w1[a] = c.act(f.l1[a], v0);
  f.II.assign(m, std::vector<SparseVector>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) f.II[a][b] = c.act(SparseVector::unit(f.l1[a]), w1[b]);
  }
  f.III.assign(m, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m)));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t d = 0; d < m; ++d) {
        f.III[a][b][d] = coefficient(c.act(SparseVector::unit(f.l1[a]), f.II[b][d]), f.V3);
      }
    }
  }
  f.beta.assign(f.V2.size(), std::vector<Rational>(m));
  for (std::size_t w = 0; w < f.V2.size(); ++w) {
    for (std::size_t a = 0; a < m; ++a) f.beta[w][a] = coefficient(c.act(f.l1[a], f.V2[w]), f.V3);
  }
  return f;
}

FormsReport analyze_forms(const SubadjointCase& c, const FundamentalForms& f) {
  FormsReport r;
  const std::size_t m = f.l1.size();
  r.II_symmetric = true;
  r.III_symmetric = true;
  r.beta_compatible = true;
  std::vector<long> v2pos(c.dim_V(), -1);
  for (std::size_t w = 0; w < f.V2.size(); ++w) v2pos[f.V2[w]] = static_cast<long>(w);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (f.II[a][b] != f.II[b][a]) r.II_symmetric = false;
      for (std::size_t d = 0; d < m; ++d) {
        const Rational& x = f.III[a][b][d];
        if (x != f.III[b][a][d] || x != f.III[a][d][b] || x != f.III[d][b][a]) r.III_symmetric = false;
        Rational pair = 0;
        for (const auto& [w, coef] : f.II[b][d].entries()) {
          if (v2pos[w] < 0) {
            r.beta_compatible = false;
            continue;
          }
          pair += coef * f.beta[static_cast<std::size_t>(v2pos[w])][a];
        }
        if (pair != x) r.beta_compatible = false;
      }
    }
  }
  TripletBuilder tb(m * m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t d = 0; d < m; ++d) tb.add(b * m + d, a, f.III[a][b][d]);
    }
  }
  r.III_kernel_dim = m - rank(tb.build(), SolveMode::Exact).rank;
  r.beta_det = f.beta.size() == m ? determinant(f.beta) : Rational(0);

  for (const auto& ideal : c.ideals) {
    std::vector<std::size_t> members;
    for (std::size_t a = 0; a < m; ++a) {
      const IntVector root = c.l_root(f.l1[a]);
      bool inside = true;
      for (int i = 0; i < c.rs.rank(); ++i) {
        if (root[i] != 0 && std::find(ideal.begin(), ideal.end(), i) == ideal.end()) inside = false;
      }
      if (inside) members.push_back(a);
    }
    bool vanishes = !members.empty();
    for (std::size_t a : members) {
      for (std::size_t b : members) {
        if (!f.II[a][b].empty()) vanishes = false;
      }
    }
    r.II_vanishes_on_ideal.push_back(vanishes);
  }
  return r;
}

std::vector<SparseVector> sample_closed_orbit(const SubadjointCase& c, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Manual reduction keeps the stream identical across standard library implementations.
  auto draw = [&]() {
    const long num = static_cast<long>(rng() % 7) - 3;
    const long den = static_cast<long>(rng() % 3) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  auto within = [&](const IntVector& root, const std::vector<int>& ideal) {
    bool any = false;
    for (int i = 0; i < c.rs.rank(); ++i) {
      if (root[i] == 0) continue;
      if (std::find(ideal.begin(), ideal.end(), i) == ideal.end()) return false;
      any = true;
    }
    return any;
  };
  std::vector<SparseVector> out;
  for (const auto& ideal : c.ideals) {
    long top = -1;
    int best = -1;
    std::vector<Index> lowering;
    for (Index a = 0; a < c.dim_l(); ++a) {
      const IntVector root = c.l_root(a);
      if (!within(root, ideal)) continue;
      if (c.l_degree[a] == 1 && height(root) > best) {
        best = height(root);
        top = a;
      }
      if (c.l_degree[a] == 0 && height(root) < 0) lowering.push_back(a);
    }
    if (top < 0) continue;  // ideal without l_1 part
    for (std::size_t k = 0; k < count; ++k) {
      SparseVector x = SparseVector::unit(static_cast<Index>(top));
      if (k > 0) {
        for (Index f : lowering) {
          const Rational t = draw();
          SparseVector term = x;
          for (int order = 1; !term.empty(); ++order) {
            term = c.l_table.ad(f, term).scaled(t / order);
            x.add_scaled(term, 1);
          }
        }
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

XvvCertificate check_xvv(const SubadjointCase& c, const std::vector<SparseVector>& samples) {
  XvvCertificate cert;
  cert.samples = samples.size();
  const auto lm = c.l_part(-1);
  const std::size_t n = c.dim_l();
  TripletBuilder tb(std::max<std::size_t>(1, samples.size() * n), lm.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (std::size_t a = 0; a < lm.size(); ++a) {
      const SparseVector ab = c.l_table.ad(lm[a], samples[s]);
      const SparseVector abb = c.l_table.bracket(ab, samples[s]);
      for (const auto& [r, v] : abb.entries()) tb.add(s * n + r, a, v);
    }
  }
  cert.kernel_dim = lm.size() - rank(tb.build(), SolveMode::Exact).rank;
  cert.status = cert.kernel_dim == 0 && !samples.empty() ? XvvStatus::Pass : XvvStatus::Inconclusive;
  return cert;
}

}  // namespace liegrade
