#include "liegrade/galgebra.hpp"

#include <map>

#include "liegrade/error.hpp"

namespace liegrade {

namespace {

SparseVector shift(const SparseVector& v, Index offset) {
  SparseVector out;
  for (const auto& [i, x] : v.entries()) out.push_back(i + offset, x);
  return out;
}

bool supported_in(const SparseVector& v, const std::vector<char>& mask) {
  for (const auto& e : v.entries()) {
    if (!mask[e.first]) return false;
  }
  return true;
}

std::vector<char> mask_of(std::size_t n, const std::vector<Index>& idx) {
  std::vector<char> m(n, 0);
  for (Index i : idx) m[i] = 1;
  return m;
}

std::vector<SparseVector> units(const std::vector<Index>& idx) {
  std::vector<SparseVector> out;
  for (Index i : idx) out.push_back(SparseVector::unit(i));
  return out;
}

}  // namespace

std::vector<Index> GAlgebra::plus() const {
  std::vector<Index> out;
  for (Index i = 0; i < dim(); ++i) {
    if (degree(i) >= 1) out.push_back(i);
  }
  return out;
}

GAlgebra build_g(const SubadjointCase& c) {
  GAlgebra g;
  g.dim_l = c.dim_l();
  g.dim_V = c.dim_V();
  const std::size_t n = 1 + g.dim_l + g.dim_V;

  std::vector<std::string> labels{"Id"};
  std::vector<int> degree{0};
  g.root.push_back(IntVector(c.rs.rank(), 0));
  for (Index a = 0; a < g.dim_l; ++a) {
    labels.push_back("l:" + c.s.labels()[c.l[a]]);
    degree.push_back(c.l_degree[a]);
    g.root.push_back(c.l_root(a));
  }
  for (Index v = 0; v < g.dim_V; ++v) {
    labels.push_back("V:" + c.s.labels()[c.V[v]]);
    degree.push_back(c.V_degree[v]);
    g.root.push_back(c.V_root(v));
  }

  g.table = LieAlgebraTable(std::move(labels));
  const Index lo = 1;
  const Index vo = static_cast<Index>(1 + g.dim_l);
  for (Index v = 0; v < g.dim_V; ++v) g.table.set_bracket(g.id, vo + v, SparseVector::unit(vo + v));
  for (Index a = 0; a < g.dim_l; ++a) {
    for (Index b : c.l_table.partners(a)) {
      if (b > a) g.table.set_bracket(lo + a, lo + b, shift(c.l_table.bracket(a, b), lo));
    }
    for (Index v = 0; v < g.dim_V; ++v) {
      const SparseVector img = c.act(a, v);
      if (!img.empty()) g.table.set_bracket(lo + a, vo + v, shift(img, vo));
    }
  }
  g.grading = diagonal_grading(n, std::move(degree));

  g.v0 = g.from_V(c.v0_local());
  for (Index a : c.l_part(1)) g.l1.push_back(g.from_l(a));
  for (Index v : c.V_part(0)) g.V0.push_back(g.from_V(v));
  for (Index v : c.V_part(1)) g.V1.push_back(g.from_V(v));
  for (Index v : c.V_part(2)) g.V2.push_back(g.from_V(v));
  for (Index v : c.V_part(3)) g.V3.push_back(g.from_V(v));
  return g;
}

SparseRationalMatrix operator_A(const GAlgebra& g) {
  return g.table.ad_matrix(SparseVector::unit(g.v0));
}

std::vector<CaseCheck> check_g_invariants(const SubadjointCase& c, const GAlgebra& g) {
  std::vector<CaseCheck> out;
  auto add = [&](std::string id, bool ok, std::string detail = {}) {
    out.push_back({std::move(id), ok, std::move(detail)});
  };
  const std::size_t n = g.dim();
  const auto& L = g.table;

  bool dims = g.grading.min_degree() == -1 && g.grading.max_degree() == 3 &&
              g.part(-1).size() == c.dim_l_part(-1) &&
              g.part(0).size() == c.dim_V_part(0) + 1 + c.dim_l_part(0) &&
              g.part(1).size() == c.dim_V_part(1) + c.dim_l_part(1) &&
              g.part(2).size() == c.dim_V_part(2) && g.part(3).size() == c.dim_V_part(3) &&
              n == 1 + c.dim_l() + c.dim_V();
  std::string dim_text;
  for (int d = -1; d <= 3; ++d) dim_text += (d > -1 ? "," : "") + std::to_string(g.part(d).size());
  add("g.dims", dims, "(" + dim_text + ")");

  bool abelian = true;
  for (Index a = 0; a < n && abelian; ++a) {
    if (!g.is_V(a)) continue;
    for (Index b : L.partners(a)) {
      if (g.is_V(b)) abelian = false;
    }
  }
  add("g.V_abelian", abelian);

  bool id_ok = true;
  for (Index a = 1; a < n; ++a) {
    const SparseVector expect = g.is_V(a) ? SparseVector::unit(a) : SparseVector();
    if (L.bracket(g.id, a) != expect) id_ok = false;
  }
  add("g.Id_action", id_ok);

  const auto bad = check_jacobi(L, 1);
  add("g.jacobi", bad.empty(),
      bad.empty() ? "" : L.labels()[bad[0][0]] + "," + L.labels()[bad[0][1]] + "," + L.labels()[bad[0][2]]);
  add("g.additivity", check_bracket_additivity(L, g.grading));

  // g_0 -> gl(g_1) is injective.
  const auto g0 = g.part(0);
  const auto g1 = g.part(1);
  {
    std::vector<long> pos1(n, -1);
    for (std::size_t k = 0; k < g1.size(); ++k) pos1[g1[k]] = static_cast<long>(k);
    TripletBuilder tb(g1.size() * g1.size(), g0.size());
    for (std::size_t col = 0; col < g0.size(); ++col) {
      for (std::size_t k = 0; k < g1.size(); ++k) {
        for (const auto& [r, x] : L.bracket(g0[col], g1[k]).entries()) {
          tb.add(k * g1.size() + static_cast<std::size_t>(pos1[r]), col, x);
        }
      }
    }
    const auto r = rank(tb.build(), SolveMode::Exact);
    add("g.g0_injective_on_g1", r.rank == g0.size(),
        "rank " + std::to_string(r.rank) + " of " + std::to_string(g0.size()));
  }

  // V_1 is g_0-stable and g_0 acts on g_1 / V_1 (identified with l_1 coordinates).
  const auto V1mask = mask_of(n, g.V1);
  bool stable = true;
  for (Index x : g0) {
    for (Index v : g.V1) {
      if (!supported_in(L.bracket(x, v), V1mask)) stable = false;
    }
  }
  add("g.V1_invariant", stable);

  const auto l1mask = mask_of(n, g.l1);
  auto rho = [&](Index x, const SparseVector& a) {
    SparseVector out;
    const SparseVector img = L.ad(x, a);
    for (const auto& [i, coef] : img.entries()) {
      if (l1mask[i]) out.push_back(i, coef);
    }
    return out;
  };
  auto rho_vec = [&](const SparseVector& x, const SparseVector& a) {
    SparseVector out;
    for (const auto& [i, coef] : x.entries()) out.add_scaled(rho(i, a), coef);
    return out;
  };
  bool action = true;
  for (std::size_t p = 0; p < g0.size() && action; ++p) {
    for (std::size_t q = p + 1; q < g0.size() && action; ++q) {
      const SparseVector& xy = L.bracket(g0[p], g0[q]);
      for (Index a : g.l1) {
        const SparseVector e = SparseVector::unit(a);
        SparseVector lhs = rho_vec(xy, e);
        SparseVector rhs = rho(g0[p], rho(g0[q], e)) - rho(g0[q], rho(g0[p], e));
        if (lhs != rhs) {
          action = false;
          break;
        }
      }
    }
  }
  add("g.quotient_action", action);

  const auto cf = c_functional(c);
  const auto l0 = c.l_part(0);
  bool cok = true;
  for (std::size_t k = 0; k < l0.size(); ++k) {
    if (L.bracket(g.from_l(l0[k]), g.v0) != SparseVector::unit(g.v0, cf[k])) cok = false;
  }
  add("g.c_functional", cok);
  return out;
}

std::vector<CaseCheck> verify_structure_identities(const GAlgebra& g) {
  std::vector<CaseCheck> out;
  auto add = [&](std::string id, bool ok, std::string detail = {}) {
    out.push_back({std::move(id), ok, std::move(detail)});
  };
  const std::size_t n = g.dim();
  const auto& L = g.table;
  auto br = [&](const SparseVector& x, const SparseVector& y) { return L.bracket(x, y); };
  auto dot_v0 = [&](Index a) { return L.bracket(a, g.v0); };

  // (a) [a + t a.v0, b + t b.v0] = 0, coefficientwise in t.
  {
    bool ok = true;
    std::string witness;
    for (Index a : g.l1) {
      for (Index b : g.l1) {
        const SparseVector ea = SparseVector::unit(a), eb = SparseVector::unit(b);
        const SparseVector av = dot_v0(a), bv = dot_v0(b);
        const SparseVector t0 = br(ea, eb);
        const SparseVector t1 = br(ea, bv) + br(av, eb);
        const SparseVector t2 = br(av, bv);
        if (!t0.empty() || !t1.empty() || !t2.empty()) {
          ok = false;
          witness = L.labels()[a] + "," + L.labels()[b];
        }
      }
    }
    add("identity.eII", ok, witness);
  }

  // (b) V_1 = {u in g_1 : [u, V_2] = 0}.
  const auto g1 = g.part(1);
  const Subspace V1 = Subspace::coordinate(n, g.V1);
  {
    TripletBuilder tb(g.V2.size() * n, g1.size());
    for (std::size_t col = 0; col < g1.size(); ++col) {
      for (std::size_t w = 0; w < g.V2.size(); ++w) {
        for (const auto& [r, x] : L.bracket(g1[col], g.V2[w]).entries()) tb.add(w * n + r, col, x);
      }
    }
    std::vector<SparseVector> ann;
    for (const auto& k : kernel(tb.build())) {
      SparseVector u;
      for (const auto& [i, x] : k.entries()) u.add_scaled(SparseVector::unit(g1[i]), x);
      ann.push_back(std::move(u));
    }
    const Subspace A = Subspace::span(n, ann);
    add("identity.V1_annihilator", A == V1,
        "dim " + std::to_string(A.dim()) + " vs " + std::to_string(V1.dim()));
  }

  // (c), (d): A l_1 spans V_1 and meets l_1 trivially.
  {
    std::vector<SparseVector> images;
    for (Index a : g.l1) images.push_back(L.bracket(g.v0, a));
    const Subspace Al1 = Subspace::span(n, images);
    const Subspace l1 = Subspace::span(n, units(g.l1));
    add("identity.l1_cap_V1", l1.intersect(Al1).dim() == 0 && l1.intersect(V1).dim() == 0);
    add("identity.A_l1_is_V1", Al1 == V1,
        "dim " + std::to_string(Al1.dim()) + " vs " + std::to_string(V1.dim()));
  }

  // (e) A^2 = 0 and Id + sA preserves brackets. Since v0 lies in g_0, A keeps the
  // 5-grading; what it raises by one is the split Id + l (weight 0) versus V (weight 1).
  const SparseRationalMatrix A = operator_A(g);
  const SparseRationalMatrix At = A.transposed();  // row c = A e_c
  {
    bool sq = true, keeps = true, raises = true;
    for (Index c = 0; c < n; ++c) {
      const SparseVector& col = At.row(c);
      if (!A.multiply(col).empty()) sq = false;
      if (g.is_V(c) && !col.empty()) raises = false;
      for (const auto& e : col.entries()) {
        if (g.degree(e.first) != g.degree(c)) keeps = false;
        if (!g.is_V(e.first)) raises = false;
      }
    }
    add("identity.A_squared_zero", sq);
    add("identity.A_preserves_degree", keeps);
    add("identity.A_maps_lhat_to_V", raises);
  }
  {
    bool ok = true;
    std::string witness;
    for (Index x = 0; x < n && ok; ++x) {
      for (Index y = x + 1; y < n; ++y) {
        const SparseVector& Ax = At.row(x);
        const SparseVector& Ay = At.row(y);
        const SparseVector s1 = br(Ax, SparseVector::unit(y)) + br(SparseVector::unit(x), Ay) -
                                A.multiply(L.bracket(x, y));
        const SparseVector s2 = br(Ax, Ay);
        if (!s1.empty() || !s2.empty()) {
          ok = false;
          witness = L.labels()[x] + "," + L.labels()[y];
          break;
        }
      }
    }
    add("identity.exp_sv0_automorphism", ok, witness);
  }
  return out;
}

}  // namespace liegrade
