#include "liegrade/spencer.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "liegrade/error.hpp"

namespace liegrade {

namespace {

// Positions of g basis vectors inside their degree component and inside g_+.
struct Layout {
  std::vector<Index> plus;
  std::vector<long> plus_pos;
  std::map<int, std::vector<Index>> part;
  std::vector<Index> pos;  // position inside its degree component

  explicit Layout(const GAlgebra& g) : plus(g.plus()), plus_pos(g.dim(), -1), pos(g.dim(), 0) {
    for (std::size_t i = 0; i < plus.size(); ++i) plus_pos[plus[i]] = static_cast<long>(i);
    for (Index x = 0; x < g.dim(); ++x) {
      auto& p = part[g.degree(x)];
      pos[x] = static_cast<Index>(p.size());
      p.push_back(x);
    }
  }
  const std::vector<Index>& of(int d) const {
    static const std::vector<Index> empty;
    auto it = part.find(d);
    return it == part.end() ? empty : it->second;
  }
};

// Row lookup for C^{k,2}: offset of the pair block plus the position of z in its degree.
struct C2Index {
  std::size_t P = 0;
  std::vector<long> pair_offset;  // by plus positions (pu, pv), pu < pv
  long row(const Layout& L, Index u, Index v, Index z) const {
    long pu = L.plus_pos[u], pv = L.plus_pos[v];
    if (pu > pv) std::swap(pu, pv);
    const long off = pair_offset[static_cast<std::size_t>(pu) * P + static_cast<std::size_t>(pv)];
    return off < 0 ? -1 : off + L.pos[z];
  }
};

C2Index c2_index(const GAlgebra& g, const Layout& L, int k) {
  C2Index ix;
  ix.P = L.plus.size();
  ix.pair_offset.assign(ix.P * ix.P, -1);
  long rows = 0;
  for (std::size_t a = 0; a < ix.P; ++a) {
    for (std::size_t b = a + 1; b < ix.P; ++b) {
      const auto& target = L.of(g.degree(L.plus[a]) + g.degree(L.plus[b]) + k);
      if (target.empty()) continue;
      ix.pair_offset[a * ix.P + b] = rows;
      rows += static_cast<long>(target.size());
    }
  }
  return ix;
}

std::string vname(int i) { return "V_" + std::to_string(i); }

std::string target_name(bool V, int t) { return V ? vname(t) : "lhat_" + std::to_string(t); }

}  // namespace

SpencerSpaces spencer_spaces(const GAlgebra& g, int k) {
  const Layout L(g);
  SpencerSpaces sp;
  sp.k = k;
  for (Index x : L.plus) {
    for (Index y : L.of(g.degree(x) + k)) sp.C1.push_back({x, y});
  }
  for (std::size_t a = 0; a < L.plus.size(); ++a) {
    for (std::size_t b = a + 1; b < L.plus.size(); ++b) {
      for (Index z : L.of(g.degree(L.plus[a]) + g.degree(L.plus[b]) + k)) sp.C2.push_back({L.plus[a], L.plus[b], z});
    }
  }
  return sp;
}

SparseRationalMatrix spencer_differential(const GAlgebra& g, const SpencerSpaces& sp) {
  const Layout L(g);
  const C2Index ix = c2_index(g, L, sp.k);
  const auto& T = g.table;

  // For each x in g_+: pairs u < v of g_+ with the coefficient of x in [u, v].
  std::map<Index, std::vector<std::tuple<Index, Index, Rational>>> appears;
  for (std::size_t a = 0; a < L.plus.size(); ++a) {
    for (std::size_t b = a + 1; b < L.plus.size(); ++b) {
      for (const auto& [x, c] : T.bracket(L.plus[a], L.plus[b]).entries()) {
        appears[x].emplace_back(L.plus[a], L.plus[b], c);
      }
    }
  }

  TripletBuilder tb(sp.dim_C2(), sp.dim_C1());
  for (std::size_t col = 0; col < sp.C1.size(); ++col) {
    const auto [x, y] = sp.C1[col];
    for (Index v : L.plus) {
      if (v == x) continue;
      // u = x: [f(x), v] = [e_y, v];  v = x: [u, f(x)] = [u, e_y].
      const SparseVector& w = x < v ? T.bracket(y, v) : T.bracket(v, y);
      for (const auto& [z, c] : w.entries()) {
        const long r = ix.row(L, x, v, z);
        if (r < 0) throw InternalError("Spencer row outside C^{k,2}");
        tb.add(static_cast<std::size_t>(r), col, c);
      }
    }
    if (auto it = appears.find(x); it != appears.end()) {
      for (const auto& [u, v, c] : it->second) {
        const long r = ix.row(L, u, v, y);
        if (r < 0) throw InternalError("Spencer row outside C^{k,2}");
        tb.add(static_cast<std::size_t>(r), col, -c);
      }
    }
  }
  return tb.build();
}

SparseVector ad_cochain(const GAlgebra& g, const SpencerSpaces& sp, Index x) {
  std::map<std::pair<Index, Index>, std::size_t> col;
  for (std::size_t c = 0; c < sp.C1.size(); ++c) col[{sp.C1[c][0], sp.C1[c][1]}] = c;
  std::vector<SparseVector::Entry> e;
  for (Index u : g.plus()) {
    for (const auto& [y, v] : g.table.bracket(x, u).entries()) {
      auto it = col.find({u, y});
      if (it == col.end()) throw InternalError("ad(x) is not homogeneous of degree k");
      e.emplace_back(static_cast<Index>(it->second), v);
    }
  }
  return SparseVector(std::move(e));
}

QDimension q_dimension(const GAlgebra& g, int k, SolveMode mode, const ModpConfig& config) {
  const SpencerSpaces sp = spencer_spaces(g, k);
  QDimension q;
  q.k = k;
  q.dim_C1 = sp.dim_C1();
  q.dim_C2 = sp.dim_C2();
  q.mode = mode;
  if (q.dim_C1 == 0 || q.dim_C2 == 0) {
    q.q = q.dim_C2;
    q.certified = true;
    return q;
  }
  const RankResult r = rank(spencer_differential(g, sp), mode, config);
  q.rank = r.rank;
  q.q = q.dim_C2 - r.rank;
  q.certified = r.certified;
  q.probabilistic = !r.certified && !r.maximal;
  q.primes = r.primes;
  return q;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::L1L1_V: return "Hom(L^2 lhat_1, V)";
    case Family::L1L1_Lhat: return "Hom(L^2 lhat_1, lhat)";
    case Family::L1V_V: return "Hom(lhat_1 x V_+, V)";
    case Family::L1V_Lhat: return "Hom(lhat_1 x V_+, lhat)";
    case Family::VV_V: return "Hom(L^2 V_+, V)";
    case Family::VV_Lhat: return "Hom(L^2 V_+, lhat)";
  }
  return {};
}

Rational expected_cI(Family f, int k) {
  const Rational K(k);
  switch (f) {
    case Family::L1L1_V: return K - Rational(3, 2);
    case Family::L1L1_Lhat:
    case Family::L1V_V: return K;
    case Family::L1V_Lhat:
    case Family::VV_V: return K + Rational(3, 2);
    case Family::VV_Lhat: return K + 3;
  }
  return K;
}

std::vector<Rational> cI_set(const SubadjointCase& c, const std::vector<IntVector>& weights) {
  std::set<Rational> s;
  for (const auto& w : weights) s.insert(c.cI(w));
  return {s.begin(), s.end()};
}

std::vector<CaseCheck> cI_component_checks(const SubadjointCase& c, const GAlgebra& g) {
  std::map<std::string, std::set<Rational>> seen;
  std::map<std::string, Rational> expect;
  for (Index x = 0; x < g.dim(); ++x) {
    std::string key;
    if (x == g.id) {
      key = "Id";
      expect[key] = 0;
    } else if (g.is_l(x)) {
      key = "l_" + std::to_string(g.degree(x));
      expect[key] = g.degree(x);
    } else {
      key = "V_" + std::to_string(g.degree(x));
      expect[key] = Rational(g.degree(x)) - Rational(3, 2);
    }
    seen[key].insert(c.cI(g.root[x]));
  }
  std::vector<CaseCheck> out;
  for (const auto& [key, vals] : seen) {
    std::string detail;
    for (const auto& v : vals) detail += (detail.empty() ? "" : ",") + to_string(v);
    out.push_back({"cI." + key, vals.size() == 1 && *vals.begin() == expect[key], "{" + detail + "}"});
  }
  const Rational w = c.cI_omega_star();
  out.push_back({"cI.omega_star", w == Rational(3, 2), to_string(w)});
  return out;
}

std::vector<SummandDescriptor> hom_decomposition(const SubadjointCase& c, const GAlgebra& g, int k) {
  const SpencerSpaces sp = spencer_spaces(g, k);
  std::map<std::tuple<int, int, int>, SummandDescriptor> pieces;
  for (const auto& [u, v, z] : sp.C2) {
    const bool lu = g.is_l(u), lv = g.is_l(v), zV = g.is_V(z);
    Family f;
    int i = 0, j = 0;
    std::string src;
    if (lu && lv) {
      f = zV ? Family::L1L1_V : Family::L1L1_Lhat;
      src = "L^2 lhat_1";
    } else if (lu || lv) {
      f = zV ? Family::L1V_V : Family::L1V_Lhat;
      i = g.degree(lu ? v : u);
      src = "lhat_1 x " + vname(i);
    } else {
      f = zV ? Family::VV_V : Family::VV_Lhat;
      i = std::min(g.degree(u), g.degree(v));
      j = std::max(g.degree(u), g.degree(v));
      src = i == j ? "L^2 " + vname(i) : vname(i) + " ^ " + vname(j);
    }
    auto& d = pieces[{static_cast<int>(f), i, j}];
    if (d.dim == 0) {
      d.family = f;
      d.i = i;
      d.j = j;
      d.target = g.degree(z);
      d.name = "Hom(" + src + ", " + target_name(zV, d.target) + ")";
    }
    ++d.dim;
    IntVector w = g.root[z];
    for (std::size_t t = 0; t < w.size(); ++t) w[t] -= g.root[u][t] + g.root[v][t];
    d.weights.push_back(std::move(w));
  }
  std::vector<SummandDescriptor> out;
  for (auto& [key, d] : pieces) {
    d.cI_values = cI_set(c, d.weights);
    out.push_back(std::move(d));
  }
  return out;
}

bool in_Rk(int k, Family f, int i, int j, bool* allowance) {
  if (allowance) *allowance = false;
  if (k == -1) {
    if (f == Family::VV_V && i == 1) return true;                    // Hom(V_1 ^ V_+, V)_{-1}
    if (f == Family::VV_Lhat && i == 1 && j == 1) return true;       // Hom(L^2 V_1, lhat_1)
    if (f == Family::L1V_Lhat && i == 1) return true;                // Hom(l_1 ^ V_1, lhat_1)
    if (f == Family::VV_V && i == 2 && j == 2) {                     // Hom(L^2 V_2, V_3)
      if (allowance) *allowance = true;
      return true;
    }
    return false;
  }
  if (k == -2 || k == -3) return f == Family::VV_Lhat;
  return false;
}

std::vector<std::string> Rk_pieces(int k) {
  if (k == -1) {
    return {"Hom(V_1 ^ V_+, V)_{-1}", "Hom(L^2 V_1, lhat_1)", "Hom(l_1 ^ V_1, lhat_1)",
            "allowance: Hom(L^2 V_2, V_3)"};
  }
  if (k == -2 || k == -3) return {"Hom(L^2 V_+, lhat)_{" + std::to_string(k) + "}"};
  return {};
}

CITable summand_cI_table(const SubadjointCase& c, const GAlgebra& g, int k) {
  CITable t;
  t.k = k;
  t.dim_C2 = spencer_spaces(g, k).dim_C2();
  std::array<std::set<Rational>, 6> vals;
  std::size_t total = 0;
  t.verdict_ok = true;
  for (const auto& d : hom_decomposition(c, g, k)) {
    const auto fi = static_cast<std::size_t>(d.family);
    t.rows[fi].dim += d.dim;
    vals[fi].insert(d.cI_values.begin(), d.cI_values.end());
    total += d.dim;
    const bool meets = std::any_of(d.cI_values.begin(), d.cI_values.end(), [](const Rational& v) { return sgn(v) >= 0; });
    if (meets && !in_Rk(k, d.family, d.i, d.j)) {
      t.verdict_ok = false;
      t.offending.push_back(d.name);
    }
  }
  t.table_ok = true;
  for (std::size_t fi = 0; fi < 6; ++fi) {
    auto& row = t.rows[fi];
    row.family = kFamilies[fi];
    row.values.assign(vals[fi].begin(), vals[fi].end());
    row.expected = expected_cI(row.family, k);
    // Empty families carry no weights; a nonempty one must take exactly the table value.
    row.ok = row.dim == 0 ? row.values.empty() : (row.values.size() == 1 && row.values[0] == row.expected);
    if (!row.ok) {
      t.table_ok = false;
      for (const auto& v : row.values) {
        if (v != row.expected) t.offending.push_back(family_name(row.family) + " value " + to_string(v));
      }
    }
  }
  t.closure_ok = total == t.dim_C2;
  return t;
}

PartialPrimeReport partial_prime_checks(const GAlgebra& g, SolveMode mode, const ModpConfig& config) {
  PartialPrimeReport r;
  r.mode = mode;
  const SpencerSpaces sp = spencer_spaces(g, -1);
  const SparseRationalMatrix D = spencer_differential(g, sp);
  std::vector<char> inV1(g.dim(), 0), inV2(g.dim(), 0), inV3(g.dim(), 0), inl1(g.dim(), 0);
  for (Index x : g.V1) inV1[x] = 1;
  for (Index x : g.V2) inV2[x] = 1;
  for (Index x : g.V3) inV3[x] = 1;
  for (Index x : g.l1) inl1[x] = 1;

  std::vector<Index> cols, rows1, rows2;
  for (std::size_t c = 0; c < sp.C1.size(); ++c) {
    if (inV2[sp.C1[c][0]] && inl1[sp.C1[c][1]]) cols.push_back(static_cast<Index>(c));
  }
  for (std::size_t q = 0; q < sp.C2.size(); ++q) {
    const auto [u, v, z] = sp.C2[q];
    if (inV2[u] && inV2[v] && inV3[z]) rows1.push_back(static_cast<Index>(q));
    if (((inV1[u] && inV2[v]) || (inV2[u] && inV1[v])) && inV2[z]) rows2.push_back(static_cast<Index>(q));
  }
  r.dim_hom_V2_l1 = cols.size();
  r.dim_L2V2_V3 = rows1.size();
  const RankResult a = rank(D.submatrix(rows1, cols), mode, config);
  const RankResult b = rank(D.submatrix(rows2, cols), mode, config);
  r.rank_d1 = a.rank;
  r.nullity_d2 = cols.size() - b.rank;
  // A mod-p rank never exceeds the rational one, so full rank mod p is already a proof.
  r.surjective = a.rank == rows1.size();
  r.injective = r.nullity_d2 == 0;
  r.certified = (a.certified || a.rank == rows1.size()) && (b.certified || b.rank == cols.size());

  const Index v3 = g.V3.at(0);
  std::vector<std::vector<Rational>> P(g.V2.size(), std::vector<Rational>(g.l1.size()));
  for (std::size_t w = 0; w < g.V2.size(); ++w) {
    for (std::size_t a1 = 0; a1 < g.l1.size(); ++a1) P[w][a1] = g.table.bracket(g.l1[a1], g.V2[w]).at(v3);
  }
  r.pairing_det = g.V2.size() == g.l1.size() ? determinant(P) : Rational(0);
  r.perfect = g.V2.size() == g.l1.size() && !is_zero(r.pairing_det);
  return r;
}

namespace {

using Poly = std::vector<SparseVector>;  // coefficients of s^0, s^1, ...

SparseVector apply_A(const GAlgebra& g, const SparseVector& x) { return g.table.ad(g.v0, x); }

// exp(sign * s A) applied to a polynomial, series truncated after A^order / order!.
Poly exp_sA(const GAlgebra& g, const Poly& p, int sign, int order) {
  Poly out(p.size() + order);
  for (std::size_t d = 0; d < p.size(); ++d) {
    SparseVector term = p[d];
    Rational coef = 1;
    for (int m = 0; m <= order; ++m) {
      if (m > 0) {
        term = apply_A(g, term);
        coef *= Rational(sign, m);
      }
      if (term.empty()) break;
      out[d + m].add_scaled(term, coef);
    }
  }
  return out;
}

struct Cochain {
  std::map<std::pair<Index, Index>, SparseVector> value;  // (u, v), u < v

  SparseVector operator()(const SparseVector& x, const SparseVector& y) const {
    SparseVector out;
    for (const auto& [u, a] : x.entries()) {
      for (const auto& [v, b] : y.entries()) {
        if (u == v) continue;
        auto it = value.find({std::min(u, v), std::max(u, v)});
        if (it == value.end()) continue;
        const Rational ab = a * b;
        out.add_scaled(it->second, u < v ? ab : Rational(-ab));
      }
    }
    return out;
  }
};

}  // namespace

ExpansionReport conjugation_expansion_check(const GAlgebra& g, std::size_t trials, std::uint64_t seed, int k_min) {
  ExpansionReport rep;
  std::mt19937_64 rng(seed);
  auto small = [&]() {
    Rational q(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
    q.canonicalize();
    return q;
  };
  const auto plus = g.plus();
  auto random_plus = [&]() {
    std::vector<SparseVector::Entry> e;
    for (int t = 0; t < 6; ++t) e.emplace_back(plus[rng() % plus.size()], small());
    return SparseVector(std::move(e));
  };

  for (int k = -1; k >= k_min; --k) {
    const SpencerSpaces sp = spencer_spaces(g, k);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      Cochain f;
      for (const auto& [u, v, z] : sp.C2) {
        if (rng() % 4 != 0) continue;
        f.value[{u, v}].add_scaled(SparseVector::unit(z), small());
      }
      const SparseVector u = random_plus(), w = random_plus();
      const Poly pu = exp_sA(g, {u}, -1, 4), pw = exp_sA(g, {w}, -1, 4);
      Poly inner(pu.size() + pw.size());
      for (std::size_t a = 0; a < pu.size(); ++a) {
        for (std::size_t b = 0; b < pw.size(); ++b) {
          if (!pu[a].empty() && !pw[b].empty()) inner[a + b].add_scaled(f(pu[a], pw[b]), 1);
        }
      }
      const Poly lhs = exp_sA(g, inner, 1, 4);

      const SparseVector Au = apply_A(g, u), Aw = apply_A(g, w);
      const SparseVector f0 = f(u, w);
      const SparseVector fuAw = f(u, Aw), fAuw = f(Au, w), fAA = f(Au, Aw);
      std::array<SparseVector, 4> expect{
          f0,
          apply_A(g, f0) - fuAw - fAuw,
          fAA - apply_A(g, fuAw) - apply_A(g, fAuw),
          apply_A(g, fAA)};
      auto coeff = [&](std::size_t d) { return d < lhs.size() ? lhs[d] : SparseVector(); };
      bool ok = true;
      if (coeff(0) != expect[0]) rep.s0_ok = ok = false;
      if (coeff(1) != expect[1]) rep.s1_ok = ok = false;
      for (std::size_t d = 0; d < 4; ++d) {
        if (coeff(d) != expect[d]) rep.eight_terms_ok = ok = false;
      }
      for (std::size_t d = 4; d < lhs.size(); ++d) {
        if (!lhs[d].empty()) rep.high_order_zero = ok = false;
      }
      ++rep.trials;
      if (!ok) ++rep.failures;
    }
  }
  return rep;
}

}  // namespace liegrade
