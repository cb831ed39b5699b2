#include <catch_amalgamated.hpp>

#include "liegrade/prolong.hpp"
#include "liegrade/spencer.hpp"

using namespace liegrade;

namespace {

std::size_t gdim(const GAlgebra& g, int d) { return d < -1 || d > 3 ? 0 : g.part(d).size(); }

// dim Hom(g_+, g)_k and dim Hom(L^2 g_+, g)_k from the component dims alone.
std::size_t c1_formula(const GAlgebra& g, int k) {
  std::size_t n = 0;
  for (int d = 1; d <= 3; ++d) n += gdim(g, d) * gdim(g, d + k);
  return n;
}

std::size_t c2_formula(const GAlgebra& g, int k) {
  std::size_t n = 0;
  for (int a = 1; a <= 3; ++a)
    for (int b = a; b <= 3; ++b) {
      const std::size_t pairs = a == b ? gdim(g, a) * (gdim(g, a) - 1) / 2 : gdim(g, a) * gdim(g, b);
      n += pairs * gdim(g, a + b + k);
    }
  return n;
}

const SummandDescriptor* find_piece(const std::vector<SummandDescriptor>& s, Family f, int i, int j, int target) {
  for (const auto& d : s)
    if (d.family == f && d.i == i && d.j == j && d.target == target) return &d;
  return nullptr;
}

}  // namespace

TEST_CASE("cochain space dims follow the grading") {
  for (const char* id : {"B3", "D4", "F4"}) {
    const auto g = build_g(build_case(id));
    for (int k = -8; k <= -1; ++k) {
      const auto sp = spencer_spaces(g, k);
      INFO(id << " k=" << k);
      CHECK(sp.dim_C1() == c1_formula(g, k));
      CHECK(sp.dim_C2() == c2_formula(g, k));
      if (k <= -7) CHECK(sp.dim_C2() == 0);
    }
  }
  const auto b3 = build_g(build_case("B3"));
  CHECK(spencer_spaces(b3, -1).dim_C1() == 26);
}

TEST_CASE("B3 Spencer differential at k = -1") {
  const auto g = build_g(build_case("B3"));
  const auto sp = spencer_spaces(g, -1);
  const auto D = spencer_differential(g, sp);
  CHECK(D.num_rows() == sp.dim_C2());
  CHECK(D.num_cols() == sp.dim_C1());
  for (Index x : g.part(-1)) CHECK(D.multiply(ad_cochain(g, sp, x)).empty());

  const auto q = q_dimension(g, -1, SolveMode::Exact);
  CHECK(q.rank == 24);
  CHECK(q.q == q.dim_C2 - 24);
  CHECK(q.certified);
  CHECK_FALSE(q.probabilistic);

  // ker d on C^{-1,1} is the first prolongation.
  const auto d = g_prolong_input(g);
  const auto r = prolongation(d.input);
  CHECK(kernel(D).size() == r.dims.at(1));
}

TEST_CASE("cokernel dims: bounds, support and mode agreement") {
  const auto g = build_g(build_case("B4"));
  for (int k = -1; k >= -7; --k) {
    const auto ex = q_dimension(g, k, SolveMode::Exact);
    CHECK(ex.q <= ex.dim_C2);
    const auto mp = q_dimension(g, k, SolveMode::ModP);
    const auto mc = q_dimension(g, k, SolveMode::ModPCertify);
    CHECK(mp.q == ex.q);
    CHECK(mc.q == ex.q);
    CHECK(mc.certified);
    if (k == -7) CHECK(ex.q == 0);
  }
  CHECK(q_dimension(g, -1, SolveMode::ModP).probabilistic);
}

TEST_CASE("family decomposition") {
  const auto c = build_case("B3");
  const auto g = build_g(c);
  for (int k = -1; k >= -7; --k) {
    const auto s = hom_decomposition(c, g, k);
    std::size_t total = 0;
    for (const auto& d : s) {
      total += d.dim;
      CHECK(d.weights.size() == d.dim);
    }
    CHECK(total == spencer_spaces(g, k).dim_C2());
  }
  const auto s1 = hom_decomposition(c, g, -1);
  const auto* vv = find_piece(s1, Family::VV_V, 2, 2, 3);
  REQUIRE(vv != nullptr);
  CHECK(vv->dim == 1);

  const auto e8 = build_case("E8");
  const auto ge8 = build_g(e8);
  const auto s3 = hom_decomposition(e8, ge8, -3);
  const auto* piece = find_piece(s3, Family::VV_Lhat, 2, 2, 1);
  REQUIRE(piece != nullptr);
  CHECK(piece->dim == 27 * 26 / 2 * 27);
}

TEST_CASE("c^I on the components of g") {
  for (const char* id : {"B3", "D5", "F4", "E7"}) {
    const auto c = build_case(id);
    const auto g = build_g(c);
    for (const auto& chk : cI_component_checks(c, g)) {
      INFO(id << " " << chk.id << " " << chk.detail);
      CHECK(chk.ok);
    }
    CHECK(c.cI_omega_star() == Rational(3, 2));
  }
}

TEST_CASE("B3 embedding weight is the (1,2) Segre weight") {
  // On sl2 + sl2 the fundamental weight is half the simple root, so c^I = 1/2 + 2/2.
  const auto c = build_case("B3");
  auto coords = c.embedding_weight.coords;
  std::sort(coords.begin(), coords.end());
  REQUIRE(coords.size() == 2);
  CHECK(coords[0] == 1);
  CHECK(coords[1] == 2);
  CHECK(coords[0] / 2 + coords[1] / 2 == Rational(3, 2));
}

TEST_CASE("c^I table rows from the proof") {
  const auto c = build_case("D4");
  const auto g = build_g(c);

  const auto t3 = summand_cI_table(c, g, -3);
  CHECK(t3.rows[5].values == std::vector<Rational>{0});
  CHECK(t3.table_ok);
  CHECK(t3.verdict_ok);
  CHECK(in_Rk(-3, Family::VV_Lhat, 2, 2));

  const auto t4 = summand_cI_table(c, g, -4);
  CHECK(t4.rows[5].values == std::vector<Rational>{-1});
  CHECK(t4.verdict_ok);
  for (auto f : kFamilies) CHECK_FALSE(in_Rk(-4, f, 2, 2));

  const auto t1 = summand_cI_table(c, g, -1);
  CHECK(t1.rows[0].values == std::vector<Rational>{Rational(-5, 2)});
  for (std::size_t f = 0; f < 6; ++f) CHECK(t1.rows[f].expected == expected_cI(kFamilies[f], -1));
  bool allowance = false;
  in_Rk(-1, Family::VV_V, 2, 2, &allowance);
  CHECK(allowance);
  CHECK(t1.closure_ok);
}

TEST_CASE("partial differentials in B3") {
  const auto g = build_g(build_case("B3"));
  const auto r = partial_prime_checks(g);
  CHECK(r.dim_hom_V2_l1 == 4);
  CHECK(r.dim_L2V2_V3 == 1);
  CHECK(r.rank_d1 == 1);
  CHECK(r.nullity_d2 == 0);
  CHECK_FALSE(is_zero(r.pairing_det));
  CHECK(r.surjective);
  CHECK(r.injective);
  CHECK(r.perfect);
}

TEST_CASE("conjugation by exp(s v0) expands into the eight terms") {
  for (const char* id : {"B3", "F4"}) {
    const auto g = build_g(build_case(id));
    const auto r = conjugation_expansion_check(g, 3, 17);
    CHECK(r.trials > 0);
    CHECK(r.failures == 0);
    CHECK(r.s0_ok);
    CHECK(r.s1_ok);
    CHECK(r.eight_terms_ok);
    CHECK(r.high_order_zero);
  }
}
