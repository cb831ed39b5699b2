#include <catch_amalgamated.hpp>

#include "liegrade/error.hpp"
#include "liegrade/subadjoint.hpp"

using namespace liegrade;

namespace {

std::vector<std::size_t> V_dims(const SubadjointCase& c) {
  return {c.dim_V_part(0), c.dim_V_part(1), c.dim_V_part(2), c.dim_V_part(3)};
}

SparseVector II_of(const FundamentalForms& f, const SparseVector& b) {
  SparseVector acc;
  for (std::size_t i = 0; i < f.l1.size(); ++i)
    for (std::size_t j = 0; j < f.l1.size(); ++j) {
      const Rational c = b.at(f.l1[i]) * b.at(f.l1[j]);
      if (!is_zero(c)) acc.add_scaled(f.II[i][j], c);
    }
  return acc;
}

}  // namespace

TEST_CASE("B3 case dimensions") {
  const auto c = build_case("B3");
  CHECK(c.dim_V() == 6);
  CHECK(c.dim_l_part(1) == 2);
  CHECK(c.dim_l() == 6);
  CHECK(V_dims(c) == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("E8 case dimensions") {
  const auto c = build_case("E8");
  CHECK(c.dim_V() == 56);
  CHECK(c.dim_l_part(1) == 27);
  CHECK(c.dim_l() == 133);
  CHECK(V_dims(c) == std::vector<std::size_t>{1, 27, 27, 1});
}

TEST_CASE("l has the classical dimension of its type") {
  // F4: C3, E6: A5, E7: D6, B5: A1 + B3 (so_7), D6: A1 + D4 (so_8).
  CHECK(build_case("F4").dim_l() == 21);
  CHECK(build_case("E6").dim_l() == 35);
  CHECK(build_case("E7").dim_l() == 66);
  CHECK(build_case("B5").dim_l() == 3 + 21);
  CHECK(build_case("D6").dim_l() == 3 + 28);
}

TEST_CASE("excluded and unsupported labels") {
  CHECK_THROWS_AS(build_case("G2"), ExcludedCase);
  CHECK_THROWS_WITH(build_case("G2"), Catch::Matchers::ContainsSubstring("excluded case"));
  CHECK_THROWS_AS(build_case("A3"), ExcludedCase);
  CHECK_THROWS_AS(build_case("C4"), ExcludedCase);
  CHECK_THROWS_AS(build_case("Q7"), InvalidLabel);
}

TEST_CASE("case invariants hold across the families") {
  for (const char* id : {"B3", "B4", "D4", "D5", "F4", "E6", "E7"}) {
    const auto c = build_case(id);
    for (const auto& chk : check_case_invariants(c)) {
      INFO(id << " " << chk.id << " " << chk.detail);
      CHECK(chk.ok);
    }
    std::vector<int> one_based;
    for (int i : c.I) one_based.push_back(i + 1);
    CHECK(one_based == expected_marked_roots(c.label));
  }
}

TEST_CASE("symplectic form") {
  for (const char* id : {"B3", "F4"}) {
    const auto c = build_case(id);
    const auto s = symplectic_form(c);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) CHECK(s[i][j] == -s[j][i]);
    CHECK_FALSE(is_zero(determinant(s)));

    // Tangency at v0: sigma(v0, a.v0) = 0 for a in l_1.
    const Index v0 = c.v0_local();
    for (Index a : c.l_part(1)) {
      const SparseVector av0 = c.act(a, v0);
      Rational acc = 0;
      for (const auto& [v, coef] : av0.entries()) acc += coef * s[v0][v];
      CHECK(is_zero(acc));
    }
  }
}

TEST_CASE("fundamental forms: symmetry, nondegeneracy, pairing") {
  const auto b3 = build_case("B3");
  const auto f = fundamental_forms(b3);
  for (std::size_t i = 0; i < f.l1.size(); ++i)
    for (std::size_t j = 0; j < f.l1.size(); ++j) CHECK(f.II[i][j] == f.II[j][i]);
  const auto r = analyze_forms(b3, f);
  CHECK(r.III_kernel_dim == 0);
  // II vanishes on the P^1 factor.
  CHECK(std::count(r.II_vanishes_on_ideal.begin(), r.II_vanishes_on_ideal.end(), true) >= 1);

  const auto f4 = build_case("F4");
  const auto ff = fundamental_forms(f4);
  REQUIRE(ff.beta.size() == 6);
  REQUIRE(ff.beta[0].size() == 6);
  CHECK_FALSE(is_zero(determinant(ff.beta)));
  CHECK(analyze_forms(f4, ff).beta_compatible);
}

TEST_CASE("closed orbit samples") {
  const auto c = build_case("D5");
  const auto one = sample_closed_orbit(c, 1, 3);
  REQUIRE(!one.empty());
  for (const auto& b : one) CHECK(b.nnz() == 1);  // highest weight vectors
  CHECK(sample_closed_orbit(c, 5, 9) == sample_closed_orbit(c, 5, 9));

  // Base-locus membership on samples outside the surface case.
  for (const char* id : {"D5", "F4", "E6"}) {
    const auto cc = build_case(id);
    const auto f = fundamental_forms(cc);
    for (const auto& b : sample_closed_orbit(cc, 6, 1)) CHECK(II_of(f, b).empty());
  }

  // B3: three samples per summand span l_1.
  const auto b3 = build_case("B3");
  const auto s = sample_closed_orbit(b3, 3, 5);
  CHECK(Subspace::span(b3.dim_l(), s).dim() == b3.dim_l_part(1));
}

TEST_CASE("[[a,b],b] certificate") {
  for (const char* id : {"B3", "F4"}) {
    const auto c = build_case(id);
    const auto cert = check_xvv(c, sample_closed_orbit(c, 10, 0));
    CHECK(cert.status == XvvStatus::Pass);
    CHECK(cert.kernel_dim == 0);
    const auto none = check_xvv(c, {});
    CHECK(none.status == XvvStatus::Inconclusive);
    CHECK(none.kernel_dim == c.dim_l_part(-1));
  }
}

TEST_CASE("stabilizer of the line through v0 is l_-1 + l_0") {
  const auto c = build_case("B3");
  const Action act = [&](Index i, const SparseVector& w) { return c.act(SparseVector::unit(i), w); };
  const auto p = line_stabilizer(c.dim_l(), SparseVector::unit(c.v0_local()), act);
  CHECK(p.dim() == 4);
  CHECK(p.dim() == c.dim_l_part(-1) + c.dim_l_part(0));
}

TEST_CASE("c functional is defined on l_0") {
  const auto c = build_case("F4");
  const auto cf = c_functional(c);
  CHECK(cf.size() == c.dim_l_part(0));
  CHECK(c.cI_omega_star() == Rational(3, 2));
}
