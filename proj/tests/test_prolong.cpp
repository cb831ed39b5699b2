#include <catch_amalgamated.hpp>

#include "liegrade/error.hpp"
#include "liegrade/prolong.hpp"
#include "liegrade/rootsys.hpp"

using namespace liegrade;

TEST_CASE("projective line: every prolongation is one-dimensional") {
  ProlongOptions opt;
  opt.k_max = 6;
  const auto r = prolongation(p1_input(), opt);
  for (int k = 1; k <= 6; ++k) CHECK(r.dims.at(k) == 1);
  for (const auto& lv : r.levels) CHECK(lv.residual_zero);
}

TEST_CASE("depth beyond the safety bound needs an explicit override") {
  ProlongOptions opt;
  opt.k_max = 7;
  CHECK_THROWS_AS(prolongation(p1_input(), opt), ProlongationBoundExceeded);
  opt.allow_unbounded = true;
  CHECK(prolongation(p1_input(), opt).dims.at(7) == 1);
}

TEST_CASE("input validation") {
  auto in = p1_input();
  CHECK(validate_input(in).empty());
  in.degree[0] = 0;
  CHECK_FALSE(validate_input(in).empty());

  // Heisenberg [x, y] = z: the grading derivation diag(1, 1, 2) is fine, the identity is not.
  ProlongInput h;
  h.n_plus = LieAlgebraTable(std::vector<std::string>{"x", "y", "z"});
  h.n_plus.set_bracket(0, 1, SparseVector::unit(2));
  h.degree = {1, 1, 2};
  h.n0 = {{SparseVector::unit(0), SparseVector::unit(1), SparseVector::unit(2, 2)}};
  CHECK(validate_input(h).empty());
  h.n0.push_back({SparseVector::unit(0), SparseVector::unit(1), SparseVector::unit(2)});
  CHECK_FALSE(validate_input(h).empty());

  // z alone in degree 2 without x, y is not generated by degree 1.
  ProlongInput bad;
  bad.n_plus = LieAlgebraTable(std::vector<std::string>{"x", "z"});
  bad.degree = {1, 2};
  bad.n0 = {};
  CHECK_FALSE(validate_input(bad).empty());
}

TEST_CASE("B3: p_-1 = g_-1 and p_-2 = 0") {
  const auto g = build_g(build_case("B3"));
  const auto d = g_prolong_input(g);
  CHECK(validate_input(d.input).empty());
  ProlongOptions opt;
  opt.hints[1] = d.ad_minus_one;
  const auto r = prolongation(d.input, opt);
  CHECK(r.dims.at(1) == 2);
  CHECK(r.dims.at(2) == 0);
  CHECK(r.levels[0].hints_valid);
  CHECK(r.levels[0].residual_zero);
  CHECK(r.monotone);
}

TEST_CASE("mod-p modes reproduce the exact dims") {
  const auto g = build_g(build_case("D5"));
  const auto d = g_prolong_input(g);
  for (auto mode : {SolveMode::ModP, SolveMode::ModPCertify}) {
    ProlongOptions opt;
    opt.mode = mode;
    opt.hints[1] = d.ad_minus_one;
    const auto r = prolongation(d.input, opt);
    CHECK(r.dims.at(1) == 5);
    CHECK(r.dims.at(2) == 0);
    CHECK(r.levels[0].proven);
    CHECK(r.levels[1].proven);
  }
}

TEST_CASE("first prolongation of l_0 + l_1 is l_-1") {
  // B3: l = sl2 + sl2, each factor a projective line, so depth 2 also has dim 2.
  const auto b3 = build_case("B3");
  const auto r = prolongation(l_prolong_input(b3));
  CHECK(r.dims.at(1) == 2);
  CHECK(r.dims.at(2) == 2);

  const auto f4 = build_case("F4");
  const auto rf = prolongation(l_prolong_input(f4));
  CHECK(rf.dims.at(1) == f4.dim_l_part(-1));
  CHECK(rf.dims.at(2) == 0);
}

TEST_CASE("direct sums add prolongation dims") {
  const auto pp = direct_sum_check(p1_input(), p1_input(), 4);
  CHECK(pp.ok);
  for (int k = 1; k <= 4; ++k) CHECK(pp.dims_sum.at(k) == 2);

  // Neutral summand.
  const auto b3 = build_case("B3");
  const auto z = direct_sum_check(l_prolong_input(b3), zero_input(), 3);
  CHECK(z.ok);
  CHECK(z.dims_sum == z.dims_a);

  // D5: sl2 factor plus the so_6 quadric factor.
  const auto d5 = build_case("D5");
  REQUIRE(d5.ideals.size() == 2);
  const auto dd = direct_sum_check(l_prolong_input(d5, 0), l_prolong_input(d5, 1), 2);
  CHECK(dd.ok);
  CHECK(dd.dims_sum.at(1) == d5.dim_l_part(-1));
  CHECK(dd.dims_a.at(1) + dd.dims_b.at(1) == 5);
}

TEST_CASE("formal vector fields") {
  const auto f = formal_vector_field_oracle(3);
  const auto& L = f.table;
  // [t^2 d, d] = -2 t d
  CHECK(L.bracket(f.index_of(1), f.index_of(-1)) == SparseVector::unit(f.index_of(0), -2));
  // [t d, t^{k+1} d] = k t^{k+1} d
  for (int k = -1; k <= 3; ++k)
    CHECK(L.bracket(f.index_of(0), f.index_of(k)) == (k == 0 ? SparseVector() : SparseVector::unit(f.index_of(k), k)));
  CHECK(formal_vector_field_nondegenerate(f));

  const auto f1 = formal_vector_field_oracle(1);
  CHECK(check_jacobi(f1.table).empty());
  const auto a1 = chevalley_table(build_root_system(DynkinLabel::parse("A1")));
  // h -> 2 t d, e -> t^2 d, f -> -d
  CHECK(find_isomorphism(a1, f1.table).has_value());
  CHECK_THROWS_AS(formal_vector_field_oracle(0), Error);
}

TEST_CASE("sl2 adjoint fixture values") {
  const auto r = sl2_adjoint_check();
  const auto f = formal_vector_field_oracle(2);
  CHECK(r.phi_a_a == SparseVector::unit(f.index_of(0), 6));
  CHECK(r.phi_a_a_a == SparseVector::unit(f.index_of(-1), -6));
  CHECK(r.lhs == SparseVector::unit(f.index_of(0), -12));
  CHECK(r.rhs_inner == SparseVector::unit(f.index_of(0), 12));
  CHECK(r.ok);
}
