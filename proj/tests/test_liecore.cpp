#include <catch_amalgamated.hpp>

#include "liegrade/error.hpp"
#include "liegrade/lie_algebra.hpp"
#include "liegrade/rootsys.hpp"

using namespace liegrade;

namespace {

LieAlgebraTable sl2() { return chevalley_table(build_root_system(DynkinLabel::parse("A1"))); }

// Component dims of the grading by theta^vee, counted from the roots alone.
std::map<int, std::size_t> theta_counts(const RootSystem& rs) {
  std::map<int, std::size_t> out;
  out[0] = static_cast<std::size_t>(rs.rank());
  const int tt = rs.inner(rs.highest_root, rs.highest_root);
  for (const auto& a : rs.positive_roots) {
    const int v = 2 * rs.inner(a, rs.highest_root) / tt;
    out[v] += 1;
    out[-v] += 1;
  }
  return out;
}

}  // namespace

TEST_CASE("Jacobi scan: clean tables pass, a corrupted constant is caught") {
  const auto rs = build_root_system(DynkinLabel::parse("B3"));
  auto L = chevalley_table(rs);
  CHECK(check_jacobi(L).empty());

  LieAlgebraTable abelian(std::vector<std::string>{"x", "y", "z"});
  CHECK(check_jacobi(abelian).empty());

  const Index e1 = root_vector_index(rs, {1, 0, 0}), e2 = root_vector_index(rs, {0, 1, 0});
  SparseVector v = L.bracket(e1, e2);
  REQUIRE(!v.empty());
  const Index k = v.entries()[0].first;
  v.add_scaled(SparseVector::unit(k), 1);
  L.set_bracket(e1, e2, v);
  CHECK_FALSE(check_jacobi(L).empty());
}

TEST_CASE("grading of sl2 by its coroot has raw degrees -2, 0, 2") {
  const auto L = sl2();
  const auto g = grade_by_element(L, SparseVector::unit(0));
  CHECK(g.diagonal);
  CHECK(g.dim(-2) == 1);
  CHECK(g.dim(0) == 1);
  CHECK(g.dim(2) == 1);
  CHECK(check_bracket_additivity(L, g));

  const auto z = grade_by_element(L, SparseVector());
  CHECK(z.components.size() == 1);
  CHECK(z.dim(0) == 3);
}

TEST_CASE("invalid grading elements are rejected") {
  const auto L = sl2();
  CHECK_THROWS_AS(grade_by_element(L, SparseVector::unit(0, Rational(1, 3))), InvalidGradingElement);
  CHECK_THROWS_AS(grade_by_element(L, SparseVector::unit(1)), InvalidGradingElement);
}

TEST_CASE("highest coroot gradings match root counts") {
  for (const char* s : {"F4", "B3", "E8"}) {
    const auto rs = build_root_system(DynkinLabel::parse(s));
    const auto L = chevalley_table(rs);
    const auto g = grade_by_element(L, coroot(rs, rs.highest_root));
    const auto expect = theta_counts(rs);
    INFO(s);
    std::size_t total = 0;
    for (const auto& [d, n] : expect) {
      CHECK(g.dim(d) == n);
      total += g.dim(d);
    }
    CHECK(total == L.dim());
    CHECK(check_bracket_additivity(L, g));
  }
  const auto f4 = build_root_system(DynkinLabel::parse("F4"));
  const auto gf = grade_by_element(chevalley_table(f4), coroot(f4, f4.highest_root));
  CHECK(std::vector<std::size_t>{gf.dim(-2), gf.dim(-1), gf.dim(0), gf.dim(1), gf.dim(2)} ==
        std::vector<std::size_t>{1, 14, 22, 14, 1});
}

TEST_CASE("contact gradings: dim s_1 for B3, F4, E8") {
  for (auto [s, s1] : {std::pair{"B3", 6}, {"F4", 14}, {"E8", 56}}) {
    const auto rs = build_root_system(DynkinLabel::parse(s));
    const auto g = grade_by_element(chevalley_table(rs), coroot(rs, rs.highest_root));
    CHECK(g.dim(1) == static_cast<std::size_t>(s1));
    CHECK(g.dim(2) == 1);
  }
}

TEST_CASE("line stabilizers in sl2") {
  const auto L = sl2();
  const auto rs = build_root_system(DynkinLabel::parse("A1"));
  const Index e = root_vector_index(rs, {1});
  const auto b = line_stabilizer(L, SparseVector::unit(e));
  CHECK(b.dim() == 2);
  CHECK(b.contains(SparseVector::unit(0)));
  CHECK(b.contains(SparseVector::unit(e)));
  CHECK(line_stabilizer(L, SparseVector()).dim() == 3);
}

TEST_CASE("subalgebra extraction and isomorphism search") {
  const auto rs = build_root_system(DynkinLabel::parse("B3"));
  const auto L = chevalley_table(rs);
  const Index e = root_vector_index(rs, {1, 0, 0}), f = root_vector_index(rs, {-1, 0, 0});
  const auto sub = L.subalgebra(std::vector<Index>{0, e, f});
  CHECK(sub.dim() == 3);
  CHECK(check_jacobi(sub).empty());
  CHECK(find_isomorphism(sub, sl2()).has_value());
  LieAlgebraTable abelian(std::vector<std::string>{"x", "y", "z"});
  CHECK_FALSE(find_isomorphism(abelian, sl2()).has_value());
}
