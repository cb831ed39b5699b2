#include <catch_amalgamated.hpp>

#include "liegrade/error.hpp"
#include "liegrade/rootsys.hpp"

using namespace liegrade;

namespace {

// Classical positive-root counts and algebra dimensions.
std::size_t classical_positive_roots(DynkinType t, int l) {
  switch (t) {
    case DynkinType::A: return static_cast<std::size_t>(l * (l + 1) / 2);
    case DynkinType::B:
    case DynkinType::C: return static_cast<std::size_t>(l * l);
    case DynkinType::D: return static_cast<std::size_t>(l * (l - 1));
    case DynkinType::E: return l == 6 ? 36 : l == 7 ? 63 : 120;
    case DynkinType::F: return 24;
    case DynkinType::G: return 6;
  }
  return 0;
}

}  // namespace

TEST_CASE("positive root counts match the classical table") {
  const std::vector<std::string> labels = {"A1", "A2", "A4", "B3", "B4", "B8", "C3", "D4", "D5", "D8",
                                           "E6", "E7", "E8", "F4", "G2"};
  for (const auto& s : labels) {
    const auto label = DynkinLabel::parse(s);
    const auto rs = build_root_system(label);
    INFO(s);
    CHECK(rs.positive_roots.size() == classical_positive_roots(label.type, label.rank));
  }
  CHECK(build_root_system(DynkinLabel::parse("E8")).dimension() == 248);
}

TEST_CASE("highest root dominates and roots are closed under simple steps") {
  for (const char* s : {"B3", "D5", "F4", "E7", "G2"}) {
    const auto rs = build_root_system(DynkinLabel::parse(s));
    INFO(s);
    for (const auto& r : rs.positive_roots) {
      for (int i = 0; i < rs.rank(); ++i) CHECK(rs.highest_root[i] >= r[i]);
      if (height(r) == 1) continue;
      bool reachable = false;
      for (int i = 0; i < rs.rank(); ++i) {
        IntVector prev = r;
        prev[i] -= 1;
        reachable |= prev[i] >= 0 && rs.positive_index(prev).has_value();
      }
      CHECK(reachable);
    }
  }
}

TEST_CASE("roots come ordered by height") {
  const auto rs = build_root_system(DynkinLabel::parse("F4"));
  for (std::size_t i = 1; i < rs.positive_roots.size(); ++i)
    CHECK(height(rs.positive_roots[i - 1]) <= height(rs.positive_roots[i]));
}

TEST_CASE("A1 Chevalley table gives the sl2 relations") {
  const auto rs = build_root_system(DynkinLabel::parse("A1"));
  const auto L = chevalley_table(rs);
  REQUIRE(L.dim() == 3);
  const Index h = 0, e = root_vector_index(rs, {1}), f = root_vector_index(rs, {-1});
  CHECK(L.bracket(e, f) == SparseVector::unit(h));
  CHECK(L.bracket(h, e) == SparseVector::unit(e, 2));
  CHECK(L.bracket(h, f) == SparseVector::unit(f, -2));
}

TEST_CASE("structure constants are antisymmetric integers with |N| = p + 1") {
  for (const char* s : {"B3", "G2", "F4"}) {
    const auto rs = build_root_system(DynkinLabel::parse(s));
    const auto L = chevalley_table(rs);
    INFO(s);
    CHECK(L.is_integral());
    for (Index i = 0; i < L.dim(); ++i)
      for (Index j = 0; j < L.dim(); ++j) CHECK(L.bracket(i, j) == -L.bracket(j, i));

    // N_{a,b} for roots a, b with a + b a root: p = max{p : b - p a is a root}.
    std::vector<IntVector> roots = rs.positive_roots;
    for (const auto& r : rs.positive_roots) {
      IntVector n = r;
      for (auto& x : n) x = -x;
      roots.push_back(n);
    }
    for (const auto& a : roots)
      for (const auto& b : roots) {
        IntVector sum(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) sum[k] = a[k] + b[k];
        if (!rs.is_root(sum)) continue;
        int p = 0;
        for (IntVector cur = b;; ++p) {
          for (std::size_t k = 0; k < a.size(); ++k) cur[k] -= a[k];
          if (!rs.is_root(cur)) break;
        }
        const auto v = L.bracket(root_vector_index(rs, a), root_vector_index(rs, b));
        REQUIRE(v.nnz() == 1);
        CHECK(abs(v.entries()[0].second) == p + 1);
      }
  }
}

TEST_CASE("weight conversions use the inverse Cartan matrix") {
  const auto a1 = build_root_system(DynkinLabel::parse("A1"));
  CHECK(to_simple_root_coords({{Rational(1)}, WeightBasis::Fundamental}, a1).coords[0] == Rational(1, 2));

  const auto a2 = build_root_system(DynkinLabel::parse("A2"));
  const auto w = to_simple_root_coords({{Rational(1), Rational(0)}, WeightBasis::Fundamental}, a2);
  CHECK(w.coords[0] == Rational(2, 3));
  CHECK(w.coords[1] == Rational(1, 3));
  CHECK(w.basis == WeightBasis::SimpleRoot);

  const auto e8 = build_root_system(DynkinLabel::parse("E8"));
  for (int i = 0; i < 8; ++i) {
    // Simple root alpha_i has fundamental coordinates given by column i of the Cartan matrix.
    WeightVector alpha{std::vector<Rational>(8, Rational(0)), WeightBasis::Fundamental};
    for (int j = 0; j < 8; ++j) alpha.coords[j] = e8.cartan[j][i];
    const auto c = to_simple_root_coords(alpha, e8);
    for (int j = 0; j < 8; ++j) CHECK(c.coords[j] == (i == j ? 1 : 0));
    CHECK(to_fundamental_coords(c, e8) == alpha);
  }
}

TEST_CASE("tables are deterministic") {
  const auto a = chevalley_table(build_root_system(DynkinLabel::parse("D5")));
  const auto b = chevalley_table(build_root_system(DynkinLabel::parse("D5")));
  CHECK(a == b);
}

TEST_CASE("labels are validated") {
  CHECK(DynkinLabel::parse("e8") == DynkinLabel{DynkinType::E, 8});
  CHECK_THROWS_AS(DynkinLabel::parse("E9"), InvalidLabel);
  CHECK_THROWS_AS(DynkinLabel::parse("X3"), InvalidLabel);
  CHECK_THROWS_AS(DynkinLabel::parse("G3"), InvalidLabel);
}
