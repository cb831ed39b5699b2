#include <catch_amalgamated.hpp>

#include <random>

#include "liegrade/error.hpp"
#include "liegrade/linalg.hpp"

using namespace liegrade;

namespace {

SparseRationalMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  SparseRationalMatrix m(0, rows.empty() ? 0 : rows[0].size());
  for (const auto& r : rows) {
    std::vector<Rational> d(r.begin(), r.end());
    m.append_row(SparseVector::from_dense(d));
  }
  return m;
}

// Dense Gaussian elimination over Q, kept separate from the sparse engine.
std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && is_zero(a[p][c])) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("rational text form round-trips") {
  Rational q(-6, 4);
  q.canonicalize();
  CHECK(to_string(q) == "-3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK(parse_rational("-3/2") == q);
  CHECK(parse_rational("0") == 0);
}

TEST_CASE("sparse vectors drop zeros and merge duplicates") {
  SparseVector v({{3, Rational(1)}, {1, Rational(2)}, {3, Rational(-1)}});
  REQUIRE(v.nnz() == 1);
  CHECK(v.at(1) == 2);
  CHECK(v.at(3) == 0);
  auto w = v - v;
  CHECK(w.empty());
}

TEST_CASE("rank and kernel of a small exact matrix") {
  const auto m = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m, SolveMode::Exact).rank == 2);
  const auto ker = kernel(m);
  REQUIRE(ker.size() == 1);
  CHECK(m.multiply(ker[0]).empty());
}

TEST_CASE("mod-p and certified ranks agree with dense elimination") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> coef(-3, 3), den(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 6 + trial % 5, cols = 7;
    std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols));
    SparseRationalMatrix m(0, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (rng() % 3 == 0) continue;
        Rational q(coef(rng), den(rng));
        q.canonicalize();
        dense[i][j] = q;
      }
      // Force dependencies now and then.
      if (i >= 2 && trial % 2 == 0)
        for (std::size_t j = 0; j < cols; ++j) dense[i][j] = dense[i - 1][j] + dense[i - 2][j];
      m.append_row(SparseVector::from_dense(dense[i]));
    }
    const std::size_t expect = dense_rank(dense);
    CHECK(rank(m, SolveMode::Exact).rank == expect);
    const auto mp = rank(m, SolveMode::ModP);
    CHECK(mp.rank == expect);
    // Full rank mod one prime is already a proof; otherwise two primes must agree.
    CHECK((mp.maximal || mp.primes.size() >= 2));
    const auto cert = rank(m, SolveMode::ModPCertify);
    CHECK(cert.rank == expect);
    CHECK(cert.certified);
  }
}

TEST_CASE("prime generation is deterministic and lands in [2^61, 2^62)") {
  const auto a = generate_primes(7, 4);
  CHECK(a == generate_primes(7, 4));
  for (auto p : a) {
    CHECK(is_prime_u64(p));
    CHECK(p >= (std::uint64_t{1} << 61));
    CHECK(p < (std::uint64_t{1} << 62));
  }
}

TEST_CASE("subspace canonical form is idempotent and basis independent") {
  const std::vector<SparseVector> a = {SparseVector::from_dense(std::vector<Rational>{1, 2, 0}),
                                       SparseVector::from_dense(std::vector<Rational>{0, 1, 1})};
  const std::vector<SparseVector> b = {a[0] + a[1], a[0].scaled(Rational(-3, 7))};
  const auto s = Subspace::span(3, a);
  CHECK(s == Subspace::span(3, b));
  CHECK(s == Subspace::span(3, s.basis()));
  CHECK(s.dim() == 2);
  CHECK(s.contains(a[0] - a[1]));
  CHECK_FALSE(s.contains(SparseVector::unit(0)));
  const auto c = Subspace::coordinate(3, std::vector<Index>{0});
  CHECK(s.intersect(c).dim() == 0);
  CHECK(s.sum(c).dim() == 3);
}

TEST_CASE("determinant and inverse") {
  std::vector<std::vector<Rational>> a = {{2, 1}, {7, 4}};
  CHECK(determinant(a) == 1);
  const auto inv = inverse_matrix(a);
  CHECK(inv[0][0] == 4);
  CHECK(inv[0][1] == -1);
  CHECK(inv[1][0] == -7);
  CHECK(inv[1][1] == 2);
  CHECK_THROWS_AS(inverse_matrix({{1, 2}, {2, 4}}), InternalError);
}
