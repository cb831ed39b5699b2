#include <algorithm>
#include <numeric>

#include "echelon.hpp"
#include "liegrade/error.hpp"
#include "liegrade/linalg.hpp"

namespace liegrade {

namespace {

// Independent blocks of a sparse matrix: columns linked by sharing a row.
struct Component {
  std::vector<Index> cols;  // global, ascending
  std::vector<Index> rows;  // global, sparsest first
};

std::vector<Component> split_components(const SparseRationalMatrix& m, std::vector<Index>* unused) {
  const std::size_t n = m.num_cols();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> used(n, 0);
  for (const auto& row : m.rows()) {
    if (row.empty()) continue;
    const Index r0 = find(row.entries().front().first);
    for (const auto& e : row.entries()) {
      used[e.first] = 1;
      const Index r = find(e.first);
      if (r != r0) parent[r] = r0;
    }
  }
  std::vector<long> slot(n, -1);
  std::vector<Component> comps;
  for (Index c = 0; c < n; ++c) {
    if (!used[c]) {
      if (unused) unused->push_back(c);
      continue;
    }
    const Index r = find(c);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(slot[r])].cols.push_back(c);
  }
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    const auto& row = m.row(r);
    if (row.empty()) continue;
    comps[static_cast<std::size_t>(slot[find(row.entries().front().first)])].rows.push_back(
        static_cast<Index>(r));
  }
  for (auto& c : comps) {
    std::stable_sort(c.rows.begin(), c.rows.end(),
                     [&](Index a, Index b) { return m.row(a).nnz() < m.row(b).nnz(); });
  }
  return comps;
}

std::vector<Index> local_index(const Component& comp, std::size_t ncols) {
  std::vector<Index> local(ncols, 0);
  for (std::size_t j = 0; j < comp.cols.size(); ++j) local[comp.cols[j]] = static_cast<Index>(j);
  return local;
}

std::size_t exact_rank(const SparseRationalMatrix& m) {
  std::size_t total = 0;
  for (const auto& comp : split_components(m, nullptr)) {
    const auto local = local_index(comp, m.num_cols());
    detail::Echelon<detail::RationalField> ech(comp.cols.size());
    detail::Echelon<detail::RationalField>::Row row;
    for (Index r : comp.rows) {
      if (ech.full()) break;
      row.clear();
      for (const auto& [c, v] : m.row(r).entries()) row.emplace_back(local[c], v);
      ech.insert(row);
    }
    total += ech.rank();
  }
  return total;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<detail::u128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> generate_primes(std::uint64_t seed, std::size_t count) {
  std::vector<std::uint64_t> out;
  std::uint64_t state = seed;
  while (out.size() < count) {
    std::uint64_t c = (splitmix64(state) >> 2) | (1ULL << 61) | 1ULL;
    while (!is_prime_u64(c)) c += 2;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

std::size_t rank_mod_p(const SparseRationalMatrix& m, std::uint64_t p, std::vector<Index>* pivot_rows,
                       std::vector<Index>* pivot_cols) {
  std::size_t total = 0;
  for (const auto& comp : split_components(m, nullptr)) {
    const auto local = local_index(comp, m.num_cols());
    detail::Echelon<detail::PrimeField> ech(comp.cols.size(), detail::PrimeField{p});
    detail::Echelon<detail::PrimeField>::Row row;
    for (Index r : comp.rows) {
      if (ech.full()) break;
      row.clear();
      for (const auto& [c, v] : m.row(r).entries()) {
        const std::uint64_t x = reduce_mod(v, p);
        if (x) row.emplace_back(local[c], x);
      }
      if (auto piv = ech.insert(row)) {
        if (pivot_rows) pivot_rows->push_back(r);
        if (pivot_cols) pivot_cols->push_back(comp.cols[*piv]);
      }
    }
    total += ech.rank();
  }
  return total;
}

RankResult rank(const SparseRationalMatrix& m, SolveMode mode, const ModpConfig& config) {
  RankResult result;
  result.mode = mode;
  std::size_t nonzero_rows = 0;
  for (const auto& r : m.rows()) nonzero_rows += r.empty() ? 0 : 1;
  const std::size_t bound = std::min(nonzero_rows, m.num_cols());

  if (mode == SolveMode::Exact) {
    result.rank = exact_rank(m);
    result.certified = true;
    result.maximal = result.rank == bound;
    return result;
  }

  const auto primes = generate_primes(config.seed, static_cast<std::size_t>(config.max_primes));
  std::size_t best = 0;
  int agree = 0;
  std::vector<Index> best_rows, best_cols;
  bool any = false;
  for (std::uint64_t p : primes) {
    std::vector<Index> prow, pcol;
    std::size_t r;
    try {
      r = rank_mod_p(m, p, &prow, &pcol);
    } catch (const PrimeCollision&) {
      continue;
    }
    result.primes.push_back(p);
    if (!any || r > best) {
      best = r;
      agree = 1;
      best_rows = std::move(prow);
      best_cols = std::move(pcol);
      any = true;
    } else if (r == best) {
      ++agree;
    }
    if (agree >= config.agreeing_primes || best == bound) break;
  }
  if (!any) throw PrimeCollision("every candidate prime divides a denominator");
  result.rank = best;
  result.maximal = best == bound;
  if (mode == SolveMode::ModPCertify) {
    // A minor that is nonsingular mod p is nonsingular over Q, but check it exactly anyway:
    // the exact rank of the pivot submatrix is a proven lower bound on the rank.
    std::sort(best_rows.begin(), best_rows.end());
    std::sort(best_cols.begin(), best_cols.end());
    result.certified = exact_rank(m.submatrix(best_rows, best_cols)) == best;
  }
  return result;
}

std::vector<SparseVector> kernel(const SparseRationalMatrix& m) {
  std::vector<Index> unused;
  const auto comps = split_components(m, &unused);
  std::vector<SparseVector> basis;
  for (const auto& comp : comps) {
    const auto local = local_index(comp, m.num_cols());
    detail::Echelon<detail::RationalField> ech(comp.cols.size());
    detail::Echelon<detail::RationalField>::Row row;
    for (Index r : comp.rows) {
      if (ech.full()) break;
      row.clear();
      for (const auto& [c, v] : m.row(r).entries()) row.emplace_back(local[c], v);
      ech.insert(row);
    }
    for (auto& k : ech.kernel()) {
      std::vector<SparseVector::Entry> e;
      for (auto& [c, v] : k) e.emplace_back(comp.cols[c], std::move(v));
      basis.emplace_back(std::move(e));
    }
  }
  for (Index c : unused) basis.push_back(SparseVector::unit(c));
  std::sort(basis.begin(), basis.end(), [](const SparseVector& a, const SparseVector& b) {
    return a.entries().back().first < b.entries().back().first;
  });
  return basis;
}

}  // namespace liegrade
