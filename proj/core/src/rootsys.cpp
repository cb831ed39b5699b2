#include "liegrade/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "liegrade/error.hpp"

namespace liegrade {

namespace {

constexpr int kMaxClassicalRank = 32;

IntMatrix chain_gram(int n) {
  IntMatrix g(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = 2;
  for (int i = 0; i + 1 < n; ++i) g[i][i + 1] = g[i + 1][i] = -1;
  return g;
}

void link(IntMatrix& g, int i, int j, int v) { g[i - 1][j - 1] = g[j - 1][i - 1] = v; }

IntMatrix gram_matrix(const DynkinLabel& L) {
  const int n = L.rank;
  switch (L.type) {
    case DynkinType::A: return chain_gram(n);
    case DynkinType::B: {
      auto g = chain_gram(n);
      g[n - 1][n - 1] = 1;
      return g;
    }
    case DynkinType::C: {
      auto g = chain_gram(n);
      g[n - 1][n - 1] = 4;
      link(g, n - 1, n, -2);
      return g;
    }
    case DynkinType::D: {
      auto g = chain_gram(n);
      link(g, n - 1, n, 0);
      link(g, n - 2, n, -1);
      return g;
    }
    case DynkinType::E: {
      IntMatrix g(n, IntVector(n, 0));
      for (int i = 0; i < n; ++i) g[i][i] = 2;
      link(g, 1, 3, -1);
      link(g, 2, 4, -1);
      for (int i = 3; i < n; ++i) link(g, i, i + 1, -1);
      return g;
    }
    case DynkinType::F:
      return {{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
    case DynkinType::G:
      return {{2, -3}, {-3, 6}};
  }
  throw InvalidLabel("unknown type");
}

std::string root_label(char prefix, const IntVector& r) {
  std::string s(1, prefix);
  s += '[';
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(r[i]);
  }
  return s + ']';
}

IntVector negate(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool is_positive(const IntVector& v) {
  for (int x : v) {
    if (x != 0) return x > 0;
  }
  return false;
}

}  // namespace

std::string DynkinLabel::str() const {
  static const char* names = "ABCDEFG";
  return std::string(1, names[static_cast<int>(type)]) + std::to_string(rank);
}

DynkinLabel DynkinLabel::parse(std::string_view text) {
  if (text.size() < 2) throw InvalidLabel("invalid Dynkin label: '" + std::string(text) + "'");
  const char t = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const std::string_view digits = text.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      digits.size() > 3) {
    throw InvalidLabel("invalid Dynkin label: '" + std::string(text) + "'");
  }
  const int n = std::stoi(std::string(digits));
  DynkinLabel L;
  L.rank = n;
  bool ok = false;
  switch (t) {
    case 'A': L.type = DynkinType::A; ok = n >= 1 && n <= kMaxClassicalRank; break;
    case 'B': L.type = DynkinType::B; ok = n >= 2 && n <= kMaxClassicalRank; break;
    case 'C': L.type = DynkinType::C; ok = n >= 2 && n <= kMaxClassicalRank; break;
    case 'D': L.type = DynkinType::D; ok = n >= 4 && n <= kMaxClassicalRank; break;
    case 'E': L.type = DynkinType::E; ok = n >= 6 && n <= 8; break;
    case 'F': L.type = DynkinType::F; ok = n == 4; break;
    case 'G': L.type = DynkinType::G; ok = n == 2; break;
    default: throw InvalidLabel("unknown Dynkin type: '" + std::string(text) + "'");
  }
  if (!ok) throw InvalidLabel("rank out of range for type: '" + std::string(text) + "'");
  return L;
}

int height(const IntVector& root) {
  int h = 0;
  for (int x : root) h += x;
  return h;
}

int RootSystem::inner(const IntVector& a, const IntVector& b) const {
  int s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) s += a[i] * gram[i][j] * b[j];
  }
  return s;
}

int RootSystem::pairing(const IntVector& a, int i) const {
  int s = 0;
  for (int j = 0; j < rank(); ++j) s += a[j] * cartan[i][j];
  return s;
}

std::optional<std::size_t> RootSystem::positive_index(const IntVector& a) const {
  // Roots are sorted by height, then lexicographically descending.
  const int h = height(a);
  auto it = std::lower_bound(positive_roots.begin(), positive_roots.end(), a,
                             [&](const IntVector& x, const IntVector& y) {
                               const int hx = height(x);
                               return hx != h ? hx < h : x > y;
                             });
  if (it != positive_roots.end() && *it == a) return static_cast<std::size_t>(it - positive_roots.begin());
  return std::nullopt;
}

bool RootSystem::is_root(const IntVector& a) const {
  if (is_positive(a)) return positive_index(a).has_value();
  return positive_index(negate(a)).has_value();
}

RootSystem build_root_system(const DynkinLabel& label) {
  RootSystem rs;
  rs.label = label;
  rs.gram = gram_matrix(label);
  const int n = label.rank;
  rs.cartan.assign(n, IntVector(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rs.cartan[i][j] = 2 * rs.gram[i][j] / rs.gram[i][i];
  }

  std::map<IntVector, bool> known;
  std::vector<IntVector> level;
  for (int i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    level.push_back(e);
    known[e] = true;
  }
  std::vector<IntVector> all = level;
  auto is_known = [&](const IntVector& v) { return known.count(v) > 0; };
  while (!level.empty()) {
    std::vector<IntVector> next;
    for (const auto& beta : level) {
      for (int i = 0; i < n; ++i) {
        // alpha_i-string through beta: p - q = <beta, alpha_i^vee>.
        int p = 0;
        IntVector down = beta;
        while (true) {
          down[i] -= 1;
          if (!is_known(down)) break;
          ++p;
        }
        const int q = p - rs.pairing(beta, i);
        if (q <= 0) continue;
        IntVector up = beta;
        up[i] += 1;
        if (!is_known(up)) {
          known[up] = true;
          next.push_back(up);
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const IntVector& a, const IntVector& b) {
    const int ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a > b;
  });
  rs.positive_roots = std::move(all);
  rs.highest_root = rs.positive_roots.back();
  return rs;
}

Index root_vector_index(const RootSystem& rs, const IntVector& root) {
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  const std::size_t N = rs.positive_roots.size();
  if (is_positive(root)) {
    if (auto k = rs.positive_index(root)) return static_cast<Index>(n + *k);
  } else if (auto k = rs.positive_index(negate(root))) {
    return static_cast<Index>(n + N + *k);
  }
  throw InternalError("not a root: " + root_label('r', root));
}

IntVector root_of_index(const RootSystem& rs, Index i) {
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  const std::size_t N = rs.positive_roots.size();
  if (i < n) return IntVector(n, 0);
  if (i < n + N) return rs.positive_roots[i - n];
  return negate(rs.positive_roots[i - n - N]);
}

SparseVector coroot(const RootSystem& rs, const IntVector& root) {
  const int rr = rs.inner(root, root);
  SparseVector h;
  for (int i = 0; i < rs.rank(); ++i) {
    if (root[i] == 0) continue;
    const int num = root[i] * rs.gram[i][i];
    if (num % rr != 0) throw InternalError("non-integral coroot coefficient");
    h.push_back(static_cast<Index>(i), Rational(num / rr));
  }
  return h;
}

namespace {

// Structure constants N_{a,b} from positive extraspecial pairs with sign +.
class StructureConstants {
 public:
  explicit StructureConstants(const RootSystem& rs) : rs_(rs), memo_(rs.positive_roots.size()) {
    const std::size_t N = rs.positive_roots.size();
    extraspecial_.assign(N, {-1, -1});
    for (std::size_t x = 0; x < N; ++x) {
      const IntVector& xi = rs.positive_roots[x];
      for (std::size_t a = 0; a < x; ++a) {
        IntVector rest = xi;
        for (int i = 0; i < rs.rank(); ++i) rest[i] -= rs.positive_roots[a][i];
        if (auto b = rs.positive_index(rest)) {
          extraspecial_[x] = {static_cast<long>(a), static_cast<long>(*b)};
          break;
        }
      }
    }
  }

  /// N_{a,b} for any two roots; 0 when a + b is not a root.
  Rational N(const IntVector& a, const IntVector& b) {
    const IntVector s = add(a, b);
    if (std::all_of(s.begin(), s.end(), [](int x) { return x == 0; }) || !rs_.is_root(s)) return 0;
    const bool pa = is_positive(a), pb = is_positive(b);
    if (pa && pb) return positive(*rs_.positive_index(a), *rs_.positive_index(b));
    if (!pa && !pb) return -N(negate(a), negate(b));
    if (!pa) return -N(b, a);
    // a > 0 > b
    const Rational gg = rs_.inner(s, s);
    if (is_positive(s)) return -gg / rs_.inner(a, a) * N(negate(b), s);
    return gg / rs_.inner(b, b) * N(negate(s), a);
  }

 private:
  Rational positive(std::size_t ia, std::size_t ib) {
    if (ia > ib) return -positive(ib, ia);
    auto it = memo_[ia].find(ib);
    if (it != memo_[ia].end()) return it->second;
    const IntVector& a = rs_.positive_roots[ia];
    const IntVector& b = rs_.positive_roots[ib];
    const IntVector xi = add(a, b);
    const std::size_t x = *rs_.positive_index(xi);
    const auto [ea, eb] = extraspecial_[x];
    Rational value;
    if (static_cast<long>(ia) == ea) {
      int p = 0;
      IntVector down = b;
      while (true) {
        for (int i = 0; i < rs_.rank(); ++i) down[i] -= a[i];
        if (!rs_.is_root(down)) break;
        ++p;
      }
      value = p + 1;
    } else {
      const IntVector& a1 = rs_.positive_roots[static_cast<std::size_t>(ea)];
      const IntVector& b1 = rs_.positive_roots[static_cast<std::size_t>(eb)];
      const IntVector na1 = negate(a1), nb1 = negate(b1);
      Rational sum = 0;
      const IntVector d1 = add(b, na1);
      if (rs_.is_root(d1)) sum += N(b, na1) * N(a, nb1) / rs_.inner(d1, d1);
      const IntVector d2 = add(a, na1);
      if (rs_.is_root(d2)) sum += N(na1, a) * N(b, nb1) / rs_.inner(d2, d2);
      value = Rational(rs_.inner(xi, xi)) / positive(static_cast<std::size_t>(ea), static_cast<std::size_t>(eb)) * sum;
    }
    memo_[ia][ib] = value;
    return value;
  }

  const RootSystem& rs_;
  std::vector<std::map<std::size_t, Rational>> memo_;
  std::vector<std::pair<long, long>> extraspecial_;
};

}  // namespace

LieAlgebraTable chevalley_table(const RootSystem& rs) {
  const int n = rs.rank();
  const std::size_t N = rs.positive_roots.size();
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("h" + std::to_string(i));
  for (const auto& r : rs.positive_roots) labels.push_back(root_label('e', r));
  for (const auto& r : rs.positive_roots) labels.push_back(root_label('f', r));
  LieAlgebraTable L(std::move(labels));

  std::vector<IntVector> roots;
  for (const auto& r : rs.positive_roots) roots.push_back(r);
  for (const auto& r : rs.positive_roots) roots.push_back(negate(r));
  const Index base = static_cast<Index>(n);

  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 2 * N; ++k) {
      L.set_bracket(static_cast<Index>(i), base + static_cast<Index>(k),
                    SparseVector::unit(base + static_cast<Index>(k), rs.pairing(roots[k], i)));
    }
  }
  StructureConstants sc(rs);
  for (std::size_t a = 0; a < 2 * N; ++a) {
    for (std::size_t b = a + 1; b < 2 * N; ++b) {
      const IntVector s = add(roots[a], roots[b]);
      SparseVector v;
      if (std::all_of(s.begin(), s.end(), [](int x) { return x == 0; })) {
        // [e_alpha, e_-alpha] = h_alpha for alpha > 0 (a < b here means alpha = roots[a] > 0).
        v = coroot(rs, roots[a]);
      } else if (rs.is_root(s)) {
        const Rational c = sc.N(roots[a], roots[b]);
        if (!is_integer(c)) throw InternalError("non-integral structure constant");
        v = SparseVector::unit(root_vector_index(rs, s), c);
      }
      if (!v.empty()) L.set_bracket(base + static_cast<Index>(a), base + static_cast<Index>(b), v);
    }
  }
  return L;
}

std::vector<std::vector<Rational>> inverse_cartan(const RootSystem& rs) {
  std::vector<std::vector<Rational>> a(rs.rank(), std::vector<Rational>(rs.rank()));
  for (int i = 0; i < rs.rank(); ++i) {
    for (int j = 0; j < rs.rank(); ++j) a[i][j] = rs.cartan[i][j];
  }
  return inverse_matrix(std::move(a));
}

WeightVector to_simple_root_coords(const WeightVector& w, const RootSystem& rs) {
  if (w.basis == WeightBasis::SimpleRoot) return w;
  const auto inv = inverse_cartan(rs);
  WeightVector out{std::vector<Rational>(rs.rank()), WeightBasis::SimpleRoot};
  for (int i = 0; i < rs.rank(); ++i) {
    for (int j = 0; j < rs.rank(); ++j) out.coords[i] += inv[i][j] * w.coords[j];
  }
  return out;
}

WeightVector to_fundamental_coords(const WeightVector& w, const RootSystem& rs) {
  if (w.basis == WeightBasis::Fundamental) return w;
  WeightVector out{std::vector<Rational>(rs.rank()), WeightBasis::Fundamental};
  for (int i = 0; i < rs.rank(); ++i) {
    for (int j = 0; j < rs.rank(); ++j) out.coords[i] += rs.cartan[i][j] * w.coords[j];
  }
  return out;
}

}  // namespace liegrade
