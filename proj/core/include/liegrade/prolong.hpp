#pragma once

#include <map>
#include <optional>
#include <vector>

#include "liegrade/galgebra.hpp"

namespace liegrade {

/// n_0 + n_+ with n_+ graded in degrees >= 1 and n_0 given by derivations of n_+.
struct ProlongInput {
  LieAlgebraTable n_plus;
  std::vector<int> degree;                         // per basis vector of n_plus, >= 1
  std::vector<std::vector<SparseVector>> n0;       // n0[i][y] = D_i(e_y)
};

/// Problems with an input: non-positive degrees, derivations that are not graded
/// derivations, or higher components not generated by degree 1. Empty when valid.
std::vector<std::string> validate_input(const ProlongInput& in);

/// A homogeneous map of degree -k on n_+: value[x] in the level-local coordinates of
/// the tower level deg(x) - k. Level m >= 1 is the degree-m basis of n_+ in index order,
/// level 0 the (independent) n_0 basis, level -j the basis maps of p_{-j}.
using ProlongMap = std::vector<SparseVector>;

struct ProlongOptions {
  int k_max = 2;
  int safety_bound = 6;
  bool allow_unbounded = false;
  SolveMode mode = SolveMode::Exact;
  ModpConfig modp;
  /// Known solutions per level (e.g. ad g_{-1}); verified exactly before use.
  std::map<int, std::vector<ProlongMap>> hints;
};

struct ProlongLevel {
  int k = 0;
  std::size_t dim = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  SolveMode mode = SolveMode::Exact;
  bool proven = false;          // dim is exact, not just a mod-p upper bound
  bool certified_rank = false;  // rank re-verified on the mod-p pivot minor
  bool hints_valid = false;     // every hint solves the system and they are independent
  std::size_t hint_count = 0;
  bool residual_zero = false;   // every basis map satisfies the equations exactly
  std::vector<std::uint64_t> primes;
  std::vector<ProlongMap> basis;
};

struct ProlongResult {
  std::size_t n0_dim = 0;
  std::map<int, std::size_t> dims;
  std::vector<ProlongLevel> levels;
  bool monotone = true;  // dims[k] = 0 forces dims[k'] = 0 for k' > k
};

/// Throws ProlongationBoundExceeded if k_max exceeds the safety bound without the
/// explicit override.
ProlongResult prolongation(const ProlongInput& in, const ProlongOptions& options = {});

/// (g_+, ad g_0) for the algebra g of a case, with ad g_{-1} as level-1 hints.
struct GProlongData {
  ProlongInput input;
  std::vector<Index> plus;   // g-index of each n_plus basis vector
  std::vector<Index> g0;     // g-index of each n_0 derivation
  std::vector<ProlongMap> ad_minus_one;
};
GProlongData g_prolong_input(const GAlgebra& g);

/// (l_1 abelian, ad l_0) restricted to one simple ideal of l, or to all of l.
ProlongInput l_prolong_input(const SubadjointCase& c, std::optional<std::size_t> ideal = std::nullopt);

ProlongInput direct_sum(const ProlongInput& a, const ProlongInput& b);
ProlongInput zero_input();
/// f_1 = C d/dt with f_0 = C t d/dt.
ProlongInput p1_input();

struct DirectSumReport {
  std::map<int, std::size_t> dims_a, dims_b, dims_sum;
  bool ok = false;
};
DirectSumReport direct_sum_check(const ProlongInput& a, const ProlongInput& b, int k_max,
                                 bool allow_unbounded = false);

/// Truncation of the formal vector fields: e_a = t^{a+1} d/dt for a = -1..k_max,
/// [e_a, e_b] = (b - a) e_{a+b} (dropped when a + b > k_max); e_a has degree -a.
struct FormalVectorFields {
  int k_max = 1;
  LieAlgebraTable table;
  std::vector<int> degree;
  Index index_of(int a) const { return static_cast<Index>(a + 1); }
};
FormalVectorFields formal_vector_field_oracle(int k_max);

/// For b in f_{-k} and a = d/dt: [[b, a], a] != 0 for each k = 1..k_max.
bool formal_vector_field_nondegenerate(const FormalVectorFields& f);

struct Sl2AdjointReport {
  SparseVector phi_a_a;      // [phi(a), a]
  SparseVector phi_a_a_a;    // [[phi(a), a], a]
  SparseVector lhs;          // [[phi(a), a], a] . w0
  SparseVector rhs_inner;    // a . ([phi(a), a] . w0)
  bool ok = false;
};
/// w0 = t^2 d/dt, a = d/dt, phi = [t^3 d/dt, .] inside the truncation at k_max = 2.
Sl2AdjointReport sl2_adjoint_check();

}  // namespace liegrade
