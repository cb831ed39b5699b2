#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "liegrade/galgebra.hpp"

namespace liegrade {

/// Bases of C^{k,1} = Hom(g_+, g)_k and C^{k,2} = Hom(L^2 g_+, g)_k in g-indices.
/// A C^{k,1} basis element (x, y) is e_y (x) x^*; a C^{k,2} element (u, v, z) with u < v is
/// e_z (x) (u^* ^ v^*).
struct SpencerSpaces {
  int k = 0;
  std::vector<std::array<Index, 2>> C1;
  std::vector<std::array<Index, 3>> C2;
  std::size_t dim_C1() const { return C1.size(); }
  std::size_t dim_C2() const { return C2.size(); }
};

SpencerSpaces spencer_spaces(const GAlgebra& g, int k);

/// Matrix of df(u, v) = [f(u), v] + [u, f(v)] - f([u, v]) with rows C^{k,2}, columns C^{k,1}.
SparseRationalMatrix spencer_differential(const GAlgebra& g, const SpencerSpaces& sp);

/// ad(x) restricted to g_+ as a C^{k,1} vector (x of degree k).
SparseVector ad_cochain(const GAlgebra& g, const SpencerSpaces& sp, Index x);

struct QDimension {
  int k = 0;
  std::size_t dim_C1 = 0;
  std::size_t dim_C2 = 0;
  std::size_t rank = 0;
  std::size_t q = 0;          // dim C^{k,2} - rank
  SolveMode mode = SolveMode::Exact;
  bool certified = false;     // mod-p rank re-verified exactly (always true in exact mode)
  bool probabilistic = false; // two-prime mod-p value without exact re-verification
  std::vector<std::uint64_t> primes;
};

QDimension q_dimension(const GAlgebra& g, int k, SolveMode mode, const ModpConfig& config = {});

/// The six families, in the order of the c^I table: L^2 lhat_1 -> V, L^2 lhat_1 -> lhat,
/// lhat_1 (x) V_+ -> V, lhat_1 (x) V_+ -> lhat, L^2 V_+ -> V, L^2 V_+ -> lhat.
enum class Family { L1L1_V, L1L1_Lhat, L1V_V, L1V_Lhat, VV_V, VV_Lhat };
constexpr std::array<Family, 6> kFamilies{Family::L1L1_V, Family::L1L1_Lhat, Family::L1V_V,
                                          Family::L1V_Lhat, Family::VV_V,    Family::VV_Lhat};
std::string family_name(Family f);
/// The single value c^I takes on a family at degree k: k - 3/2, k, k, k + 3/2, k + 3/2, k + 3.
Rational expected_cI(Family f, int k);

/// One graded piece of a family: indices i, j of the V factors (0 when absent).
struct SummandDescriptor {
  Family family = Family::L1L1_V;
  int i = 0;
  int j = 0;
  int target = 0;  // degree of the target component
  std::string name;
  std::size_t dim = 0;
  std::vector<IntVector> weights;  // simple-root coordinates of s
  std::vector<Rational> cI_values; // sorted, distinct
};

std::vector<SummandDescriptor> hom_decomposition(const SubadjointCase& c, const GAlgebra& g, int k);

/// Sorted distinct c^I values of a weight list.
std::vector<Rational> cI_set(const SubadjointCase& c, const std::vector<IntVector>& weights);

/// c^I on the components of g: Id -> {0}, l_j -> {j}, V_j -> {j - 3/2}, and c^I(omega_*) = 3/2.
std::vector<CaseCheck> cI_component_checks(const SubadjointCase& c, const GAlgebra& g);

/// Whether a graded piece lies in R_k; `allowance` marks Hom(L^2 V_2, V_3) at k = -1.
bool in_Rk(int k, Family f, int i, int j, bool* allowance = nullptr);
/// Human-readable list of the pieces making up R_k.
std::vector<std::string> Rk_pieces(int k);

struct FamilyRow {
  Family family = Family::L1L1_V;
  std::size_t dim = 0;
  std::vector<Rational> values;
  Rational expected;
  bool ok = false;
};

struct CITable {
  int k = 0;
  std::array<FamilyRow, 6> rows;
  bool table_ok = false;
  bool verdict_ok = false;       // every piece meeting c^I >= 0 lies in R_k
  bool closure_ok = false;       // piece dims add up to dim C^{k,2}
  std::size_t dim_C2 = 0;
  std::vector<std::string> offending;
};

CITable summand_cI_table(const SubadjointCase& c, const GAlgebra& g, int k);

struct PartialPrimeReport {
  std::size_t dim_hom_V2_l1 = 0;
  std::size_t dim_L2V2_V3 = 0;
  std::size_t rank_d1 = 0;      // rank of d': Hom(V_2, l_1) -> Hom(L^2 V_2, V_3)
  std::size_t nullity_d2 = 0;   // nullity of d'': Hom(V_2, l_1) -> Hom(V_1 ^ V_2, V_2)
  Rational pairing_det;         // V_2 x l_1 -> V_3
  bool surjective = false;
  bool injective = false;
  bool perfect = false;
  SolveMode mode = SolveMode::Exact;
  bool certified = false;
};

PartialPrimeReport partial_prime_checks(const GAlgebra& g, SolveMode mode = SolveMode::Exact,
                                        const ModpConfig& config = {});

struct ExpansionReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  bool s0_ok = true;        // constant term is f(u, u')
  bool s1_ok = true;        // linear term is A f(u,u') - f(u, Au') - f(Au, u')
  bool eight_terms_ok = true;
  bool high_order_zero = true;  // s^4 and above vanish
};

/// Random f in C^{k,2} for each k in [k_min, -1] and random u, u' in g_+, expanded in s
/// with exp(+-sA) taken to order 4.
ExpansionReport conjugation_expansion_check(const GAlgebra& g, std::size_t trials, std::uint64_t seed,
                                            int k_min = -3);

}  // namespace liegrade
