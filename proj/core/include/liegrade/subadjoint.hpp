#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liegrade/rootsys.hpp"

namespace liegrade {

/// One subadjoint case: s with its contact grading, V = s_1, the lowest weight vector v0,
/// the 3-graded semisimple part l of s_0 and the osculating decomposition V_0..V_3.
///
/// Indices: "s-index" is a basis index of the Chevalley table of s; "l-local" and
/// "V-local" index into the `l` and `V` lists below.
struct SubadjointCase {
  DynkinLabel label;
  RootSystem rs;
  LieAlgebraTable s;
  Grading contact;
  int contact_node = 0;       // simple root with <alpha, theta^vee> = 1 (0-based)
  std::vector<int> J;         // simple roots of l (0-based nodes of s)
  std::vector<int> I;         // marked simple roots, derived from z
  std::vector<std::vector<int>> ideals;  // connected components of J

  std::vector<Index> V;       // s-indices of the degree-1 root vectors
  std::vector<Index> l;       // s-indices: h_j (j in J), then degree-0 root vectors
  LieAlgebraTable l_table;
  Index theta = 0;            // s-index of e_theta spanning s_2
  Index v0 = 0;               // s-index of the lowest weight vector
  Index v_top = 0;            // s-index of the highest weight vector of V

  SparseVector z;             // grading element of l, in l-local coordinates
  std::vector<int> l_degree;  // per l-local index, in {-1, 0, 1}
  std::vector<int> V_degree;  // per V-local index, in {0, 1, 2, 3}

  /// Lowest-weight convention: weight of V_0 is -omega_star; fundamental coordinates of l.
  WeightVector embedding_weight;

  std::size_t dim_V() const { return V.size(); }
  std::size_t dim_l() const { return l.size(); }
  std::vector<Index> l_part(int degree) const;  // l-local indices
  std::vector<Index> V_part(int j) const;       // V-local indices
  std::size_t dim_l_part(int degree) const { return l_part(degree).size(); }
  std::size_t dim_V_part(int j) const { return V_part(j).size(); }
  Index v0_local() const;

  /// s-index <-> local index maps (the lookups throw on foreign indices).
  Index l_local(Index s_index) const;
  Index V_local(Index s_index) const;
  SparseVector l_to_s(const SparseVector& x) const;
  SparseVector V_to_s(const SparseVector& x) const;
  SparseVector s_to_l(const SparseVector& x) const;
  SparseVector s_to_V(const SparseVector& x) const;

  /// x . v for x in l and v in V (both local coordinates), result in V-local coordinates.
  SparseVector act(const SparseVector& x, const SparseVector& v) const;
  SparseVector act(Index l_idx, Index v_idx) const;

  /// Root of an l-local basis vector in s simple-root coordinates (zero for Cartan).
  IntVector l_root(Index l_idx) const;
  IntVector V_root(Index v_idx) const;

  /// c^I of a weight given as an integer combination of the simple roots of s,
  /// restricted to the Cartan of l.
  Rational cI(const IntVector& s_weight) const;
  Rational cI_omega_star() const;

 private:
  friend SubadjointCase build_case(const DynkinLabel&);
  std::vector<long> s_to_l_;
  std::vector<long> s_to_V_;
  std::vector<Rational> cI_simple_;  // c^I of each simple root of s restricted to l
};

/// Throws ExcludedCase for G2 and types A, C; InvalidLabel for unknown labels.
SubadjointCase build_case(const DynkinLabel& label);
SubadjointCase build_case(std::string_view label);

/// Per-case marked roots of the 3-grading of l (1-based Bourbaki nodes of s).
std::vector<int> expected_marked_roots(const DynkinLabel& label);

/// Named boolean facts about a case; all must hold.
struct CaseCheck {
  std::string id;
  bool ok = false;
  std::string detail;
};
std::vector<CaseCheck> check_case_invariants(const SubadjointCase& c);

/// sigma(u, v) = coefficient of e_theta in [u, v], V-local basis.
std::vector<std::vector<Rational>> symplectic_form(const SubadjointCase& c);

struct FundamentalForms {
  std::vector<Index> l1;        // l-local basis of l_1
  std::vector<Index> V2;        // V-local basis of V_2
  Index V3 = 0;                 // V-local index spanning V_3
  /// II[a][b] = [a, [b, v0]] in V-local coordinates.
  std::vector<std::vector<SparseVector>> II;
  /// III[a][b][c] = coefficient of V_3 in [a, [b, [c, v0]]].
  std::vector<std::vector<std::vector<Rational>>> III;
  /// beta[w][a] = coefficient of V_3 in [a, w], w in V_2.
  std::vector<std::vector<Rational>> beta;
};

FundamentalForms fundamental_forms(const SubadjointCase& c);

struct FormsReport {
  bool II_symmetric = false;
  bool III_symmetric = false;
  bool beta_compatible = false;   // beta(II(a,b), c) = III(a,b,c)
  std::size_t III_kernel_dim = 0;
  Rational beta_det;
  std::vector<bool> II_vanishes_on_ideal;  // per entry of SubadjointCase::ideals
};

FormsReport analyze_forms(const SubadjointCase& c, const FundamentalForms& f);

/// c(b) for every basis vector b of l_0: [b, v0] = c(b) v0. Throws InternalError if some
/// [b, v0] leaves span(v0).
std::vector<Rational> c_functional(const SubadjointCase& c);

/// Points on the affine cone over the closed orbits in l_1 (l-local coordinates),
/// `count` per irreducible summand; the first point of each summand is its highest
/// weight vector.
std::vector<SparseVector> sample_closed_orbit(const SubadjointCase& c, std::size_t count, std::uint64_t seed);

enum class XvvStatus { Pass, Inconclusive };

struct XvvCertificate {
  XvvStatus status = XvvStatus::Inconclusive;
  std::size_t samples = 0;
  std::size_t kernel_dim = 0;  // dim of {a in l_{-1} : [[a,b],b] = 0 for all samples b}
};

XvvCertificate check_xvv(const SubadjointCase& c, const std::vector<SparseVector>& samples);

}  // namespace liegrade
