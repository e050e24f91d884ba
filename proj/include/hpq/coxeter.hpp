#pragma once

// Reflection representations of right-angled Coxeter groups: a labeled graph
// (commuting or free pairs, a weight >= 1 per free pair) determines a
// symmetric matrix B with unit diagonal; each generator acts by the
// B-reflection x |-> x - 2 B(e_i, x) e_i. Weights are stored as exact
// rationals, so the defining identities can be verified in exact arithmetic
// while eigen-analysis runs on the float mirror.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hpq/pq_form.hpp"
#include "hpq/proximal.hpp"
#include "hpq/rational.hpp"
#include "hpq/tolerances.hpp"

namespace hpq {

// Pair labels: the diagonal is 1; off-diagonal entries are kCommute for a
// commuting pair or kFree for a free (infinite dihedral) pair.
struct CoxeterSpec {
  static constexpr int kCommute = 2;
  static constexpr int kFree = -1;

  // All off-diagonal pairs start free with the given default weight.
  explicit CoxeterSpec(int n, Rat default_alpha = 1);
  CoxeterSpec() = default;

  int n = 0;
  Eigen::MatrixXi m;
  std::vector<std::vector<Rat>> alpha;  // meaningful on free pairs only
  std::vector<std::string> labels;      // default s1..sn

  void set_commute(int i, int j);
  void set_free(int i, int j, Rat a);
  double alpha_d(int i, int j) const { return rat_to_double(alpha[i][j]); }
  // Throws invalid_argument on a malformed spec (asymmetry, bad labels,
  // weight < 1, bad entry values).
  void validate() const;
};

// B_ii = 1; B_ij = 0 for commuting pairs, -alpha_ij for free pairs.
MatrixXd build_gram(const CoxeterSpec& spec);
RatMat build_gram_exact(const CoxeterSpec& spec);

// The n reflection matrices in exact arithmetic; valid for degenerate B too.
std::vector<RatMat> build_reflections_exact(const CoxeterSpec& spec);

// Adds independent upward jitter in (0, eps] to every free-pair weight
// (keeping them exact rationals), retrying up to 20 seeds until B becomes
// nondegenerate. Requires a degenerate input (invalid_argument otherwise);
// NumericalError if every retry stays degenerate.
CoxeterSpec perturb_to_nondegenerate(const CoxeterSpec& spec, double eps, std::uint64_t seed = 0,
                                     const Tolerances& tol = {});

struct VinbergRep {
  CoxeterSpec spec;
  QuadraticSpace space;  // gram = B
  std::vector<MatrixXd> reflections;
  RatMat gram_exact;
  std::vector<RatMat> reflections_exact;

  int n() const { return spec.n; }
};

// Requires nondegenerate B; on degenerate input throws invalid_argument
// suggesting perturb_to_nondegenerate.
VinbergRep build_reflections(const CoxeterSpec& spec, const Tolerances& tol = {});

GroupRep group_rep(const VinbergRep& rep, const Tolerances& tol = {});

struct SquareCheck {
  bool hyperbolic = true;
  std::array<int, 4> witness{-1, -1, -1, -1};  // cyclic square i1 i2 i3 i4
};

// Exhaustive scan (n <= 64) for four generators in cyclic order whose
// consecutive pairs commute while both diagonals are free: the obstruction to
// word hyperbolicity for right-angled groups. Returns the first witness in
// lexicographic order.
SquareCheck check_no_empty_square(const CoxeterSpec& spec);

// Direct search over assignments of generators to two disjoint subsets: do
// two commuting subsets each generating an infinite subgroup exist? Exponential
// (3^n); restricted to n <= 12. Used as an independent oracle for
// check_no_empty_square.
bool disjoint_commuting_infinite_pair_bruteforce(const CoxeterSpec& spec);

struct HypothesesReport {
  bool infinite = false;     // some free pair exists
  bool irreducible = false;  // non-commutation graph connected
  bool condition1 = false;   // no pair of disjoint commuting infinite subsets
  bool condition2 = false;   // every free-pair weight strictly exceeds 1
  std::array<int, 4> square_witness{-1, -1, -1, -1};

  bool all() const { return infinite && irreducible && condition1 && condition2; }
  // First failed predicate in reporting precedence (a failing square graph is
  // reported as condition1 even though it is reducible as well); nullptr when
  // everything holds.
  const char* first_failure() const;
};

HypothesesReport check_group_hypotheses(const CoxeterSpec& spec);

// Membership of v in the closed fundamental cone { v : <v, e_i> <= tol for
// all i }. Note the sign: the *negative* of a sum of basis vectors generally
// fails this for free-pair-heavy graphs.
bool fundamental_cone_membership(const VinbergRep& rep, const VectorXd& v,
                                 const Tolerances& tol = {});

// Strictly interior cone point: the solution of <v, e_i> = -1 for all i.
VectorXd interior_cone_point(const VinbergRep& rep);

// v lies in the cone AND has nonnegative coordinates in the basis-lift frame.
bool sigma_membership(const VinbergRep& rep, const VectorXd& v, const Tolerances& tol = {});

struct SigmaSample {
  std::vector<VectorXd> members;
  long long attempts = 0;
  double max_self_pairing = 0.0;  // over kept members; meaningful when any kept
};

// Rejection sampling of the doubly-constrained cone from the coordinate
// simplex (members are nonzero by construction). Stops after `want` hits or
// attempt_cap attempts.
SigmaSample sample_sigma(const VinbergRep& rep, int want, std::uint64_t seed = 0,
                         long long attempt_cap = 1000000, const Tolerances& tol = {});

}  // namespace hpq
