#pragma once

// Named example constructions: Fuchsian Schottky groups and their block
// embeddings, symmetric-power lifts of SL2 with their invariant pairing,
// left-right actions on 2x2 matrices under the determinant form, and the
// degenerate one-generator counterexamples. Each bundle packages a GroupRep
// with the verdict its pipeline run is expected to produce, so the same
// objects serve as documentation and as regression fixtures.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hpq/coxeter.hpp"
#include "hpq/proximal.hpp"
#include "hpq/tolerances.hpp"

namespace hpq {

using Eigen::Matrix2d;

struct ExampleBundle {
  enum class Expected { Negative, Positive, Mixed, Empty, NonTransverse };

  ExampleBundle(std::string name_, std::string description_, GroupRep rep_)
      : name(std::move(name_)),
        description(std::move(description_)),
        rep(std::move(rep_)) {}

  std::string name;
  std::string description;
  GroupRep rep;
  Expected expected = Expected::Negative;
  // Nonempty for fixtures whose pipeline is expected to stop at a failed
  // hypothesis instead of reaching a verdict; names the failing predicate.
  std::string expected_abort;
  std::optional<CoxeterSpec> coxeter;  // set when rep is a reflection group
  MatrixXd congruence;                 // basis change applied to reach the standard form
  std::vector<VectorXd> probe_points;  // directions for targeted segment probes
  std::optional<Tolerances> tol_override;
};

const char* to_string(ExampleBundle::Expected e);

// O(2,1) boost fixing the null directions at circle angles theta1 (attracting)
// and theta2 (repelling); t > 0 is the log of the top eigenvalue modulus.
MatrixXd boost_along_axis(double theta1, double theta2, double t);

// Free Fuchsian group from >= 2 boosts given by (attracting, repelling) circle
// angles and eigenvalue-log lengths. A numeric ping-pong check (images of the
// complement of each repelling arc must land in pairwise disjoint attracting
// arcs) appends warnings instead of failing: an overlapping configuration is
// suspicious, not ill-formed.
GroupRep schottky_fuchsian(const std::vector<double>& lengths,
                           const std::vector<std::array<double, 2>>& axis_angles,
                           std::vector<std::string>* warnings = nullptr);

// Extends a group preserving the standard (m,1) form to the standard (p,q)
// form, acting as the identity on the added coordinates. Requires p >= m,
// q >= 1. Spectra only gain 1's, so proximality and gap ratios of elements
// whose top modulus exceeds 1 are preserved exactly.
GroupRep block_embed(const GroupRep& rep, int p, int q);

// Action of g (2x2, det 1 within 1e-12) on binary forms of degree n-1 in the
// monomial basis x^{n-1}, x^{n-2}y, ..., y^{n-1}.
MatrixXd sym_power(int n, const Matrix2d& g);

// The SL2-invariant pairing on that basis: antidiagonal with entries
// (-1)^{k+1} / C(n-1, k); symmetric for odd n. sym_power(n, g) preserves it.
MatrixXd sym_power_form(int n);

// A -> g A h^{-1} on 2x2 matrices in the basis (E11, E12, E21, E22); both
// determinants must be 1 within 1e-12. Preserves the polarized determinant
// form, which has signature (2,2).
MatrixXd po22_pair(const Matrix2d& g, const Matrix2d& h);

// Gram matrix of the polarized determinant form in the same basis.
MatrixXd po22_form();

// Columns pair to exactly diag(1,1,-1,-1) under the determinant form, and the
// inverse is transpose/2, so conjugation into the standard basis is exact.
MatrixXd po22_congruence();

// SL2 hyperbolic element with axis endpoints u (attracting) and v (repelling)
// on the real line and eigenvalues e^{t/2}, e^{-t/2}.
Matrix2d sl2_hyperbolic(double u, double v, double t);

// Composes sym_power over the generators of a free 2-generator Fuchsian group
// and conjugates into the standard form of the appropriate signature. Odd
// n >= 3 only.
ExampleBundle hitchin_fixture(int n);

// Two SL2 pairs driving po22_pair: the first factor has disjoint axes, the
// second crossing axes, so the induced boundary identification cannot be
// order-monotone and the sampled limit set carries triples of both signs.
ExampleBundle mixed_sign_fixture();

// One O(p,q) element with a two-dimensional top eigenspace meeting the null
// quadric in a segment: not proximal, empty limit sample, positive probe on
// the two isotropic eigen-directions. Requires min(p,q) >= 2 and lambda > 1.
ExampleBundle bad_cyclic_fixture(int p, int q, double lambda);

std::vector<std::string> example_names();
ExampleBundle make_example(const std::string& name);

}  // namespace hpq
