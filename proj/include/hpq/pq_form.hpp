#pragma once

// Bilinear algebra over R^{p,q}: the symmetric form, projective points with
// chosen lifts, and the sign-certification machinery for subsets of the null
// quadric. A finite set of null points is *negative* (resp. positive) when it
// lifts to a vector cone on which all pairings of distinct points are
// negative (resp. positive); for three points this is equivalent to the
// product of the three pairwise pairings being negative, a criterion that is
// invariant under rescaling any lift.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hpq/tolerances.hpp"

namespace hpq {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Raised when a numeric routine (eigensolver, boundary search, ...) fails in
// a way that is not an input error. The CLI maps these to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Signature {
  int p = 0, q = 0, r = 0;  // positive / negative / numerically-zero eigenvalue counts
  bool operator==(const Signature&) const = default;
};

// Inertia of a symmetric matrix. Eigenvalues with |lambda| <= tol_degenerate *
// spectral_radius count into r (numerical nullity); r > 0 is reported, never
// an error — callers decide.
Signature signature(const MatrixXd& sym, double tol_degenerate = Tolerances{}.tol_degenerate);

class QuadraticSpace {
 public:
  // diag(+1 x p, -1 x q); rejects p + q < 2.
  static QuadraticSpace standard(int p, int q);
  // Symmetrizes, then rejects numerically degenerate input:
  // |det| must exceed tol_degenerate * (spectral radius)^n.
  static QuadraticSpace from_gram(MatrixXd gram, const Tolerances& tol = {});

  int dim() const { return static_cast<int>(gram_.rows()); }
  const MatrixXd& gram() const { return gram_; }
  int p() const { return sig_.p; }
  int q() const { return sig_.q; }
  Signature sig() const { return sig_; }

  double pairing(const VectorXd& x, const VectorXd& y) const;

 private:
  QuadraticSpace(MatrixXd gram, Signature sig) : gram_(std::move(gram)), sig_(sig) {}
  MatrixXd gram_;
  Signature sig_;
};

enum class NormClass { Negative, Null, Positive };

struct ProjectivePoint {
  VectorXd lift;        // unit Euclidean norm
  NormClass norm_class;
};

// Normalizes v to a unit lift and classifies <x,x> against tol_null.
ProjectivePoint make_point(const QuadraticSpace& space, VectorXd v, const Tolerances& tol = {});
ProjectivePoint apply(const QuadraticSpace& space, const MatrixXd& g, const ProjectivePoint& x,
                      const Tolerances& tol = {});

// acos(|<a,b>|) for unit vectors: 0 iff projectively equal.
double angular_distance(const VectorXd& a, const VectorXd& b);

// A finite projective point set together with one chosen lift orientation per
// point. `mark` records which cone property the signs were verified to give.
struct LiftedCone {
  enum class Mark { None, NegativeCertified, PositiveCertified };
  std::vector<ProjectivePoint> points;
  std::vector<int> signs;  // +-1 per point
  Mark mark = Mark::None;

  int size() const { return static_cast<int>(points.size()); }
  VectorXd lift(int i) const { return static_cast<double>(signs[i]) * points[i].lift; }
};

enum class TripleSign { Negative, Positive, Degenerate };
const char* to_string(TripleSign s);

// Sign of the product of the three pairwise pairings, thresholded at
// tol_sign * (|x1||x2||x3|)^2. Inputs must be null and pairwise projectively
// distinct.
TripleSign triple_sign(const QuadraticSpace& space, const ProjectivePoint& y1,
                       const ProjectivePoint& y2, const ProjectivePoint& y3,
                       const Tolerances& tol = {});

enum class SignVerdict { Negative, Positive, Mixed, Degenerate };
const char* to_string(SignVerdict v);

struct CertifyResult {
  SignVerdict verdict;
  LiftedCone cone;                                   // populated for Negative / Positive
  std::array<int, 3> negative_witness{-1, -1, -1};   // populated for Mixed
  std::array<int, 3> positive_witness{-1, -1, -1};   // populated for Mixed
  std::array<int, 2> degenerate_pair{-1, -1};        // populated for Degenerate
  bool ambiguous_small_set = false;                  // 2-point sets certify both ways
};

// Sign propagation: orient the first two lifts to pair negatively, propagate
// the orientation of every other lift off the first point, then verify all
// pairs. If the negative attempt fails the failing pair exhibits a positive
// triple through point 0; the symmetric positive attempt either certifies or
// exhibits a negative triple, in which case the set is Mixed with both
// witnesses. A pairing inside the tol_sign band short-circuits to Degenerate
// with the offending pair. Two-point sets certify Negative by convention with
// ambiguous_small_set set.
CertifyResult certify_sign(const QuadraticSpace& space, const std::vector<ProjectivePoint>& lambda,
                           const Tolerances& tol = {});

struct TransversalityReport {
  double min_margin = 0.0;
  std::array<int, 2> argmin{-1, -1};
};

// min |<x_i, x_j>| over distinct pairs of unit lifts; near 0 flags a
// transversality failure.
TransversalityReport transversality_margin(const QuadraticSpace& space,
                                           const std::vector<ProjectivePoint>& lambda);

enum class ScanVerdict { AllNegative, AllPositive, Mixed, Degenerate };
const char* to_string(ScanVerdict v);

struct ScanResult {
  ScanVerdict verdict;
  long long triples_evaluated = 0;
  bool exhaustive = false;
  // Lexicographically first witness triples of each kind seen (sorted index
  // triples); {-1,-1,-1} when that kind did not occur.
  std::array<int, 3> negative_witness{-1, -1, -1};
  std::array<int, 3> positive_witness{-1, -1, -1};
  std::array<int, 3> degenerate_witness{-1, -1, -1};
};

// Evaluates triple signs on `samples` random triples, plus every triple when
// |lambda|^3 <= exhaustive_cap. Any degenerate triple wins the verdict
// (transversality failure is a distinct failure mode from sign disagreement).
ScanResult sign_constancy_scan(const QuadraticSpace& space,
                               const std::vector<ProjectivePoint>& lambda, int samples,
                               std::uint64_t rng_seed, long long exhaustive_cap = 2000000,
                               const Tolerances& tol = {});

}  // namespace hpq
