#pragma once

// Convex projective services: properly convex domains cut out by finitely
// many linear constraints, the Hilbert metric via cross-ratio, dual domains
// through the form, and membership / convexity diagnostics for the invariant
// domains spanned by a certified limit cone.
//
// Domains here are finite-constraint approximations: a domain built from a
// sampled limit cone *contains* the true invariant domain, and reports carry
// the sample size so callers can judge convergence.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hpq/pq_form.hpp"
#include "hpq/rng.hpp"
#include "hpq/tolerances.hpp"

namespace hpq {

struct HalfspaceDomain {
  MatrixXd constraints;   // rows l_k; domain = { x : l_k . x < 0 } in the chart
  VectorXd chart;         // covector c; working slice is { c . x = 1 }
  VectorXd interior;      // strictly feasible chart point (valid when feasible)
  bool feasible = false;
  double min_slack = 0.0; // min_k (-l_k . interior)
  int sample_count = 0;   // constraints derived from this many cone points

  int dim() const { return static_cast<int>(chart.size()); }
};

// Feasibility search: maximize the minimum constraint slack over the chart
// slice by projected subgradient ascent from `seed` (iteration-capped). When
// require_bounded, every chart direction must exit the domain — a hard error
// otherwise since such a domain is not properly convex.
HalfspaceDomain make_domain(MatrixXd constraints, VectorXd chart, VectorXd seed,
                            bool require_bounded = true, int max_iters = 1000);

// Domain cut out by < x_k , . > < 0 over the signed cone lifts, identifying
// the dual with the primal space through the form. An empty interior is a
// distinguished outcome (feasible = false), not an exception.
HalfspaceDomain dual_domain(const QuadraticSpace& space, const LiftedCone& cone);

// Hilbert distance between two strictly interior points: intersect their line
// with the boundary to get a, y, z, b in this order and return half the log
// of the cross-ratio, normalized so [0,1,t,inf] = t. Errors on non-interior
// input; an unbounded search direction is a NumericalError.
double hilbert_distance(const HalfspaceDomain& domain, VectorXd y, VectorXd z);

enum class Membership { Interior, Boundary, Outside };
const char* to_string(Membership m);

struct MembershipResult {
  Membership where;
  double margin;  // max_k < x_k , x >
};

// Membership of [x] in the interior of the cone dual to a negative-certified
// cone (the maximal invariant domain determined by the sample; a superset
// test relative to the true domain).
MembershipResult omega_max_membership(const QuadraticSpace& space, const LiftedCone& cone,
                                      const VectorXd& x, const Tolerances& tol = {});

// Random strictly-positive convex combinations of the signed lifts with at
// least two nonzero weights. Requires the lifts to span the ambient space.
std::vector<ProjectivePoint> convex_hull_interior_sample(const QuadraticSpace& space,
                                                         const LiftedCone& cone, int count,
                                                         Rng& rng, const Tolerances& tol = {});

// Longest angular sub-arc of a projective segment that stays within tol_null
// of the null quadric, endpoints excluded. Zero for a segment whose interior
// dips into the negative (or positive) side immediately, as happens between
// any two points of a negative cone.
double null_arc_on_segment(const QuadraticSpace& space, const VectorXd& a, const VectorXd& b,
                           const Tolerances& tol = {}, int steps = 512);

struct SegmentProbeResult {
  double max_null_arc = 0.0;
  std::array<int, 2> argmax{-1, -1};
  int pairs_probed = 0;
};

// Probes sampled pairs of the given ideal points (certification of the set is
// not required: the probe is a measurement, and its most interesting inputs —
// segments inside the quadric — cannot be sign-certified at all).
SegmentProbeResult boundary_segment_probe(const QuadraticSpace& space,
                                          const std::vector<ProjectivePoint>& points,
                                          const std::vector<int>& signs, int pairs, Rng& rng,
                                          const Tolerances& tol = {}, int steps = 512);

}  // namespace hpq
