#include "hpq/projective_convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace hpq {

namespace {

// min_k (-l_k . x): positive iff x is strictly feasible.
double min_slack(const MatrixXd& L, const VectorXd& x) { return -(L * x).maxCoeff(); }

// Orthonormal basis of the hyperplane { d : c . d = 0 }.
MatrixXd chart_plane_basis(const VectorXd& c) {
  const int n = static_cast<int>(c.size());
  Eigen::HouseholderQR<MatrixXd> qr(c);
  const MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

// Searches for a recession direction: d != 0 in the chart plane with
// l_k . d <= 0 for all k, by subgradient descent on max_k l_k . d over the
// unit sphere of the plane, from basis and pseudo-random starts.
bool has_recession_direction(const MatrixXd& L, const VectorXd& chart) {
  const int n = static_cast<int>(chart.size());
  if (n < 2) return false;
  const MatrixXd basis = chart_plane_basis(chart);
  const double row_scale = L.rowwise().norm().maxCoeff();
  const auto value = [&](const VectorXd& d) { return (L * d).maxCoeff(); };

  std::vector<VectorXd> starts;
  for (int j = 0; j < basis.cols(); ++j) {
    starts.push_back(basis.col(j));
    starts.push_back(-basis.col(j));
  }
  Rng rng(0x9e3779b97f4a7c15ull);
  for (int r = 0; r < 32; ++r) {
    VectorXd d = basis * gaussian_vec(rng, n - 1);
    if (d.norm() > 1e-12) starts.push_back(d.normalized());
  }

  const double tol = 1e-12 * std::max(1.0, row_scale);
  for (VectorXd d : starts) {
    for (int it = 0; it < 200; ++it) {
      if (value(d) <= tol) return true;
      int worst;
      (L * d).maxCoeff(&worst);
      // gradient of the worst constraint, projected onto the chart plane
      const VectorXd g = basis * (basis.transpose() * L.row(worst).transpose());
      d -= (0.5 / (row_scale * std::sqrt(it + 1.0))) * g;
      const double nrm = d.norm();
      if (nrm < 1e-12) break;
      d /= nrm;
    }
    if (value(d) <= tol) return true;
  }
  return false;
}

}  // namespace

HalfspaceDomain make_domain(MatrixXd constraints, VectorXd chart, VectorXd seed,
                            bool require_bounded, int max_iters) {
  const int n = static_cast<int>(chart.size());
  if (constraints.cols() != n || seed.size() != n)
    throw std::invalid_argument("make_domain: dimension mismatch");
  if (constraints.rows() < 1) throw std::invalid_argument("make_domain: no constraints");
  if (chart.norm() < 1e-300) throw std::invalid_argument("make_domain: zero chart covector");
  for (int k = 0; k < constraints.rows(); ++k)
    if (constraints.row(k).norm() < 1e-300)
      throw std::invalid_argument("make_domain: zero constraint row");

  const double cs = chart.dot(seed);
  if (std::abs(cs) < 1e-14 * chart.norm() * std::max(1.0, seed.norm()))
    throw std::invalid_argument("make_domain: seed lies at chart infinity");

  HalfspaceDomain dom;
  dom.constraints = std::move(constraints);
  dom.chart = std::move(chart);

  // Projected subgradient ascent on the concave function min_k (-l_k . x)
  // over the affine slice { chart . x = 1 }.
  VectorXd x = seed / cs;
  const double row_scale = dom.constraints.rowwise().norm().maxCoeff();
  const double chart_sq = dom.chart.squaredNorm();
  VectorXd best_x = x;
  double best = min_slack(dom.constraints, x);
  for (int it = 0; it < max_iters; ++it) {
    int worst;
    (dom.constraints * x).maxCoeff(&worst);
    VectorXd g = -dom.constraints.row(worst).transpose();
    g -= (dom.chart.dot(g) / chart_sq) * dom.chart;
    x += ((1.0 + x.norm()) / (row_scale * std::sqrt(it + 1.0))) * g;
    const double f = min_slack(dom.constraints, x);
    if (f > best) {
      best = f;
      best_x = x;
    }
  }

  dom.feasible = best > 0.0;
  dom.min_slack = best;
  dom.interior = best_x;

  if (require_bounded && has_recession_direction(dom.constraints, dom.chart))
    throw std::invalid_argument("make_domain: domain is unbounded in the chart");
  return dom;
}

HalfspaceDomain dual_domain(const QuadraticSpace& space, const LiftedCone& cone) {
  const int k = cone.size();
  if (k < 1) throw std::invalid_argument("dual_domain: empty cone");
  const int n = space.dim();
  MatrixXd rows(k, n);
  VectorXd mean_lift = VectorXd::Zero(n);
  for (int i = 0; i < k; ++i) {
    const VectorXd l = cone.lift(i);
    rows.row(i) = (space.gram() * l).transpose();
    mean_lift += l;
  }
  mean_lift /= static_cast<double>(k);
  VectorXd chart = -rows.colwise().mean().transpose();
  if (chart.norm() < 1e-12) {
    // Lifts pair to a zero mean covector: no usable slice, report infeasible.
    HalfspaceDomain dom;
    dom.constraints = std::move(rows);
    dom.chart = VectorXd::Zero(n);
    dom.interior = VectorXd::Zero(n);
    dom.feasible = false;
    dom.sample_count = k;
    return dom;
  }
  VectorXd seed = mean_lift;
  if (std::abs(chart.dot(seed)) < 1e-12 * chart.norm() * std::max(1.0, seed.norm()))
    seed += chart / chart.squaredNorm();
  HalfspaceDomain dom = make_domain(std::move(rows), std::move(chart), std::move(seed),
                                    /*require_bounded=*/false);
  dom.sample_count = k;
  return dom;
}

double hilbert_distance(const HalfspaceDomain& domain, VectorXd y, VectorXd z) {
  if (!domain.feasible) throw std::invalid_argument("hilbert_distance: empty domain");
  const auto normalize = [&](VectorXd& v, const char* which) {
    const double cv = domain.chart.dot(v);
    if (std::abs(cv) < 1e-14 * domain.chart.norm() * std::max(1.0, v.norm()))
      throw std::invalid_argument(std::string("hilbert_distance: ") + which +
                                  " lies at chart infinity");
    v /= cv;
    if ((domain.constraints * v).maxCoeff() >= 0.0)
      throw std::invalid_argument(std::string("hilbert_distance: ") + which +
                                  " is not interior to the domain");
  };
  normalize(y, "first point");
  normalize(z, "second point");

  const VectorXd d = z - y;
  if (d.norm() <= 1e-15 * std::max(1.0, y.norm())) return 0.0;

  // x(t) = y + t d crosses each constraint l_k at t = -(l_k.y)/(l_k.d); the
  // boundary points a (t_a < 0) and b (t_b > 1) are the tightest crossings on
  // either side. Exact for linear constraints, so no iteration is needed.
  const VectorXd ly = domain.constraints * y;
  const VectorXd ld = domain.constraints * d;
  double t_b = std::numeric_limits<double>::infinity();
  double t_a = -std::numeric_limits<double>::infinity();
  for (int kk = 0; kk < ld.size(); ++kk) {
    if (ld[kk] > 0.0)
      t_b = std::min(t_b, -ly[kk] / ld[kk]);
    else if (ld[kk] < 0.0)
      t_a = std::max(t_a, -ly[kk] / ld[kk]);
  }
  if (!std::isfinite(t_b) || !std::isfinite(t_a))
    throw NumericalError("hilbert_distance: chord is unbounded in the domain");

  // Cross-ratio of (a, y, z, b) at parameters (t_a, 0, 1, t_b), with the
  // normalization [0,1,t,inf] = t.
  const double cross = ((1.0 - t_a) * t_b) / ((-t_a) * (t_b - 1.0));
  return 0.5 * std::log(cross);
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

MembershipResult omega_max_membership(const QuadraticSpace& space, const LiftedCone& cone,
                                      const VectorXd& x, const Tolerances& tol) {
  if (cone.mark != LiftedCone::Mark::NegativeCertified)
    throw std::invalid_argument("omega_max_membership: cone is not negative-certified");
  if (x.size() != space.dim()) throw std::invalid_argument("omega_max_membership: bad dimension");
  const double nrm = x.norm();
  if (nrm < 1e-300) throw std::invalid_argument("omega_max_membership: zero vector");
  const VectorXd u = x / nrm;

  // Projective membership: the point is inside if either lift orientation
  // pairs negatively with every cone lift.
  double margin_pos = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cone.size(); ++i)
    margin_pos = std::max(margin_pos, space.pairing(cone.lift(i), u));
  double margin = std::min(margin_pos, [&] {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < cone.size(); ++i) m = std::max(m, space.pairing(cone.lift(i), -u));
    return m;
  }());

  MembershipResult res;
  res.margin = margin;
  if (margin < -tol.tol_membership)
    res.where = Membership::Interior;
  else if (margin <= tol.tol_membership)
    res.where = Membership::Boundary;
  else
    res.where = Membership::Outside;
  return res;
}

std::vector<ProjectivePoint> convex_hull_interior_sample(const QuadraticSpace& space,
                                                         const LiftedCone& cone, int count,
                                                         Rng& rng, const Tolerances& tol) {
  const int k = cone.size();
  const int n = space.dim();
  if (cone.mark == LiftedCone::Mark::None)
    throw std::invalid_argument("convex_hull_interior_sample: cone carries no certificate");
  if (k < n)
    throw std::invalid_argument("convex_hull_interior_sample: fewer points than the dimension");
  MatrixXd lifts(n, k);
  for (int i = 0; i < k; ++i) lifts.col(i) = cone.lift(i);
  Eigen::JacobiSVD<MatrixXd> svd(lifts);
  const double smax = svd.singularValues()(0);
  if (svd.singularValues()(n - 1) <= 1e-12 * smax)
    throw std::invalid_argument("convex_hull_interior_sample: point set spans a proper subspace");

  std::vector<ProjectivePoint> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    const int support = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k - 1)));
    const std::vector<int> idx = sample_indices(rng, k, support);
    VectorXd v = VectorXd::Zero(n);
    for (int i : idx) {
      double u = uniform01(rng);
      while (u <= 0.0) u = uniform01(rng);
      v += -std::log(u) * lifts.col(i);
    }
    out.push_back(make_point(space, std::move(v), tol));
  }
  return out;
}

double null_arc_on_segment(const QuadraticSpace& space, const VectorXd& a, const VectorXd& b,
                           const Tolerances& tol, int steps) {
  if (steps < 4) throw std::invalid_argument("null_arc_on_segment: too few steps");
  VectorXd ua = a.normalized();
  VectorXd ub = b.normalized();
  if (ua.dot(ub) < 0.0) ub = -ub;  // probe the short projective segment

  // Interior samples only: the endpoints themselves are typically null and
  // must not seed a run.
  double best = 0.0, run = 0.0;
  bool in_run = false;
  VectorXd prev;
  for (int i = 1; i < steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const VectorXd u = ((1.0 - t) * ua + t * ub).normalized();
    const bool is_null = std::abs(space.pairing(u, u)) <= tol.tol_null;
    if (is_null) {
      if (in_run) run += angular_distance(prev, u);
      in_run = true;
      prev = u;
    } else {
      best = std::max(best, run);
      run = 0.0;
      in_run = false;
    }
  }
  return std::max(best, run);
}

SegmentProbeResult boundary_segment_probe(const QuadraticSpace& space,
                                          const std::vector<ProjectivePoint>& points,
                                          const std::vector<int>& signs, int pairs, Rng& rng,
                                          const Tolerances& tol, int steps) {
  const int k = static_cast<int>(points.size());
  if (k < 2) throw std::invalid_argument("boundary_segment_probe: need at least two points");
  if (!signs.empty() && static_cast<int>(signs.size()) != k)
    throw std::invalid_argument("boundary_segment_probe: sign vector size mismatch");
  const auto lift = [&](int i) {
    const double s = signs.empty() ? 1.0 : static_cast<double>(signs[i]);
    return VectorXd(s * points[i].lift);
  };

  const long long total = static_cast<long long>(k) * (k - 1) / 2;
  std::vector<std::array<int, 2>> chosen;
  if (pairs >= total) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) chosen.push_back({i, j});
  } else {
    const std::vector<long long> flat =
        sample_indices_sparse(rng, total, std::max(pairs, 0));
    for (long long m : flat) {
      // Unrank m into the pair (i, j), i < j, in lexicographic order.
      int i = 0;
      long long off = 0;
      while (off + (k - 1 - i) <= m) {
        off += k - 1 - i;
        ++i;
      }
      chosen.push_back({i, i + 1 + static_cast<int>(m - off)});
    }
  }

  SegmentProbeResult res;
  for (const auto& pr : chosen) {
    const double arc = null_arc_on_segment(space, lift(pr[0]), lift(pr[1]), tol, steps);
    ++res.pairs_probed;
    if (arc > res.max_null_arc) {
      res.max_null_arc = arc;
      res.argmax = pr;
    }
  }
  return res;
}

}  // namespace hpq
