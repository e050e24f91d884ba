#include "hpq/svg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "hpq/rng.hpp"

namespace hpq {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Frame {
  VectorXd x0;      // chart basepoint (m^T x0 = 1)
  Eigen::MatrixXd basis;  // n x (n-1), orthonormal complement of the chart axis
  // Quadric in chart coordinates u: c0 + 2 a.u + u^T A u = 0.
  double c0 = 0.0;
  VectorXd a;
  Eigen::MatrixXd A;
};

// Chart axis: a timelike direction of the form. For q = 1 the null quadric
// then becomes a bounded ellipsoid in the chart and no null point can sit at
// chart infinity. For split signatures the negative eigenspace has dimension
// > 1 and a null point CAN be orthogonal to a given axis, so pick the axis in
// that eigenspace that keeps every sampled point as far from infinity as
// possible.
Frame make_frame(const QuadraticSpace& space,
                 const std::vector<ProjectivePoint>& points) {
  const int n = space.dim();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(space.gram());
  VectorXd m = es.eigenvectors().col(0);  // unit, most negative eigenvalue
  if (space.q() > 1 && !points.empty()) {
    const MatrixXd neg = es.eigenvectors().leftCols(space.q());
    Rng axis_rng(2026);
    double best = -1.0;
    for (int cand = 0; cand < 512; ++cand) {
      VectorXd dir = cand < space.q() ? VectorXd(neg.col(cand))
                                      : VectorXd(neg * gaussian_vec(axis_rng, space.q()));
      if (dir.norm() < 1e-12) continue;
      dir.normalize();
      double worst = std::numeric_limits<double>::infinity();
      for (const ProjectivePoint& p : points)
        worst = std::min(worst, std::abs(dir.dot(p.lift)));
      if (worst > best) {
        best = worst;
        m = dir;
      }
    }
  }
  Frame f;
  f.x0 = m;
  // Orthonormal basis of the complement via a full QR of m.
  Eigen::HouseholderQR<MatrixXd> qr(m);
  const MatrixXd full = qr.householderQ();
  f.basis = full.rightCols(n - 1);
  f.c0 = f.x0.dot(space.gram() * f.x0);
  f.a = f.basis.transpose() * (space.gram() * f.x0);
  f.A = f.basis.transpose() * space.gram() * f.basis;
  return f;
}

// Chart coordinates of a projective lift, or false when the point sits at
// chart infinity.
bool chart_coords(const Frame& f, const VectorXd& v, VectorXd& out) {
  const double denom = f.x0.dot(v);
  if (std::abs(denom) < 1e-9 * v.norm()) return false;
  const VectorXd x = v / denom;  // now x0 . x = 1, so x - x0 lies in the basis span
  out = f.basis.transpose() * (x - f.x0);
  return true;
}

struct Projection {
  VectorXd center;       // in chart coordinates
  Eigen::MatrixXd kept;  // (n-1) x 2
  Eigen::MatrixXd rest;  // (n-1) x (n-1-2)
};

Projection make_projection(const std::vector<VectorXd>& coords, int chart_dim) {
  Projection pr;
  pr.center = VectorXd::Zero(chart_dim);
  if (!coords.empty()) {
    for (const auto& u : coords) pr.center += u;
    pr.center /= static_cast<double>(coords.size());
  }
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(chart_dim, chart_dim);
  if (chart_dim > 2 && coords.size() >= 2) {
    Eigen::MatrixXd centered(static_cast<Eigen::Index>(coords.size()), chart_dim);
    for (std::size_t i = 0; i < coords.size(); ++i)
      centered.row(static_cast<Eigen::Index>(i)) =
          (coords[i] - pr.center).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    // Complete V's leading columns to a full orthonormal basis.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(svd.matrixV());
    basis = qr.householderQ();
    // Keep the principal two directions in front.
    Eigen::MatrixXd reordered(chart_dim, chart_dim);
    reordered.leftCols(svd.matrixV().cols()) = svd.matrixV();
    int col = svd.matrixV().cols();
    // Orthonormal completion for any remaining directions.
    for (int j = 0; j < chart_dim && col < chart_dim; ++j) {
      VectorXd cand = basis.col(j);
      cand -= reordered.leftCols(col) * (reordered.leftCols(col).transpose() * cand);
      if (cand.norm() > 1e-8) reordered.col(col++) = cand.normalized();
    }
    basis = reordered;
  }
  pr.kept = basis.leftCols(2);
  pr.rest = basis.rightCols(chart_dim - 2);
  return pr;
}

Eigen::Vector2d project(const Projection& pr, const VectorXd& u) {
  return pr.kept.transpose() * (u - pr.center);
}

// Silhouette of the chart quadric under the projection, as a closed curve.
// Valid when the reduced 2x2 form is definite (one timelike direction).
bool silhouette_curve(const Frame& f, const Projection& pr,
                      std::vector<Eigen::Vector2d>& out) {
  const Eigen::MatrixXd& P = pr.kept;
  const Eigen::MatrixXd& N = pr.rest;
  const VectorXd shift = f.a + f.A * pr.center;
  const double c_tilde = f.c0 + 2.0 * f.a.dot(pr.center) +
                         pr.center.dot(f.A * pr.center);
  Eigen::Matrix2d S = P.transpose() * f.A * P;
  Eigen::Vector2d b = P.transpose() * shift;
  double e = c_tilde;
  if (N.cols() > 0) {
    const Eigen::MatrixXd Azz = N.transpose() * f.A * N;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Azz);
    if (!lu.isInvertible()) return false;
    const Eigen::MatrixXd Ayz = P.transpose() * f.A * N;
    const VectorXd az = N.transpose() * shift;
    S -= Ayz * lu.solve(Ayz.transpose());
    b -= Ayz * lu.solve(az);
    e -= az.dot(lu.solve(az));
  }
  Eigen::FullPivLU<Eigen::Matrix2d> slu(S);
  if (!slu.isInvertible()) return false;
  const Eigen::Vector2d y0 = -slu.solve(b);
  const double f0 = y0.dot(S * y0) + 2.0 * b.dot(y0) + e;
  out.clear();
  const int kSamples = 360;
  for (int k = 0; k < kSamples; ++k) {
    const double th = 2.0 * kPi * k / kSamples;
    const Eigen::Vector2d d(std::cos(th), std::sin(th));
    const double dd = d.dot(S * d);
    const double ratio = -f0 / dd;
    if (!(ratio > 0.0)) return false;  // not an ellipse around y0
    out.push_back(y0 + std::sqrt(ratio) * d);
  }
  return true;
}

// Sampled points of the chart quadric for signatures with no bounded
// silhouette: solve along random chart directions from the basepoint.
void quadric_cloud(const Frame& f, const Projection& pr, std::uint64_t seed,
                   std::vector<Eigen::Vector2d>& out) {
  Rng rng(seed);
  const int chart_dim = static_cast<int>(f.a.size());
  for (int it = 0; it < 1500; ++it) {
    VectorXd d = gaussian_vec(rng, chart_dim);
    if (d.norm() < 1e-12) continue;
    d.normalize();
    const double qa = d.dot(f.A * d);
    const double qb = f.a.dot(d);
    const double qc = f.c0;
    const double disc = qb * qb - qa * qc;
    if (std::abs(qa) < 1e-14 || disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    for (const double r : {(-qb + sq) / qa, (-qb - sq) / qa}) {
      if (!std::isfinite(r) || std::abs(r) > 1e4) continue;
      out.push_back(project(pr, VectorXd(r * d)));
    }
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

bool plot_supported(int p, int q) {
  const int n = p + q;
  if (n == 3 || n == 4) return true;
  return q == 1 && n <= 6;
}

bool emit_plot(const PipelineResult& res, const std::string& path) {
  if (!res.space) return false;
  const QuadraticSpace& space = *res.space;
  if (!plot_supported(space.p(), space.q())) return false;

  const Frame frame = make_frame(space, res.sample.points);
  const int chart_dim = space.dim() - 1;

  std::vector<VectorXd> coords;
  std::vector<int> kept_index;  // sample index of each kept chart point
  coords.reserve(res.sample.points.size());
  for (std::size_t i = 0; i < res.sample.points.size(); ++i) {
    VectorXd u;
    if (chart_coords(frame, res.sample.points[i].lift, u)) {
      coords.push_back(std::move(u));
      kept_index.push_back(static_cast<int>(i));
    }
  }

  const Projection pr = make_projection(coords, chart_dim);

  std::vector<Eigen::Vector2d> pts2;
  pts2.reserve(coords.size());
  for (const auto& u : coords) pts2.push_back(project(pr, u));

  std::vector<Eigen::Vector2d> curve;
  std::vector<Eigen::Vector2d> cloud;
  if (space.q() == 1) {
    if (!silhouette_curve(frame, pr, curve))
      quadric_cloud(frame, pr, res.report.seed + 11, cloud);
  } else {
    quadric_cloud(frame, pr, res.report.seed + 11, cloud);
  }

  // Witness triangles (drawn for a Mixed verdict).
  auto triangle_of = [&](const std::array<int, 3>& w,
                         std::vector<Eigen::Vector2d>& tri) {
    tri.clear();
    for (int idx : w) {
      auto it = std::find(kept_index.begin(), kept_index.end(), idx);
      if (idx < 0 || it == kept_index.end()) return false;
      tri.push_back(pts2[static_cast<std::size_t>(it - kept_index.begin())]);
    }
    return true;
  };
  std::vector<Eigen::Vector2d> tri_neg, tri_pos;
  const bool mixed = res.report.verdict == to_string(SignVerdict::Mixed);
  const bool have_neg = mixed && triangle_of(res.report.negative_witness, tri_neg);
  const bool have_pos = mixed && triangle_of(res.report.positive_witness, tri_pos);

  // World bounding box over everything drawn.
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  bool first = true;
  auto grow = [&](const Eigen::Vector2d& v) {
    if (!std::isfinite(v.x()) || !std::isfinite(v.y())) return;
    if (first) {
      lo_x = hi_x = v.x();
      lo_y = hi_y = v.y();
      first = false;
      return;
    }
    lo_x = std::min(lo_x, v.x());
    hi_x = std::max(hi_x, v.x());
    lo_y = std::min(lo_y, v.y());
    hi_y = std::max(hi_y, v.y());
  };
  for (const auto& v : pts2) grow(v);
  for (const auto& v : curve) grow(v);
  for (const auto& v : cloud) grow(v);
  if (first) {
    lo_x = lo_y = -1;
    hi_x = hi_y = 1;
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  const double view = 640.0;
  const double margin = 32.0;
  const double scale = (view - 2 * margin) / span;
  auto sx = [&](double x) { return (x - cx) * scale + view / 2; };
  auto sy = [&](double y) { return view / 2 - (y - cy) * scale; };

  std::ostringstream svg;
  svg << std::setprecision(8);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
  svg << "  <style type=\"text/css\">\n"
         "    .quadric { fill: none; stroke: #8a8a8a; stroke-width: 1.2; }\n"
         "    .quadric-sample { fill: #c9c9c9; }\n"
         "    .limit-point { fill: #1f6feb; }\n"
         "    .limit-point.verdict-positive { fill: #9333ea; }\n"
         "    .limit-point.verdict-mixed { fill: #b45309; }\n"
         "    .witness-negative { fill: none; stroke: #d62728; "
         "stroke-width: 1.6; }\n"
         "    .witness-positive { fill: none; stroke: #2ca02c; "
         "stroke-width: 1.6; }\n"
         "  </style>\n";
  svg << "  <rect width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";

  for (const auto& v : cloud)
    svg << "  <circle class=\"quadric-sample\" cx=\"" << sx(v.x()) << "\" cy=\""
        << sy(v.y()) << "\" r=\"1\"/>\n";
  if (!curve.empty()) {
    svg << "  <polygon class=\"quadric\" points=\"";
    for (const auto& v : curve) svg << sx(v.x()) << "," << sy(v.y()) << " ";
    svg << "\"/>\n";
  }
  const std::string verdict_class = " verdict-" + lower(res.report.verdict);
  for (const auto& v : pts2)
    svg << "  <circle class=\"limit-point" << verdict_class << "\" cx=\""
        << sx(v.x()) << "\" cy=\"" << sy(v.y()) << "\" r=\"2.2\"/>\n";
  auto emit_triangle = [&](const std::vector<Eigen::Vector2d>& tri,
                           const char* cls) {
    svg << "  <polygon class=\"" << cls << "\" points=\"";
    for (const auto& v : tri) svg << sx(v.x()) << "," << sy(v.y()) << " ";
    svg << "\"/>\n";
  };
  if (have_neg) emit_triangle(tri_neg, "witness-negative");
  if (have_pos) emit_triangle(tri_pos, "witness-positive");
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericalError("cannot write plot file: " + path);
  out << svg.str();
  return true;
}

}  // namespace hpq
