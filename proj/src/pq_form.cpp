#include "hpq/pq_form.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "hpq/rng.hpp"

namespace hpq {

Signature signature(const MatrixXd& sym, double tol_degenerate) {
  if (sym.rows() != sym.cols()) throw std::invalid_argument("signature: matrix not square");
  const MatrixXd s = 0.5 * (sym + sym.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("signature: eigensolver failed");
  const VectorXd ev = es.eigenvalues();
  const double radius = ev.cwiseAbs().maxCoeff();
  const double cut = tol_degenerate * radius;
  Signature sig;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= cut)
      ++sig.r;
    else if (ev[i] > 0)
      ++sig.p;
    else
      ++sig.q;
  }
  return sig;
}

QuadraticSpace QuadraticSpace::standard(int p, int q) {
  if (p < 0 || q < 0 || p + q < 2) throw std::invalid_argument("standard: need p + q >= 2");
  VectorXd d(p + q);
  d.head(p).setOnes();
  d.tail(q).setConstant(-1.0);
  return QuadraticSpace(d.asDiagonal(), Signature{p, q, 0});
}

QuadraticSpace QuadraticSpace::from_gram(MatrixXd gram, const Tolerances& tol) {
  if (gram.rows() != gram.cols()) throw std::invalid_argument("from_gram: matrix not square");
  if (gram.rows() < 2) throw std::invalid_argument("from_gram: need dimension >= 2");
  MatrixXd s = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("from_gram: eigensolver failed");
  const VectorXd ev = es.eigenvalues();
  const double radius = ev.cwiseAbs().maxCoeff();
  const int n = static_cast<int>(ev.size());
  double absdet = 1.0;
  Signature sig;
  for (int i = 0; i < n; ++i) {
    absdet *= std::abs(ev[i]);
    if (ev[i] > 0)
      ++sig.p;
    else
      ++sig.q;
  }
  if (!(absdet > tol.tol_degenerate * std::pow(radius, n)))
    throw std::invalid_argument("from_gram: numerically degenerate form");
  return QuadraticSpace(std::move(s), sig);
}

double QuadraticSpace::pairing(const VectorXd& x, const VectorXd& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw std::invalid_argument("pairing: dimension mismatch");
  return x.dot(gram_ * y);
}

ProjectivePoint make_point(const QuadraticSpace& space, VectorXd v, const Tolerances& tol) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("make_point: zero or non-finite lift");
  v /= n;
  const double q = space.pairing(v, v);
  NormClass c = NormClass::Null;
  if (q < -tol.tol_null)
    c = NormClass::Negative;
  else if (q > tol.tol_null)
    c = NormClass::Positive;
  return ProjectivePoint{std::move(v), c};
}

ProjectivePoint apply(const QuadraticSpace& space, const MatrixXd& g, const ProjectivePoint& x,
                      const Tolerances& tol) {
  return make_point(space, g * x.lift, tol);
}

double angular_distance(const VectorXd& a, const VectorXd& b) {
  // atan2 of the rejection against the projection: unlike acos of the dot
  // product, this resolves angles all the way down to machine precision
  // (acos bottoms out near 1e-8 for nearly collinear inputs).
  const VectorXd u = a.normalized();
  VectorXd w = b.normalized();
  if (u.dot(w) < 0.0) w = -w;
  const double c = u.dot(w);
  const double s = (w - c * u).norm();
  return std::atan2(s, c);
}

const char* to_string(TripleSign s) {
  switch (s) {
    case TripleSign::Negative: return "Negative";
    case TripleSign::Positive: return "Positive";
    default: return "Degenerate";
  }
}

const char* to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::Negative: return "Negative";
    case SignVerdict::Positive: return "Positive";
    case SignVerdict::Mixed: return "Mixed";
    default: return "Degenerate";
  }
}

const char* to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::AllNegative: return "AllNegative";
    case ScanVerdict::AllPositive: return "AllPositive";
    case ScanVerdict::Mixed: return "Mixed";
    default: return "Degenerate";
  }
}

namespace {

void require_null(const QuadraticSpace& space, const ProjectivePoint& x, const Tolerances& tol,
                  const char* who) {
  const double q = space.pairing(x.lift, x.lift);
  if (std::abs(q) > tol.tol_null * x.lift.squaredNorm())
    throw std::invalid_argument(std::string(who) + ": point is not on the null quadric");
}

TripleSign triple_sign_from_pairings(double p12, double p13, double p23, double scale3,
                                     const Tolerances& tol) {
  const double prod = p12 * p13 * p23;
  const double cut = tol.tol_sign * scale3;
  if (prod < -cut) return TripleSign::Negative;
  if (prod > cut) return TripleSign::Positive;
  return TripleSign::Degenerate;
}

}  // namespace

TripleSign triple_sign(const QuadraticSpace& space, const ProjectivePoint& y1,
                       const ProjectivePoint& y2, const ProjectivePoint& y3,
                       const Tolerances& tol) {
  const ProjectivePoint* ys[3] = {&y1, &y2, &y3};
  for (const auto* y : ys) require_null(space, *y, tol, "triple_sign");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (angular_distance(ys[i]->lift, ys[j]->lift) <= tol.dedupe_radius)
        throw std::invalid_argument("triple_sign: points not pairwise distinct");
  const double n1 = y1.lift.norm(), n2 = y2.lift.norm(), n3 = y3.lift.norm();
  const double scale3 = (n1 * n2 * n3) * (n1 * n2 * n3);
  return triple_sign_from_pairings(space.pairing(y1.lift, y2.lift), space.pairing(y1.lift, y3.lift),
                                   space.pairing(y2.lift, y3.lift), scale3, tol);
}

CertifyResult certify_sign(const QuadraticSpace& space, const std::vector<ProjectivePoint>& lambda,
                           const Tolerances& tol) {
  const int k = static_cast<int>(lambda.size());
  if (k < 2) throw std::invalid_argument("certify_sign: need at least 2 points");
  for (const auto& y : lambda) require_null(space, y, tol, "certify_sign");

  // The k x k pairing table can dwarf memory for large samples, so all pair
  // scans below run over dense sub-blocks (matrix products plus vectorized
  // reductions) and never hold more than a few blocks at once.
  constexpr int kBlock = 1024;
  MatrixXd lifts(space.dim(), k);
  for (int i = 0; i < k; ++i) lifts.col(i) = lambda[i].lift;
  const MatrixXd glifts = space.gram() * lifts;
  const double dup_cos = std::cos(tol.dedupe_radius);

  CertifyResult res;

  // Pass 1: reject duplicate points; find any pairing too close to zero for
  // orientations to be well-defined.
  for (int bi = 0; bi < k; bi += kBlock) {
    const int ri = std::min(kBlock, k - bi);
    for (int bj = bi; bj < k; bj += kBlock) {
      const int rj = std::min(kBlock, k - bj);
      MatrixXd dot_e = lifts.middleCols(bi, ri).transpose() * lifts.middleCols(bj, rj);
      MatrixXd dot_f = lifts.middleCols(bi, ri).transpose() * glifts.middleCols(bj, rj);
      if (bi == bj)  // keep strictly upper entries: global i < j
        for (int r = 0; r < ri; ++r)
          for (int c = 0; c <= r && c < rj; ++c) {
            dot_e(r, c) = 0.0;
            dot_f(r, c) = std::numeric_limits<double>::infinity();
          }
      Eigen::Index r, c;
      if (dot_e.cwiseAbs().maxCoeff(&r, &c) > dup_cos)
        throw std::invalid_argument("certify_sign: points not pairwise distinct");
      if (dot_f.cwiseAbs().minCoeff(&r, &c) <= tol.tol_sign) {
        res.verdict = SignVerdict::Degenerate;
        res.degenerate_pair = {bi + static_cast<int>(r), bj + static_cast<int>(c)};
        return res;
      }
    }
  }

  // want = -1: make every pairing with point 0 negative, then check the rest.
  // A failing pair (i,j) means the triple (0,i,j) has the opposite sign.
  const auto attempt = [&](double want, std::array<int, 3>* counterexample) -> bool {
    const VectorXd row0 = lifts.transpose() * glifts.col(0);
    std::vector<int> signs(k, 1);
    VectorXd signs_d = VectorXd::Ones(k);
    for (int i = 1; i < k; ++i) {
      signs[i] = (want * row0[i] > 0) ? 1 : -1;
      signs_d[i] = static_cast<double>(signs[i]);
    }
    for (int bi = 0; bi < k; bi += kBlock) {
      const int ri = std::min(kBlock, k - bi);
      for (int bj = bi; bj < k; bj += kBlock) {
        const int rj = std::min(kBlock, k - bj);
        // want * s_i * s_j * <x_i, x_j>: negative anywhere breaks coherence.
        MatrixXd w = want * (signs_d.segment(bi, ri) * signs_d.segment(bj, rj).transpose())
                                .cwiseProduct(lifts.middleCols(bi, ri).transpose() *
                                              glifts.middleCols(bj, rj));
        if (bi == bj)
          for (int r = 0; r < ri; ++r)
            for (int c = 0; c <= r && c < rj; ++c)
              w(r, c) = std::numeric_limits<double>::infinity();
        Eigen::Index r, c;
        if (w.minCoeff(&r, &c) < 0) {
          *counterexample = {0, bi + static_cast<int>(r), bj + static_cast<int>(c)};
          return false;
        }
      }
    }
    LiftedCone cone;
    cone.points = lambda;
    cone.signs = std::move(signs);
    cone.mark = want < 0 ? LiftedCone::Mark::NegativeCertified : LiftedCone::Mark::PositiveCertified;
    res.cone = std::move(cone);
    return true;
  };

  if (attempt(-1.0, &res.positive_witness)) {
    res.verdict = SignVerdict::Negative;
    res.ambiguous_small_set = (k == 2);
    return res;
  }
  if (attempt(+1.0, &res.negative_witness)) {
    res.verdict = SignVerdict::Positive;
    return res;
  }
  res.verdict = SignVerdict::Mixed;
  return res;
}

TransversalityReport transversality_margin(const QuadraticSpace& space,
                                           const std::vector<ProjectivePoint>& lambda) {
  const int k = static_cast<int>(lambda.size());
  if (k < 2) throw std::invalid_argument("transversality_margin: need at least 2 points");
  constexpr int kBlock = 1024;
  MatrixXd lifts(space.dim(), k);
  for (int i = 0; i < k; ++i) lifts.col(i) = lambda[i].lift.normalized();
  const MatrixXd glifts = space.gram() * lifts;
  TransversalityReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (int bi = 0; bi < k; bi += kBlock) {
    const int ri = std::min(kBlock, k - bi);
    for (int bj = bi; bj < k; bj += kBlock) {
      const int rj = std::min(kBlock, k - bj);
      MatrixXd pair = lifts.middleCols(bi, ri).transpose() * glifts.middleCols(bj, rj);
      if (bi == bj)
        for (int r = 0; r < ri; ++r)
          for (int c = 0; c <= r && c < rj; ++c)
            pair(r, c) = std::numeric_limits<double>::infinity();
      Eigen::Index r, c;
      const double m = pair.cwiseAbs().minCoeff(&r, &c);
      if (m < rep.min_margin) {
        rep.min_margin = m;
        rep.argmin = {bi + static_cast<int>(r), bj + static_cast<int>(c)};
      }
    }
  }
  return rep;
}

ScanResult sign_constancy_scan(const QuadraticSpace& space,
                               const std::vector<ProjectivePoint>& lambda, int samples,
                               std::uint64_t rng_seed, long long exhaustive_cap,
                               const Tolerances& tol) {
  const int k = static_cast<int>(lambda.size());
  if (k < 3) throw std::invalid_argument("sign_constancy_scan: need at least 3 points");

  MatrixXd lifts(space.dim(), k);
  for (int i = 0; i < k; ++i) lifts.col(i) = lambda[i].lift;
  const MatrixXd glifts = space.gram() * lifts;

  ScanResult res;
  const auto better = [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return b[0] == -1 || a < b;
  };
  const auto eval = [&](int a, int b, int c) {
    const double p12 = lifts.col(a).dot(glifts.col(b));
    const double p13 = lifts.col(a).dot(glifts.col(c));
    const double p23 = lifts.col(b).dot(glifts.col(c));
    const TripleSign s = triple_sign_from_pairings(p12, p13, p23, 1.0, tol);
    ++res.triples_evaluated;
    const std::array<int, 3> t{a, b, c};
    switch (s) {
      case TripleSign::Negative:
        if (better(t, res.negative_witness)) res.negative_witness = t;
        break;
      case TripleSign::Positive:
        if (better(t, res.positive_witness)) res.positive_witness = t;
        break;
      case TripleSign::Degenerate:
        if (better(t, res.degenerate_witness)) res.degenerate_witness = t;
        break;
    }
  };

  Rng rng(rng_seed);
  for (int s = 0; s < samples; ++s) {
    const auto idx = sample_indices(rng, k, 3);
    eval(idx[0], idx[1], idx[2]);
  }
  const long long k3 = static_cast<long long>(k) * k * k;
  if (k3 <= exhaustive_cap) {
    res.exhaustive = true;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        for (int c = b + 1; c < k; ++c) eval(a, b, c);
  }

  const bool any_neg = res.negative_witness[0] != -1;
  const bool any_pos = res.positive_witness[0] != -1;
  const bool any_deg = res.degenerate_witness[0] != -1;
  if (any_deg)
    res.verdict = ScanVerdict::Degenerate;
  else if (any_neg && any_pos)
    res.verdict = ScanVerdict::Mixed;
  else if (any_pos)
    res.verdict = ScanVerdict::AllPositive;
  else
    res.verdict = ScanVerdict::AllNegative;
  return res;
}

}  // namespace hpq
