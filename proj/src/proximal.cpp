#include "hpq/proximal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <sstream>
#include <unordered_set>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace hpq {

namespace {

MatrixXd form_inverse(const QuadraticSpace& space, const MatrixXd& g) {
  // g^{-1} = G^{-1} g^T G when g preserves the form G.
  return space.gram().partialPivLu().solve(g.transpose() * space.gram());
}

// Order-independent 128-bit hash of the matrix entries on a quantization grid
// of 1e-9 (scaled by a power of two once entries outgrow the absolute grid,
// so long words cannot overflow the quantizer).
struct QuantHash {
  std::uint64_t a = 1469598103934665603ull, b = 14695981039346656037ull;
  void mix(std::uint64_t x) {
    a = (a ^ x) * 1099511628211ull;
    b = (b ^ (x + 0x9e3779b97f4a7c15ull)) * 1099511628211ull;
  }
};

std::pair<std::uint64_t, std::uint64_t> quantized_hash(const MatrixXd& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  double grid = 1e-9;
  if (scale > 1.0) grid = 1e-9 * std::exp2(std::round(std::log2(scale)));
  QuantHash h;
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      h.mix(static_cast<std::uint64_t>(std::llround(m(i, j) / grid)));
  return {h.a, h.b};
}

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
    return static_cast<std::size_t>(p.first ^ (p.second * 0x9e3779b97f4a7c15ull));
  }
};

struct Letter {
  std::string label;
  const MatrixXd* mat;
  int inverse_of;  // index of the letter undoing this one
};

std::vector<Letter> alphabet(const GroupRep& rep) {
  std::vector<Letter> letters;
  for (const Generator& g : rep.generators()) {
    if (g.involutive) {
      const int i = static_cast<int>(letters.size());
      letters.push_back({g.label, &g.mat, i});
    } else {
      const int i = static_cast<int>(letters.size());
      letters.push_back({g.label, &g.mat, i + 1});
      letters.push_back({g.label + "'", &g.inv, i});
    }
  }
  return letters;
}

}  // namespace

GroupRep::GroupRep(QuadraticSpace space, std::vector<std::pair<std::string, MatrixXd>> generators,
                   const Tolerances& tol)
    : space_(std::move(space)) {
  if (generators.empty()) throw std::invalid_argument("GroupRep: no generators");
  const double gram_scale = space_.gram().cwiseAbs().maxCoeff();
  for (auto& [label, mat] : generators) {
    if (label.empty()) throw std::invalid_argument("GroupRep: empty generator label");
    for (const Generator& seen : gens_)
      if (seen.label == label)
        throw std::invalid_argument("GroupRep: duplicate generator label '" + label + "'");
    if (mat.rows() != space_.dim() || mat.cols() != space_.dim())
      throw std::invalid_argument("GroupRep: generator '" + label + "' has wrong dimensions");
    const double residual =
        (mat.transpose() * space_.gram() * mat - space_.gram()).cwiseAbs().maxCoeff();
    // The congruence g^T G g carries rounding noise of order eps * |g|^2, so
    // the acceptance scale must grow with the generator norm.
    const double congruence_scale = std::max(1.0, mat.squaredNorm());
    if (residual > tol.form_residual_rel * gram_scale * congruence_scale) {
      std::ostringstream msg;
      msg << "GroupRep: generator '" << label
          << "' does not preserve the form (residual " << std::scientific
          << std::setprecision(3) << residual << ")";
      throw std::invalid_argument(msg.str());
    }
    Generator g;
    g.label = label;
    g.inv = form_inverse(space_, mat);
    g.mat = std::move(mat);
    const double scale = std::max(1.0, g.mat.cwiseAbs().maxCoeff());
    g.involutive =
        (g.mat * g.mat - MatrixXd::Identity(space_.dim(), space_.dim())).cwiseAbs().maxCoeff() <=
        1e-9 * scale * scale;
    gens_.push_back(std::move(g));
  }
}

std::optional<ProximalData> is_proximal(const QuadraticSpace& space, const MatrixXd& g,
                                        const Tolerances& tol) {
  Eigen::EigenSolver<MatrixXd> es(g);
  if (es.info() != Eigen::Success) throw NumericalError("is_proximal: eigensolver failed");
  const Eigen::VectorXcd vals = es.eigenvalues();
  const int n = static_cast<int>(vals.size());

  int top = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(vals[i]) > std::abs(vals[top])) top = i;
  const double m0 = std::abs(vals[top]);
  double m1 = 0.0;
  for (int i = 0; i < n; ++i)
    if (i != top) m1 = std::max(m1, std::abs(vals[i]));

  if (m0 <= 0.0) return std::nullopt;
  const double gap = m1 > 0.0 ? m0 / m1 : std::numeric_limits<double>::infinity();
  if (!(gap > 1.0 + tol.tol_proximal)) return std::nullopt;
  if (std::abs(vals[top].imag()) > 1e-9 * m0) return std::nullopt;

  // De-phase the complex eigenvector and orient its first nonzero coordinate
  // positive so repeated runs agree.
  Eigen::VectorXcd vc = es.eigenvectors().col(top);
  int big = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(vc[i]) > std::abs(vc[big])) big = i;
  vc /= vc[big] / std::abs(vc[big]);
  VectorXd v = vc.real();
  v.normalize();
  for (int i = 0; i < n; ++i) {
    if (std::abs(v[i]) > 1e-9) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }

  ProximalData data;
  data.top_modulus = m0;
  data.gap_ratio = gap;
  data.attracting = make_point(space, v, tol);
  const VectorXd image = (g * v).normalized();
  data.fixed_residual = angular_distance(image, v);
  if (data.fixed_residual > 1e-8)
    throw NumericalError("is_proximal: eigenvector fails to be fixed within tolerance");
  return data;
}

RepellingData repelling_data(const QuadraticSpace& space, const MatrixXd& g,
                             const Tolerances& tol) {
  auto plus = is_proximal(space, g, tol);
  if (!plus) throw std::invalid_argument("repelling_data: matrix is not proximal");
  auto minus = is_proximal(space, form_inverse(space, g), tol);
  if (!minus) throw std::invalid_argument("repelling_data: inverse is not proximal");

  RepellingData out;
  out.attracting = std::move(*plus);
  out.repelling = std::move(*minus);
  out.hyperplane_normal = (space.gram() * out.repelling.attracting.lift).normalized();
  out.pairing_margin =
      std::abs(space.pairing(out.attracting.attracting.lift, out.repelling.attracting.lift));
  return out;
}

Enumeration enumerate_words(const GroupRep& rep, int max_length, Dedupe dedupe,
                            long long element_cap) {
  if (max_length < 1) throw std::invalid_argument("enumerate_words: max_length must be >= 1");
  const std::vector<Letter> letters = alphabet(rep);
  const int n = rep.dim();

  struct Node {
    MatrixXd mat;
    std::string label;
    int last_letter;
  };

  std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PairHash> seen;
  if (dedupe == Dedupe::Matrix) seen.insert(quantized_hash(MatrixXd::Identity(n, n)));

  Enumeration out;
  std::vector<Node> frontier;
  frontier.push_back({MatrixXd::Identity(n, n), "", -1});

  for (int len = 1; len <= max_length && !out.truncated; ++len) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (int li = 0; li < static_cast<int>(letters.size()); ++li) {
        if (node.last_letter >= 0 && letters[node.last_letter].inverse_of == li) continue;
        MatrixXd m = node.mat * (*letters[li].mat);
        if (dedupe == Dedupe::Matrix && !seen.insert(quantized_hash(m)).second) continue;
        std::string label =
            node.label.empty() ? letters[li].label : node.label + "*" + letters[li].label;
        next.push_back({m, label, li});
        out.words.push_back({std::move(label), std::move(m), len});
        if (static_cast<long long>(out.words.size()) >= element_cap) {
          out.truncated = true;
          break;
        }
      }
      if (out.truncated) break;
    }
    frontier = std::move(next);
    if (frontier.empty()) break;  // the whole group was exhausted
  }
  return out;
}

LimitSample sample_limit_set(const GroupRep& rep, int max_length, long long element_cap,
                             const Tolerances& tol) {
  const Enumeration en = enumerate_words(rep, max_length, Dedupe::Matrix, element_cap);

  LimitSample out;
  out.stats.truncated = en.truncated;
  out.stats.points_by_length.assign(max_length + 1, 0);
  const double dup_cos = std::cos(tol.dedupe_radius);
  double gap_sum = 0.0;

  for (const Word& w : en.words) {
    ++out.stats.words_tested;
    std::optional<ProximalData> pd;
    try {
      pd = is_proximal(rep.space(), w.mat, tol);
    } catch (const NumericalError&) {
      // Deep words of large-norm generators can exceed what double precision
      // can validate; skip them (tracked) rather than poison the whole run.
      ++out.stats.dropped_unverified;
      continue;
    }
    if (!pd) continue;
    ++out.stats.proximal_count;
    gap_sum += pd->gap_ratio;

    const ProjectivePoint& pt = pd->attracting;
    const double residual = std::abs(rep.space().pairing(pt.lift, pt.lift));
    if (residual > tol.tol_null) {
      ++out.stats.dropped_nonnull;
      continue;
    }
    bool duplicate = false;
    for (const ProjectivePoint& kept : out.points) {
      if (std::abs(kept.lift.dot(pt.lift)) > dup_cos) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    out.stats.max_null_residual = std::max(out.stats.max_null_residual, residual);
    ++out.stats.points_by_length[w.length];
    out.points.push_back(pt);
  }

  if (out.stats.words_tested > 0)
    out.stats.proximal_fraction =
        static_cast<double>(out.stats.proximal_count) / static_cast<double>(out.stats.words_tested);
  if (out.stats.proximal_count > 0)
    out.stats.mean_gap = gap_sum / static_cast<double>(out.stats.proximal_count);
  out.stats.empty = out.stats.proximal_count == 0;
  return out;
}

GapDiagnostic anosov_gap_diagnostic(const GroupRep& rep, int max_length, int per_length_cap,
                                    std::uint64_t seed, long long element_cap,
                                    const Tolerances& tol) {
  const Enumeration en = enumerate_words(rep, max_length, Dedupe::Matrix, element_cap);
  std::vector<std::vector<const Word*>> by_length(max_length + 1);
  for (const Word& w : en.words) by_length[w.length].push_back(&w);

  GapDiagnostic diag;
  Rng rng(seed);
  for (int len = 1; len <= max_length; ++len) {
    const auto& bucket = by_length[len];
    if (bucket.empty()) continue;
    std::vector<const Word*> picked;
    if (static_cast<int>(bucket.size()) <= per_length_cap) {
      picked = bucket;
    } else {
      for (int idx : sample_indices(rng, static_cast<int>(bucket.size()), per_length_cap))
        picked.push_back(bucket[idx]);
    }

    GapRow row;
    row.length = len;
    row.sampled = static_cast<int>(picked.size());
    int proximal = 0;
    double min_log = std::numeric_limits<double>::infinity();
    for (const Word* w : picked) {
      std::optional<ProximalData> pd;
      try {
        pd = is_proximal(rep.space(), w->mat, tol);
      } catch (const NumericalError&) {
        continue;  // unverifiable word: counted as not proximal for this row
      }
      if (!pd) continue;
      ++proximal;
      min_log = std::min(min_log, std::log(pd->gap_ratio));
    }
    row.proximal_fraction = static_cast<double>(proximal) / static_cast<double>(row.sampled);
    row.min_log_gap = proximal > 0 ? min_log : 0.0;
    diag.rows.push_back(row);
  }

  // Least-squares slope of min log gap against length, over rows that saw at
  // least one proximal word.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const GapRow& r : diag.rows) {
    if (r.proximal_fraction <= 0.0) continue;
    sx += r.length;
    sy += r.min_log_gap;
    sxx += static_cast<double>(r.length) * r.length;
    sxy += r.length * r.min_log_gap;
    ++m;
  }
  if (m >= 2 && m * sxx - sx * sx > 0) diag.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return diag;
}

}  // namespace hpq
