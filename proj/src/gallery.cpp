#include "hpq/gallery.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace hpq {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  return a;
}

// Smallest arc containing all sample angles: the complement of the largest
// gap between consecutive sorted angles. Returned as (start, width).
std::pair<double, double> covering_arc(std::vector<double> angles) {
  for (double& a : angles) a = wrap_angle(a);
  std::sort(angles.begin(), angles.end());
  const int m = static_cast<int>(angles.size());
  double best_gap = angles.front() + 2 * kPi - angles.back();
  int best_at = m - 1;  // gap following this index
  for (int i = 0; i + 1 < m; ++i) {
    const double gap = angles[i + 1] - angles[i];
    if (gap > best_gap) {
      best_gap = gap;
      best_at = i;
    }
  }
  const double start = angles[(best_at + 1) % m];
  return {start, 2 * kPi - best_gap};
}

bool arc_contains(const std::pair<double, double>& arc, double x) {
  return wrap_angle(x - arc.first) <= arc.second;
}

bool arcs_overlap(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  return arc_contains(a, b.first) || arc_contains(a, b.first + b.second) ||
         arc_contains(b, a.first) || arc_contains(b, a.first + a.second);
}

// Circle angle of the image of the null direction (cos t, sin t, 1).
double circle_image(const MatrixXd& g, double theta) {
  Eigen::Vector3d v = g * Eigen::Vector3d(std::cos(theta), std::sin(theta), 1.0);
  return std::atan2(v[1] / v[2], v[0] / v[2]);
}

MatrixXd conj_po22(const MatrixXd& m) {
  static const MatrixXd c = po22_congruence();
  // the congruence has orthogonal columns of norm sqrt(2), so c^{-1} = c^T/2
  return 0.5 * c.transpose() * m * c;
}

GroupRep canonical_schottky(std::vector<std::string>* warnings = nullptr) {
  return schottky_fuchsian({2.2, 2.2}, {{{-0.9, 0.9}}, {{kPi - 0.9, kPi + 0.9}}}, warnings);
}

CoxeterSpec pentagon_spec() {
  CoxeterSpec s(5, Rat(21, 20));  // diagonals stay free at weight 21/20
  for (int i = 0; i < 5; ++i) s.set_commute(i, (i + 1) % 5);
  return s;
}

CoxeterSpec square_spec() {
  CoxeterSpec s(4, Rat(21, 20));  // both diagonals free
  s.set_commute(0, 1);
  s.set_commute(1, 2);
  s.set_commute(2, 3);
  s.set_commute(3, 0);
  return s;
}

CoxeterSpec complete_spec() {
  CoxeterSpec s(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) s.set_commute(i, j);
  return s;
}

Tolerances coarse_dedupe() {
  // Boundary-circle fixtures: keep sampled points angularly separated, so
  // pairings clear the sign band by orders of magnitude instead of shrinking
  // geometrically with word length.
  Tolerances t;
  t.dedupe_radius = 0.05;
  return t;
}

// The fixed free Fuchsian pair in SL2: disjoint axes (-1,1) and (3,9), both
// with eigenvalue logs 1.1.
std::pair<Matrix2d, Matrix2d> sl2_schottky_pair() {
  return {sl2_hyperbolic(-1.0, 1.0, 2.2), sl2_hyperbolic(3.0, 9.0, 2.2)};
}

}  // namespace

const char* to_string(ExampleBundle::Expected e) {
  switch (e) {
    case ExampleBundle::Expected::Negative: return "Negative";
    case ExampleBundle::Expected::Positive: return "Positive";
    case ExampleBundle::Expected::Mixed: return "Mixed";
    case ExampleBundle::Expected::Empty: return "Empty";
    case ExampleBundle::Expected::NonTransverse: return "NonTransverse";
  }
  return "?";
}

MatrixXd boost_along_axis(double theta1, double theta2, double t) {
  if (std::abs(t) < 1e-12)
    throw std::invalid_argument("boost_along_axis: zero length gives the identity");
  const Eigen::Vector3d n1(std::cos(theta1), std::sin(theta1), 1.0);
  const Eigen::Vector3d n2(std::cos(theta2), std::sin(theta2), 1.0);
  Eigen::Matrix3d gram = Eigen::Matrix3d::Identity();
  gram(2, 2) = -1.0;
  // third basis vector orthogonal to both null directions under the form
  const Eigen::Vector3d w = (gram * n1).cross(gram * n2);
  if (w.norm() < 1e-9)
    throw std::invalid_argument("boost_along_axis: axis endpoints coincide");
  Eigen::Matrix3d s;
  s << n1, n2, w;
  const Eigen::Vector3d d(std::exp(t), std::exp(-t), 1.0);
  return s * d.asDiagonal() * s.inverse();
}

GroupRep schottky_fuchsian(const std::vector<double>& lengths,
                           const std::vector<std::array<double, 2>>& axis_angles,
                           std::vector<std::string>* warnings) {
  if (lengths.size() != axis_angles.size())
    throw std::invalid_argument("schottky_fuchsian: one axis per length required");
  if (lengths.size() < 2)
    throw std::invalid_argument("schottky_fuchsian: need at least two generators");

  std::vector<std::pair<std::string, MatrixXd>> gens;
  for (size_t i = 0; i < lengths.size(); ++i) {
    const std::string label =
        i < 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i + 1);
    gens.emplace_back(label, boost_along_axis(axis_angles[i][0], axis_angles[i][1], lengths[i]));
  }

  if (warnings) {
    // Numeric ping-pong check: each player is a generator or an inverse; its
    // arc is the image of everything outside a guard arc around its repelling
    // point. Free-and-discrete configurations give pairwise disjoint arcs.
    struct Player {
      MatrixXd mat;
      double rep_angle;
      std::string name;
    };
    std::vector<Player> players;
    std::vector<double> fixed;
    for (size_t i = 0; i < gens.size(); ++i) {
      players.push_back({gens[i].second, axis_angles[i][1], gens[i].first});
      players.push_back({gens[i].second.inverse(), axis_angles[i][0], gens[i].first + "'"});
      fixed.push_back(wrap_angle(axis_angles[i][0]));
      fixed.push_back(wrap_angle(axis_angles[i][1]));
    }
    double min_gap = 2 * kPi;
    for (size_t i = 0; i < fixed.size(); ++i)
      for (size_t j = i + 1; j < fixed.size(); ++j) {
        const double d = wrap_angle(fixed[i] - fixed[j]);
        min_gap = std::min(min_gap, std::min(d, 2 * kPi - d));
      }
    if (min_gap < 1e-6) {
      warnings->push_back("axes share an endpoint; ping-pong check skipped");
    } else {
      const double guard = 0.45 * min_gap;
      std::vector<std::pair<double, double>> arcs;
      for (const Player& p : players) {
        std::vector<double> images;
        for (int k = 0; k < 720; ++k) {
          const double theta = 2 * kPi * k / 720;
          const double off = wrap_angle(theta - p.rep_angle);
          if (std::min(off, 2 * kPi - off) < guard) continue;
          images.push_back(circle_image(p.mat, theta));
        }
        arcs.push_back(covering_arc(std::move(images)));
      }
      for (size_t i = 0; i < arcs.size(); ++i)
        for (size_t j = i + 1; j < arcs.size(); ++j)
          if (arcs_overlap(arcs[i], arcs[j]))
            warnings->push_back("ping-pong arcs of " + players[i].name + " and " +
                                players[j].name + " overlap");
    }
  }

  return GroupRep(QuadraticSpace::standard(2, 1), std::move(gens));
}

GroupRep block_embed(const GroupRep& rep, int p, int q) {
  const int n = rep.dim();
  const int m = n - 1;
  MatrixXd lorentz = MatrixXd::Identity(n, n);
  lorentz(m, m) = -1.0;
  if ((rep.space().gram() - lorentz).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("block_embed: source must preserve the standard Lorentzian form");
  if (p < m) throw std::invalid_argument("block_embed: target positive rank too small");
  if (q < 1) throw std::invalid_argument("block_embed: target negative rank must be >= 1");

  const int big = p + q;
  std::vector<int> map(n);
  for (int i = 0; i < m; ++i) map[i] = i;
  map[m] = p;  // the single negative coordinate lands in the first negative slot

  std::vector<std::pair<std::string, MatrixXd>> gens;
  for (const Generator& g : rep.generators()) {
    MatrixXd out = MatrixXd::Identity(big, big);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out(map[a], map[b]) = g.mat(a, b);
    gens.emplace_back(g.label, std::move(out));
  }
  return GroupRep(QuadraticSpace::standard(p, q), std::move(gens));
}

MatrixXd sym_power(int n, const Matrix2d& g) {
  if (n < 1) throw std::invalid_argument("sym_power: n must be >= 1");
  if (std::abs(g.determinant() - 1.0) > 1e-12)
    throw std::invalid_argument("sym_power: determinant must be 1");
  const int d = n - 1;
  const double a = g(0, 0), b = g(0, 1), c = g(1, 0), e = g(1, 1);

  MatrixXd out = MatrixXd::Zero(n, n);
  std::vector<double> p1(n), p2(n);
  for (int k = 0; k <= d; ++k) {
    // column k: (a x + c y)^{d-k} (b x + e y)^k expanded over x^{d-j} y^j
    for (int r = 0; r <= d - k; ++r)
      p1[r] = binom(d - k, r) * std::pow(a, d - k - r) * std::pow(c, r);
    for (int s = 0; s <= k; ++s) p2[s] = binom(k, s) * std::pow(b, k - s) * std::pow(e, s);
    for (int r = 0; r <= d - k; ++r)
      for (int s = 0; s <= k; ++s) out(r + s, k) += p1[r] * p2[s];
  }
  return out;
}

MatrixXd sym_power_form(int n) {
  if (n < 2) throw std::invalid_argument("sym_power_form: n must be >= 2");
  const int d = n - 1;
  MatrixXd out = MatrixXd::Zero(n, n);
  for (int k = 0; k <= d; ++k) out(k, d - k) = (k % 2 == 0 ? -1.0 : 1.0) / binom(d, k);
  return out;
}

MatrixXd po22_form() {
  MatrixXd g = MatrixXd::Zero(4, 4);
  g(0, 3) = g(3, 0) = 0.5;
  g(1, 2) = g(2, 1) = -0.5;
  return g;
}

MatrixXd po22_pair(const Matrix2d& g, const Matrix2d& h) {
  if (std::abs(g.determinant() - 1.0) > 1e-12 || std::abs(h.determinant() - 1.0) > 1e-12)
    throw std::invalid_argument("po22_pair: both determinants must be 1");
  Matrix2d hinv;
  hinv << h(1, 1), -h(0, 1), -h(1, 0), h(0, 0);  // adjugate = inverse at det 1
  MatrixXd out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = g(i, j) * hinv.transpose();
  return out;
}

MatrixXd po22_congruence() {
  MatrixXd c(4, 4);
  c << 1, 0, 1, 0,
       0, 1, 0, 1,
       0, -1, 0, 1,
       1, 0, -1, 0;
  return c;
}

Matrix2d sl2_hyperbolic(double u, double v, double t) {
  if (std::abs(u - v) < 1e-12)
    throw std::invalid_argument("sl2_hyperbolic: axis endpoints coincide");
  Matrix2d m;
  m << u, v, 1, 1;
  Matrix2d d = Matrix2d::Zero();
  d(0, 0) = std::exp(t / 2);
  d(1, 1) = std::exp(-t / 2);
  return m * d * m.inverse();
}

ExampleBundle hitchin_fixture(int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("hitchin_fixture: only odd n >= 3 is supported");
  const auto [s1, s2] = sl2_schottky_pair();
  const MatrixXd form = sym_power_form(n);

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(form);
  if (es.info() != Eigen::Success) throw NumericalError("hitchin_fixture: eigensolver failed");
  int pos = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()[i] > 0) ++pos;

  // congruence columns: positive-eigenvalue directions first, scaled so the
  // form becomes exactly diag(+1...,-1...)
  MatrixXd congruence(n, n);
  int ip = 0, in = pos;
  for (int i = 0; i < n; ++i) {
    const double lam = es.eigenvalues()[i];
    const VectorXd col = es.eigenvectors().col(i) / std::sqrt(std::abs(lam));
    congruence.col(lam > 0 ? ip++ : in++) = col;
  }
  const Eigen::PartialPivLU<MatrixXd> lu(congruence);

  std::vector<std::pair<std::string, MatrixXd>> gens;
  gens.emplace_back("a", lu.solve(sym_power(n, s1) * congruence));
  gens.emplace_back("b", lu.solve(sym_power(n, s2) * congruence));

  ExampleBundle bundle{
      "hitchin-" + std::to_string(n),
      "degree-" + std::to_string(n - 1) +
          " symmetric-power lift of a free two-generator Fuchsian group, conjugated into the "
          "standard form",
      GroupRep(QuadraticSpace::standard(pos, n - pos), std::move(gens))};
  bundle.expected = ExampleBundle::Expected::Negative;
  bundle.congruence = congruence;
  bundle.tol_override = coarse_dedupe();
  return bundle;
}

ExampleBundle mixed_sign_fixture() {
  Matrix2d a1;
  a1 << 2, 0, 0, 0.5;  // axis (infinity, 0)
  Matrix2d moebius;
  moebius << 3, 1, 1, 1;  // sends (infinity, 0) to (3, 1)
  const Matrix2d b1 = moebius * a1 * moebius.inverse();  // axis (3, 1): disjoint from a1's
  const Matrix2d a2 = a1;
  Matrix2d b2;
  b2 << std::cosh(1.0), std::sinh(1.0), std::sinh(1.0), std::cosh(1.0);  // axis (1, -1): crossing

  std::vector<std::pair<std::string, MatrixXd>> gens;
  gens.emplace_back("a", conj_po22(po22_pair(a1, a2)));
  gens.emplace_back("b", conj_po22(po22_pair(b1, b2)));

  ExampleBundle bundle{
      "mixed-po22",
      "left-right action of a disjoint-axis and a crossing-axis free pair on 2x2 matrices; the "
      "boundary identification is not order-monotone",
      GroupRep(QuadraticSpace::standard(2, 2), std::move(gens))};
  bundle.expected = ExampleBundle::Expected::Mixed;
  bundle.congruence = po22_congruence();
  bundle.tol_override = coarse_dedupe();
  return bundle;
}

namespace {

ExampleBundle diagonal_po22_factor(int which) {
  Matrix2d a1;
  a1 << 2, 0, 0, 0.5;
  Matrix2d moebius;
  moebius << 3, 1, 1, 1;
  const Matrix2d b1 = moebius * a1 * moebius.inverse();
  Matrix2d b2;
  b2 << std::cosh(1.0), std::sinh(1.0), std::sinh(1.0), std::cosh(1.0);

  const Matrix2d ga = a1;  // both factors share this generator image
  const Matrix2d gb = which == 1 ? b1 : b2;

  std::vector<std::pair<std::string, MatrixXd>> gens;
  gens.emplace_back("a", conj_po22(po22_pair(ga, ga)));
  gens.emplace_back("b", conj_po22(po22_pair(gb, gb)));

  ExampleBundle bundle{
      "factor" + std::to_string(which) + "-po22",
      "diagonal left-right action of one free factor on 2x2 matrices; its limit curve is the "
      "graph of the identity boundary map and has constant sign",
      GroupRep(QuadraticSpace::standard(2, 2), std::move(gens))};
  bundle.expected = ExampleBundle::Expected::Positive;
  bundle.congruence = po22_congruence();
  bundle.tol_override = coarse_dedupe();
  return bundle;
}

}  // namespace

ExampleBundle bad_cyclic_fixture(int p, int q, double lambda) {
  if (std::min(p, q) < 2)
    throw std::invalid_argument("bad_cyclic_fixture: need two positive and two negative directions");
  if (!(lambda > 1)) throw std::invalid_argument("bad_cyclic_fixture: lambda must exceed 1");
  const int n = p + q;
  const double c = 0.5 * (lambda + 1.0 / lambda);
  const double s = 0.5 * (lambda - 1.0 / lambda);

  MatrixXd g = MatrixXd::Identity(n, n);
  // two boost blocks sharing the eigenvalue: top eigenspace is 2-dimensional
  g(0, 0) = c; g(0, p) = s; g(p, 0) = s; g(p, p) = c;
  g(1, 1) = c; g(1, p + 1) = s; g(p + 1, 1) = s; g(p + 1, p + 1) = c;

  VectorXd u1 = VectorXd::Zero(n), u2 = VectorXd::Zero(n);
  u1[0] = u1[p] = 1.0;
  u2[1] = u2[p + 1] = 1.0;

  std::vector<std::pair<std::string, MatrixXd>> gens;
  gens.emplace_back("g", std::move(g));

  ExampleBundle bundle{
      "bad-cyclic-" + std::to_string(p) + std::to_string(q),
      "one isometry whose top eigenvalue has a 2-dimensional eigenspace meeting the null quadric "
      "in a segment; nothing is proximal",
      GroupRep(QuadraticSpace::standard(p, q), std::move(gens))};
  bundle.expected = ExampleBundle::Expected::Empty;
  bundle.probe_points = {std::move(u1), std::move(u2)};
  return bundle;
}

std::vector<std::string> example_names() {
  return {"pentagon",  "square",       "complete",     "schottky-o21",
          "qf-o31",    "qf-o22",       "hitchin-3",    "hitchin-5",
          "mixed-po22", "factor1-po22", "factor2-po22", "bad-cyclic-22"};
}

ExampleBundle make_example(const std::string& name) {
  if (name == "pentagon") {
    CoxeterSpec spec = pentagon_spec();
    ExampleBundle bundle{
        "pentagon",
        "right-angled pentagon reflection group with free-pair weight 21/20 in signature (4,1)",
        group_rep(build_reflections(spec))};
    bundle.expected = ExampleBundle::Expected::Negative;
    bundle.coxeter = std::move(spec);
    return bundle;
  }
  if (name == "square") {
    CoxeterSpec spec = square_spec();
    ExampleBundle bundle{
        "square",
        "4-cycle commutation graph: two commuting infinite dihedral factors, the forbidden square",
        group_rep(build_reflections(spec))};
    bundle.expected = ExampleBundle::Expected::Empty;
    bundle.expected_abort = "condition1";
    bundle.coxeter = std::move(spec);
    return bundle;
  }
  if (name == "complete") {
    CoxeterSpec spec = complete_spec();
    ExampleBundle bundle{"complete",
                         "complete commutation graph: the finite group (Z/2)^4, no dynamics",
                         group_rep(build_reflections(spec))};
    bundle.expected = ExampleBundle::Expected::Empty;
    bundle.expected_abort = "infinite";
    bundle.coxeter = std::move(spec);
    return bundle;
  }
  if (name == "schottky-o21") {
    ExampleBundle bundle{"schottky-o21",
                         "free two-generator Fuchsian group of boosts with disjoint axes",
                         canonical_schottky()};
    bundle.expected = ExampleBundle::Expected::Negative;
    bundle.tol_override = coarse_dedupe();
    return bundle;
  }
  if (name == "qf-o31") {
    ExampleBundle bundle{"qf-o31", "the Fuchsian Schottky group embedded block-diagonally into "
                                   "signature (3,1)",
                         block_embed(canonical_schottky(), 3, 1)};
    bundle.expected = ExampleBundle::Expected::Negative;
    bundle.tol_override = coarse_dedupe();
    return bundle;
  }
  if (name == "qf-o22") {
    ExampleBundle bundle{"qf-o22", "the Fuchsian Schottky group embedded block-diagonally into "
                                   "signature (2,2)",
                         block_embed(canonical_schottky(), 2, 2)};
    bundle.expected = ExampleBundle::Expected::Negative;
    bundle.tol_override = coarse_dedupe();
    return bundle;
  }
  if (name == "hitchin-3") return hitchin_fixture(3);
  if (name == "hitchin-5") return hitchin_fixture(5);
  if (name == "mixed-po22") return mixed_sign_fixture();
  if (name == "factor1-po22") return diagonal_po22_factor(1);
  if (name == "factor2-po22") return diagonal_po22_factor(2);
  if (name == "bad-cyclic-22") return bad_cyclic_fixture(2, 2, 2.0);

  std::string known;
  for (const std::string& s : example_names()) known += (known.empty() ? "" : ", ") + s;
  throw std::invalid_argument("unknown example '" + name + "'; known examples: " + known);
}

}  // namespace hpq
