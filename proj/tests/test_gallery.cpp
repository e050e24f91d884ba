#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <hpq/gallery.hpp>
#include <hpq/pq_form.hpp>
#include <hpq/proximal.hpp>
#include <hpq/rng.hpp>

using namespace hpq;

namespace {

Matrix2d random_sl2(Rng& rng) {
  Matrix2d m;
  double a;
  do {
    a = uniform(rng, -1.5, 1.5);
  } while (std::abs(a) < 0.4);
  const double b = uniform(rng, -1.5, 1.5);
  const double c = uniform(rng, -1.5, 1.5);
  m << a, b, c, (1.0 + b * c) / a;
  return m;
}

}  // namespace

TEST_CASE("the example gallery is complete and constructible") {
  const std::vector<std::string> names = example_names();
  REQUIRE(names.size() == 12);
  for (const std::string& name : names) {
    const ExampleBundle bundle = make_example(name);
    CHECK(bundle.name == name);
    CHECK_FALSE(bundle.description.empty());
    CHECK(bundle.rep.dim() >= 3);
  }
  CHECK_THROWS_AS(make_example("no-such-example"), std::invalid_argument);
}

TEST_CASE("expected outcomes of the canned fixtures") {
  CHECK(make_example("square").expected_abort == "condition1");
  CHECK(make_example("complete").expected_abort == "infinite");
  CHECK(make_example("pentagon").expected_abort.empty());
  CHECK(make_example("pentagon").expected == ExampleBundle::Expected::Negative);
  CHECK(make_example("mixed-po22").expected == ExampleBundle::Expected::Mixed);
  CHECK(make_example("factor1-po22").expected == ExampleBundle::Expected::Positive);
  CHECK(make_example("bad-cyclic-22").expected == ExampleBundle::Expected::Empty);
  CHECK(make_example("pentagon").coxeter.has_value());
  CHECK_FALSE(make_example("schottky-o21").coxeter.has_value());
}

TEST_CASE("boost_along_axis is a form isometry with the advertised spectrum") {
  const MatrixXd g = boost_along_axis(0.4, 2.2, 1.5);
  MatrixXd lorentz = MatrixXd::Identity(3, 3);
  lorentz(2, 2) = -1.0;
  CHECK((g.transpose() * lorentz * g - lorentz).norm() < 1e-12);

  VectorXd axis(3);
  axis << std::cos(0.4), std::sin(0.4), 1.0;
  CHECK((g * axis - std::exp(1.5) * axis).norm() < 1e-9);
  const Eigen::VectorXcd ev = Eigen::EigenSolver<MatrixXd>(g).eigenvalues();
  std::vector<double> mods = {std::abs(ev[0]), std::abs(ev[1]), std::abs(ev[2])};
  std::sort(mods.begin(), mods.end());
  CHECK(mods[0] == doctest::Approx(std::exp(-1.5)).epsilon(1e-9));
  CHECK(mods[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mods[2] == doctest::Approx(std::exp(1.5)).epsilon(1e-9));
}

TEST_CASE("schottky_fuchsian warns about overlapping ping-pong arcs") {
  std::vector<std::string> warnings;
  const GroupRep good = schottky_fuchsian(
      {2.2, 2.2}, {{-0.9, 0.9}, {M_PI - 0.9, M_PI + 0.9}}, &warnings);
  CHECK(good.generators().size() == 2);
  CHECK(warnings.empty());

  // Nearly coincident axes with tiny translation length: the attracting arcs
  // collide.
  schottky_fuchsian({0.05, 0.05}, {{0.0, M_PI}, {0.02, M_PI + 0.02}}, &warnings);
  CHECK_FALSE(warnings.empty());

  CHECK_THROWS_AS(schottky_fuchsian({1.0}, {{0.0, M_PI}}), std::invalid_argument);
}

TEST_CASE("block_embed pads coordinates without disturbing the dynamics") {
  const GroupRep base = make_example("schottky-o21").rep;
  const GroupRep big = block_embed(base, 3, 2);
  CHECK(big.space().sig() == Signature{3, 2, 0});
  REQUIRE(big.generators().size() == base.generators().size());
  for (size_t i = 0; i < base.generators().size(); ++i) {
    const auto pd_base = is_proximal(base.space(), base.generators()[i].mat);
    const auto pd_big = is_proximal(big.space(), big.generators()[i].mat);
    REQUIRE(pd_base.has_value());
    REQUIRE(pd_big.has_value());
    CHECK(pd_big->gap_ratio == doctest::Approx(pd_base->gap_ratio).epsilon(1e-9));
    CHECK(pd_big->top_modulus == doctest::Approx(pd_base->top_modulus).epsilon(1e-9));
  }
  CHECK_THROWS_AS(block_embed(base, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(block_embed(base, 3, 0), std::invalid_argument);
}

TEST_CASE("sym_power acts diagonally on a diagonal element") {
  Matrix2d d;
  d << 2.0, 0.0, 0.0, 0.5;
  const MatrixXd s = sym_power(3, d);
  MatrixXd expected = MatrixXd::Zero(3, 3);
  expected.diagonal() << 4.0, 1.0, 0.25;
  CHECK((s - expected).norm() < 1e-12);
  CHECK(s.determinant() == doctest::Approx(1.0).epsilon(1e-12));

  Matrix2d bad;
  bad << 2.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(sym_power(3, bad), std::invalid_argument);
  CHECK_THROWS_AS(sym_power(0, d), std::invalid_argument);
}

TEST_CASE("sym_power_form is the invariant pairing of the lift") {
  const MatrixXd f = sym_power_form(3);
  MatrixXd expected = MatrixXd::Zero(3, 3);
  expected(0, 2) = -1.0;
  expected(1, 1) = 0.5;
  expected(2, 0) = -1.0;
  CHECK((f - expected).norm() == 0.0);
  CHECK((f - f.transpose()).norm() == 0.0);

  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    for (const int n : {3, 5, 7}) {
      const MatrixXd form = sym_power_form(n);
      const MatrixXd g = sym_power(n, random_sl2(rng));
      CHECK((g.transpose() * form * g - form).norm() < 1e-9 * form.norm() * g.norm() * g.norm());
    }
  }
  CHECK_THROWS_AS(sym_power_form(1), std::invalid_argument);
}

TEST_CASE("sym_power is a homomorphism") {
  Rng rng(22);
  for (int trial = 0; trial < 25; ++trial) {
    const Matrix2d g = random_sl2(rng);
    const Matrix2d h = random_sl2(rng);
    const MatrixXd lhs = sym_power(5, Matrix2d(g * h));
    const MatrixXd rhs = sym_power(5, g) * sym_power(5, h);
    CHECK((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("po22_pair preserves the determinant form and composes") {
  const MatrixXd f = po22_form();
  CHECK(signature(f) == Signature{2, 2, 0});

  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const Matrix2d g1 = random_sl2(rng), h1 = random_sl2(rng);
    const Matrix2d g2 = random_sl2(rng), h2 = random_sl2(rng);
    const MatrixXd p1 = po22_pair(g1, h1);
    CHECK((p1.transpose() * f * p1 - f).norm() < 1e-10 * (1.0 + p1.norm() * p1.norm()));
    const MatrixXd composed = po22_pair(Matrix2d(g1 * g2), Matrix2d(h1 * h2));
    CHECK((po22_pair(g1, h1) * po22_pair(g2, h2) - composed).norm() <
          1e-10 * (1.0 + composed.norm()));
  }

  Matrix2d bad;
  bad << 2, 0, 0, 1;
  CHECK_THROWS_AS(po22_pair(bad, Matrix2d::Identity()), std::invalid_argument);
}

TEST_CASE("po22_congruence diagonalizes the determinant form exactly") {
  const MatrixXd c = po22_congruence();
  MatrixXd diag = MatrixXd::Zero(4, 4);
  diag.diagonal() << 1, 1, -1, -1;
  CHECK((c.transpose() * po22_form() * c - diag).norm() == 0.0);
  CHECK((c * c.transpose() / 2.0 - MatrixXd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("sl2_hyperbolic has the requested axis and translation length") {
  const double u = 3.0, v = 1.0, t = 1.4;
  const Matrix2d g = sl2_hyperbolic(u, v, t);
  CHECK(g.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::Vector2d fix_u(u, 1.0), fix_v(v, 1.0);
  CHECK((g * fix_u - std::exp(t / 2) * fix_u).norm() < 1e-12);
  CHECK((g * fix_v - std::exp(-t / 2) * fix_v).norm() < 1e-12);
  CHECK_THROWS_AS(sl2_hyperbolic(1.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("hitchin fixtures land in the right signature") {
  const ExampleBundle h3 = hitchin_fixture(3);
  CHECK(h3.rep.space().sig() == Signature{2, 1, 0});
  CHECK(h3.rep.generators().size() == 2);
  CHECK(h3.expected == ExampleBundle::Expected::Negative);
  CHECK(h3.congruence.rows() == 3);

  const ExampleBundle h5 = hitchin_fixture(5);
  CHECK(h5.rep.space().sig() == Signature{2, 3, 0});

  CHECK_THROWS_AS(hitchin_fixture(4), std::invalid_argument);
  CHECK_THROWS_AS(hitchin_fixture(1), std::invalid_argument);
}

TEST_CASE("the bad cyclic fixture rejects unusable parameters") {
  const ExampleBundle bundle = bad_cyclic_fixture(2, 2, 2.0);
  CHECK(bundle.rep.generators().size() == 1);
  REQUIRE(bundle.probe_points.size() == 2);
  // Both probe directions are isotropic and fixed up to scale.
  for (const VectorXd& u : bundle.probe_points) {
    CHECK(bundle.rep.space().pairing(u, u) == doctest::Approx(0.0).epsilon(1e-14));
  }
  const MatrixXd& g = bundle.rep.generators()[0].mat;
  CHECK((g * bundle.probe_points[0] - 2.0 * bundle.probe_points[0]).norm() < 1e-12);
  CHECK_FALSE(is_proximal(bundle.rep.space(), g).has_value());

  CHECK_THROWS_AS(bad_cyclic_fixture(1, 2, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(bad_cyclic_fixture(2, 2, 1.0), std::invalid_argument);
}
