#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include <hpq/gallery.hpp>
#include <hpq/pq_form.hpp>
#include <hpq/proximal.hpp>

using namespace hpq;

namespace {

MatrixXd rotation_xy(double theta) {
  MatrixXd r = MatrixXd::Identity(3, 3);
  r(0, 0) = std::cos(theta);
  r(0, 1) = -std::sin(theta);
  r(1, 0) = std::sin(theta);
  r(1, 1) = std::cos(theta);
  return r;
}

VectorXd null_direction(double theta) {
  VectorXd v(3);
  v << std::cos(theta), std::sin(theta), 1.0;
  return v.normalized();
}

GroupRep klein_four() {
  MatrixXd r = MatrixXd::Identity(3, 3);
  r(0, 0) = -1;
  MatrixXd s = MatrixXd::Identity(3, 3);
  s(1, 1) = -1;
  return GroupRep(QuadraticSpace::standard(2, 1), {{"r", r}, {"s", s}});
}

GroupRep infinite_dihedral() {
  MatrixXd r1 = MatrixXd::Identity(3, 3);
  r1(0, 0) = -1;
  const MatrixXd rot = rotation_xy(0.7);
  const MatrixXd r2 = rot * r1 * rot.transpose();
  return GroupRep(QuadraticSpace::standard(2, 1), {{"r", r1}, {"s", r2}});
}

}  // namespace

TEST_CASE("GroupRep validates form preservation and labels") {
  const QuadraticSpace space = QuadraticSpace::standard(2, 1);
  MatrixXd stretch = MatrixXd::Identity(3, 3);
  stretch(0, 0) = 2.0;
  CHECK_THROWS_AS(GroupRep(space, {{"a", stretch}}), std::invalid_argument);

  const MatrixXd b = boost_along_axis(0.0, M_PI, 1.0);
  CHECK_THROWS_AS(GroupRep(space, {{"a", b}, {"a", b.inverse()}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupRep(space, {{"", b}}), std::invalid_argument);
}

TEST_CASE("GroupRep stores the form inverse and involutivity") {
  const QuadraticSpace space = QuadraticSpace::standard(2, 1);
  const MatrixXd b = boost_along_axis(0.2, 2.0, 1.3);
  MatrixXd reflect = MatrixXd::Identity(3, 3);
  reflect(0, 0) = -1;
  const GroupRep rep(space, {{"b", b}, {"r", reflect}});
  REQUIRE(rep.generators().size() == 2);
  const Generator& gb = rep.generators()[0];
  const Generator& gr = rep.generators()[1];
  CHECK((gb.inv * gb.mat - MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK((gr.inv * gr.mat - MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK_FALSE(gb.involutive);
  CHECK(gr.involutive);
}

TEST_CASE("is_proximal reports the attracting data of a boost") {
  const QuadraticSpace space = QuadraticSpace::standard(2, 1);
  const double t = 1.2;
  const MatrixXd g = boost_along_axis(0.3, 2.0, t);
  const auto pd = is_proximal(space, g);
  REQUIRE(pd.has_value());
  CHECK(pd->top_modulus == doctest::Approx(std::exp(t)).epsilon(1e-9));
  CHECK(pd->gap_ratio == doctest::Approx(std::exp(t)).epsilon(1e-9));
  CHECK(pd->fixed_residual <= 1e-8);
  CHECK(pd->attracting.norm_class == NormClass::Null);
  CHECK(angular_distance(pd->attracting.lift, null_direction(0.3)) < 1e-9);
  // Orientation convention: first nonzero coordinate positive.
  CHECK(pd->attracting.lift[0] > 0.0);
}

TEST_CASE("is_proximal rejects rotations and the identity") {
  const QuadraticSpace space = QuadraticSpace::standard(2, 1);
  CHECK_FALSE(is_proximal(space, rotation_xy(0.7)).has_value());
  CHECK_FALSE(is_proximal(space, MatrixXd::Identity(3, 3)).has_value());
}

TEST_CASE("repelling_data pairs the fixed points of a biproximal boost") {
  const QuadraticSpace space = QuadraticSpace::standard(2, 1);
  const MatrixXd g = boost_along_axis(0.3, 2.0, 1.2);
  const RepellingData rd = repelling_data(space, g);
  CHECK(angular_distance(rd.attracting.attracting.lift, null_direction(0.3)) < 1e-9);
  CHECK(angular_distance(rd.repelling.attracting.lift, null_direction(2.0)) < 1e-9);
  CHECK(rd.hyperplane_normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // |<xi+, xi->| = |cos(1.7) - 1| / 2 for unit circle lifts.
  CHECK(rd.pairing_margin ==
        doctest::Approx(0.5 * (1.0 - std::cos(1.7))).epsilon(1e-9));
  CHECK_THROWS_AS(repelling_data(space, rotation_xy(0.7)), std::invalid_argument);
}

TEST_CASE("enumerate_words counts reduced words of a free group") {
  const GroupRep rep = make_example("schottky-o21").rep;
  const Enumeration en = enumerate_words(rep, 3);
  CHECK_FALSE(en.truncated);
  std::vector<int> by_length(4, 0);
  for (const Word& w : en.words) {
    REQUIRE(w.length >= 1);
    REQUIRE(w.length <= 3);
    ++by_length[w.length];
    CHECK(w.mat.rows() == 3);
  }
  CHECK(by_length[1] == 4);
  CHECK(by_length[2] == 12);   // 4 * 3 reduced two-letter words
  CHECK(by_length[3] == 36);
  for (const Word& w : en.words) {
    if (w.length == 1) {
      const bool known =
          w.label == "a" || w.label == "b" || w.label == "a'" || w.label == "b'";
      CHECK(known);
    } else {
      CHECK(w.label.find('*') != std::string::npos);
    }
  }
}

TEST_CASE("enumerate_words dedupes torsion groups to their element count") {
  const Enumeration klein = enumerate_words(klein_four(), 3);
  CHECK(klein.words.size() == 3);  // r, s, rs
  CHECK_FALSE(klein.truncated);

  const GroupRep dihedral = infinite_dihedral();
  for (const Generator& g : dihedral.generators()) CHECK(g.involutive);
  const Enumeration en = enumerate_words(dihedral, 6);
  CHECK(en.words.size() == 12);  // two alternating words per length
  std::vector<int> by_length(7, 0);
  for (const Word& w : en.words) ++by_length[w.length];
  for (int len = 1; len <= 6; ++len) CHECK(by_length[len] == 2);
}

TEST_CASE("enumerate_words honors the element cap") {
  const GroupRep rep = make_example("schottky-o21").rep;
  const Enumeration en = enumerate_words(rep, 4, Dedupe::Matrix, 5);
  CHECK(en.truncated);
  CHECK(en.words.size() == 5);
}

TEST_CASE("sample_limit_set on a Schottky group is clean and complete") {
  const GroupRep rep = make_example("schottky-o21").rep;
  const LimitSample sample = sample_limit_set(rep, 6);
  CHECK(sample.stats.words_tested == 1456);
  CHECK(sample.stats.proximal_count == 1456);  // every nontrivial element is hyperbolic
  CHECK(sample.stats.proximal_fraction == 1.0);
  CHECK(sample.stats.mean_gap > 1.0);
  CHECK_FALSE(sample.stats.empty);
  CHECK_FALSE(sample.stats.truncated);
  CHECK(sample.stats.dropped_nonnull == 0);
  CHECK(sample.stats.max_null_residual <= Tolerances{}.tol_null);
  REQUIRE(sample.points.size() >= 10);
  const long long counted = std::accumulate(sample.stats.points_by_length.begin(),
                                            sample.stats.points_by_length.end(), 0LL);
  CHECK(counted == static_cast<long long>(sample.points.size()));
  for (const ProjectivePoint& pt : sample.points) {
    CHECK(pt.norm_class == NormClass::Null);
    CHECK(pt.lift.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sample_limit_set reports an empty sample when nothing is proximal") {
  const GroupRep rep = bad_cyclic_fixture(2, 2, 2.0).rep;
  const LimitSample sample = sample_limit_set(rep, 4);
  CHECK(sample.stats.empty);
  CHECK(sample.points.empty());
  CHECK(sample.stats.proximal_count == 0);
  CHECK(sample.stats.words_tested > 0);
}

TEST_CASE("anosov_gap_diagnostic profiles gap growth by word length") {
  const GroupRep rep = make_example("schottky-o21").rep;
  const GapDiagnostic diag = anosov_gap_diagnostic(rep, 5);
  REQUIRE(diag.rows.size() == 5);
  CHECK(diag.heuristic);
  for (int i = 0; i < 5; ++i) {
    const GapRow& row = diag.rows[i];
    CHECK(row.length == i + 1);
    CHECK(row.sampled > 0);
    CHECK(row.proximal_fraction == 1.0);
    CHECK(row.min_log_gap > 0.0);
  }
}
