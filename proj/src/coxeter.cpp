#include "hpq/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "hpq/rng.hpp"

namespace hpq {

CoxeterSpec::CoxeterSpec(int n_, Rat default_alpha) : n(n_) {
  if (n < 1) throw std::invalid_argument("CoxeterSpec: need at least one generator");
  m = Eigen::MatrixXi::Constant(n, n, kFree);
  m.diagonal().setOnes();
  alpha.assign(n, std::vector<Rat>(n, default_alpha));
  labels.resize(n);
  for (int i = 0; i < n; ++i) labels[i] = "s" + std::to_string(i + 1);
}

void CoxeterSpec::set_commute(int i, int j) {
  if (i == j) throw std::invalid_argument("CoxeterSpec: diagonal entries are fixed");
  m(i, j) = m(j, i) = kCommute;
}

void CoxeterSpec::set_free(int i, int j, Rat a) {
  if (i == j) throw std::invalid_argument("CoxeterSpec: diagonal entries are fixed");
  m(i, j) = m(j, i) = kFree;
  alpha[i][j] = a;
  alpha[j][i] = std::move(a);
}

void CoxeterSpec::validate() const {
  if (n < 1 || m.rows() != n || m.cols() != n || static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("CoxeterSpec: inconsistent sizes");
  for (int i = 0; i < n; ++i) {
    if (labels[i].empty()) throw std::invalid_argument("CoxeterSpec: empty generator label");
    for (int j = i + 1; j < n; ++j)
      if (labels[i] == labels[j])
        throw std::invalid_argument("CoxeterSpec: duplicate label '" + labels[i] + "'");
  }
  for (int i = 0; i < n; ++i) {
    if (m(i, i) != 1) throw std::invalid_argument("CoxeterSpec: diagonal labels must be 1");
    for (int j = 0; j < n; ++j) {
      if (m(i, j) != m(j, i)) throw std::invalid_argument("CoxeterSpec: label matrix not symmetric");
      if (i != j && m(i, j) != kCommute && m(i, j) != kFree)
        throw std::invalid_argument("CoxeterSpec: pair labels must be commuting or free");
      if (i != j && m(i, j) == kFree) {
        if (alpha[i][j] != alpha[j][i])
          throw std::invalid_argument("CoxeterSpec: weights not symmetric");
        if (alpha[i][j] < 1) throw std::invalid_argument("CoxeterSpec: weights must be >= 1");
      }
    }
  }
}

MatrixXd build_gram(const CoxeterSpec& spec) { return build_gram_exact(spec).to_double(); }

RatMat build_gram_exact(const CoxeterSpec& spec) {
  spec.validate();
  RatMat b(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i) {
    b(i, i) = 1;
    for (int j = 0; j < spec.n; ++j) {
      if (i == j) continue;
      b(i, j) = spec.m(i, j) == CoxeterSpec::kCommute ? Rat(0) : -spec.alpha[i][j];
    }
  }
  return b;
}

std::vector<RatMat> build_reflections_exact(const CoxeterSpec& spec) {
  const RatMat b = build_gram_exact(spec);
  std::vector<RatMat> out;
  out.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    RatMat r = RatMat::identity(spec.n);
    for (int j = 0; j < spec.n; ++j) r(i, j) -= 2 * b(i, j);
    out.push_back(std::move(r));
  }
  return out;
}

CoxeterSpec perturb_to_nondegenerate(const CoxeterSpec& spec, double eps, std::uint64_t seed,
                                     const Tolerances& tol) {
  if (!(eps > 0)) throw std::invalid_argument("perturb_to_nondegenerate: eps must be positive");
  if (signature(build_gram(spec), tol.tol_degenerate).r == 0)
    throw std::invalid_argument(
        "perturb_to_nondegenerate: the matrix is already nondegenerate");

  const Rat eps_r(static_cast<long long>(std::llround(eps * 1e6)), 1000000ll);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    CoxeterSpec jittered = spec;
    for (int i = 0; i < spec.n; ++i)
      for (int j = i + 1; j < spec.n; ++j) {
        if (spec.m(i, j) != CoxeterSpec::kFree) continue;
        // upward jitter keeps weights exact and strictly above their floor
        const Rat delta = eps_r * Rat(1 + static_cast<long long>(uniform_below(rng, 1000)), 1000ll);
        jittered.alpha[i][j] += delta;
        jittered.alpha[j][i] = jittered.alpha[i][j];
      }
    if (signature(build_gram(jittered), tol.tol_degenerate).r == 0) return jittered;
  }
  throw NumericalError("perturb_to_nondegenerate: still degenerate after 20 retries");
}

VinbergRep build_reflections(const CoxeterSpec& spec, const Tolerances& tol) {
  RatMat b_exact = build_gram_exact(spec);
  const MatrixXd b = b_exact.to_double();
  if (signature(b, tol.tol_degenerate).r != 0)
    throw std::invalid_argument(
        "build_reflections: degenerate gram matrix; perturb_to_nondegenerate first");
  std::vector<RatMat> refl_exact = build_reflections_exact(spec);
  std::vector<MatrixXd> refl;
  refl.reserve(spec.n);
  for (const RatMat& r : refl_exact) refl.push_back(r.to_double());
  return VinbergRep{spec, QuadraticSpace::from_gram(b, tol), std::move(refl),
                    std::move(b_exact), std::move(refl_exact)};
}

GroupRep group_rep(const VinbergRep& rep, const Tolerances& tol) {
  std::vector<std::pair<std::string, MatrixXd>> gens;
  gens.reserve(rep.n());
  for (int i = 0; i < rep.n(); ++i) gens.emplace_back(rep.spec.labels[i], rep.reflections[i]);
  return GroupRep(rep.space, std::move(gens), tol);
}

SquareCheck check_no_empty_square(const CoxeterSpec& spec) {
  spec.validate();
  if (spec.n > 64) throw std::invalid_argument("check_no_empty_square: more than 64 generators");
  const auto commute = [&](int a, int b) { return spec.m(a, b) == CoxeterSpec::kCommute; };
  const auto free_pair = [&](int a, int b) { return spec.m(a, b) == CoxeterSpec::kFree; };
  const int n = spec.n;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      if (i2 == i1 || !commute(i1, i2)) continue;
      for (int i3 = 0; i3 < n; ++i3) {
        if (i3 == i1 || i3 == i2 || !free_pair(i1, i3) || !commute(i2, i3)) continue;
        for (int i4 = 0; i4 < n; ++i4) {
          if (i4 == i1 || i4 == i2 || i4 == i3) continue;
          if (free_pair(i2, i4) && commute(i3, i4) && commute(i4, i1))
            return SquareCheck{false, {i1, i2, i3, i4}};
        }
      }
    }
  return SquareCheck{};
}

bool disjoint_commuting_infinite_pair_bruteforce(const CoxeterSpec& spec) {
  spec.validate();
  if (spec.n > 12)
    throw std::invalid_argument("disjoint_commuting_infinite_pair_bruteforce: n too large");
  const int n = spec.n;
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;

  std::vector<int> side(n);  // 0 = neither, 1 = first subset, 2 = second subset
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) {
      side[i] = static_cast<int>(c % 3);
      c /= 3;
    }
    // a right-angled special subgroup is infinite iff it contains a free pair
    bool inf1 = false, inf2 = false, cross_ok = true;
    for (int i = 0; i < n && cross_ok; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (side[i] == 0 || side[j] == 0) continue;
        if (side[i] != side[j]) {
          if (spec.m(i, j) != CoxeterSpec::kCommute) {
            cross_ok = false;
            break;
          }
        } else if (spec.m(i, j) == CoxeterSpec::kFree) {
          (side[i] == 1 ? inf1 : inf2) = true;
        }
      }
    if (cross_ok && inf1 && inf2) return true;
  }
  return false;
}

const char* HypothesesReport::first_failure() const {
  if (!infinite) return "infinite";
  if (!condition1) return "condition1";
  if (!irreducible) return "irreducible";
  if (!condition2) return "condition2";
  return nullptr;
}

HypothesesReport check_group_hypotheses(const CoxeterSpec& spec) {
  spec.validate();
  HypothesesReport rep;
  const int n = spec.n;

  rep.infinite = (spec.m.array() == CoxeterSpec::kFree).any();

  // connectivity of the non-commutation graph
  std::vector<int> stack{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w)
      if (w != v && !seen[w] && spec.m(v, w) == CoxeterSpec::kFree) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  rep.irreducible = reached == n;

  const SquareCheck sq = check_no_empty_square(spec);
  rep.condition1 = sq.hyperbolic;
  rep.square_witness = sq.witness;

  rep.condition2 = true;
  for (int i = 0; i < n && rep.condition2; ++i)
    for (int j = i + 1; j < n; ++j)
      if (spec.m(i, j) == CoxeterSpec::kFree && !(spec.alpha[i][j] > 1)) {
        rep.condition2 = false;
        break;
      }
  return rep;
}

bool fundamental_cone_membership(const VinbergRep& rep, const VectorXd& v, const Tolerances& tol) {
  return (rep.space.gram() * v).maxCoeff() <= tol.tol_membership;
}

VectorXd interior_cone_point(const VinbergRep& rep) {
  return rep.space.gram().partialPivLu().solve(VectorXd::Constant(rep.n(), -1.0));
}

bool sigma_membership(const VinbergRep& rep, const VectorXd& v, const Tolerances& tol) {
  if (v.minCoeff() < -tol.tol_membership) return false;
  return fundamental_cone_membership(rep, v, tol);
}

SigmaSample sample_sigma(const VinbergRep& rep, int want, std::uint64_t seed,
                         long long attempt_cap, const Tolerances& tol) {
  (void)tol;
  SigmaSample out;
  out.max_self_pairing = -std::numeric_limits<double>::infinity();
  Rng rng(seed);
  const int n = rep.n();
  while (static_cast<int>(out.members.size()) < want && out.attempts < attempt_cap) {
    ++out.attempts;
    VectorXd t(n);
    for (int i = 0; i < n; ++i) {
      double u = uniform01(rng);
      while (u <= 0.0) u = uniform01(rng);
      t[i] = -std::log(u);
    }
    t /= t.sum();  // uniform on the coordinate simplex, hence nonzero
    if ((rep.space.gram() * t).maxCoeff() > 0.0) continue;
    out.max_self_pairing = std::max(out.max_self_pairing, rep.space.pairing(t, t));
    out.members.push_back(std::move(t));
  }
  return out;
}

}  // namespace hpq
