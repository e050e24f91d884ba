#pragma once

// Proximal dynamics of a finitely generated matrix group preserving the form:
// word enumeration, proximality tests with attracting / repelling data, limit
// set sampling on the null quadric, and the (heuristic) eigenvalue-gap growth
// diagnostic.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hpq/pq_form.hpp"
#include "hpq/rng.hpp"
#include "hpq/tolerances.hpp"

namespace hpq {

struct Generator {
  std::string label;
  MatrixXd mat;
  MatrixXd inv;  // form inverse G^{-1} g^T G, exact for form-preserving g
  bool involutive = false;
};

// A finitely generated subgroup of the isometries of the form, given by
// labeled generators. Construction validates that every generator preserves
// the form to within form_residual_rel (relative to the gram scale) and that
// labels are nonempty and distinct.
class GroupRep {
 public:
  GroupRep(QuadraticSpace space, std::vector<std::pair<std::string, MatrixXd>> generators,
           const Tolerances& tol = {});

  const QuadraticSpace& space() const { return space_; }
  const std::vector<Generator>& generators() const { return gens_; }
  int dim() const { return space_.dim(); }

 private:
  QuadraticSpace space_;
  std::vector<Generator> gens_;
};

struct ProximalData {
  double top_modulus = 0.0;
  double gap_ratio = 0.0;       // top modulus over second modulus
  ProjectivePoint attracting;   // unit eigenvector, first nonzero coordinate positive
  double fixed_residual = 0.0;  // angular distance between g.xi and xi
};

// A matrix is proximal when its largest eigenvalue modulus is attained by a
// single real eigenvalue and exceeds the second modulus by a factor
// > 1 + tol_proximal. Returns the attracting data, or nullopt. The reported
// eigenvector is validated to be fixed within 1e-8 angular distance
// (NumericalError otherwise).
std::optional<ProximalData> is_proximal(const QuadraticSpace& space, const MatrixXd& g,
                                        const Tolerances& tol = {});

struct RepellingData {
  ProximalData attracting;     // of g
  ProximalData repelling;      // of g^{-1}
  VectorXd hyperplane_normal;  // form-dual of the repelling point, unit norm
  double pairing_margin = 0.0; // |<xi+, xi->|; zero would break attract/repel transversality
};

// Attracting and repelling fixed data of a biproximal matrix. Errors
// (invalid_argument) when g or its inverse is not proximal.
RepellingData repelling_data(const QuadraticSpace& space, const MatrixXd& g,
                             const Tolerances& tol = {});

struct Word {
  std::string label;  // letters joined with '*'; inverse letters carry a trailing '
  MatrixXd mat;
  int length = 0;
};

enum class Dedupe { Matrix, None };

struct Enumeration {
  std::vector<Word> words;
  bool truncated = false;
};

// Breadth-first reduced words of length 1..max_length: no letter followed by
// its inverse, and no repeated letter for involutive generators. With
// Dedupe::Matrix, words are kept (and expanded) only when their matrix is new
// on a 1e-9-quantized grid, so the output enumerates distinct group elements
// (identity excluded). Stops at element_cap words with truncated = true.
Enumeration enumerate_words(const GroupRep& rep, int max_length, Dedupe dedupe = Dedupe::Matrix,
                            long long element_cap = 200000);

struct SampleStats {
  long long words_tested = 0;
  long long proximal_count = 0;
  double proximal_fraction = 0.0;
  double mean_gap = 0.0;           // mean gap ratio over proximal words
  double max_null_residual = 0.0;  // max |<x,x>| over kept unit lifts
  std::vector<int> points_by_length;
  long long dropped_nonnull = 0;   // attracting points rejected as non-null
  long long dropped_unverified = 0;  // words whose eigenvector failed validation
  bool truncated = false;
  bool empty = false;              // no proximal element found at this depth
};

struct LimitSample {
  std::vector<ProjectivePoint> points;
  SampleStats stats;
};

// Attracting fixed points of all proximal elements up to the given word
// length, deduplicated at angular radius dedupe_radius. Points failing the
// null check are dropped and counted, never silently kept. An output with
// stats.empty set is the distinguished "no proximal dynamics seen" outcome.
LimitSample sample_limit_set(const GroupRep& rep, int max_length, long long element_cap = 200000,
                             const Tolerances& tol = {});

struct GapRow {
  int length = 0;
  double min_log_gap = 0.0;        // over proximal sampled words; 0 when none is proximal
  double proximal_fraction = 0.0;  // of the sampled words at this length
  int sampled = 0;
};

// Empirical eigenvalue-gap growth: a positive fitted slope of min log gap
// against word length is a *heuristic* proxy for uniform expansion, not a
// certificate, and every report derived from it says so. The minimum is taken
// over proximal words only — torsion and other non-proximal words have gap
// ratio 1 at every other length and would pin the raw minimum at zero.
struct GapDiagnostic {
  std::vector<GapRow> rows;
  double fitted_slope = 0.0;  // least squares over rows containing proximal words
  bool heuristic = true;
};

GapDiagnostic anosov_gap_diagnostic(const GroupRep& rep, int max_length, int per_length_cap = 400,
                                    std::uint64_t seed = 0, long long element_cap = 200000,
                                    const Tolerances& tol = {});

}  // namespace hpq
