#pragma once

// Aggregated outcome of a certification run: identification of the space and
// group, limit-set sampling statistics, the sign verdict with witnesses,
// convexity probes, and the heuristic gap table. Serializes to JSON with a
// fixed field order so identical runs produce byte-identical reports apart
// from the timestamp.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpq/coxeter.hpp"
#include "hpq/pq_form.hpp"
#include "hpq/proximal.hpp"
#include "hpq/tolerances.hpp"

#include <json.hpp>

namespace hpq {

struct CertReport {
  static constexpr int kSchemaVersion = 1;

  // identification
  std::string source;
  int p = 0, q = 0, dim = 0;
  int generator_count = 0;
  Signature gram_signature;
  std::optional<HypothesesReport> hypotheses;
  std::string abort_reason;  // nonempty when the run stopped at a failed hypothesis

  // config echo
  int depth = 0;
  long long element_cap = 0;
  int triple_samples = 0;
  std::uint64_t seed = 0;
  Tolerances tol;

  // limit set
  SampleStats sample_stats;
  int point_count = 0;

  // verdict
  std::string verdict;  // Negative / Positive / Mixed / Degenerate / Empty / Aborted
  bool ambiguous_small_set = false;
  std::array<int, 3> negative_witness{-1, -1, -1};
  std::array<int, 3> positive_witness{-1, -1, -1};
  std::array<int, 2> degenerate_pair{-1, -1};
  bool scan_ran = false;
  std::string scan_verdict;
  long long scan_triples = 0;
  bool scan_exhaustive = false;

  // transversality
  bool margin_ran = false;
  double min_margin = 0.0;
  std::array<int, 2> argmin_pair{-1, -1};

  // segment probe
  bool probe_ran = false;
  double max_null_arc = 0.0;
  std::array<int, 2> probe_argmax{-1, -1};
  int pairs_probed = 0;

  // gap growth diagnostic
  bool gap_ran = false;
  GapDiagnostic gap;

  // reflection-group extras
  bool sigma_ran = false;
  int sigma_kept = 0;
  long long sigma_attempts = 0;
  double sigma_max_self_pairing = 0.0;
  bool dihedral_ran = false;
  bool dihedral_all_proximal = true;
  std::vector<std::pair<std::string, double>> dihedral_gaps;  // product label -> gap ratio

  std::vector<std::string> notes;
  std::string plot_path;
  bool plot_emitted = false;
};

// Stable-field-order JSON; the timestamp is the only run-to-run varying field
// and can be omitted for diffing.
nlohmann::ordered_json report_to_json(const CertReport& report, bool include_timestamp = true);

// Pretty-printed JSON document terminated by a newline.
std::string render_report(const CertReport& report, bool include_timestamp = true);

}  // namespace hpq
