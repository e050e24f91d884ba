#include "hpq/report.hpp"

#include <ctime>

namespace hpq {

namespace {

using nlohmann::ordered_json;

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json tol_json(const Tolerances& t) {
  return ordered_json{{"tol_null", t.tol_null},
                      {"tol_sign", t.tol_sign},
                      {"tol_degenerate", t.tol_degenerate},
                      {"dedupe_radius", t.dedupe_radius},
                      {"tol_proximal", t.tol_proximal},
                      {"tol_membership", t.tol_membership},
                      {"form_residual_rel", t.form_residual_rel}};
}

}  // namespace

nlohmann::ordered_json report_to_json(const CertReport& r, bool include_timestamp) {
  ordered_json j;
  j["schema_version"] = CertReport::kSchemaVersion;
  if (include_timestamp) j["timestamp_utc"] = utc_now();
  j["source"] = r.source;

  j["config"] = ordered_json{{"depth", r.depth},
                             {"element_cap", r.element_cap},
                             {"triple_samples", r.triple_samples},
                             {"seed", r.seed},
                             {"tolerances", tol_json(r.tol)}};

  ordered_json ident;
  ident["p"] = r.p;
  ident["q"] = r.q;
  ident["dim"] = r.dim;
  ident["generators"] = r.generator_count;
  ident["gram_signature"] = {r.gram_signature.p, r.gram_signature.q, r.gram_signature.r};
  if (r.hypotheses) {
    ordered_json h;
    h["infinite"] = r.hypotheses->infinite;
    h["irreducible"] = r.hypotheses->irreducible;
    h["condition1"] = r.hypotheses->condition1;
    h["condition2"] = r.hypotheses->condition2;
    if (r.hypotheses->square_witness[0] >= 0)
      h["square_witness"] = r.hypotheses->square_witness;
    ident["hypotheses"] = std::move(h);
  }
  if (!r.abort_reason.empty()) ident["abort_reason"] = r.abort_reason;
  j["identification"] = std::move(ident);

  ordered_json ls;
  ls["point_count"] = r.point_count;
  ls["words_tested"] = r.sample_stats.words_tested;
  ls["proximal_count"] = r.sample_stats.proximal_count;
  ls["proximal_fraction"] = r.sample_stats.proximal_fraction;
  ls["mean_gap_ratio"] = r.sample_stats.mean_gap;
  ls["max_null_residual"] = r.sample_stats.max_null_residual;
  ordered_json by_len = ordered_json::object();
  for (size_t len = 1; len < r.sample_stats.points_by_length.size(); ++len)
    by_len[std::to_string(len)] = r.sample_stats.points_by_length[len];
  ls["count_by_length"] = std::move(by_len);
  ls["dropped_nonnull"] = r.sample_stats.dropped_nonnull;
  ls["dropped_unverified"] = r.sample_stats.dropped_unverified;
  ls["truncated"] = r.sample_stats.truncated;
  ls["empty"] = r.sample_stats.empty;
  j["limit_set"] = std::move(ls);

  ordered_json v;
  v["sign"] = r.verdict;
  v["ambiguous_small_set"] = r.ambiguous_small_set;
  if (r.negative_witness[0] >= 0) v["negative_witness"] = r.negative_witness;
  if (r.positive_witness[0] >= 0) v["positive_witness"] = r.positive_witness;
  if (r.degenerate_pair[0] >= 0) v["degenerate_pair"] = r.degenerate_pair;
  if (r.scan_ran) {
    v["scan"] = ordered_json{{"verdict", r.scan_verdict},
                             {"triples_evaluated", r.scan_triples},
                             {"exhaustive", r.scan_exhaustive}};
  }
  j["verdict"] = std::move(v);

  if (r.margin_ran) {
    j["transversality"] =
        ordered_json{{"min_margin", r.min_margin}, {"argmin_pair", r.argmin_pair}};
  }
  if (r.probe_ran) {
    ordered_json sp;
    sp["max_null_arc"] = r.max_null_arc;
    sp["pairs_probed"] = r.pairs_probed;
    if (r.probe_argmax[0] >= 0) sp["argmax_pair"] = r.probe_argmax;
    j["segment_probe"] = std::move(sp);
  }
  if (r.gap_ran) {
    ordered_json g;
    g["heuristic"] = r.gap.heuristic;
    g["note"] =
        "gap ratios compare the top two eigenvalue moduli (not singular values); a positive "
        "slope is empirical evidence, not a certificate";
    g["fitted_slope"] = r.gap.fitted_slope;
    ordered_json rows = ordered_json::array();
    for (const GapRow& row : r.gap.rows)
      rows.push_back(ordered_json{{"length", row.length},
                                  {"min_log_gap", row.min_log_gap},
                                  {"proximal_fraction", row.proximal_fraction},
                                  {"sampled", row.sampled}});
    g["per_length"] = std::move(rows);
    j["anosov_gap"] = std::move(g);
  }
  if (r.sigma_ran) {
    j["sigma_samples"] = ordered_json{{"kept", r.sigma_kept},
                                      {"attempts", r.sigma_attempts},
                                      {"max_self_pairing", r.sigma_max_self_pairing}};
  }
  if (r.dihedral_ran) {
    ordered_json d;
    d["all_proximal"] = r.dihedral_all_proximal;
    ordered_json prods = ordered_json::array();
    for (const auto& [label, gap] : r.dihedral_gaps)
      prods.push_back(ordered_json{{"product", label}, {"gap_ratio", gap}});
    d["products"] = std::move(prods);
    j["dihedral_proximality"] = std::move(d);
  }

  j["notes"] = r.notes;
  j["plot"] = ordered_json{{"path", r.plot_path}, {"emitted", r.plot_emitted}};
  return j;
}

std::string render_report(const CertReport& report, bool include_timestamp) {
  return report_to_json(report, include_timestamp).dump(2) + "\n";
}

}  // namespace hpq
