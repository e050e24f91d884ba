#include "hpq/pipeline.hpp"

#include <algorithm>
#include <utility>

#include "hpq/projective_convex.hpp"

namespace hpq {

namespace {

void echo_config(CertReport& r, const RunOptions& opt) {
  r.source = opt.source_name;
  r.depth = opt.depth;
  r.element_cap = opt.element_cap;
  r.triple_samples = opt.triple_samples;
  r.seed = opt.seed;
  r.tol = opt.tol;
}

}  // namespace

PipelineResult run_pipeline(const GroupRep& rep, const RunOptions& opt) {
  PipelineResult res;
  CertReport& r = res.report;
  echo_config(r, opt);

  const QuadraticSpace& space = rep.space();
  r.p = space.p();
  r.q = space.q();
  r.dim = rep.dim();
  r.generator_count = static_cast<int>(rep.generators().size());
  r.gram_signature = signature(space.gram(), opt.tol.tol_degenerate);
  res.space = space;

  res.sample = sample_limit_set(rep, opt.depth, opt.element_cap, opt.tol);
  r.sample_stats = res.sample.stats;
  r.point_count = static_cast<long long>(res.sample.points.size());

  const auto& pts = res.sample.points;
  if (pts.empty()) {
    r.verdict = "Empty";
    r.notes.push_back("no proximal limit points found; sign verdict is empty");
  } else if (pts.size() == 1) {
    r.verdict = to_string(SignVerdict::Negative);
    r.ambiguous_small_set = true;
    r.notes.push_back(
        "only one limit point; pairwise sign conditions are vacuous");
  } else {
    CertifyResult cert = certify_sign(space, pts, opt.tol);
    r.verdict = to_string(cert.verdict);
    r.ambiguous_small_set = cert.ambiguous_small_set;
    r.negative_witness = cert.negative_witness;
    r.positive_witness = cert.positive_witness;
    r.degenerate_pair = cert.degenerate_pair;
    res.certify = std::move(cert);

    if (pts.size() >= 3) {
      ScanResult scan = sign_constancy_scan(space, pts, opt.triple_samples,
                                            opt.seed, opt.exhaustive_cap,
                                            opt.tol);
      r.scan_ran = true;
      r.scan_verdict = to_string(scan.verdict);
      r.scan_triples = scan.triples_evaluated;
      r.scan_exhaustive = scan.exhaustive;
      if (r.negative_witness[0] < 0) r.negative_witness = scan.negative_witness;
      if (r.positive_witness[0] < 0) r.positive_witness = scan.positive_witness;
    }

    TransversalityReport margin = transversality_margin(space, pts);
    r.margin_ran = true;
    r.min_margin = margin.min_margin;
    r.argmin_pair = margin.argmin;

    Rng probe_rng(opt.seed + 1);
    SegmentProbeResult probe = boundary_segment_probe(
        space, pts, {}, opt.probe_pairs, probe_rng, opt.tol);
    r.probe_ran = true;
    r.max_null_arc = probe.max_null_arc;
    r.probe_argmax = probe.argmax;
    r.pairs_probed = probe.pairs_probed;
  }

  r.gap_ran = true;
  r.gap = anosov_gap_diagnostic(rep, opt.depth, opt.gap_per_length,
                                opt.seed + 2, opt.element_cap, opt.tol);
  return res;
}

PipelineResult coxeter_pipeline(const CoxeterSpec& spec,
                                const RunOptions& opt) {
  spec.validate();
  HypothesesReport hyp = check_group_hypotheses(spec);
  if (!hyp.all()) {
    PipelineResult res;
    CertReport& r = res.report;
    echo_config(r, opt);
    r.dim = spec.n;
    r.generator_count = spec.n;
    r.gram_signature = signature(build_gram(spec), opt.tol.tol_degenerate);
    r.p = r.gram_signature.p;
    r.q = r.gram_signature.q;
    r.hypotheses = hyp;
    r.abort_reason = hyp.first_failure();
    r.verdict = "Aborted";
    r.notes.push_back("run aborted: hypothesis '" + r.abort_reason +
                      "' does not hold for this reflection system");
    return res;
  }

  VinbergRep vrep = build_reflections(spec, opt.tol);
  GroupRep grep = group_rep(vrep, opt.tol);
  PipelineResult res = run_pipeline(grep, opt);
  res.report.hypotheses = hyp;

  SigmaSample sigma =
      sample_sigma(vrep, opt.sigma_want, opt.seed + 3, 1000000, opt.tol);
  res.report.sigma_ran = true;
  res.report.sigma_kept = static_cast<long long>(sigma.members.size());
  res.report.sigma_attempts = sigma.attempts;
  res.report.sigma_max_self_pairing = sigma.max_self_pairing;

  res.report.dihedral_ran = true;
  res.report.dihedral_all_proximal = true;
  for (int i = 0; i < spec.n; ++i) {
    for (int j = i + 1; j < spec.n; ++j) {
      if (spec.m(i, j) != CoxeterSpec::kFree) continue;
      const MatrixXd prod = vrep.reflections[i] * vrep.reflections[j];
      auto prox = is_proximal(vrep.space, prod, opt.tol);
      const std::string label = spec.labels[i] + "*" + spec.labels[j];
      res.report.dihedral_gaps.emplace_back(label,
                                            prox ? prox->gap_ratio : 0.0);
      if (!prox) res.report.dihedral_all_proximal = false;
    }
  }
  return res;
}

PipelineResult example_pipeline(const ExampleBundle& bundle, RunOptions opt) {
  if (opt.source_name.empty()) opt.source_name = bundle.name;
  PipelineResult res = bundle.coxeter
                           ? coxeter_pipeline(*bundle.coxeter, opt)
                           : run_pipeline(bundle.rep, opt);
  res.report.notes.insert(res.report.notes.begin(), bundle.description);

  if (!bundle.probe_points.empty() && res.space) {
    double max_arc = 0.0;
    long long pairs = 0;
    for (std::size_t i = 0; i < bundle.probe_points.size(); ++i) {
      for (std::size_t j = i + 1; j < bundle.probe_points.size(); ++j) {
        max_arc = std::max(
            max_arc, null_arc_on_segment(*res.space, bundle.probe_points[i],
                                         bundle.probe_points[j], opt.tol));
        ++pairs;
      }
    }
    res.report.probe_ran = true;
    res.report.pairs_probed += pairs;
    if (max_arc > res.report.max_null_arc) {
      res.report.max_null_arc = max_arc;
      res.report.probe_argmax = {-1, -1};
    }
    res.report.notes.push_back("segment probe includes " +
                               std::to_string(pairs) +
                               " targeted direction pair(s)");
  }
  return res;
}

}  // namespace hpq
