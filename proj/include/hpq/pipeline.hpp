#pragma once

// End-to-end certification runs: sample the limit set, certify signs, probe
// segments and margins, run the gap diagnostic, and aggregate everything into
// a CertReport. Reflection-group runs check the group hypotheses first and
// abort (naming the failed predicate) when they do not hold.

#include <cstdint>
#include <optional>
#include <string>

#include "hpq/coxeter.hpp"
#include "hpq/gallery.hpp"
#include "hpq/pq_form.hpp"
#include "hpq/proximal.hpp"
#include "hpq/report.hpp"
#include "hpq/tolerances.hpp"

namespace hpq {

struct RunOptions {
  int depth = 8;
  long long element_cap = 200000;
  int triple_samples = 2000;
  long long exhaustive_cap = 2000000;
  int probe_pairs = 2000;
  int sigma_want = 500;
  int gap_per_length = 400;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::string source_name;
};

// The report plus the geometric objects a renderer needs (the report alone is
// plain data suitable for serialization).
struct PipelineResult {
  CertReport report;
  std::optional<QuadraticSpace> space;
  LimitSample sample;
  std::optional<CertifyResult> certify;
};

PipelineResult run_pipeline(const GroupRep& rep, const RunOptions& opt);

PipelineResult coxeter_pipeline(const CoxeterSpec& spec, const RunOptions& opt);

// Dispatches on the bundle kind, prepends its description to the notes, and
// adds the bundle's targeted probe directions to the segment probe. Callers
// resolve tolerances (bundle override, then user overrides) into opt.tol
// beforehand.
PipelineResult example_pipeline(const ExampleBundle& bundle, RunOptions opt);

}  // namespace hpq
