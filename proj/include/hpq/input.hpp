#pragma once

// Run-file parsing and tolerance overrides.
//
// A run file is a small key/value document with one table, either a
// reflection-group description or an explicit matrix group:
//
//   [coxeter]
//   generators = 5            # a count (labels s1..s5) or a list of labels
//   default_alpha = 21/20     # optional weight for unlisted pairs, default 1
//   edge 1 2 = commute
//   edge 1 3 = infty          # free pair at the default weight
//   edge 2 4 = infty 5/4      # free pair with an explicit weight
//
//   [matrices]
//   dim = 3
//   gram = 1 0 0  0 1 0  0 0 -1          # row-major, dim*dim entries
//   generator a = 1.25 0 0.75  0 1 0  0.75 0 1.25
//   generator b = ...                    # repeatable
//
// '#' starts a comment. Entries may be separated by spaces or commas. Numbers
// are accepted as integers, fractions ("21/20"), or decimal literals; weights
// in the reflection table are kept as exact rationals.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hpq/coxeter.hpp"
#include "hpq/pq_form.hpp"
#include "hpq/tolerances.hpp"

namespace hpq {

// Input-file errors; the message names the file, line, and offending field.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MatrixInput {
  int dim = 0;
  MatrixXd gram;
  std::vector<std::pair<std::string, MatrixXd>> generators;
};

// Exactly one of the two members is set.
struct ParsedInput {
  std::optional<CoxeterSpec> coxeter;
  std::optional<MatrixInput> matrices;
};

ParsedInput parse_run_text(const std::string& text,
                           const std::string& source_name = "<input>");
ParsedInput parse_run_file(const std::string& path);

// Sets one named tolerance field; throws invalid_argument on an unknown key.
void set_tolerance(Tolerances& tol, const std::string& key, double value);

// Parses a "KEY=VALUE" override as passed on the command line.
void apply_tolerance_override(Tolerances& tol, const std::string& kv);

}  // namespace hpq
