#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <hpq/coxeter.hpp>
#include <hpq/gallery.hpp>
#include <hpq/input.hpp>
#include <hpq/pipeline.hpp>
#include <hpq/report.hpp>

using namespace hpq;

namespace {

RunOptions small_run(int depth, const std::string& name) {
  RunOptions opt;
  opt.depth = depth;
  opt.triple_samples = 200;
  opt.probe_pairs = 100;
  opt.sigma_want = 40;
  opt.gap_per_length = 50;
  opt.source_name = name;
  return opt;
}

std::vector<std::string> key_order(const nlohmann::ordered_json& j) {
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  return keys;
}

// Asserts that parsing fails and that the message carries the expected
// location prefix and description fragment.
void expect_parse_error(const std::string& text, const std::string& fragment,
                        const std::string& prefix = "f:") {
  try {
    parse_run_text(text, "f");
    FAIL_CHECK("expected a parse error containing '" << fragment << "'");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(fragment) != std::string::npos);
    CHECK(msg.rfind(prefix, 0) == 0);
  }
}

}  // namespace

TEST_CASE("report JSON is deterministic and ordered for a matrix-group run") {
  const ExampleBundle bundle = make_example("schottky-o21");
  RunOptions opt = small_run(5, "unit-schottky");
  if (bundle.tol_override) opt.tol = *bundle.tol_override;
  const PipelineResult res = example_pipeline(bundle, opt);

  const std::string once = render_report(res.report, false);
  const std::string twice = render_report(res.report, false);
  CHECK(once == twice);
  CHECK(once.back() == '\n');
  CHECK(once.find("timestamp_utc") == std::string::npos);
  CHECK(render_report(res.report, true).find("timestamp_utc") != std::string::npos);

  const auto j = nlohmann::ordered_json::parse(once);
  const std::vector<std::string> expected = {
      "schema_version", "source",        "config", "identification",
      "limit_set",      "verdict",       "transversality", "segment_probe",
      "anosov_gap",     "notes",         "plot"};
  CHECK(key_order(j) == expected);
  const auto with_ts = report_to_json(res.report, true);
  CHECK(key_order(with_ts)[1] == "timestamp_utc");

  CHECK(j["schema_version"] == 1);
  CHECK(j["source"] == "unit-schottky");
  CHECK(j["config"]["depth"] == 5);
  CHECK(key_order(j["config"]["tolerances"]) ==
        std::vector<std::string>{"tol_null", "tol_sign", "tol_degenerate", "dedupe_radius",
                                 "tol_proximal", "tol_membership", "form_residual_rel"});
  CHECK(j["identification"]["p"] == 2);
  CHECK(j["identification"]["q"] == 1);
  CHECK_FALSE(j["identification"].contains("hypotheses"));
  CHECK_FALSE(j["identification"].contains("abort_reason"));
  CHECK(j["verdict"]["sign"] == "Negative");
  CHECK(j["verdict"]["scan"]["verdict"] == "AllNegative");
  CHECK(j["limit_set"]["point_count"].get<int>() > 0);
  CHECK(j["limit_set"]["count_by_length"].contains("1"));
  CHECK(j["anosov_gap"]["heuristic"] == true);
}

TEST_CASE("reflection-group reports add sigma and dihedral sections") {
  CoxeterSpec pentagon(5, Rat(21, 20));
  for (int i = 0; i < 5; ++i) pentagon.set_commute(i, (i + 1) % 5);
  const PipelineResult res = coxeter_pipeline(pentagon, small_run(5, "unit-pentagon"));

  const auto j = nlohmann::ordered_json::parse(render_report(res.report, false));
  const std::vector<std::string> expected = {
      "schema_version", "source",        "config",        "identification",
      "limit_set",      "verdict",       "transversality", "segment_probe",
      "anosov_gap",     "sigma_samples", "dihedral_proximality", "notes", "plot"};
  CHECK(key_order(j) == expected);
  CHECK(j["identification"]["hypotheses"]["infinite"] == true);
  CHECK(j["identification"]["hypotheses"]["condition2"] == true);
  CHECK(j["identification"]["gram_signature"] == nlohmann::ordered_json({4, 1, 0}));
  CHECK(j["verdict"]["sign"] == "Negative");
  CHECK(j["sigma_samples"]["kept"] == 40);
  CHECK(j["sigma_samples"]["max_self_pairing"].get<double>() < 0.0);
  CHECK(j["dihedral_proximality"]["all_proximal"] == true);
}

TEST_CASE("a failed hypothesis aborts the run and trims the report") {
  CoxeterSpec square(4, Rat(21, 20));
  for (int i = 0; i < 4; ++i) square.set_commute(i, (i + 1) % 4);
  const PipelineResult res = coxeter_pipeline(square, small_run(5, "unit-square"));

  CHECK(res.report.verdict == "Aborted");
  CHECK(res.report.abort_reason == "condition1");
  const auto j = nlohmann::ordered_json::parse(render_report(res.report, false));
  CHECK(j["identification"]["abort_reason"] == "condition1");
  CHECK(j["identification"]["hypotheses"]["square_witness"] ==
        nlohmann::ordered_json({0, 1, 2, 3}));
  CHECK(j["verdict"]["sign"] == "Aborted");
  CHECK_FALSE(j.contains("transversality"));
  CHECK_FALSE(j.contains("segment_probe"));
  CHECK_FALSE(j.contains("anosov_gap"));
  CHECK_FALSE(j.contains("sigma_samples"));
  CHECK(j["limit_set"]["point_count"] == 0);
}

TEST_CASE("parse_run_text reads a reflection-group table") {
  const std::string text =
      "# demo run\n"
      "[coxeter]\n"
      "generators = r, s, t\n"
      "default_alpha = 1.05\n"
      "edge r s = commute\n"
      "edge 1 3 = infty\n"
      "edge s t = infty 5/4\n";
  const ParsedInput in = parse_run_text(text, "demo.run");
  REQUIRE(in.coxeter.has_value());
  CHECK_FALSE(in.matrices.has_value());
  const CoxeterSpec& spec = *in.coxeter;
  CHECK(spec.n == 3);
  CHECK(spec.labels == std::vector<std::string>{"r", "s", "t"});
  CHECK(spec.m(0, 1) == CoxeterSpec::kCommute);
  CHECK(spec.m(0, 2) == CoxeterSpec::kFree);
  // Decimal and fraction forms resolve to the same exact rationals.
  CHECK(spec.alpha[0][2] == Rat(21, 20));
  CHECK(spec.alpha[1][2] == Rat(5, 4));
}

TEST_CASE("parse_run_text reads a matrix table") {
  const std::string text =
      "[matrices]\n"
      "dim = 3\n"
      "gram = 1 0 0  0 1 0  0 0 -1\n"
      "generator a = 1.25 0 0.75  0 1 0  0.75 0 1.25\n";
  const ParsedInput in = parse_run_text(text);
  REQUIRE(in.matrices.has_value());
  const MatrixInput& mi = *in.matrices;
  CHECK(mi.dim == 3);
  CHECK(mi.gram(2, 2) == -1.0);
  REQUIRE(mi.generators.size() == 1);
  CHECK(mi.generators[0].first == "a");
  CHECK(mi.generators[0].second(0, 2) == 0.75);
  // The parsed pair actually builds a validated isometry group.
  CHECK_NOTHROW(GroupRep(QuadraticSpace::from_gram(mi.gram), mi.generators));
}

TEST_CASE("parse_run_text rejects malformed documents with located messages") {
  expect_parse_error("x = 1\n", "entry before any table header");
  expect_parse_error("[weird]\n", "unknown table 'weird'");
  expect_parse_error("[coxeter\n", "unterminated table header");
  expect_parse_error("[coxeter]\ngenerators\n", "expected 'key = value'");
  expect_parse_error("[coxeter]\ngenerators =\n", "empty value");
  expect_parse_error("[coxeter]\ngenerators = 0\n", "need at least one");
  expect_parse_error("[coxeter]\nfoo = 1\n", "unknown key 'foo' in [coxeter]");
  expect_parse_error("[coxeter]\nedge 1 2 = commute\ngenerators = 3\n",
                     "edge declared before 'generators'", "f:2:");
  expect_parse_error("[coxeter]\ngenerators = 3\nedge 1 4 = commute\n",
                     "out of range 1..3", "f:3:");
  expect_parse_error("[coxeter]\ngenerators = 3\nedge a b = commute\n",
                     "unknown generator label 'a'");
  expect_parse_error("[coxeter]\ngenerators = 3\nedge 2 2 = commute\n",
                     "edge endpoints must differ");
  expect_parse_error("[coxeter]\ngenerators = 3\nedge 1 2 = commute 3\n",
                     "'commute' takes no weight");
  expect_parse_error("[coxeter]\ngenerators = 3\nedge 1 2 = infty x\n",
                     "edge weight: expected a rational or decimal");
  expect_parse_error("[coxeter]\ngenerators = 3\nedge 1 2 = infty 3 4\n",
                     "'infty' takes at most one weight");
  expect_parse_error("[coxeter]\ngenerators = 3\nedge 1 2 = sometimes\n",
                     "edge kind must be 'commute' or 'infty'");
  expect_parse_error("[coxeter]\ndefault_alpha = 2\n", "[coxeter] is missing 'generators'");

  expect_parse_error("[matrices]\ngram = 1 0 0 1\n", "declare dim before any matrix");
  expect_parse_error("[matrices]\ndim = 1\n", "must be at least 2");
  expect_parse_error("[matrices]\ndim = x\n", "expected a positive integer");
  expect_parse_error("[matrices]\ndim = 2\ngram = 1 0 0\n",
                     "expected 4 entries (row-major), got 3");
  expect_parse_error("[matrices]\ndim = 2\ngram = 1 0 0 z\n", "cannot parse number 'z'");
  expect_parse_error("[matrices]\ndim = 2\ngram = 1 0 0 -1\ngram = 1 0 0 -1\n",
                     "field 'gram': given twice");
  expect_parse_error("[matrices]\nfoo = 1\n", "unknown key 'foo' in [matrices]");
  expect_parse_error("[matrices]\ndim = 2\ngenerator a = 1 0 0 1\n",
                     "[matrices] is missing 'gram'");
  expect_parse_error("[matrices]\ndim = 2\ngram = 1 0 0 -1\n",
                     "needs at least one 'generator NAME' row");

  expect_parse_error("# nothing here\n", "expected exactly one of [coxeter] or [matrices]");
  expect_parse_error("[coxeter]\ngenerators = 2\n[matrices]\ndim = 2\n",
                     "expected exactly one of [coxeter] or [matrices]");

  // Spec-level validation still applies after parsing.
  CHECK_THROWS_AS(parse_run_text("[coxeter]\ngenerators = 2\nedge 1 2 = infty 1/2\n", "f"),
                  std::invalid_argument);
}

TEST_CASE("parse_run_file reports unreadable paths") {
  CHECK_THROWS_WITH_AS(parse_run_file("/nonexistent/dir/x.run"),
                       "/nonexistent/dir/x.run: cannot open file", ParseError);
}

TEST_CASE("tolerance overrides set exactly the named field") {
  const std::vector<std::pair<std::string, double Tolerances::*>> fields = {
      {"tol_null", &Tolerances::tol_null},
      {"tol_sign", &Tolerances::tol_sign},
      {"tol_degenerate", &Tolerances::tol_degenerate},
      {"dedupe_radius", &Tolerances::dedupe_radius},
      {"tol_proximal", &Tolerances::tol_proximal},
      {"tol_membership", &Tolerances::tol_membership},
      {"form_residual_rel", &Tolerances::form_residual_rel}};
  for (const auto& [key, member] : fields) {
    Tolerances tol;
    set_tolerance(tol, key, 0.125);
    CHECK(tol.*member == 0.125);
  }

  Tolerances tol;
  CHECK_THROWS_WITH_AS(set_tolerance(tol, "bogus", 1.0),
                       doctest::Contains("unknown tolerance key 'bogus'"),
                       std::invalid_argument);

  apply_tolerance_override(tol, "tol_null=1e-6");
  CHECK(tol.tol_null == 1e-6);
  apply_tolerance_override(tol, "dedupe_radius = 0.05");
  CHECK(tol.dedupe_radius == 0.05);
  CHECK_THROWS_AS(apply_tolerance_override(tol, "no-equals"), std::invalid_argument);
  CHECK_THROWS_AS(apply_tolerance_override(tol, "=5"), std::invalid_argument);
  CHECK_THROWS_AS(apply_tolerance_override(tol, "tol_null="), std::invalid_argument);
  CHECK_THROWS_AS(apply_tolerance_override(tol, "tol_null=abc"), std::invalid_argument);
}
