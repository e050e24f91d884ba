// Command-line front end: run a certification pipeline on a built-in example
// or an input file, write the JSON report (stdout, and optionally a file),
// and optionally render an SVG plot.
//
// Exit codes: 0 success (and verdict matches --expect when given);
//             1 input error; 2 internal numerical failure; 3 verdict mismatch.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hpq/gallery.hpp"
#include "hpq/input.hpp"
#include "hpq/pipeline.hpp"
#include "hpq/report.hpp"
#include "hpq/svg.hpp"

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certify sign properties of proximal limit sets"};

  std::string input_path;
  std::string example_name;
  std::string expect;
  std::string report_path;
  std::string plot_path;
  std::vector<std::string> tol_overrides;
  int depth = 8;
  long long cap = 200000;
  std::uint64_t seed = 0;

  auto* in_opt = app.add_option("--input", input_path, "run-file path");
  auto* ex_opt =
      app.add_option("--example", example_name, "built-in example name");
  in_opt->excludes(ex_opt);
  ex_opt->excludes(in_opt);
  app.add_option("--depth", depth, "word-length horizon")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap", cap, "group-element enumeration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed");
  app.add_option("--expect", expect, "expected verdict")
      ->check(CLI::IsMember({"negative", "positive", "mixed", "empty"}));
  app.add_option("--report", report_path, "write the JSON report here");
  app.add_option("--plot", plot_path, "write an SVG plot here");
  app.add_option("--tol", tol_overrides, "tolerance override KEY=VALUE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (input_path.empty() == example_name.empty()) {
    std::cerr << "error: exactly one of --input or --example is required\n";
    return 1;
  }

  try {
    hpq::RunOptions opt;
    opt.depth = depth;
    opt.element_cap = cap;
    opt.seed = seed;

    hpq::PipelineResult result;
    if (!example_name.empty()) {
      const hpq::ExampleBundle bundle = hpq::make_example(example_name);
      opt.tol = bundle.tol_override.value_or(hpq::Tolerances{});
      for (const auto& kv : tol_overrides)
        hpq::apply_tolerance_override(opt.tol, kv);
      opt.source_name = bundle.name;
      result = hpq::example_pipeline(bundle, opt);
    } else {
      for (const auto& kv : tol_overrides)
        hpq::apply_tolerance_override(opt.tol, kv);
      opt.source_name = input_path;
      const hpq::ParsedInput parsed = hpq::parse_run_file(input_path);
      if (parsed.coxeter) {
        result = hpq::coxeter_pipeline(*parsed.coxeter, opt);
      } else {
        const hpq::QuadraticSpace space =
            hpq::QuadraticSpace::from_gram(parsed.matrices->gram, opt.tol);
        const hpq::GroupRep rep(space, parsed.matrices->generators, opt.tol);
        result = hpq::run_pipeline(rep, opt);
      }
    }

    if (!plot_path.empty()) {
      result.report.plot_path = plot_path;
      result.report.plot_emitted = hpq::emit_plot(result, plot_path);
      if (!result.report.plot_emitted)
        result.report.notes.push_back(
            "plot skipped: unsupported signature for rendering");
    }

    const std::string rendered = hpq::render_report(result.report);
    if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write report file " << report_path << "\n";
        return 2;
      }
      out << rendered;
    }
    std::cout << rendered;

    if (!expect.empty() && lower(result.report.verdict) != expect) {
      std::cerr << "expectation failed: verdict is " << result.report.verdict
                << ", expected " << expect << "\n";
      return 3;
    }
    return 0;
  } catch (const hpq::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const hpq::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
