// Command-line front end: run experiment plans, recover a single signal, and
// run the oracle self-check suites.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "qcs/harness.hpp"
#include "qcs/qcs.hpp"
#include "qcs/verify.hpp"

namespace {

int run_command(const std::string& config, const std::string& out, const std::string& svg, unsigned threads) {
  const auto plan = qcs::load_plan(config);
  qcs::RunOptions opts;
  opts.threads = threads;
  const auto result = qcs::run_experiment(plan, opts);
  qcs::emit_csv(result.cells, out);
  if (!svg.empty()) qcs::emit_svg_loglog(result.cells, svg);
  if (result.cells.size() >= 3) {
    bool positive = true;
    for (const auto& c : result.cells) positive = positive && c.mean_err > 0.0;
    if (positive) {
      const auto fit = qcs::fit_slope(result.cells);
      std::cerr << "slope " << fit.slope << " (r2 " << fit.r2 << ")\n";
    }
  }
  return 0;
}

struct RecoverArgs {
  std::string family = "one_bit_gaussian";
  std::string structure = "sparse";
  int n = 500;
  double k = 3;
  int m = 1000;
  int levels = 4;
  std::optional<double> delta;
  double lambda = 1.5;
  std::uint64_t seed = 0;
  int iters = 100;
  double zeta = 0.0;
};

int recover_command(const RecoverArgs& a) {
  const auto family = qcs::parse_family(a.family);
  nlohmann::json j;
  j["family"] = a.family;
  if (a.structure == "sparse") {
    j["model"] = {{"structure", "sparse"}, {"n", a.n}, {"k", static_cast<int>(a.k)}};
  } else if (a.structure == "low_rank") {
    j["model"] = {{"structure", "low_rank"}, {"n1", a.n}, {"n2", a.n}, {"rank", static_cast<int>(a.k)}};
  } else if (a.structure == "l1_ball") {
    j["model"] = {{"structure", "l1_ball"}, {"n", a.n}, {"k", a.k}};
  } else {
    throw qcs::ParameterError("unknown structure '" + a.structure + "'");
  }
  j["m_grid"] = {a.m};
  j["trials"] = 1;
  j["iterations"] = a.iters;
  j["master_seed"] = a.seed;
  j["corruption_zeta"] = a.zeta;
  if (family == qcs::Family::DitheredOneBit) j["lambda"] = a.lambda;
  if (family == qcs::Family::DitheredMultiBit) {
    j["L"] = a.levels;
    if (a.delta) j["delta_rule"] = {{"fixed", *a.delta}};
    else j["delta_rule"] = "five_over_L";
  }
  const auto plan = qcs::plan_from_json(j);
  qcs::RunOptions opts;
  opts.record_trajectory = true;
  const auto result = qcs::run_experiment(plan, opts);
  const auto& rec = result.records.front();
  std::cout << "iteration,error\n";
  for (std::size_t t = 0; t < rec.per_iterate_errors.size(); ++t) {
    std::cout << t + 1 << ',' << qcs::format_number(rec.per_iterate_errors[t]) << '\n';
  }
  std::cout << "final," << qcs::format_number(rec.final_error) << '\n';
  return 0;
}

int verify_command(const std::string& suite) {
  bool all_ok = true;
  bool matched = false;
  for (const auto& [name, run] : qcs::verify::suites()) {
    if (!suite.empty() && suite != name) continue;
    matched = true;
    const auto report = run();
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << report.suite << ": " << c.name;
      if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
      std::cout << '\n';
    }
    all_ok = all_ok && report.passed();
  }
  if (!matched) {
    std::cerr << "unknown suite '" << suite << "'\n";
    return 2;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected gradient descent for quantized compressed sensing"};
  app.require_subcommand(1);

  std::string config, out, svg;
  unsigned threads = 1;
  auto* run = app.add_subcommand("run", "Run an experiment plan and write aggregated CSV");
  run->add_option("--config", config, "Plan JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output CSV path")->required();
  run->add_option("--svg", svg, "Optional log-log SVG plot path");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  RecoverArgs ra;
  auto* rec = app.add_subcommand("recover", "Recover one signal and print per-iterate errors as CSV");
  rec->add_option("--family", ra.family, "one_bit_gaussian | dithered_one_bit | dithered_multi_bit")->required();
  rec->add_option("--structure", ra.structure, "sparse | low_rank (n x n, rank k) | l1_ball (radius sqrt(k))");
  rec->add_option("--n", ra.n, "Signal dimension (side length for low_rank)")->required();
  rec->add_option("--k", ra.k, "Sparsity, rank, or effective sparsity")->required();
  rec->add_option("--m", ra.m, "Number of measurements")->required();
  rec->add_option("--L", ra.levels, "Quantizer levels (multi-bit)");
  rec->add_option("--delta", ra.delta, "Fixed bin width (multi-bit; default 5/L)");
  rec->add_option("--lambda", ra.lambda, "Dither level (dithered 1-bit)");
  rec->add_option("--seed", ra.seed, "Master seed");
  rec->add_option("--iters", ra.iters, "Iterations");
  rec->add_option("--zeta", ra.zeta, "Fraction of corrupted measurements");

  std::string suite;
  auto* ver = app.add_subcommand("verify", "Run oracle self-check suites");
  ver->add_option("--suite", suite, "quantizer | projection | gradient | puv | hdm | raic (default: all)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_command(config, out, svg, threads);
    if (*rec) return recover_command(ra);
    if (*ver) return verify_command(suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
