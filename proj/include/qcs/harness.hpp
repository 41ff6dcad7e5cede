#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qcs/error.hpp"
#include "qcs/pgd.hpp"
#include "qcs/quantizer.hpp"
#include "qcs/rng.hpp"
#include "qcs/sensing.hpp"
#include "qcs/signal_model.hpp"

namespace qcs {

/// Bin-width rule for the multi-bit family.
struct DeltaRule {
  enum class Kind { Fixed, FiveOverL };
  Kind kind = Kind::FiveOverL;
  double value = 0.0;

  static DeltaRule fixed(double delta) { return {Kind::Fixed, delta}; }
  static DeltaRule five_over_L() { return {Kind::FiveOverL, 0.0}; }
  double resolve(int levels) const { return kind == Kind::Fixed ? value : 5.0 / levels; }
};

/// Annulus used by each family: the unit sphere for Gaussian 1-bit sensing
/// (the norm is unobservable), the unit ball for the dithered families.
inline std::pair<double, double> annulus_for(Family family) {
  return family == Family::OneBitGaussian ? std::pair{1.0, 1.0} : std::pair{0.0, 1.0};
}

struct ExperimentPlan {
  Family family = Family::OneBitGaussian;
  SignalModel model = SignalModel::sparse(1, 1, 1.0, 1.0);
  std::vector<int> m_grid;
  /// Quantizer levels; only the multi-bit family uses values other than 2.
  int levels = 2;
  std::optional<DeltaRule> delta_rule;
  /// Dither level for the dithered 1-bit family.
  double lambda = 0.0;
  int trials = 50;
  int iterations = 100;
  std::uint64_t master_seed = 0;
  double corruption_zeta = 0.0;
  /// Cap on sum over cells of m * n * trials.
  double max_work = 1e10;
};

struct TrialRecord {
  Family family = Family::OneBitGaussian;
  Eigen::Index n = 0;
  double k_or_r = 0.0;
  int m = 0;
  int levels = 2;
  double delta = 0.0;
  double lambda = 0.0;
  double zeta = 0.0;
  std::size_t cell = 0;
  int trial_index = 0;
  std::uint64_t seed = 0;
  double final_error = 0.0;
  /// ||e||_2 of the applied corruption (0 when zeta = 0).
  double corruption_l2 = 0.0;
  std::vector<double> per_iterate_errors;
};

struct CellAggregate {
  Family family = Family::OneBitGaussian;
  Eigen::Index n = 0;
  double k_or_r = 0.0;
  int m = 0;
  int levels = 2;
  double delta = 0.0;
  double lambda = 0.0;
  double zeta = 0.0;
  int trials = 0;
  double mean_err = 0.0;
  double std_err = 0.0;
  std::string slope_group;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<CellAggregate> cells;
};

struct RunOptions {
  unsigned threads = 1;
  bool record_trajectory = false;
};

/// The quantizer, sensing laws and PGD settings that a plan implies.
struct FamilySetup {
  QuantizerSpec spec = QuantizerSpec::make_sign();
  MatrixKind matrix_kind = MatrixKind::Gaussian;
  DitherKind dither = DitherKind::zero();
  StepDefaults step;
};

inline void validate(const ExperimentPlan& plan) {
  if (plan.m_grid.empty()) throw ParameterError("plan: m_grid must be nonempty");
  for (std::size_t i = 0; i < plan.m_grid.size(); ++i) {
    if (plan.m_grid[i] < 1) throw ParameterError("plan: m values must be positive");
    if (i > 0 && plan.m_grid[i] <= plan.m_grid[i - 1]) throw ParameterError("plan: m_grid must be ascending");
  }
  if (plan.trials < 1) throw ParameterError("plan: trials must be >= 1");
  if (plan.iterations < 1) throw ParameterError("plan: iterations must be >= 1");
  if (!(plan.corruption_zeta >= 0.0 && plan.corruption_zeta <= 1.0)) {
    throw ParameterError("plan: corruption_zeta must lie in [0, 1]");
  }
  const auto [alpha, beta] = annulus_for(plan.family);
  if (plan.model.alpha() != alpha || plan.model.beta() != beta) {
    throw ParameterError("plan: model annulus does not match the family");
  }
  switch (plan.family) {
    case Family::OneBitGaussian:
      if (plan.levels != 2 || plan.delta_rule) throw ParameterError("plan: 1-bit family takes no L or delta rule");
      break;
    case Family::DitheredOneBit:
      if (plan.levels != 2 || plan.delta_rule) throw ParameterError("plan: 1-bit family takes no L or delta rule");
      if (!(plan.lambda > 0.0)) throw ParameterError("plan: dithered 1-bit needs lambda > 0");
      break;
    case Family::DitheredMultiBit:
      if (plan.levels < 2 || plan.levels % 2 != 0) throw ParameterError("plan: L must be even and >= 2");
      if (!plan.delta_rule) throw ParameterError("plan: multi-bit family needs a delta rule");
      if (plan.delta_rule->kind == DeltaRule::Kind::Fixed && !(plan.delta_rule->value > 0.0)) {
        throw ParameterError("plan: fixed delta must be positive");
      }
      break;
  }
  double work = 0.0;
  for (int m : plan.m_grid) work += static_cast<double>(m) * static_cast<double>(plan.model.dim()) * plan.trials;
  if (work > plan.max_work) {
    throw ResourceLimit("plan: work " + std::to_string(work) + " exceeds max_work " + std::to_string(plan.max_work));
  }
}

inline FamilySetup family_setup(const ExperimentPlan& plan) {
  FamilySetup s;
  switch (plan.family) {
    case Family::OneBitGaussian:
      s.spec = QuantizerSpec::make_sign();
      s.matrix_kind = MatrixKind::Gaussian;
      s.dither = DitherKind::zero();
      s.step = default_step_size(Family::OneBitGaussian);
      break;
    case Family::DitheredOneBit:
      s.spec = QuantizerSpec::make_sign();
      s.matrix_kind = MatrixKind::Rademacher;
      s.dither = DitherKind::uniform(plan.lambda);
      s.step = default_step_size(Family::DitheredOneBit, plan.lambda);
      break;
    case Family::DitheredMultiBit: {
      const double delta = plan.delta_rule->resolve(plan.levels);
      s.spec = QuantizerSpec::make_saturated(delta, plan.levels);
      s.matrix_kind = MatrixKind::Rademacher;
      s.dither = DitherKind::uniform(delta / 2.0);
      s.step = default_step_size(Family::DitheredMultiBit);
      break;
    }
  }
  return s;
}

inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

/// Group label for slope fitting and plotting: structure size and level count.
inline std::string slope_group(const ExperimentPlan& plan) {
  const char prefix = std::holds_alternative<LowRank>(plan.model.structure()) ? 'r' : 'k';
  return std::string(1, prefix) + format_number(plan.model.complexity()) + "_L" + std::to_string(plan.levels);
}

/// Seed of trial `trial` in grid cell `cell`.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t cell, int trial) {
  return hash64(master_seed, cell, static_cast<std::uint64_t>(trial));
}

/// Runs one trial: draw x, (A, tau), y (corrupted if requested), recover, score.
inline TrialRecord run_trial(const ExperimentPlan& plan, const FamilySetup& setup, std::size_t cell, int trial,
                             bool record_trajectory) {
  TrialRecord rec;
  rec.family = plan.family;
  rec.n = plan.model.dim();
  rec.k_or_r = plan.model.complexity();
  rec.m = plan.m_grid[cell];
  rec.levels = plan.levels;
  rec.delta = setup.spec.delta();
  rec.lambda = setup.dither.lambda();
  rec.zeta = plan.corruption_zeta;
  rec.cell = cell;
  rec.trial_index = trial;
  rec.seed = trial_seed(plan.master_seed, cell, trial);

  const Vector x = gen_signal(plan.model, stream_seed(rec.seed, "signal"));
  const auto inst = sample_instance(setup.matrix_kind, setup.dither, rec.m, rec.n, stream_seed(rec.seed, "sensing"));
  Vector y = measure(inst, setup.spec, x);
  if (plan.corruption_zeta > 0.0) {
    Vector y_cor = corrupt(y, setup.spec, plan.corruption_zeta, stream_seed(rec.seed, "corruption"));
    rec.corruption_l2 = (y_cor - y).norm();
    y = std::move(y_cor);
  }

  PgdConfig cfg;
  cfg.eta = setup.step.eta;
  cfg.iterations = plan.iterations;
  if (setup.step.random_in_model_init) cfg.init = init::RandomInModel{stream_seed(rec.seed, "init")};
  else cfg.init = init::Zero{};
  const auto out = pgd_recover(cfg, plan.model, setup.spec, inst, y, &x);
  rec.final_error = (out.estimate - x).norm();
  if (record_trajectory) rec.per_iterate_errors = out.errors;
  return rec;
}

/// Runs every (cell, trial) of the plan. Records come back sorted by
/// (cell, trial) and are identical for any thread count.
inline ExperimentResult run_experiment(const ExperimentPlan& plan, const RunOptions& opts = {}) {
  validate(plan);
  const FamilySetup setup = family_setup(plan);
  const std::size_t cells = plan.m_grid.size();
  const std::size_t jobs = cells * static_cast<std::size_t>(plan.trials);

  ExperimentResult result;
  result.records.resize(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      try {
        const std::size_t cell = job / static_cast<std::size_t>(plan.trials);
        const int trial = static_cast<int>(job % static_cast<std::size_t>(plan.trials));
        result.records[job] = run_trial(plan, setup, cell, trial, opts.record_trajectory);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs;
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(jobs)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const std::string group = slope_group(plan);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto first = result.records.begin() + static_cast<std::ptrdiff_t>(c * plan.trials);
    const auto last = first + plan.trials;
    double sum = 0.0;
    for (auto it = first; it != last; ++it) sum += it->final_error;
    const double mean = sum / plan.trials;
    double ss = 0.0;
    for (auto it = first; it != last; ++it) ss += (it->final_error - mean) * (it->final_error - mean);
    const double sd = plan.trials > 1 ? std::sqrt(ss / (plan.trials - 1)) : 0.0;

    CellAggregate agg;
    agg.family = plan.family;
    agg.n = first->n;
    agg.k_or_r = first->k_or_r;
    agg.m = first->m;
    agg.levels = first->levels;
    agg.delta = first->delta;
    agg.lambda = first->lambda;
    agg.zeta = first->zeta;
    agg.trials = plan.trials;
    agg.mean_err = mean;
    agg.std_err = sd / std::sqrt(static_cast<double>(plan.trials));
    agg.slope_group = group;
    result.cells.push_back(std::move(agg));
  }
  return result;
}

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line through (log10 m, log10 error).
inline SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ParameterError("fit_slope: need at least 3 points");
  double sx = 0.0, sy = 0.0;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [m, e] : points) {
    if (!(m > 0.0) || !(e > 0.0)) throw ParameterError("fit_slope: values must be positive");
    logs.emplace_back(std::log10(m), std::log10(e));
    sx += logs.back().first;
    sy += logs.back().second;
  }
  const double cnt = static_cast<double>(logs.size());
  const double mx = sx / cnt, my = sy / cnt;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
    syy += (ly - my) * (ly - my);
  }
  if (sxx == 0.0) throw ParameterError("fit_slope: need at least two distinct m values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

inline SlopeFit fit_slope(const std::vector<CellAggregate>& cells) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : cells) pts.emplace_back(c.m, c.mean_err);
  return fit_slope(pts);
}

inline constexpr const char* kCsvHeader = "family,n,k_or_r,m,L,delta,lambda,zeta,trials,mean_err,stderr,slope_group";

inline void write_csv(std::ostream& os, const std::vector<CellAggregate>& cells) {
  os << kCsvHeader << '\n';
  for (const auto& c : cells) {
    os << to_string(c.family) << ',' << c.n << ',' << format_number(c.k_or_r) << ',' << c.m << ',' << c.levels
       << ',' << format_number(c.delta) << ',' << format_number(c.lambda) << ',' << format_number(c.zeta) << ','
       << c.trials << ',' << format_number(c.mean_err) << ',' << format_number(c.std_err) << ',' << c.slope_group
       << '\n';
  }
}

/// One CSV row per grid cell.
inline void emit_csv(const std::vector<CellAggregate>& cells, const std::string& path) {
  if (cells.empty()) throw ParameterError("emit_csv: no aggregates");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  write_csv(out, cells);
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

inline void write_svg_loglog(std::ostream& os, const std::vector<CellAggregate>& cells) {
  constexpr double width = 640, height = 480, left = 70, right = 150, top = 30, bottom = 60;
  std::map<std::string, std::vector<std::pair<double, double>>> groups;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& c : cells) {
    if (!(c.mean_err > 0.0) || c.m <= 0) continue;
    const double lx = std::log10(static_cast<double>(c.m)), ly = std::log10(c.mean_err);
    groups[c.slope_group].emplace_back(lx, ly);
    xmin = std::min(xmin, lx), xmax = std::max(xmax, lx), ymin = std::min(ymin, ly), ymax = std::max(ymax, ly);
  }
  if (groups.empty()) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax - xmin < 1e-9) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-9) ymin -= 0.5, ymax += 0.5;
  const double padx = 0.05 * (xmax - xmin), pady = 0.05 * (ymax - ymin);
  xmin -= padx, xmax += padx, ymin -= pady, ymax += pady;
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double ly) { return top + (ymax - ly) / (ymax - ymin) * ph; };
  auto fmt = [](double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << v;
    return s.str();
  };
  static constexpr std::array<const char*, 8> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double lx = xmin + (xmax - xmin) * t / 4.0, ly = ymin + (ymax - ymin) * t / 4.0;
    os << "<text x=\"" << fmt(px(lx)) << "\" y=\"" << fmt(top + ph + 18) << "\" font-size=\"11\" text-anchor=\"middle\">"
       << fmt(std::pow(10.0, lx)) << "</text>\n";
    os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(py(ly) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
       << std::pow(10.0, ly) << "</text>\n";
  }
  os << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(height - 15)
     << "\" font-size=\"13\" text-anchor=\"middle\">m (log scale)</text>\n";
  os << "<text x=\"15\" y=\"" << fmt(top + ph / 2) << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
     << fmt(top + ph / 2) << ")\">mean error (log scale)</text>\n";
  std::size_t g = 0;
  for (const auto& [name, pts] : groups) {
    const char* color = palette[g % palette.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << fmt(px(pts[i].first)) << ',' << fmt(py(pts[i].second));
    os << "\"/>\n";
    for (const auto& [lx, ly] : pts) {
      os << "<circle cx=\"" << fmt(px(lx)) << "\" cy=\"" << fmt(py(ly)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 20 + 18 * static_cast<double>(g);
    os << "<line x1=\"" << fmt(left + pw + 10) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(left + pw + 30) << "\" y2=\""
       << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fmt(left + pw + 35) << "\" y=\"" << fmt(ly + 4) << "\" font-size=\"12\">" << name << "</text>\n";
    ++g;
  }
  os << "</svg>\n";
}

/// Log-log plot of mean error against m, one polyline per slope group.
inline void emit_svg_loglog(const std::vector<CellAggregate>& cells, const std::string& path) {
  if (cells.empty()) throw ParameterError("emit_svg_loglog: no aggregates");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_svg_loglog: cannot open " + path);
  write_svg_loglog(out, cells);
  if (!out) throw std::runtime_error("emit_svg_loglog: write failed for " + path);
}

// ---------------------------------------------------------------------------
// JSON plan format

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ParameterError(where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ParameterError(where + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
T required(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParameterError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(where + ": bad value for '" + key + "': " + e.what());
  }
}

template <typename T>
T optional_or(const nlohmann::json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return required<T>(j, key, where);
}

}  // namespace detail

inline Family parse_family(const std::string& s) {
  if (s == "one_bit_gaussian") return Family::OneBitGaussian;
  if (s == "dithered_one_bit") return Family::DitheredOneBit;
  if (s == "dithered_multi_bit") return Family::DitheredMultiBit;
  throw ParameterError("unknown family '" + s + "'");
}

/// Parses a plan document. Keys:
///   family, model{structure: sparse|low_rank|l1_ball, n, k | n1, n2, rank},
///   m_grid, L, delta_rule ("five_over_L" | {"fixed": d}), lambda, trials,
///   iterations, master_seed, corruption_zeta, max_work.
/// Unknown keys are rejected.
inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
  detail::reject_unknown_keys(j,
                              {"family", "model", "m_grid", "L", "delta_rule", "lambda", "trials", "iterations",
                               "master_seed", "corruption_zeta", "max_work"},
                              "plan");
  ExperimentPlan plan;
  plan.family = parse_family(detail::required<std::string>(j, "family", "plan"));
  const auto [alpha, beta] = annulus_for(plan.family);

  if (!j.contains("model")) throw ParameterError("plan: missing key 'model'");
  const auto& jm = j.at("model");
  const auto structure = detail::required<std::string>(jm, "structure", "model");
  if (structure == "sparse") {
    detail::reject_unknown_keys(jm, {"structure", "n", "k"}, "model");
    plan.model = SignalModel::sparse(detail::required<int>(jm, "k", "model"), detail::required<int>(jm, "n", "model"),
                                     alpha, beta);
  } else if (structure == "low_rank") {
    detail::reject_unknown_keys(jm, {"structure", "n1", "n2", "rank"}, "model");
    plan.model = SignalModel::low_rank(detail::required<int>(jm, "rank", "model"),
                                       detail::required<int>(jm, "n1", "model"),
                                       detail::required<int>(jm, "n2", "model"), alpha, beta);
  } else if (structure == "l1_ball") {
    detail::reject_unknown_keys(jm, {"structure", "n", "k"}, "model");
    const double k = detail::required<double>(jm, "k", "model");
    if (!(k > 0.0)) throw ParameterError("model: k must be positive");
    plan.model = SignalModel::l1_ball(std::sqrt(k), detail::required<int>(jm, "n", "model"), alpha, beta);
  } else {
    throw ParameterError("model: unknown structure '" + structure + "'");
  }

  plan.m_grid = detail::required<std::vector<int>>(j, "m_grid", "plan");
  plan.levels = detail::optional_or<int>(j, "L", 2, "plan");
  if (j.contains("delta_rule")) {
    const auto& jd = j.at("delta_rule");
    if (jd.is_string() && jd.get<std::string>() == "five_over_L") {
      plan.delta_rule = DeltaRule::five_over_L();
    } else if (jd.is_object()) {
      detail::reject_unknown_keys(jd, {"fixed"}, "delta_rule");
      plan.delta_rule = DeltaRule::fixed(detail::required<double>(jd, "fixed", "delta_rule"));
    } else {
      throw ParameterError("plan: delta_rule must be \"five_over_L\" or {\"fixed\": delta}");
    }
  }
  plan.lambda = detail::optional_or<double>(j, "lambda", 0.0, "plan");
  plan.trials = detail::optional_or<int>(j, "trials", 50, "plan");
  plan.iterations = detail::optional_or<int>(j, "iterations", 100, "plan");
  plan.master_seed = detail::optional_or<std::uint64_t>(j, "master_seed", 0, "plan");
  plan.corruption_zeta = detail::optional_or<double>(j, "corruption_zeta", 0.0, "plan");
  plan.max_work = detail::optional_or<double>(j, "max_work", 1e10, "plan");
  validate(plan);
  return plan;
}

inline ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("plan: invalid JSON: ") + e.what());
  }
  return plan_from_json(j);
}

}  // namespace qcs
