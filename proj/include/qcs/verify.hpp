#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcs/oracles.hpp"
#include "qcs/pgd.hpp"
#include "qcs/quantizer.hpp"
#include "qcs/sensing.hpp"
#include "qcs/signal_model.hpp"

// Self-check suites behind `qcs verify`. Each suite compares the library
// against a brute-force, closed-form or Monte-Carlo reference.

namespace qcs::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

namespace detail {

inline std::string describe(const char* label, double value) {
  std::ostringstream s;
  s << label << '=' << value;
  return s.str();
}

inline Vector gaussian_vector(Eigen::Index n, Engine& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(eng);
  return v;
}

inline Vector unit_vector(Eigen::Index n, Engine& eng) {
  Vector v = gaussian_vector(n, eng);
  return v / v.norm();
}

/// Nearest point of (k-sparse) intersected with the sphere of radius rho, by
/// trying every support.
inline Vector exhaustive_sparse_sphere_projection(const Vector& u, int k, double rho) {
  const auto n = static_cast<int>(u.size());
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  Vector best;
  double best_dist = std::numeric_limits<double>::infinity();
  do {
    Vector cand = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (pick[static_cast<std::size_t>(i)]) cand[i] = u[i];
    }
    const double norm = cand.norm();
    if (norm == 0.0) continue;
    cand *= rho / norm;
    const double dist = (cand - u).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = cand;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace detail

inline SuiteReport quantizer_suite(std::uint64_t seed = 1) {
  SuiteReport r{"quantizer", {}};
  auto eng = make_stream(seed, "verify-quantizer");
  std::uniform_real_distribution<double> wide(-10.0, 10.0);
  std::uniform_real_distribution<double> width(0.05, 3.0);
  std::uniform_int_distribution<int> half_levels(1, 16);

  {
    const auto s = QuantizerSpec::make_saturated(1.0, 4);
    const bool ok = s.thresholds() == std::vector<double>{-1.0, 0.0, 1.0} &&
                    s.level_values() == std::vector<double>{-1.5, -0.5, 0.5, 1.5};
    r.checks.push_back({"saturated(1,4) grid", ok, ""});
    r.checks.push_back({"sign(0) = +1", quantize(QuantizerSpec::make_sign(), 0.0) == 1.0, ""});
  }

  std::int64_t violations = 0;
  for (int t = 0; t < 100000; ++t) {
    const double delta = width(eng);
    const int levels = 2 * half_levels(eng);
    const auto s = QuantizerSpec::make_saturated(delta, levels);
    const double a = wide(eng), b = wide(eng);
    const double qa = s(a), qb = s(b);
    const double lhs = qa != qb ? std::abs(std::abs(qa - qb) - delta) : 0.0;
    const double rhs = std::abs(a - b) >= delta ? std::abs(a - b) : 0.0;
    if (lhs > rhs + 1e-12) ++violations;
  }
  r.checks.push_back({"clipping deviation bound on 1e5 pairs", violations == 0,
                      detail::describe("violations", static_cast<double>(violations))});

  double worst = 0.0;
  std::int64_t mismatch = 0;
  for (int t = 0; t < 100000; ++t) {
    const double delta = width(eng);
    const int levels = 2 * half_levels(eng);
    const double a = wide(eng);
    const auto u = QuantizerSpec::make_uniform(delta);
    worst = std::max(worst, std::abs(u(a) - a) / delta);
    if (std::abs(a) < levels * delta / 2.0 && QuantizerSpec::make_saturated(delta, levels)(a) != u(a)) ++mismatch;
  }
  r.checks.push_back({"|Q_delta(a) - a| <= delta/2", worst <= 0.5 + 1e-12, detail::describe("max ratio", worst)});
  r.checks.push_back({"saturated agrees with uniform inside range", mismatch == 0,
                      detail::describe("mismatches", static_cast<double>(mismatch))});

  bool monotone = true;
  for (int t = 0; t < 200 && monotone; ++t) {
    const auto s = QuantizerSpec::make_saturated(width(eng), 2 * half_levels(eng));
    std::vector<double> xs(200);
    for (auto& x : xs) x = wide(eng);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) monotone = monotone && s(xs[i - 1]) <= s(xs[i]);
  }
  r.checks.push_back({"monotone", monotone, ""});
  return r;
}

inline SuiteReport projection_suite(std::uint64_t seed = 2) {
  SuiteReport r{"projection", {}};
  auto eng = make_stream(seed, "verify-projection");
  std::uniform_int_distribution<int> dim(1, 10);

  int bad_sparse = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = dim(eng);
    const int k = std::uniform_int_distribution<int>(1, n)(eng);
    const Vector u = detail::gaussian_vector(n, eng);
    const Vector fast = project_structure(SignalModel::sparse(k, n, 0.0, 1e9), u);
    const Vector slow = oracles::exhaustive_sparse_projection(u, k);
    if ((fast - u).squaredNorm() > (slow - u).squaredNorm() + 1e-12) ++bad_sparse;
  }
  r.checks.push_back({"hard threshold = exhaustive support search", bad_sparse == 0,
                      detail::describe("failures", bad_sparse)});

  double worst_gap = 0.0;
  bool feasible = true;
  for (int t = 0; t < 2000; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 60)(eng);
    const double radius = std::uniform_real_distribution<double>(0.1, 5.0)(eng);
    const Vector u = detail::gaussian_vector(n, eng) * 2.0;
    const Vector p = project_structure(SignalModel::l1_ball(radius, n, 0.0, 1e9), u);
    feasible = feasible && p.lpNorm<1>() <= radius * (1.0 + 1e-12) + 1e-12;
    worst_gap = std::max(worst_gap, std::abs(oracles::l1_projection_gap(u, p, radius)));
  }
  r.checks.push_back({"l1 projection feasible", feasible, ""});
  r.checks.push_back({"l1 projection duality gap <= 1e-8", worst_gap <= 1e-8, detail::describe("max gap", worst_gap)});

  int bad_cone = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 7)(eng);
    const int k = std::uniform_int_distribution<int>(1, n)(eng);
    const Vector u = detail::gaussian_vector(n, eng);
    const auto model = SignalModel::sparse(k, n, 1.0, 1.0);
    const Vector two_step = project_norm(model, project_structure(model, u));
    const Vector brute = detail::exhaustive_sparse_sphere_projection(u, k, 1.0);
    if ((two_step - u).squaredNorm() > (brute - u).squaredNorm() + 1e-12) ++bad_cone;
  }
  r.checks.push_back({"sphere after hard threshold = projection onto the intersection", bad_cone == 0,
                      detail::describe("failures", bad_cone)});
  return r;
}

inline SuiteReport gradient_suite(std::uint64_t seed = 3) {
  SuiteReport r{"gradient", {}};
  auto eng = make_stream(seed, "verify-gradient");
  double worst_identity = 0.0;
  double worst_fd = 0.0;
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 8)(eng);
    const int m = std::uniform_int_distribution<int>(5, 40)(eng);
    const int levels = 2 * std::uniform_int_distribution<int>(1, 4)(eng);
    const auto spec = t % 2 ? QuantizerSpec::make_sign() : QuantizerSpec::make_saturated(0.5, levels);
    const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::uniform(0.5), m, n, eng());
    const Vector x = detail::gaussian_vector(n, eng);
    const Vector u = detail::gaussian_vector(n, eng);
    const Vector y = measure(inst, spec, x);
    const Vector g = gradient(spec, inst, y, u);
    const Vector gt = threshold_gradient(spec, inst, y, u);
    worst_identity = std::max(worst_identity, (g - gt).cwiseAbs().maxCoeff());

    const Vector z = affine_response(inst, u);
    double margin = 1e300;
    for (double b : spec.thresholds()) margin = std::min(margin, (z.array() - b).abs().minCoeff());
    if (margin < 1e-3) continue;
    const double h = 1e-6;
    Vector fd(n);
    for (int i = 0; i < n; ++i) {
      Vector up = u, dn = u;
      up[i] += h;
      dn[i] -= h;
      fd[i] = (one_sided_l1_loss(spec, inst, y, up) - one_sided_l1_loss(spec, inst, y, dn)) / (2 * h);
    }
    worst_fd = std::max(worst_fd, (fd - g).norm() / std::max(1.0, g.norm()));
    ++checked;
  }
  r.checks.push_back({"measurement form = threshold form (1e-12)", worst_identity <= 1e-12,
                      detail::describe("max diff", worst_identity)});
  r.checks.push_back({"central differences of the loss (1e-6)", checked > 0 && worst_fd <= 1e-6,
                      detail::describe("max rel err", worst_fd)});
  return r;
}

inline SuiteReport puv_suite(std::uint64_t seed = 4) {
  SuiteReport r{"puv", {}};
  auto eng = make_stream(seed, "verify-puv");
  const auto sign = QuantizerSpec::make_sign();
  int within = 0;
  const int pairs = 10;
  for (int t = 0; t < pairs; ++t) {
    const Vector u = detail::unit_vector(8, eng), v = detail::unit_vector(8, eng);
    const auto est = oracles::estimate_puv(sign, MatrixKind::Gaussian, DitherKind::zero(), u, v, 100000, eng());
    if (std::abs(est.p - oracles::geodesic_puv(u, v)) <= 3.0 * est.std_error) ++within;
  }
  r.checks.push_back({"Monte-Carlo matches arccos/pi", within >= pairs - 1, detail::describe("within 3 se", within)});

  int bound_fail = 0;
  for (int t = 0; t < 10000; ++t) {
    const Vector u = detail::unit_vector(5, eng), v = detail::unit_vector(5, eng);
    const double p = oracles::geodesic_puv(u, v), d = (u - v).norm();
    if (p < d / std::numbers::pi - 1e-12 || p > d / 2.0 + 1e-12) ++bound_fail;
  }
  r.checks.push_back({"two-sided geodesic bound", bound_fail == 0, detail::describe("failures", bound_fail)});

  int upper_fail = 0;
  for (int t = 0; t < 10; ++t) {
    Vector u = detail::unit_vector(6, eng) * std::uniform_real_distribution<double>(0, 1)(eng);
    Vector v = detail::unit_vector(6, eng) * std::uniform_real_distribution<double>(0, 1)(eng);
    const auto d1 = oracles::estimate_puv(sign, MatrixKind::Rademacher, DitherKind::uniform(5.0), u, v, 20000, eng());
    if (d1.p > (u - v).norm() / 10.0 + 3.0 * d1.std_error) ++upper_fail;
    const double delta = 0.5;
    const auto mb = oracles::estimate_puv(QuantizerSpec::make_saturated(delta, 8), MatrixKind::Rademacher,
                                          DitherKind::uniform(delta / 2), u, v, 20000, eng());
    if (mb.p > (u - v).norm() / delta + 3.0 * mb.std_error) ++upper_fail;
  }
  r.checks.push_back({"dithered upper bounds", upper_fail == 0, detail::describe("failures", upper_fail)});
  return r;
}

inline SuiteReport hdm_suite(std::uint64_t seed = 5) {
  SuiteReport r{"hdm", {}};
  auto eng = make_stream(seed, "verify-hdm");
  const auto sign = QuantizerSpec::make_sign();
  const auto model = SignalModel::sparse(1, 6, 1.0, 1.0);
  const auto net = oracles::enumerate_net(model, 0.05);
  int close = 0;
  bool minimal = true;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const Vector x = gen_signal(model, eng());
    const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 200, 6, eng());
    const Vector y = measure(inst, sign, x);
    const auto best = oracles::hdm_decode(net, sign, inst, y);
    if ((best.point - x).norm() <= 0.1) ++close;
    for (const auto& p : net.points) minimal = minimal && hamming(measure(inst, sign, p), y) >= best.hamming;
  }
  r.checks.push_back({"exact net", net.exact && net.points.size() == 12, ""});
  r.checks.push_back({"decoded within 2r", close >= trials - 1, detail::describe("close", close)});
  r.checks.push_back({"decoded point minimizes hamming distance", minimal, ""});
  return r;
}

inline SuiteReport raic_suite(std::uint64_t seed = 6) {
  SuiteReport r{"raic", {}};
  auto eng = make_stream(seed, "verify-raic");
  const auto sign = QuantizerSpec::make_sign();
  const auto model = SignalModel::sparse(3, 100, 1.0, 1.0);
  const double eta = std::sqrt(std::numbers::pi / 2.0);
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 2000, 100, eng());
  const Vector u = gen_signal(model, eng());
  r.checks.push_back({"u = v gives zero", raic_residual(model, sign, inst, eta, 1.0, u, u) == 0.0, ""});
  const Vector v = gen_signal(model, eng());
  const double r1 = raic_residual(model, sign, inst, eta, 1.0, u, v);
  const double r3 = raic_residual(model, sign, inst, eta, 3.0, u, v);
  r.checks.push_back({"homogeneous in phi", std::abs(r3 - 3.0 * r1) <= 1e-12 * std::max(1.0, r3), ""});
  double worst_ratio = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vector a = gen_signal(model, eng()), b = gen_signal(model, eng());
    worst_ratio = std::max(worst_ratio, raic_residual(model, sign, inst, eta, 1.0, a, b) / (a - b).norm());
  }
  // Contraction: the residual must stay well below the distance itself.
  r.checks.push_back({"residual below distance", worst_ratio < 1.0, detail::describe("max residual/dist", worst_ratio)});
  return r;
}

inline const std::vector<std::pair<std::string, std::function<SuiteReport()>>>& suites() {
  static const std::vector<std::pair<std::string, std::function<SuiteReport()>>> all = {
      {"quantizer", [] { return quantizer_suite(); }}, {"projection", [] { return projection_suite(); }},
      {"gradient", [] { return gradient_suite(); }},   {"puv", [] { return puv_suite(); }},
      {"hdm", [] { return hdm_suite(); }},             {"raic", [] { return raic_suite(); }},
  };
  return all;
}

}  // namespace qcs::verify
