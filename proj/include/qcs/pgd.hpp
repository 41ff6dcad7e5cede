#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "qcs/error.hpp"
#include "qcs/quantizer.hpp"
#include "qcs/sensing.hpp"
#include "qcs/signal_model.hpp"

namespace qcs {

namespace init {
struct Zero {};
struct Given {
  Vector x0;
};
/// x0 = gen_signal(model, seed).
struct RandomInModel {
  std::uint64_t seed = 0;
};
}  // namespace init

using InitPolicy = std::variant<init::Zero, init::Given, init::RandomInModel>;

struct PgdConfig {
  double eta = 1.0;
  int iterations = 100;
  InitPolicy init = init::Zero{};
  bool record_trajectory = false;
};

struct PgdResult {
  Vector estimate;
  /// x^(1), ..., x^(T) when record_trajectory is set.
  std::vector<Vector> trajectory;
  /// ||x^(t) - x||_2 for t = 1..T, filled only when the truth is supplied.
  std::vector<double> errors;
};

struct RaicParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;
  double mu4 = 0.0;
  double phi = 1.0;
};

namespace detail {

inline void check_measurements(const SensingInstance& inst, const Eigen::Ref<const Vector>& y) {
  if (y.size() != inst.rows()) {
    throw DimensionError("measurement vector has length " + std::to_string(y.size()) + ", expected " +
                         std::to_string(inst.rows()));
  }
}

inline std::int64_t checked_level_index(const QuantizerSpec& spec, double y, Eigen::Index i) {
  const auto idx = spec.level_index(y);
  if (!idx) throw ParameterError("measurement " + std::to_string(i) + " is not a level of the quantizer");
  return *idx;
}

}  // namespace detail

/// One-sided l1 loss
///   (Delta/m) sum_i sum_j max{-y_ij (<a_i,u> - tau_i - b_j), 0}
/// where y_ij = +1 iff the level index of y_i is at least j.
///
/// Bounded quantizers sum over every threshold. For the uniform quantizer only
/// thresholds between the cell of <a_i,u> - tau_i and the cell of y_i carry a
/// non-zero hinge, so the (infinite) sum is evaluated over that window.
inline double one_sided_l1_loss(const QuantizerSpec& spec, const SensingInstance& inst,
                                const Eigen::Ref<const Vector>& y, const Eigen::Ref<const Vector>& u) {
  detail::check_measurements(inst, y);
  const Vector z = affine_response(inst, u);
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const auto yi = detail::checked_level_index(spec, y[i], i);
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    if (spec.bounded()) {
      lo = spec.min_index() + 1;
      hi = spec.max_index();
    } else {
      const auto zi = spec.cell(z[i]);
      lo = std::min(zi, yi) + 1;
      hi = std::max(zi, yi);
    }
    for (std::int64_t j = lo; j <= hi; ++j) {
      const double sign_ij = yi >= j ? 1.0 : -1.0;
      total += std::max(-sign_ij * (z[i] - spec.threshold(j)), 0.0);
    }
  }
  return spec.resolution() * total / static_cast<double>(z.size());
}

/// Subgradient of the one-sided l1 loss at u in the measurement form
/// (1/m) A^T (Q(Au - tau) - y). Never needs the unknown signal.
inline Vector gradient(const QuantizerSpec& spec, const SensingInstance& inst, const Eigen::Ref<const Vector>& y,
                       const Eigen::Ref<const Vector>& u) {
  detail::check_measurements(inst, y);
  Vector r = quantize_vec(spec, affine_response(inst, u));
  r -= y;
  Vector g(inst.cols());
  g.noalias() = inst.matrix.transpose() * r;
  g /= static_cast<double>(inst.rows());
  return g;
}

/// h(u, v) = (1/m) A^T (Q(Au - tau) - Q(Av - tau)).
inline Vector gradient_between(const QuantizerSpec& spec, const SensingInstance& inst,
                               const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& v) {
  return gradient(spec, inst, measure(inst, spec, v), u);
}

/// The subgradient written threshold by threshold,
///   (Delta/2m) sum_i sum_j (sign(<a_i,u> - tau_i - b_j) - y_ij) a_i,
/// with sign(0) = +1. Only defined for bounded quantizers; used to cross-check
/// gradient().
inline Vector threshold_gradient(const QuantizerSpec& spec, const SensingInstance& inst,
                                 const Eigen::Ref<const Vector>& y, const Eigen::Ref<const Vector>& u) {
  if (!spec.bounded()) throw ParameterError("threshold_gradient: quantizer must have finitely many levels");
  detail::check_measurements(inst, y);
  const Vector z = affine_response(inst, u);
  Vector weights(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const auto yi = detail::checked_level_index(spec, y[i], i);
    double w = 0.0;
    for (std::int64_t j = spec.min_index() + 1; j <= spec.max_index(); ++j) {
      const double s = z[i] - spec.threshold(j) >= 0.0 ? 1.0 : -1.0;
      const double y_ij = yi >= j ? 1.0 : -1.0;
      w += s - y_ij;
    }
    weights[i] = w;
  }
  Vector g = inst.matrix.transpose() * weights;
  return g * (spec.resolution() / (2.0 * static_cast<double>(z.size())));
}

/// Clipped gradient (Delta/m) sum_{i in R} sign(<a_i, u - v>) a_i over the rows
/// R where u and v quantize differently.
inline Vector clipped_gradient(const QuantizerSpec& spec, const SensingInstance& inst,
                               const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& v) {
  if (u.size() != v.size()) throw DimensionError("clipped_gradient: length mismatch");
  const Vector zu = affine_response(inst, u);
  const Vector zv = affine_response(inst, v);
  Vector weights = Vector::Zero(zu.size());
  for (Eigen::Index i = 0; i < zu.size(); ++i) {
    if (spec(zu[i]) != spec(zv[i])) {
      // Monotone quantizer: differing cells imply <a_i, u - v> has a strict sign.
      weights[i] = zu[i] > zv[i] ? 1.0 : -1.0;
    }
  }
  Vector g = inst.matrix.transpose() * weights;
  return g * (spec.resolution() / static_cast<double>(zu.size()));
}

namespace detail {

inline Vector initial_point(const PgdConfig& config, const SignalModel& model) {
  return std::visit(
      [&model](const auto& p) -> Vector {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, init::Zero>) {
          return Vector::Zero(model.dim());
        } else if constexpr (std::is_same_v<T, init::Given>) {
          if (!contains(model, p.x0, 1e-8)) {
            throw ParameterError("pgd: given initial point is not in K intersected with the norm annulus");
          }
          return p.x0;
        } else {
          return gen_signal(model, p.seed);
        }
      },
      config.init);
}

}  // namespace detail

/// Projected gradient descent on the one-sided l1 loss:
///   x~(t) = P_K(x(t-1) - eta * gradient(x(t-1))),  x(t) = P_annulus(x~(t))
/// for a fixed number of iterations. With a sparse model on the unit sphere
/// and the sign quantizer this is normalized binary iterative hard thresholding.
///
/// `truth` is optional instrumentation: when given, per-iterate errors are
/// recorded. The iteration itself only reads y.
inline PgdResult pgd_recover(const PgdConfig& config, const SignalModel& model, const QuantizerSpec& spec,
                             const SensingInstance& inst, const Eigen::Ref<const Vector>& y,
                             const Vector* truth = nullptr) {
  if (!(config.eta > 0.0) || !std::isfinite(config.eta)) throw ParameterError("pgd: eta must be positive");
  if (config.iterations < 1) throw ParameterError("pgd: iterations must be >= 1");
  detail::check_dim(model, inst.cols());
  detail::check_measurements(inst, y);
  if (truth) detail::check_dim(model, truth->size());

  PgdResult result;
  Vector x = detail::initial_point(config, model);
  if (config.record_trajectory) result.trajectory.reserve(static_cast<std::size_t>(config.iterations));
  if (truth) result.errors.reserve(static_cast<std::size_t>(config.iterations));

  const double scale = config.eta / static_cast<double>(inst.rows());
  Vector z(inst.rows());
  for (int t = 0; t < config.iterations; ++t) {
    z.noalias() = inst.matrix * x;
    z -= inst.dither;
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = spec(z[i]) - y[i];
    x.noalias() -= scale * (inst.matrix.transpose() * z);
    x = project_norm(model, project_structure(model, x));
    if (config.record_trajectory) result.trajectory.push_back(x);
    if (truth) result.errors.push_back((x - *truth).norm());
  }
  result.estimate = std::move(x);
  return result;
}

enum class Family { OneBitGaussian, DitheredOneBit, DitheredMultiBit };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::OneBitGaussian: return "one_bit_gaussian";
    case Family::DitheredOneBit: return "dithered_one_bit";
    case Family::DitheredMultiBit: return "dithered_multi_bit";
  }
  return "?";
}

struct StepDefaults {
  double eta = 1.0;
  /// True: start from any member of K intersected with the annulus. False: x0 = 0.
  bool random_in_model_init = false;
};

/// Recommended step size and initialization: sqrt(pi/2) with x0 in the signal
/// set for Gaussian 1-bit sensing, eta = lambda with x0 = 0 for dithered 1-bit,
/// eta = 1 with x0 = 0 for dithered multi-bit.
inline StepDefaults default_step_size(Family family, double lambda = 0.0) {
  switch (family) {
    case Family::OneBitGaussian: return {std::sqrt(std::numbers::pi / 2.0), true};
    case Family::DitheredOneBit:
      if (!(lambda > 0.0)) throw ParameterError("default_step_size: dithered 1-bit needs lambda > 0");
      return {lambda, false};
    case Family::DitheredMultiBit: return {1.0, false};
  }
  throw ParameterError("default_step_size: unknown family");
}

/// ||u - v - eta * h(u, v)|| in the restricted dual norm of (K - K) cut to the
/// phi-ball. Both arguments are quantized with the instance's stored dither.
inline double raic_residual(const SignalModel& model, const QuantizerSpec& spec, const SensingInstance& inst,
                            double eta, double phi, const Eigen::Ref<const Vector>& u,
                            const Eigen::Ref<const Vector>& v) {
  const Vector diff = u - v - eta * gradient_between(spec, inst, u, v);
  return restricted_dual_norm(model, diff, phi);
}

}  // namespace qcs
