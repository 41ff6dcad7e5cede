#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcs/pgd.hpp"

namespace qcs {
namespace {

SensingInstance fixed_instance(Matrix a, Vector tau) {
  SensingInstance inst;
  inst.matrix = std::move(a);
  inst.dither = std::move(tau);
  return inst;
}

TEST(Loss, SignExample) {
  const auto inst = fixed_instance(Matrix{{1.0, 0.0}}, Vector::Zero(1));
  const Vector y{{1.0}};
  EXPECT_DOUBLE_EQ(one_sided_l1_loss(QuantizerSpec::make_sign(), inst, y, Vector{{-2.0, 0.0}}), 4.0);
  EXPECT_DOUBLE_EQ(one_sided_l1_loss(QuantizerSpec::make_sign(), inst, y, Vector{{2.0, 0.0}}), 0.0);
}

TEST(Loss, ZeroOnConsistentPoints) {
  const auto spec = QuantizerSpec::make_saturated(0.5, 8);
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::uniform(0.25), 200, 10, 1);
  const auto model = SignalModel::sparse(2, 10, 1, 1);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Vector x = gen_signal(model, s);
    EXPECT_EQ(one_sided_l1_loss(spec, inst, measure(inst, spec, x), x), 0.0);
  }
}

TEST(Loss, UniformWindowMatchesBruteForceSum) {
  // For the uniform quantizer compare against an explicit sum over a wide
  // threshold range.
  const double delta = 0.3;
  const auto spec = QuantizerSpec::make_uniform(delta);
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::uniform(0.15), 40, 5, 2);
  std::mt19937_64 eng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    Vector x(5), u(5);
    for (int i = 0; i < 5; ++i) x[i] = g(eng), u[i] = g(eng);
    const Vector y = measure(inst, spec, x);
    const Vector z = affine_response(inst, u);
    double total = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      for (int j = -200; j <= 200; ++j) {
        const double b = j * delta;
        const double yij = y[i] > b ? 1.0 : -1.0;
        total += std::max(-yij * (z[i] - b), 0.0);
      }
    }
    EXPECT_NEAR(one_sided_l1_loss(spec, inst, y, u), delta * total / 40.0, 1e-9);
  }
}

TEST(Gradient, SignExample) {
  const auto inst = fixed_instance(Matrix{{1.0, 0.0}}, Vector::Zero(1));
  const Vector g = gradient(QuantizerSpec::make_sign(), inst, Vector{{1.0}}, Vector{{-1.0, 0.0}});
  EXPECT_EQ(g, (Vector{{-2.0, 0.0}}));
}

TEST(Gradient, RejectsForeignMeasurements) {
  const auto inst = fixed_instance(Matrix{{1.0, 0.0}}, Vector::Zero(1));
  EXPECT_THROW(gradient(QuantizerSpec::make_sign(), inst, Vector{{1.0, 1.0}}, Vector{{1.0, 0.0}}), DimensionError);
  EXPECT_THROW(threshold_gradient(QuantizerSpec::make_sign(), inst, Vector{{0.5}}, Vector{{1.0, 0.0}}),
               ParameterError);
  EXPECT_THROW(threshold_gradient(QuantizerSpec::make_uniform(1.0), inst, Vector{{0.5}}, Vector{{1.0, 0.0}}),
               ParameterError);
}

TEST(Gradient, MatchesThresholdFormAndFiniteDifferences) {
  std::mt19937_64 eng(4);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> half(1, 8);
  std::uniform_real_distribution<double> dl(0.1, 1.0);
  int fd_checked = 0;
  for (int t = 0; t < 400; ++t) {
    const int levels = 2 * half(eng);
    const auto spec = t % 4 == 0 ? QuantizerSpec::make_sign() : QuantizerSpec::make_saturated(dl(eng), levels);
    const auto inst = sample_instance(t % 2 ? MatrixKind::Gaussian : MatrixKind::Rademacher,
                                      DitherKind::uniform(0.5), 30, 6, 100 + t);
    Vector x(6), u(6);
    for (int i = 0; i < 6; ++i) x[i] = g(eng), u[i] = g(eng);
    const Vector y = measure(inst, spec, x);
    const Vector grad = gradient(spec, inst, y, u);
    ASSERT_LE((grad - threshold_gradient(spec, inst, y, u)).norm(), 1e-12 * std::max(1.0, grad.norm()));

    const Vector z = affine_response(inst, u);
    double margin = 1e300;
    for (double b : spec.thresholds()) margin = std::min(margin, (z.array() - b).abs().minCoeff());
    const double h = 1e-6;
    const double row = inst.matrix.rowwise().norm().maxCoeff();
    if (margin < 1e3 * h * row) continue;
    ++fd_checked;
    for (int i = 0; i < 6; ++i) {
      Vector e = Vector::Zero(6);
      e[i] = h;
      const double fd = (one_sided_l1_loss(spec, inst, y, u + e) - one_sided_l1_loss(spec, inst, y, u - e)) / (2 * h);
      ASSERT_NEAR(fd, grad[i], 1e-6 * std::max(1.0, std::abs(grad[i])));
    }
  }
  EXPECT_GT(fd_checked, 50);
}

TEST(Gradient, BetweenAndClipped) {
  const auto spec = QuantizerSpec::make_sign();
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 100, 4, 5);
  const Vector u{{1, 0, 0, 0}};
  const Vector v{{0, 1, 0, 0}};
  EXPECT_EQ(gradient_between(spec, inst, u, u), Vector::Zero(4));
  EXPECT_EQ(clipped_gradient(spec, inst, u, u), Vector::Zero(4));
  // For the sign quantizer Q(a) - Q(b) = 2 sign(a - b) on disagreeing rows,
  // so the two coincide.
  EXPECT_TRUE(gradient_between(spec, inst, u, v).isApprox(clipped_gradient(spec, inst, u, v), 1e-14));
}

TEST(Pgd, RejectsBadConfig) {
  const auto model = SignalModel::sparse(1, 4, 1, 1);
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 10, 4, 1);
  const Vector y = measure(inst, QuantizerSpec::make_sign(), Vector{{1, 0, 0, 0}});
  PgdConfig cfg;
  cfg.eta = 0.0;
  EXPECT_THROW(pgd_recover(cfg, model, QuantizerSpec::make_sign(), inst, y), ParameterError);
  cfg.eta = 1.0;
  cfg.iterations = 0;
  EXPECT_THROW(pgd_recover(cfg, model, QuantizerSpec::make_sign(), inst, y), ParameterError);
  cfg.iterations = 5;
  cfg.init = init::Given{Vector{{1, 1, 0, 0}}};
  EXPECT_THROW(pgd_recover(cfg, model, QuantizerSpec::make_sign(), inst, y), ParameterError);
  cfg.init = init::Zero{};
  EXPECT_THROW(pgd_recover(cfg, SignalModel::sparse(1, 5, 1, 1), QuantizerSpec::make_sign(), inst, y),
               DimensionError);
}

TEST(Pgd, TruthIsAFixedPoint) {
  const auto spec = QuantizerSpec::make_saturated(0.5, 8);
  const auto inst = sample_instance(MatrixKind::Rademacher, DitherKind::uniform(0.25), 300, 30, 2);
  for (const auto& model : {SignalModel::sparse(3, 30, 1, 1), SignalModel::sparse(3, 30, 0, 1)}) {
    const Vector x = gen_signal(model, 9);
    PgdConfig cfg;
    cfg.init = init::Given{x};
    cfg.iterations = 10;
    const auto res = pgd_recover(cfg, model, spec, inst, measure(inst, spec, x), &x);
    EXPECT_TRUE(res.estimate.isApprox(x, 1e-14));
    for (double e : res.errors) EXPECT_LE(e, 1e-14);
  }
}

TEST(Pgd, TrajectoryAndErrors) {
  const auto model = SignalModel::sparse(2, 40, 1, 1);
  const auto spec = QuantizerSpec::make_sign();
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 400, 40, 3);
  const Vector x = gen_signal(model, 1);
  const Vector y = measure(inst, spec, x);
  PgdConfig cfg;
  cfg.eta = default_step_size(Family::OneBitGaussian).eta;
  cfg.init = init::RandomInModel{5};
  cfg.iterations = 37;
  cfg.record_trajectory = true;
  const auto res = pgd_recover(cfg, model, spec, inst, y, &x);
  ASSERT_EQ(res.trajectory.size(), 37u);
  ASSERT_EQ(res.errors.size(), 37u);
  for (std::size_t t = 0; t < res.trajectory.size(); ++t) {
    EXPECT_TRUE(contains(model, res.trajectory[t], 1e-12));
    EXPECT_DOUBLE_EQ(res.errors[t], (res.trajectory[t] - x).norm());
  }
  EXPECT_EQ(res.trajectory.back(), res.estimate);

  const auto again = pgd_recover(cfg, model, spec, inst, y, &x);
  EXPECT_EQ(again.estimate, res.estimate);
  EXPECT_EQ(again.errors, res.errors);

  cfg.record_trajectory = false;
  const auto quiet = pgd_recover(cfg, model, spec, inst, y);
  EXPECT_TRUE(quiet.trajectory.empty());
  EXPECT_TRUE(quiet.errors.empty());
  EXPECT_EQ(quiet.estimate, res.estimate);
}

TEST(Pgd, RecoversSparseSignalFromSigns) {
  const auto model = SignalModel::sparse(3, 100, 1, 1);
  const auto spec = QuantizerSpec::make_sign();
  double total = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 1000, 100, s);
    const Vector x = gen_signal(model, 1000 + s);
    PgdConfig cfg;
    cfg.eta = std::sqrt(std::numbers::pi / 2);
    cfg.init = init::RandomInModel{s};
    total += (pgd_recover(cfg, model, spec, inst, measure(inst, spec, x)).estimate - x).norm();
  }
  EXPECT_LT(total / 10, 0.15);
}

TEST(Pgd, RecoversNormWithDither) {
  const auto model = SignalModel::sparse(3, 100, 0, 1);
  const auto spec = QuantizerSpec::make_sign();
  const double lambda = 1.5;
  double total = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto inst = sample_instance(MatrixKind::Rademacher, DitherKind::uniform(lambda), 2000, 100, s);
    const Vector x = gen_signal(model, 1000 + s);
    PgdConfig cfg;
    cfg.eta = default_step_size(Family::DitheredOneBit, lambda).eta;
    total += (pgd_recover(cfg, model, spec, inst, measure(inst, spec, x)).estimate - x).norm();
  }
  EXPECT_LT(total / 10, 0.3);
}

TEST(StepDefaults, Families) {
  EXPECT_DOUBLE_EQ(default_step_size(Family::OneBitGaussian).eta, std::sqrt(std::numbers::pi / 2));
  EXPECT_TRUE(default_step_size(Family::OneBitGaussian).random_in_model_init);
  EXPECT_DOUBLE_EQ(default_step_size(Family::DitheredOneBit, 1.5).eta, 1.5);
  EXPECT_FALSE(default_step_size(Family::DitheredOneBit, 1.5).random_in_model_init);
  EXPECT_DOUBLE_EQ(default_step_size(Family::DitheredMultiBit).eta, 1.0);
  EXPECT_THROW(default_step_size(Family::DitheredOneBit, 0.0), ParameterError);
}

TEST(Raic, ResidualProperties) {
  const auto model = SignalModel::sparse(2, 20, 1, 1);
  const auto spec = QuantizerSpec::make_sign();
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 500, 20, 6);
  const double eta = std::sqrt(std::numbers::pi / 2);
  const Vector u = gen_signal(model, 1);
  const Vector v = gen_signal(model, 2);
  EXPECT_EQ(raic_residual(model, spec, inst, eta, 1.0, u, u), 0.0);
  EXPECT_NEAR(raic_residual(model, spec, inst, eta, 3.0, u, v), 3.0 * raic_residual(model, spec, inst, eta, 1.0, u, v),
              1e-12);
  EXPECT_THROW(raic_residual(SignalModel::l1_ball(1.0, 20, 1, 1), spec, inst, eta, 1.0, u, v), UnsupportedModel);
}

}  // namespace
}  // namespace qcs
