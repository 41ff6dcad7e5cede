#include <gtest/gtest.h>

#include <cmath>

#include "qcs/sensing.hpp"
#include "qcs/signal_model.hpp"

namespace qcs {
namespace {

SensingInstance fixed_instance(Matrix a, Vector tau) {
  SensingInstance inst;
  inst.matrix = std::move(a);
  inst.dither = std::move(tau);
  return inst;
}

TEST(Sensing, DeterministicGivenSeed) {
  const auto a = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 4, 3, 7);
  const auto b = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 4, 3, 7);
  EXPECT_EQ(a.matrix, b.matrix);
  EXPECT_EQ(a.dither, b.dither);
  const auto c = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 4, 3, 8);
  EXPECT_NE(a.matrix, c.matrix);
}

TEST(Sensing, MatrixStreamIndependentOfDitherLaw) {
  const auto a = sample_instance(MatrixKind::Rademacher, DitherKind::zero(), 20, 10, 3);
  const auto b = sample_instance(MatrixKind::Rademacher, DitherKind::uniform(2.0), 20, 10, 3);
  EXPECT_EQ(a.matrix, b.matrix);
}

TEST(Sensing, RademacherEntries) {
  const auto inst = sample_instance(MatrixKind::Rademacher, DitherKind::zero(), 50, 40, 1);
  EXPECT_TRUE((inst.matrix.array().abs() == 1.0).all());
  const double mean = inst.matrix.mean();
  EXPECT_LT(std::abs(mean), 3.0 / std::sqrt(2000.0));
}

TEST(Sensing, UniformDitherLaw) {
  const double lambda = 1.5;
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::uniform(lambda), 100000, 1, 5);
  EXPECT_LE(inst.dither.maxCoeff(), lambda);
  EXPECT_GE(inst.dither.minCoeff(), -lambda);
  // U[-L, L] has standard deviation L / sqrt(3).
  const double se = lambda / std::sqrt(3.0) / std::sqrt(100000.0);
  EXPECT_LT(std::abs(inst.dither.mean()), 3.0 * se);
  EXPECT_TRUE((sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 10, 2, 5).dither.array() == 0.0).all());
}

TEST(Sensing, GaussianRowsAreIsotropic) {
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 100000, 5, 9);
  Vector u{{1.0, 2.0, -1.0, 0.5, 0.0}};
  u.normalize();
  const Vector p = inst.matrix * u;
  const double second = p.squaredNorm() / 100000.0;
  // Var(g^2) = 2 for standard normal g.
  const double se = std::sqrt(2.0 / 100000.0);
  EXPECT_LT(std::abs(second - 1.0), 3.0 * se);
}

TEST(Sensing, RejectsBadDimensions) {
  EXPECT_THROW(sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 0, 3, 1), ParameterError);
  EXPECT_THROW(DitherKind::uniform(-1.0), ParameterError);
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 3, 3, 1);
  EXPECT_THROW(measure(inst, QuantizerSpec::make_sign(), Vector::Zero(4)), DimensionError);
}

TEST(Sensing, MeasureExamples) {
  const auto sign = QuantizerSpec::make_sign();
  const auto ident = fixed_instance(Matrix::Identity(2, 2), Vector::Zero(2));
  EXPECT_EQ(measure(ident, sign, Vector{{0.6, -0.8}}), (Vector{{1.0, -1.0}}));
  EXPECT_EQ(measure(ident, sign, Vector::Zero(2)), (Vector{{1.0, 1.0}}));

  Matrix a(2, 2);
  a << 1, 0, 0, 2;
  const auto inst = fixed_instance(a, Vector{{0.2, -0.2}});
  EXPECT_EQ(measure(inst, QuantizerSpec::make_uniform(1.0), Vector{{1.0, 1.0}}), (Vector{{0.5, 2.5}}));
}

TEST(Sensing, SmallPerturbationsKeepMeasurements) {
  const auto spec = QuantizerSpec::make_saturated(0.25, 8);
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::uniform(0.125), 300, 20, 4);
  auto eng = make_stream(4, "perturb");
  std::normal_distribution<double> normal;
  for (int t = 0; t < 50; ++t) {
    Vector x(20), eps(20);
    for (int i = 0; i < 20; ++i) x[i] = normal(eng), eps[i] = normal(eng);
    const Vector z = affine_response(inst, x);
    double margin = 1e300;
    for (double b : spec.thresholds()) margin = std::min(margin, (z.array() - b).abs().minCoeff());
    // ||A eps||_inf <= max row l1 norm * ||eps||_inf
    const double row_l1 = inst.matrix.cwiseAbs().rowwise().sum().maxCoeff();
    eps *= 0.5 * margin / (row_l1 * eps.cwiseAbs().maxCoeff());
    EXPECT_EQ(measure(inst, spec, x), measure(inst, spec, x + eps));
  }
}

TEST(Hamming, Examples) {
  EXPECT_EQ(hamming(Vector{{1, -1, 1}}, Vector{{1, 1, 1}}), 1);
  const Vector v{{0.5, -1.5, 2.5}};
  EXPECT_EQ(hamming(v, v), 0);
  EXPECT_EQ(hamming(Vector{{0.5, 1.5}}, Vector{{-0.5, 2.5}}), 2);
  EXPECT_THROW(hamming(Vector::Zero(2), Vector::Zero(3)), DimensionError);
}

TEST(Corrupt, ZeroFractionIsIdentity) {
  const Vector y{{1, -1, 1, 1}};
  EXPECT_EQ(corrupt(y, QuantizerSpec::make_sign(), 0.0, 1), y);
}

TEST(Corrupt, SignFlipsExactCount) {
  const Vector y{{1, -1, 1, 1}};
  const Vector c = corrupt(y, QuantizerSpec::make_sign(), 0.5, 3);
  EXPECT_EQ(hamming(c, y), 2);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(c[i] == y[i] || c[i] == -y[i]);
}

TEST(Corrupt, MultiLevelStaysOnGrid) {
  const auto spec = QuantizerSpec::make_saturated(0.5, 4);
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 1000, 3, 2);
  const Vector y = measure(inst, spec, Vector{{1.0, -0.5, 0.25}});
  for (double zeta : {0.01, 0.1, 0.37, 1.0}) {
    const Vector c = corrupt(y, spec, zeta, 11);
    EXPECT_EQ(hamming(c, y), static_cast<std::int64_t>(std::floor(zeta * 1000 + 1e-9)));
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      ASSERT_TRUE(spec.level_index(c[i]).has_value());
      ASSERT_LE(std::abs(c[i] - y[i]), spec.resolution() + 1e-12);
    }
    // ||e||_2 = sqrt(count) * resolution
    EXPECT_NEAR((c - y).norm(), std::sqrt(std::floor(zeta * 1000 + 1e-9)) * 0.5, 1e-9);
  }
}

TEST(Corrupt, NestedAcrossFractions) {
  const auto sign = QuantizerSpec::make_sign();
  const auto inst = sample_instance(MatrixKind::Gaussian, DitherKind::zero(), 500, 4, 2);
  const Vector y = measure(inst, sign, Vector{{1.0, 0.0, 0.0, 0.0}});
  const Vector small = corrupt(y, sign, 0.02, 5);
  const Vector large = corrupt(y, sign, 0.1, 5);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (small[i] != y[i]) EXPECT_NE(large[i], y[i]);
  }
}

TEST(Corrupt, RejectsBadInput) {
  const Vector y{{1, -1}};
  EXPECT_THROW(corrupt(y, QuantizerSpec::make_sign(), 1.5, 1), ParameterError);
  EXPECT_THROW(corrupt(y, QuantizerSpec::make_sign(), -0.1, 1), ParameterError);
  EXPECT_THROW(corrupt(Vector{{0.3, 0.3}}, QuantizerSpec::make_sign(), 1.0, 1), ParameterError);
}

}  // namespace
}  // namespace qcs
