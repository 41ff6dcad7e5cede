#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qcs/error.hpp"
#include "qcs/quantizer.hpp"
#include "qcs/rng.hpp"

namespace qcs {

/// Sensing matrices are dense and row-major: row i is the sensing vector a_i.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class MatrixKind { Gaussian, Rademacher };

inline const char* to_string(MatrixKind k) {
  return k == MatrixKind::Gaussian ? "gaussian" : "rademacher";
}

/// Dither law: all zeros, or i.i.d. uniform on [-level, level].
struct DitherKind {
  enum class Law { Zero, UniformSymmetric };
  Law law = Law::Zero;
  double level = 0.0;

  static DitherKind zero() { return {}; }
  static DitherKind uniform(double level) {
    if (!(level >= 0.0) || !std::isfinite(level)) {
      throw ParameterError("dither level must be finite and >= 0");
    }
    return {Law::UniformSymmetric, level};
  }
  /// Lambda = 0 encodes "no dithering" for both laws.
  double lambda() const noexcept { return law == Law::Zero ? 0.0 : level; }
};

struct SensingInstance {
  Matrix matrix;
  Vector dither;
  MatrixKind matrix_kind = MatrixKind::Gaussian;
  DitherKind dither_kind;
  std::uint64_t seed = 0;

  Eigen::Index rows() const noexcept { return matrix.rows(); }
  Eigen::Index cols() const noexcept { return matrix.cols(); }
};

namespace detail {

template <typename Engine>
void fill_matrix(Matrix& a, MatrixKind kind, Engine& eng) {
  if (kind == MatrixKind::Gaussian) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(eng);
  } else {
    // 64 Rademacher signs per engine draw.
    Eigen::Index i = 0;
    while (i < a.size()) {
      std::uint64_t bits = eng();
      for (int b = 0; b < 64 && i < a.size(); ++b, ++i, bits >>= 1) {
        a.data()[i] = (bits & 1U) ? 1.0 : -1.0;
      }
    }
  }
}

}  // namespace detail

/// Draws (A, tau). Matrix and dither come from independent streams of `seed`,
/// so the same seed with a different dither law yields the same matrix.
inline SensingInstance sample_instance(MatrixKind matrix_kind, DitherKind dither_kind, Eigen::Index m,
                                       Eigen::Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ParameterError("sample_instance: m and n must be >= 1");
  if (!(dither_kind.level >= 0.0)) throw ParameterError("sample_instance: dither level must be >= 0");
  SensingInstance inst;
  inst.matrix_kind = matrix_kind;
  inst.dither_kind = dither_kind;
  inst.seed = seed;
  inst.matrix.resize(m, n);
  auto matrix_eng = make_stream(seed, "matrix");
  detail::fill_matrix(inst.matrix, matrix_kind, matrix_eng);

  inst.dither = Vector::Zero(m);
  if (dither_kind.lambda() > 0.0) {
    auto dither_eng = make_stream(seed, "dither");
    std::uniform_real_distribution<double> unif(-dither_kind.level, dither_kind.level);
    for (Eigen::Index i = 0; i < m; ++i) inst.dither[i] = unif(dither_eng);
  }
  return inst;
}

/// Pre-quantization values A u - tau.
inline Vector affine_response(const SensingInstance& inst, const Eigen::Ref<const Vector>& u) {
  if (u.size() != inst.cols()) {
    throw DimensionError("signal has length " + std::to_string(u.size()) + ", expected " +
                         std::to_string(inst.cols()));
  }
  Vector z(inst.rows());
  z.noalias() = inst.matrix * u;
  z -= inst.dither;
  return z;
}

/// y = Q(A x - tau).
inline Vector measure(const SensingInstance& inst, const QuantizerSpec& spec,
                      const Eigen::Ref<const Vector>& x) {
  return quantize_vec(spec, affine_response(inst, x));
}

/// Number of coordinates where u and v differ (exact comparison).
inline std::int64_t hamming(const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& v) {
  if (u.size() != v.size()) throw DimensionError("hamming: length mismatch");
  std::int64_t d = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) d += (u[i] != v[i]) ? 1 : 0;
  return d;
}

/// Alters exactly floor(zeta * m) randomly chosen measurements. Each altered
/// entry moves one level (+-resolution) in a random direction, reversed when
/// the move would leave the level range. For the sign quantizer this negates
/// the entry.
///
/// Positions are the prefix of a seeded permutation, so for a fixed seed the
/// set corrupted at a smaller zeta is contained in the set at a larger zeta.
inline Vector corrupt(const Eigen::Ref<const Vector>& y, const QuantizerSpec& spec, double zeta,
                      std::uint64_t seed) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw ParameterError("corrupt: zeta must lie in [0, 1]");
  const auto m = y.size();
  const auto count = static_cast<Eigen::Index>(std::floor(zeta * static_cast<double>(m) + 1e-9));
  Vector out = y;
  if (count == 0) return out;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto pos_eng = make_stream(seed, "corrupt-positions");
  std::shuffle(order.begin(), order.end(), pos_eng);
  auto dir_eng = make_stream(seed, "corrupt-directions");
  std::bernoulli_distribution up(0.5);

  for (Eigen::Index c = 0; c < count; ++c) {
    const auto i = order[static_cast<std::size_t>(c)];
    const auto idx = spec.level_index(y[i]);
    if (!idx) throw ParameterError("corrupt: entry " + std::to_string(i) + " is not a level value");
    std::int64_t step = up(dir_eng) ? 1 : -1;
    if (spec.bounded() && (*idx + step < spec.min_index() || *idx + step > spec.max_index())) step = -step;
    out[i] = spec.level(*idx + step);
  }
  return out;
}

}  // namespace qcs
