#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcs/error.hpp"

namespace qcs {

using Vector = Eigen::VectorXd;

enum class QuantizerKind { Sign, Uniform, SaturatedUniform, GeneralLevels };

inline const char* to_string(QuantizerKind k) {
  switch (k) {
    case QuantizerKind::Sign: return "sign";
    case QuantizerKind::Uniform: return "uniform";
    case QuantizerKind::SaturatedUniform: return "saturated_uniform";
    case QuantizerKind::GeneralLevels: return "general_levels";
  }
  return "?";
}

/// A monotone scalar quantizer with level values on an arithmetic grid.
///
/// Every input is mapped to a cell index. For quantizers with L levels the
/// index runs over 0..L-1 and cell i is [b_i, b_{i+1}) with b_0 = -inf and
/// b_L = +inf; a value sitting exactly on a threshold belongs to the upper
/// cell, so sign(0) = +1. The uniform quantizer has an unbounded index set,
/// cell j being [j*delta, (j+1)*delta).
///
/// Level values satisfy q_{i+1} = q_i + resolution for all kinds.
class QuantizerSpec {
 public:
  static QuantizerSpec make_sign() {
    QuantizerSpec s;
    s.kind_ = QuantizerKind::Sign;
    s.resolution_ = 2.0;
    s.delta_ = 2.0;
    s.thresholds_ = {0.0};
    s.levels_ = {-1.0, 1.0};
    return s;
  }

  static QuantizerSpec make_uniform(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      throw ParameterError("uniform quantizer: delta must be positive and finite");
    }
    QuantizerSpec s;
    s.kind_ = QuantizerKind::Uniform;
    s.resolution_ = delta;
    s.delta_ = delta;
    return s;
  }

  /// Saturated uniform quantizer with `levels` output values
  /// +-delta/2, +-3delta/2, ..., +-(levels-1)delta/2 and thresholds j*delta
  /// for |j| <= levels/2 - 1.
  static QuantizerSpec make_saturated(double delta, int levels) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      throw ParameterError("saturated quantizer: delta must be positive and finite");
    }
    if (levels < 2 || levels % 2 != 0) {
      throw ParameterError("saturated quantizer: levels must be even and >= 2, got " +
                           std::to_string(levels));
    }
    QuantizerSpec s;
    s.kind_ = QuantizerKind::SaturatedUniform;
    s.resolution_ = delta;
    s.delta_ = delta;
    const int half = levels / 2;
    for (int j = 1 - half; j <= half - 1; ++j) s.thresholds_.push_back(j * delta);
    for (int i = 0; i < levels; ++i) s.levels_.push_back((i - (levels - 1) / 2.0) * delta);
    return s;
  }

  /// Arbitrary increasing thresholds with levels q_1 + i*resolution.
  static QuantizerSpec make_general(std::vector<double> thresholds, double first_level,
                                    double resolution) {
    if (thresholds.empty()) throw ParameterError("general quantizer: need at least one threshold");
    if (!(resolution > 0.0) || !std::isfinite(resolution) || !std::isfinite(first_level)) {
      throw ParameterError("general quantizer: resolution must be positive and finite");
    }
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
      if (!std::isfinite(thresholds[j]) || (j > 0 && !(thresholds[j] > thresholds[j - 1]))) {
        throw ParameterError("general quantizer: thresholds must be finite and strictly increasing");
      }
    }
    QuantizerSpec s;
    s.kind_ = QuantizerKind::GeneralLevels;
    s.resolution_ = resolution;
    s.delta_ = resolution;
    s.thresholds_ = std::move(thresholds);
    for (std::size_t i = 0; i <= s.thresholds_.size(); ++i) {
      s.levels_.push_back(first_level + static_cast<double>(i) * resolution);
    }
    return s;
  }

  QuantizerKind kind() const noexcept { return kind_; }
  /// Gap between consecutive level values.
  double resolution() const noexcept { return resolution_; }
  /// Input bin width (equals the resolution for the uniform quantizers).
  double delta() const noexcept { return delta_; }
  bool bounded() const noexcept { return kind_ != QuantizerKind::Uniform; }
  /// Number of levels, empty for the unbounded uniform quantizer.
  std::optional<int> levels() const noexcept {
    if (!bounded()) return std::nullopt;
    return static_cast<int>(levels_.size());
  }
  const std::vector<double>& thresholds() const noexcept { return thresholds_; }
  const std::vector<double>& level_values() const noexcept { return levels_; }

  /// Cell index of a finite value.
  std::int64_t cell(double value) const {
    if (!std::isfinite(value)) throw ParameterError("quantize: non-finite input");
    if (kind_ == QuantizerKind::Uniform) {
      auto j = static_cast<std::int64_t>(std::floor(value / delta_));
      // Re-anchor so that cell j is exactly [j*delta, (j+1)*delta) in floating point.
      if (value < threshold(j)) --j;
      else if (value >= threshold(j + 1)) ++j;
      return j;
    }
    return std::upper_bound(thresholds_.begin(), thresholds_.end(), value) - thresholds_.begin();
  }

  /// Lower boundary of cell j (so threshold(j) separates cells j-1 and j).
  double threshold(std::int64_t j) const {
    if (kind_ == QuantizerKind::Uniform) return static_cast<double>(j) * delta_;
    return thresholds_.at(static_cast<std::size_t>(j - 1));
  }

  double level(std::int64_t index) const {
    if (kind_ == QuantizerKind::Uniform) return delta_ * (static_cast<double>(index) + 0.5);
    return levels_.at(static_cast<std::size_t>(index));
  }

  /// Smallest and largest valid cell index (only meaningful when bounded()).
  std::int64_t min_index() const noexcept { return 0; }
  std::int64_t max_index() const noexcept { return static_cast<std::int64_t>(levels_.size()) - 1; }

  /// Cell index of a level value, recovered on the level grid by rounding.
  /// Returns nullopt if `y` is not (within rounding) a level value.
  std::optional<std::int64_t> level_index(double y) const {
    if (!std::isfinite(y)) return std::nullopt;
    const double origin = kind_ == QuantizerKind::Uniform ? 0.5 * delta_ : levels_.front();
    const double t = (y - origin) / resolution_;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-9) return std::nullopt;
    const auto idx = static_cast<std::int64_t>(r);
    if (bounded() && (idx < min_index() || idx > max_index())) return std::nullopt;
    return idx;
  }

  double operator()(double value) const { return level(cell(value)); }

 private:
  QuantizerSpec() = default;

  QuantizerKind kind_ = QuantizerKind::Sign;
  double resolution_ = 2.0;
  double delta_ = 2.0;
  std::vector<double> thresholds_;
  std::vector<double> levels_;
};

inline double quantize(const QuantizerSpec& spec, double value) { return spec(value); }

inline Vector quantize_vec(const QuantizerSpec& spec, const Eigen::Ref<const Vector>& values) {
  Vector out(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) out[i] = spec(values[i]);
  return out;
}

}  // namespace qcs
