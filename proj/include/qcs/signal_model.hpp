#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qcs/error.hpp"
#include "qcs/quantizer.hpp"
#include "qcs/rng.hpp"

namespace qcs {

/// k-sparse vectors in R^n.
struct Sparse {
  int k = 1;
  int n = 1;
};

/// n1 x n2 matrices of rank at most `rank`, vectorized column-major.
struct LowRank {
  int rank = 1;
  int n1 = 1;
  int n2 = 1;
};

/// The l1 ball of the given radius (sqrt(k) for effectively k-sparse signals).
struct L1Ball {
  double radius = 1.0;
  int n = 1;
  /// Effective sparsity radius^2.
  double effective_k() const noexcept { return radius * radius; }
};

using Structure = std::variant<Sparse, LowRank, L1Ball>;

/// Structure set K together with the norm annulus {alpha <= ||u||_2 <= beta}.
class SignalModel {
 public:
  SignalModel(Structure structure, double alpha, double beta) : structure_(structure), alpha_(alpha), beta_(beta) {
    validate();
  }

  static SignalModel sparse(int k, int n, double alpha, double beta) { return {Sparse{k, n}, alpha, beta}; }
  static SignalModel low_rank(int rank, int n1, int n2, double alpha, double beta) {
    return {LowRank{rank, n1, n2}, alpha, beta};
  }
  static SignalModel l1_ball(double radius, int n, double alpha, double beta) {
    return {L1Ball{radius, n}, alpha, beta};
  }

  const Structure& structure() const noexcept { return structure_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  bool on_sphere() const noexcept { return alpha_ == beta_; }

  /// Sparse and low-rank sets are cones; the l1 ball is only star-shaped.
  bool is_cone() const noexcept { return !std::holds_alternative<L1Ball>(structure_); }

  Eigen::Index dim() const noexcept {
    return std::visit(
        [](const auto& s) -> Eigen::Index {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, LowRank>) return Eigen::Index{s.n1} * s.n2;
          else return s.n;
        },
        structure_);
  }

  /// Sparsity k, rank, or effective sparsity radius^2.
  double complexity() const noexcept {
    return std::visit(
        [](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Sparse>) return s.k;
          else if constexpr (std::is_same_v<T, LowRank>) return s.rank;
          else return s.effective_k();
        },
        structure_);
  }

 private:
  void validate() const {
    if (!(alpha_ >= 0.0) || !(beta_ >= alpha_) || !std::isfinite(beta_)) {
      throw ParameterError("signal model: need 0 <= alpha <= beta < inf");
    }
    std::visit(
        [](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Sparse>) {
            if (s.n < 1 || s.k < 1 || s.k > s.n) throw ParameterError("sparse model: need 1 <= k <= n");
          } else if constexpr (std::is_same_v<T, LowRank>) {
            if (s.n1 < 1 || s.n2 < 1 || s.rank < 1 || s.rank > std::min(s.n1, s.n2)) {
              throw ParameterError("low-rank model: need 1 <= rank <= min(n1, n2)");
            }
          } else {
            if (s.n < 1 || !(s.radius > 0.0) || !std::isfinite(s.radius)) {
              throw ParameterError("l1-ball model: need n >= 1 and a positive radius");
            }
          }
        },
        structure_);
  }

  Structure structure_;
  double alpha_;
  double beta_;
};

namespace detail {

inline void check_dim(const SignalModel& model, Eigen::Index size) {
  if (size != model.dim()) {
    throw DimensionError("vector has length " + std::to_string(size) + ", model expects " +
                         std::to_string(model.dim()));
  }
}

/// Indices of the `count` largest-magnitude entries; ties go to the lower index.
inline std::vector<Eigen::Index> top_magnitude_indices(const Eigen::Ref<const Vector>& u, Eigen::Index count) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(u.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  count = std::min(count, u.size());
  auto before = [&u](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(u[a]);
    const double mb = std::abs(u[b]);
    return ma > mb || (ma == mb && a < b);
  };
  std::nth_element(idx.begin(), idx.begin() + count, idx.end(), before);
  idx.resize(static_cast<std::size_t>(count));
  std::sort(idx.begin(), idx.end());
  return idx;
}

using ColMatrix = Eigen::MatrixXd;

inline ColMatrix reshape(const Eigen::Ref<const Vector>& u, int n1, int n2) {
  return Eigen::Map<const ColMatrix>(u.data(), n1, n2);
}

inline Vector vectorize(const ColMatrix& mat) { return Eigen::Map<const Vector>(mat.data(), mat.size()); }

/// Best rank-r approximation (singular values come out in descending order).
inline ColMatrix truncate_rank(const ColMatrix& mat, int rank) {
  Eigen::JacobiSVD<ColMatrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int r = std::min<int>(rank, static_cast<int>(svd.singularValues().size()));
  return svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal() *
         svd.matrixV().leftCols(r).transpose();
}

/// Euclidean projection onto {||x||_1 <= radius} by sorting magnitudes.
inline Vector project_l1_ball(const Eigen::Ref<const Vector>& u, double radius) {
  if (u.lpNorm<1>() <= radius) return u;
  std::vector<double> mags(static_cast<std::size_t>(u.size()));
  for (Eigen::Index i = 0; i < u.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(u[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    cumsum += mags[j];
    const double t = (cumsum - radius) / static_cast<double>(j + 1);
    if (mags[j] > t) theta = t;
    else break;
  }
  Vector out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double mag = std::max(std::abs(u[i]) - theta, 0.0);
    out[i] = std::copysign(mag, u[i]);
  }
  return out;
}

}  // namespace detail

/// Euclidean projection onto the structure set K.
inline Vector project_structure(const SignalModel& model, const Eigen::Ref<const Vector>& u) {
  detail::check_dim(model, u.size());
  return std::visit(
      [&u](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sparse>) {
          Vector out = Vector::Zero(u.size());
          for (auto i : detail::top_magnitude_indices(u, s.k)) out[i] = u[i];
          return out;
        } else if constexpr (std::is_same_v<T, LowRank>) {
          return detail::vectorize(detail::truncate_rank(detail::reshape(u, s.n1, s.n2), s.rank));
        } else {
          return detail::project_l1_ball(u, s.radius);
        }
      },
      model.structure());
}

/// Projection onto {alpha <= ||u||_2 <= beta}. Zero maps to alpha * e_1 when
/// alpha > 0.
inline Vector project_norm(double alpha, double beta, const Eigen::Ref<const Vector>& u) {
  if (!(alpha >= 0.0) || !(beta >= alpha)) throw ParameterError("project_norm: need 0 <= alpha <= beta");
  const double norm = u.norm();
  if (norm > beta) return u * (beta / norm);
  if (norm >= alpha) return u;
  if (norm > 0.0) return u * (alpha / norm);
  Vector out = Vector::Zero(u.size());
  if (u.size() > 0) out[0] = alpha;
  return out;
}

inline Vector project_norm(const SignalModel& model, const Eigen::Ref<const Vector>& u) {
  return project_norm(model.alpha(), model.beta(), u);
}

/// Whether u lies in K intersected with the annulus, up to `tol`.
inline bool contains(const SignalModel& model, const Eigen::Ref<const Vector>& u, double tol = 1e-9) {
  if (u.size() != model.dim()) return false;
  const double norm = u.norm();
  if (norm < model.alpha() - tol || norm > model.beta() + tol) return false;
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sparse>) {
          return (u.array() != 0.0).count() <= s.k;
        } else if constexpr (std::is_same_v<T, LowRank>) {
          Eigen::JacobiSVD<detail::ColMatrix> svd(detail::reshape(u, s.n1, s.n2));
          const auto& sv = svd.singularValues();
          return s.rank >= sv.size() || sv[s.rank] <= tol * std::max(1.0, sv[0]);
        } else {
          return u.template lpNorm<1>() <= s.radius * (1.0 + tol) + tol;
        }
      },
      model.structure());
}

/// Draws a test signal from the model.
///
/// Sparse: uniform random support, Gaussian entries. Low-rank: Gaussian matrix
/// truncated to the target rank. Both are normalized to unit norm. L1 ball:
/// c ~ U{1..ceil(0.6k)} entries of magnitude a, the rest of magnitude b, random
/// signs, which gives ||x||_2 = 1 and ||x||_1 = sqrt(k).
///
/// On a sphere model the unit-norm signal is scaled to norm alpha; otherwise
/// its norm is drawn from U([alpha, beta]).
inline Vector gen_signal(const SignalModel& model, std::uint64_t seed) {
  auto eng = make_stream(seed, "signal");
  std::normal_distribution<double> normal(0.0, 1.0);

  Vector x = std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sparse>) {
          std::vector<int> all(static_cast<std::size_t>(s.n));
          std::iota(all.begin(), all.end(), 0);
          std::vector<int> support;
          std::sample(all.begin(), all.end(), std::back_inserter(support), s.k, eng);
          Vector v = Vector::Zero(s.n);
          for (int i : support) {
            double g = 0.0;
            while (g == 0.0) g = normal(eng);
            v[i] = g;
          }
          return v / v.norm();
        } else if constexpr (std::is_same_v<T, LowRank>) {
          detail::ColMatrix g(s.n1, s.n2);
          for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(eng);
          Vector v = detail::vectorize(detail::truncate_rank(g, s.rank));
          return v / v.norm();
        } else {
          const double k = s.effective_k();
          const double n = s.n;
          const int c_max = std::max(1, std::min(s.n, static_cast<int>(std::ceil(0.6 * k - 1e-12))));
          std::uniform_int_distribution<int> pick_c(1, c_max);
          double a = 0.0;
          double b = -1.0;
          int c = 1;
          for (int attempt = 0; attempt < 1000 && (b < 0.0 || !std::isfinite(a)); ++attempt) {
            c = pick_c(eng);
            if (c == s.n) {
              a = 1.0 / std::sqrt(n);
              b = 0.0;
              break;
            }
            a = (std::sqrt(k) + std::sqrt(k + n * (n - k - c) / c)) / n;
            b = (std::sqrt(k) - c * a) / (n - c);
          }
          if (b < 0.0 || !std::isfinite(a)) {
            throw ParameterError("l1-ball generator: no admissible split for this (n, k)");
          }
          std::bernoulli_distribution coin(0.5);
          Vector v(s.n);
          for (int i = 0; i < s.n; ++i) v[i] = (coin(eng) ? 1.0 : -1.0) * (i < c ? a : b);
          return v;
        }
      },
      model.structure());

  if (model.on_sphere()) return x * model.alpha();
  std::uniform_real_distribution<double> radius(model.alpha(), model.beta());
  return x * radius(eng);
}

/// sup <w, z> over w in (K - K) intersected with the phi-ball.
///
/// Sparse: phi times the l2 norm of the 2k largest entries of z. Low-rank:
/// phi times the l2 norm of the top 2*rank singular values. Not available for
/// the l1 ball.
inline double restricted_dual_norm(const SignalModel& model, const Eigen::Ref<const Vector>& z, double phi) {
  if (!(phi > 0.0)) throw ParameterError("restricted_dual_norm: phi must be positive");
  detail::check_dim(model, z.size());
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sparse>) {
          double sq = 0.0;
          for (auto i : detail::top_magnitude_indices(z, 2 * Eigen::Index{s.k})) sq += z[i] * z[i];
          return phi * std::sqrt(sq);
        } else if constexpr (std::is_same_v<T, LowRank>) {
          Eigen::JacobiSVD<detail::ColMatrix> svd(detail::reshape(z, s.n1, s.n2));
          const auto& sv = svd.singularValues();
          const Eigen::Index r = std::min<Eigen::Index>(2 * Eigen::Index{s.rank}, sv.size());
          return phi * sv.head(r).norm();
        } else {
          throw UnsupportedModel("restricted_dual_norm: no closed form for the l1-ball model");
        }
      },
      model.structure());
}

}  // namespace qcs
