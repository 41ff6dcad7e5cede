#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "qcs/error.hpp"
#include "qcs/quantizer.hpp"
#include "qcs/sensing.hpp"
#include "qcs/signal_model.hpp"

// Brute-force and Monte-Carlo references. Nothing here calls into the PGD
// code paths they are used to check.

namespace qcs::oracles {

struct CandidateNet {
  std::vector<Vector> points;
  /// Target covering radius.
  double radius = 0.0;
  SignalModel model;
  /// True when every member of the signal set is within `radius` of a point.
  bool exact = false;
};

struct NetOptions {
  /// Exact nets are built only up to this ambient dimension.
  Eigen::Index max_exact_dim = 12;
  /// Size of the random net used when no exact construction applies.
  std::size_t random_points = 10000;
  /// Hard cap on any net.
  std::size_t max_points = 2'000'000;
  std::uint64_t seed = 0;
};

/// Finite candidate set for exhaustive decoding.
///
/// For k <= 2 sparse models on a sphere of radius rho in dimension at most
/// `max_exact_dim` the net is exact: k = 1 gives the 2n points +-rho e_i (the
/// whole signal set); k = 2 places ceil(2 pi rho / r) equally spaced points on
/// the circle of every coordinate pair, so arc spacing, and hence covering
/// radius, is at most r. Every other model falls back to `random_points` draws
/// of gen_signal, marked as not exact.
inline CandidateNet enumerate_net(const SignalModel& model, double r, const NetOptions& opts = {}) {
  if (!(r > 0.0)) throw ParameterError("enumerate_net: radius must be positive");
  CandidateNet net{{}, r, model, false};
  const auto* sparse = std::get_if<Sparse>(&model.structure());
  const bool exact_ok = sparse && model.on_sphere() && model.alpha() > 0.0 && sparse->k <= 2 &&
                        model.dim() <= opts.max_exact_dim;
  if (exact_ok) {
    const int n = sparse->n;
    const double rho = model.alpha();
    if (sparse->k == 1 || n == 1) {
      for (int i = 0; i < n; ++i) {
        for (double s : {1.0, -1.0}) {
          Vector p = Vector::Zero(n);
          p[i] = s * rho;
          net.points.push_back(std::move(p));
        }
      }
    } else {
      const auto angles = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi * rho / r - 1e-12));
      const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
      if (angles * pairs > opts.max_points) throw ResourceLimit("enumerate_net: net too large");
      net.points.reserve(angles * pairs);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          for (std::size_t a = 0; a < angles; ++a) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(angles);
            Vector p = Vector::Zero(n);
            p[i] = rho * std::cos(theta);
            p[j] = rho * std::sin(theta);
            net.points.push_back(std::move(p));
          }
        }
      }
    }
    net.exact = true;
    return net;
  }
  if (opts.random_points > opts.max_points) throw ResourceLimit("enumerate_net: net too large");
  net.points.reserve(opts.random_points);
  for (std::size_t i = 0; i < opts.random_points; ++i) {
    net.points.push_back(gen_signal(model, hash64(opts.seed, i)));
  }
  return net;
}

struct HdmResult {
  Vector point;
  std::size_t index = 0;
  std::int64_t hamming = 0;
};

/// argmin over the net of d_H(Q(Au - tau), y); the first minimizer wins.
inline HdmResult hdm_decode(const CandidateNet& net, const QuantizerSpec& spec, const SensingInstance& inst,
                            const Eigen::Ref<const Vector>& y) {
  if (net.points.empty()) throw ParameterError("hdm_decode: empty net");
  if (y.size() != inst.rows()) throw DimensionError("hdm_decode: measurement length mismatch");
  const Eigen::Index m = inst.rows();
  const Eigen::Index n = inst.cols();
  constexpr std::size_t block = 256;

  HdmResult best;
  best.hamming = std::numeric_limits<std::int64_t>::max();
  Eigen::MatrixXd cand;
  Eigen::MatrixXd resp;
  for (std::size_t start = 0; start < net.points.size(); start += block) {
    const std::size_t count = std::min(block, net.points.size() - start);
    cand.resize(n, static_cast<Eigen::Index>(count));
    for (std::size_t c = 0; c < count; ++c) {
      if (net.points[start + c].size() != n) throw DimensionError("hdm_decode: net point length mismatch");
      cand.col(static_cast<Eigen::Index>(c)) = net.points[start + c];
    }
    resp.noalias() = inst.matrix * cand;
    for (std::size_t c = 0; c < count; ++c) {
      std::int64_t d = 0;
      const auto col = resp.col(static_cast<Eigen::Index>(c));
      for (Eigen::Index i = 0; i < m; ++i) d += spec(col[i] - inst.dither[i]) != y[i] ? 1 : 0;
      if (d < best.hamming) {
        best.hamming = d;
        best.index = start + c;
      }
    }
  }
  best.point = net.points[best.index];
  return best;
}

struct ProbabilityEstimate {
  double p = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo estimate of P(Q(<a,u> - tau) != Q(<a,v> - tau)) over fresh
/// draws of a row a and dither tau. Samples are generated in fixed-size chunks,
/// each from its own indexed stream.
inline ProbabilityEstimate estimate_puv(const QuantizerSpec& spec, MatrixKind matrix_kind, DitherKind dither,
                                        const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& v,
                                        std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw ParameterError("estimate_puv: samples must be >= 1");
  if (u.size() != v.size()) throw DimensionError("estimate_puv: length mismatch");
  constexpr std::int64_t chunk = 4096;
  const Eigen::Index n = u.size();
  std::int64_t hits = 0;
  Matrix rows;
  for (std::int64_t start = 0, c = 0; start < samples; start += chunk, ++c) {
    const std::int64_t count = std::min(chunk, samples - start);
    auto eng = make_stream(seed, "puv", c);
    rows.resize(count, n);
    detail::fill_matrix(rows, matrix_kind, eng);
    const Vector au = rows * u;
    const Vector av = rows * v;
    std::uniform_real_distribution<double> unif(-dither.lambda(), dither.lambda());
    for (std::int64_t i = 0; i < count; ++i) {
      const double tau = dither.lambda() > 0.0 ? unif(eng) : 0.0;
      hits += spec(au[i] - tau) != spec(av[i] - tau) ? 1 : 0;
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

/// arccos(<u, v>) / pi for unit vectors: the probability that a Gaussian
/// hyperplane through the origin separates u and v.
inline double geodesic_puv(const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& v) {
  if (u.size() != v.size()) throw DimensionError("geodesic_puv: length mismatch");
  if (std::abs(u.norm() - 1.0) > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9) {
    throw ParameterError("geodesic_puv: inputs must be unit vectors");
  }
  return std::acos(std::clamp(u.dot(v), -1.0, 1.0)) / std::numbers::pi;
}

/// Projection onto k-sparse vectors by trying every support of size k.
/// Ties resolve to the lexicographically first support.
inline Vector exhaustive_sparse_projection(const Eigen::Ref<const Vector>& u, int k) {
  const auto n = static_cast<int>(u.size());
  if (k < 1 || k > n) throw ParameterError("exhaustive_sparse_projection: need 1 <= k <= n");
  if (n > 20) throw ResourceLimit("exhaustive_sparse_projection: n > 20");
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  Vector best;
  double best_dist = std::numeric_limits<double>::infinity();
  // prev_permutation over a bool mask walks supports in lexicographic order.
  do {
    Vector cand = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (pick[static_cast<std::size_t>(i)]) cand[i] = u[i];
    }
    const double dist = (cand - u).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = std::move(cand);
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

/// Primal-dual gap of a candidate projection p of u onto {||x||_1 <= radius}.
///
/// The Lagrange dual is g(lambda) = min_x 1/2||x-u||^2 + lambda(||x||_1 - radius),
/// attained at soft(u, lambda). lambda is read off the candidate itself, so a
/// wrong candidate shows up as a positive gap.
inline double l1_projection_gap(const Eigen::Ref<const Vector>& u, const Eigen::Ref<const Vector>& p,
                                double radius) {
  const double primal = 0.5 * (p - u).squaredNorm();
  double lambda = 0.0;
  if (u.lpNorm<1>() > radius) {
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (p[i] != 0.0) lambda = std::max(lambda, std::abs(u[i]) - std::abs(p[i]));
    }
  }
  double dual = -lambda * radius;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double s = std::copysign(std::max(std::abs(u[i]) - lambda, 0.0), u[i]);
    dual += 0.5 * (s - u[i]) * (s - u[i]) + lambda * std::abs(s);
  }
  return primal - dual;
}

}  // namespace qcs::oracles
