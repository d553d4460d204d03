#ifndef ASTAR_ORACLE_HPP
#define ASTAR_ORACLE_HPP

// Brute-force references for the solvers in seminorms.hpp and geometry.hpp.
// Sampling works on states phi(z) = v* z v / v* a v built straight from the
// weight, and local polishing runs in Cholesky coordinates a = L L*, so no
// code path is shared with the eigen-based reduction except the ascent rule.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "astar/seminorms.hpp"

namespace astar::oracle {

struct OracleConfig {
  int n_samples = 200000;
  std::uint64_t rng_seed = 42;
  int polish_steps = 200;
  /// Samples per inner norm evaluation inside the xi / mu grids, and how
  /// many of the best ones get polished.
  int inner_samples = 512;
  int inner_polish = 4;
  int n_radii = 24;
  int n_theta = 128;
  int n_mu = 720;
};

inline constexpr std::size_t max_dim = 4;

namespace detail {

inline void check(const Weight& w, const ComplexMatrix& x, const OracleConfig& cfg) {
  require_dims(w, x);
  if (x.size() > max_dim) throw Error(ErrorCode::DimensionTooLarge, "oracles are limited to n <= 4");
  if (cfg.n_samples < 1000) throw Error(ErrorCode::InvalidArgument, "n_samples must be at least 1000");
}

/// Lower-triangular L with a = L L*.
inline ComplexMatrix cholesky(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  ComplexMatrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "Cholesky pivot is not positive");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / l(j, j).real();
    }
  }
  return l;
}

inline ComplexMatrix lower_inverse(const ComplexMatrix& l) {
  const std::size_t n = l.size();
  ComplexMatrix inv(n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s{};
      for (std::size_t k = j; k < i; ++k) s += l(i, k) * inv(k, j);
      inv(i, j) = -s / l(i, i);
    }
  }
  return inv;
}

/// x -> L* x L^{-*}; the standard sphere objective of the image equals the
/// weighted objective of x.
class CholeskyFrame {
 public:
  explicit CholeskyFrame(const ComplexMatrix& a) {
    const ComplexMatrix l = cholesky(a);
    l_adj_ = l.adjoint();
    l_inv_adj_ = lower_inverse(l).adjoint();
  }
  ComplexMatrix map(const ComplexMatrix& x) const { return l_adj_ * x * l_inv_adj_; }
  const ComplexMatrix& l_adj() const noexcept { return l_adj_; }

 private:
  ComplexMatrix l_adj_, l_inv_adj_;
};

/// Objective of the state v* z v / v* a v, evaluated directly from a, a x
/// and x* a x.
class StateEvaluator {
 public:
  StateEvaluator(const ComplexMatrix& a, const ComplexMatrix& x, double lambda)
      : a_(a), ax_(a * x), xax_(x.adjoint() * ax_), lambda_(lambda) {}

  double operator()(std::span<const Complex> v) const {
    const double norm_a = form(a_, v).real();
    const double quad = form(xax_, v).real();
    const Complex lin = form(ax_, v);
    return (lambda_ * quad * norm_a + (1.0 - lambda_) * std::norm(lin)) / (norm_a * norm_a);
  }

 private:
  static Complex form(const ComplexMatrix& m, std::span<const Complex> v) {
    Complex s{};
    for (std::size_t i = 0; i < v.size(); ++i) {
      Complex row{};
      for (std::size_t j = 0; j < v.size(); ++j) row += m(i, j) * v[j];
      s += std::conj(v[i]) * row;
    }
    return s;
  }

  ComplexMatrix a_, ax_, xax_;
  double lambda_;
};

inline double polish(const ComplexMatrix& y, double lambda, Vector u, int steps) {
  const ComplexMatrix y_adj = y.adjoint();
  const astar::detail::SphereObjective obj{y, y_adj, lambda};
  const double eta0 = 1.0 / (2.0 * astar::detail::spectral_norm_sq(y) + 1.0);
  return astar::detail::sphere_ascent(obj, std::move(u), steps, eta0, 0.0).f;
}

inline std::vector<Vector> sample_sphere(std::size_t n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(astar::detail::random_unit_vector(n, rng));
  return out;
}

/// Norm of a Cholesky-frame image from a fixed sample set; the best
/// `polish_count` samples are each polished by local ascent.
inline double sampled_norm(const ComplexMatrix& y, double lambda, const std::vector<Vector>& samples, int steps,
                           int polish_count) {
  const ComplexMatrix y_adj = y.adjoint();
  const astar::detail::SphereObjective obj{y, y_adj, lambda};
  std::vector<std::pair<double, std::size_t>> scored(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) scored[k] = {obj.value(samples[k]), k};
  const std::size_t top = std::min<std::size_t>(std::max(polish_count, 1), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + top, scored.end(),
                    [](const auto& l, const auto& r) { return l.first > r.first || (l.first == r.first && l.second < r.second); });
  double best = scored.front().first;
  for (std::size_t k = 0; k < top; ++k) best = std::max(best, polish(y, lambda, samples[scored[k].second], steps));
  return std::sqrt(std::max(0.0, best));
}

}  // namespace detail

/// max over sampled a-unit states of the (a, lambda) objective, polished by
/// local ascent from the best sample. Returns the norm (square root).
inline double sphere_sample_max(const Weight& w, double lambda, const ComplexMatrix& x, const OracleConfig& cfg = {}) {
  require_lambda(lambda);
  detail::check(w, x, cfg);
  const std::size_t n = x.size();
  std::mt19937_64 rng(cfg.rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const detail::StateEvaluator state_value(w.a(), x, lambda);
  Vector v(n);
  Vector best_v(n);
  double best_f = -1.0;
  for (int k = 0; k < cfg.n_samples; ++k) {
    for (auto& z : v) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z = Complex(re, im);
    }
    const double f = state_value(v);
    if (f > best_f) {
      best_f = f;
      best_v = v;
    }
  }
  // Move the best sample into Cholesky coordinates, u = L* v / ||L* v||.
  const detail::CholeskyFrame frame(w.a());
  Vector u = frame.l_adj() * std::span<const Complex>(best_v);
  astar::detail::normalize(u);
  const double polished = detail::polish(frame.map(x), lambda, std::move(u), cfg.polish_steps);
  return std::sqrt(std::max({0.0, best_f, polished}));
}

/// min over a polar grid xi = r e^{i theta} (r = 0 plus a geometric ladder up
/// to 4 ||x|| / ||y||) of ||x + xi y||, followed by compass-search polish.
/// Returns (min value, argmin xi).
inline std::pair<double, Complex> grid_min_xi(const Weight& w, double lambda, const ComplexMatrix& x,
                                              const ComplexMatrix& y, const OracleConfig& cfg = {}) {
  require_lambda(lambda);
  detail::check(w, x, cfg);
  detail::check(w, y, cfg);
  const double ny = sphere_sample_max(w, lambda, y, cfg);
  if (ny <= 1e-12) throw Error(ErrorCode::ZeroDirection, "||y|| vanishes");
  const double nx = sphere_sample_max(w, lambda, x, cfg);

  const detail::CholeskyFrame frame(w.a());
  const ComplexMatrix xc = frame.map(x);
  const ComplexMatrix yc = frame.map(y);
  const auto samples = detail::sample_sphere(x.size(), cfg.inner_samples, cfg.rng_seed + 1);
  auto g = [&](Complex xi) { return detail::sampled_norm(xc + xi * yc, lambda, samples, cfg.polish_steps, cfg.inner_polish); };

  const double r_max = 4.0 * nx / ny;
  Complex best_xi{};
  double best = nx;
  for (int j = 1; j <= cfg.n_radii; ++j) {
    const double r = r_max * std::pow(10.0, -4.0 * (cfg.n_radii - j) / std::max(1, cfg.n_radii - 1));
    for (int k = 0; k < cfg.n_theta; ++k) {
      const Complex xi = std::polar(r, 2.0 * std::numbers::pi * k / cfg.n_theta);
      const double v = g(xi);
      if (v < best - 1e-14 * (1.0 + best)) {
        best = v;
        best_xi = xi;
      }
    }
  }
  double step = std::max(std::abs(best_xi), r_max * 1e-4) * 0.1;
  const Complex dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (step > 1e-10 * (1.0 + std::abs(best_xi))) {
    bool moved = false;
    for (const Complex d : dirs) {
      const Complex cand = best_xi + step * d;
      const double v = g(cand);
      if (v < best - 1e-14 * (1.0 + best)) {
        best = v;
        best_xi = cand;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  if (best_xi != Complex{}) best = std::max(best, sphere_sample_max(w, lambda, x + best_xi * y, cfg));
  return {std::min(best, nx), best_xi};
}

/// max over a uniform mu = e^{i theta} grid of ||x + mu y||, refined by
/// golden section around the best angle. Returns (max value, argmax mu).
inline std::pair<double, Complex> grid_max_mu(const Weight& w, double lambda, const ComplexMatrix& x,
                                              const ComplexMatrix& y, const OracleConfig& cfg = {}) {
  require_lambda(lambda);
  detail::check(w, x, cfg);
  detail::check(w, y, cfg);
  const detail::CholeskyFrame frame(w.a());
  const ComplexMatrix xc = frame.map(x);
  const ComplexMatrix yc = frame.map(y);
  const auto samples = detail::sample_sphere(x.size(), cfg.inner_samples, cfg.rng_seed + 2);
  auto g = [&](double theta) {
    return detail::sampled_norm(xc + std::polar(1.0, theta) * yc, lambda, samples, cfg.polish_steps, cfg.inner_polish);
  };
  const double two_pi = 2.0 * std::numbers::pi;
  double best_theta = 0.0;
  double best = g(0.0);
  for (int k = 1; k < cfg.n_mu; ++k) {
    const double t = two_pi * k / cfg.n_mu;
    const double v = g(t);
    if (v > best) {
      best = v;
      best_theta = t;
    }
  }
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - two_pi / cfg.n_mu;
  double hi = best_theta + two_pi / cfg.n_mu;
  while (hi - lo > 1e-10) {
    const double c = hi - phi * (hi - lo);
    const double d = lo + phi * (hi - lo);
    if (g(c) >= g(d)) hi = d;
    else lo = c;
  }
  const double mid = 0.5 * (lo + hi);
  const double v = g(mid);
  if (v > best) {
    best = v;
    best_theta = mid;
  }
  const Complex mu = std::polar(1.0, best_theta);
  best = std::max(best, sphere_sample_max(w, lambda, x + mu * y, cfg));
  return {best, mu};
}

}  // namespace astar::oracle

#endif  // ASTAR_ORACLE_HPP
