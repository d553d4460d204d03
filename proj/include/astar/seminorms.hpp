#ifndef ASTAR_SEMINORMS_HPP
#define ASTAR_SEMINORMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "astar/detail/parallel.hpp"
#include "astar/linalg.hpp"
#include "astar/weight.hpp"

namespace astar {

struct SolverConfig {
  int random_starts = 32;
  int max_iter = 500;
  std::uint64_t rng_seed = 0;
  /// Riemannian gradient norm (relative to 1 + ||y||^2) below which a start
  /// counts as stationary.
  double refine_tol = 1e-12;
  /// Angle grid of the numerical-radius seed.
  int numradius_angles = 720;
  int threads = detail::threads_from_env();
};

struct NormResult {
  double value = 0.0;
  StateWitness witness;
  double lambda = 1.0;
  int iterations = 0;
  int starts_used = 0;
  bool converged = true;
};

struct RangeBoundary {
  std::vector<Complex> points;
  std::vector<double> angles;
  /// Unit vector of the supporting state at each angle; points[k] = u* y u.
  std::vector<Vector> vectors;
};

inline void require_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

/// lambda phi(x* a x) + (1 - lambda) |phi(a x)|^2 evaluated on the original
/// (unreduced) matrices.
inline double state_objective(const Weight& w, double lambda, const ComplexMatrix& x, const StateWitness& s) {
  const ComplexMatrix ax = w.a() * x;
  const double quad = s.evaluate(x.adjoint() * ax).real();
  return lambda * quad + (1.0 - lambda) * std::norm(s.evaluate(ax));
}

namespace detail {

/// f(u) = lambda ||y u||^2 + (1 - lambda) |u* y u|^2 on the unit sphere.
struct SphereObjective {
  const ComplexMatrix& y;
  const ComplexMatrix& y_adj;
  double lambda;

  double value(std::span<const Complex> u) const {
    const Vector yu = y * u;
    const Complex g = inner(u, yu);
    double s = 0.0;
    for (const auto& z : yu) s += std::norm(z);
    return lambda * s + (1.0 - lambda) * std::norm(g);
  }

  /// lambda y*y u + (1 - lambda)(conj(g) y u + g y* u), the derivative of f
  /// with respect to conj(u).
  Vector direction(std::span<const Complex> u) const {
    const Vector yu = y * u;
    const Vector ytu = y_adj * u;
    const Vector yyu = y_adj * std::span<const Complex>(yu);
    const Complex g = inner(u, yu);
    Vector d(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      d[i] = lambda * yyu[i] + (1.0 - lambda) * (std::conj(g) * yu[i] + g * ytu[i]);
    }
    return d;
  }
};

struct AscentResult {
  Vector u;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline void normalize(Vector& v) {
  const double r = norm2(v);
  for (auto& z : v) z /= r;
}

inline double spectral_norm_sq(const ComplexMatrix& y) {
  return std::max(0.0, herm_eig((y.adjoint() * y).hermitian_part()).max());
}

/// Monotone ascent u <- normalize(u + eta d) with backtracking. eta starts
/// at 1 / (2 ||y||^2 + 1), halves on failure and doubles after success.
inline AscentResult sphere_ascent(const SphereObjective& obj, Vector u, int max_iter, double eta0,
                                  double refine_tol) {
  normalize(u);
  AscentResult r{std::move(u), 0.0, 0, false};
  r.f = obj.value(r.u);
  const double eta_max = eta0 * 1e6;
  const double eta_min = eta0 * 1e-18;
  const double grad_scale = refine_tol * (1.0 + 1.0 / eta0);
  double eta = eta0;
  Vector cand(r.u.size());
  for (; r.iterations < max_iter; ++r.iterations) {
    const Vector d = obj.direction(r.u);
    const Complex ud = inner(r.u, d);
    double tangent = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) tangent += std::norm(d[i] - ud * r.u[i]);
    if (std::sqrt(tangent) <= grad_scale) {
      r.converged = true;
      break;
    }
    double fc = r.f;
    bool accepted = false;
    while (eta >= eta_min) {
      for (std::size_t i = 0; i < d.size(); ++i) cand[i] = r.u[i] + eta * d[i];
      normalize(cand);
      fc = obj.value(cand);
      if (fc > r.f) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {  // no ascent at working precision
      r.converged = true;
      break;
    }
    const double gain = fc - r.f;
    std::swap(r.u, cand);
    r.f = fc;
    eta = std::min(2.0 * eta, eta_max);
    if (gain < 1e-14 * (1.0 + r.f)) {
      r.converged = true;
      ++r.iterations;
      break;
    }
  }
  return r;
}

/// Complex-Gaussian direction normalized to the unit sphere.
inline Vector random_unit_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (auto& z : v) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = Complex(re, im);
  }
  normalize(v);
  return v;
}

/// (e^{i theta} y + e^{-i theta} y*) / 2
inline ComplexMatrix rotated_real_part(const ComplexMatrix& y, double theta) {
  const Complex e = std::polar(1.0, theta);
  const std::size_t n = y.size();
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (e * y(i, j) + std::conj(e * y(j, i)));
  return h;
}

struct SupportResult {
  double value = 0.0;
  double theta = 0.0;
  Vector u;
};

/// max over theta of lambda_max(Re(e^{i theta} y)): grid then golden
/// section around the best grid angle until the bracket is below 1e-10.
inline SupportResult numerical_radius(const ComplexMatrix& y, int n_angles) {
  const double two_pi = 2.0 * std::numbers::pi;
  auto support = [&](double theta) { return herm_eig(rotated_real_part(y, theta)).max(); };
  const int m = std::max(n_angles, 1);
  double best_theta = 0.0;
  double best = support(0.0);
  for (int k = 1; k < m; ++k) {
    const double t = two_pi * k / m;
    const double s = support(t);
    if (s > best) {
      best = s;
      best_theta = t;
    }
  }
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - two_pi / m;
  double hi = best_theta + two_pi / m;
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = support(c);
  double fd = support(d);
  while (hi - lo > 1e-10) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = support(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = support(d);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = support(mid);
  if (fmid > best) {
    best = fmid;
    best_theta = mid;
  }
  best_theta = std::fmod(best_theta, two_pi);
  if (best_theta < 0.0) best_theta += two_pi;
  SupportResult r;
  const HermEig eig = herm_eig(rotated_real_part(y, best_theta));
  r.value = std::max(0.0, eig.max());
  r.theta = best_theta;
  r.u = eig.top_vector();
  return r;
}

struct Multistart {
  std::vector<AscentResult> runs;
  std::size_t best = 0;

  const AscentResult& winner() const { return runs[best]; }
};

/// Seeds shared by every multistart: the top singular vector of y, the top
/// eigenvectors of Re(e^{i theta} y) for 8 angles, then `extra`.
inline std::vector<Vector> standard_seeds(const ComplexMatrix& y, const ComplexMatrix& y_adj) {
  std::vector<Vector> seeds;
  seeds.push_back(herm_eig((y_adj * y).hermitian_part()).top_vector());
  for (int k = 0; k < 8; ++k) {
    seeds.push_back(herm_eig(rotated_real_part(y, 2.0 * std::numbers::pi * k / 8.0)).top_vector());
  }
  return seeds;
}

/// Multistart ascent of f over the unit sphere from the given seeds plus
/// cfg.random_starts random vectors. The winner is the first start (in seed
/// order) attaining the largest f.
inline Multistart maximize_on_sphere(const ComplexMatrix& y, double lambda, const SolverConfig& cfg,
                                     std::vector<Vector> seeds) {
  const ComplexMatrix y_adj = y.adjoint();
  const double norm_sq = spectral_norm_sq(y);
  const double eta0 = 1.0 / (2.0 * norm_sq + 1.0);
  std::mt19937_64 rng(cfg.rng_seed);
  for (int k = 0; k < cfg.random_starts; ++k) seeds.push_back(random_unit_vector(y.size(), rng));

  const SphereObjective obj{y, y_adj, lambda};
  Multistart ms;
  ms.runs.resize(seeds.size());
  parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
    ms.runs[i] = sphere_ascent(obj, seeds[i], cfg.max_iter, eta0, cfg.refine_tol);
  });
  for (std::size_t i = 1; i < ms.runs.size(); ++i)
    if (ms.runs[i].f > ms.runs[ms.best].f) ms.best = i;
  return ms;
}

inline NormResult make_result(const Weight& w, double lambda, const Multistart& ms) {
  const AscentResult& top = ms.winner();
  NormResult r;
  r.value = std::sqrt(std::max(0.0, top.f));
  r.witness = state_from_unit_vector(w, top.u);
  r.lambda = lambda;
  r.iterations = top.iterations;
  r.starts_used = static_cast<int>(ms.runs.size());
  r.converged = top.converged;
  return r;
}

}  // namespace detail

/// ||x||_a: the largest singular value of the reduced element.
inline NormResult a_norm(const Weight& w, const ComplexMatrix& x) {
  const ComplexMatrix y = reduce(w, x);
  const HermEig eig = herm_eig((y.adjoint() * y).hermitian_part());
  NormResult r;
  r.value = std::sqrt(std::max(0.0, eig.max()));
  r.witness = state_from_unit_vector(w, eig.top_vector());
  r.lambda = 1.0;
  r.starts_used = 1;
  return r;
}

/// v_a(x), the largest modulus of the a-numerical range.
inline NormResult a_numradius(const Weight& w, const ComplexMatrix& x, int n_angles = 720) {
  const detail::SupportResult s = detail::numerical_radius(reduce(w, x), n_angles);
  NormResult r;
  r.value = s.value;
  r.witness = state_from_unit_vector(w, s.u);
  r.lambda = 0.0;
  r.starts_used = 1;
  return r;
}

/// Boundary polyline of V_a(x): for each angle theta on a uniform grid the
/// support point u* y u, u a top eigenvector of Re(e^{-i theta} y).
inline RangeBoundary a_numrange_boundary(const Weight& w, const ComplexMatrix& x, int n_angles) {
  if (n_angles < 8) throw Error(ErrorCode::InvalidArgument, "n_angles must be at least 8");
  const ComplexMatrix y = reduce(w, x);
  RangeBoundary b;
  b.points.reserve(n_angles);
  for (int k = 0; k < n_angles; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_angles;
    Vector u = herm_eig(detail::rotated_real_part(y, -theta)).top_vector();
    b.points.push_back(quadratic_form(y, u));
    b.angles.push_back(theta);
    b.vectors.push_back(std::move(u));
  }
  return b;
}

/// ||x||_{a,lambda} by multistart ascent on the reduced element.
///
/// Starts: the top singular vector of y, the maximizer of the numerical
/// radius, top eigenvectors of Re(e^{i theta} y) at 8 angles and
/// cfg.random_starts seeded random vectors. The result is therefore never
/// below v_a(x) and never above ||x||_a. Global optimality is not certified;
/// `converged` reports whether the winning start reached stationarity.
inline NormResult al_norm(const Weight& w, double lambda, const ComplexMatrix& x, const SolverConfig& cfg = {}) {
  require_lambda(lambda);
  const ComplexMatrix y = reduce(w, x);
  std::vector<Vector> seeds = detail::standard_seeds(y, y.adjoint());
  seeds.insert(seeds.begin() + 1, detail::numerical_radius(y, cfg.numradius_angles).u);
  return detail::make_result(w, lambda, detail::maximize_on_sphere(y, lambda, cfg, std::move(seeds)));
}

/// ||x + coeff y||_{a,lambda}
inline NormResult al_norm_of_sum(const Weight& w, double lambda, const ComplexMatrix& x, const ComplexMatrix& y,
                                 Complex coeff, const SolverConfig& cfg = {}) {
  x.require_same(y);
  return al_norm(w, lambda, x + coeff * y, cfg);
}

}  // namespace astar

#endif  // ASTAR_SEMINORMS_HPP
