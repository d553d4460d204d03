#ifndef ASTAR_GEOMETRY_HPP
#define ASTAR_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "astar/seminorms.hpp"

namespace astar {

struct GeometryConfig {
  SolverConfig solver;
  /// Random starts per inner norm evaluation during mu / xi searches. The
  /// final value at the chosen mu / xi always uses solver.random_starts.
  int sweep_random_starts = 4;
  int n_mu = 360;
  int n_theta_witness = 64;
  double tol_decision = 1e-6;
};

/// Residuals of the state identities that certify a parallelism decision.
struct Certificate {
  double residual_pairing = 0.0;  ///< |lambda phi(x*ay) + (1-lambda) conj(phi(ax)) phi(ay) - conj(mu) ||x|| ||y|||
  double residual_x = 0.0;        ///< |lambda phi(x*ax) + (1-lambda)|phi(ax)|^2 - ||x||^2|
  double residual_y = 0.0;
};

struct ParallelResult {
  bool parallel = false;
  Complex mu{1.0, 0.0};
  /// 2 - max_mu ||x/||x|| + mu y/||y|| ||, the triangle defect after scaling
  /// both inputs to unit norm.
  double defect = 0.0;
  double norm_x = 0.0;
  double norm_y = 0.0;
  std::optional<StateWitness> witness;
  Certificate cert;
};

struct ThetaWitness {
  double theta = 0.0;
  StateWitness witness;
  double signed_real = 0.0;  ///< Re(e^{i theta} pairing(x, y))
  double residual_x = 0.0;
};

struct OrthoResult {
  bool orthogonal = false;
  double min_value = 0.0;
  Complex argmin_xi{};
  double norm_x = 0.0;
  /// 1 - min_xi ||x + xi y|| / ||x||
  double defect = 0.0;
  std::vector<ThetaWitness> theta_witnesses;
  std::vector<std::string> warnings;
};

/// lambda phi(x* a y) + (1 - lambda) conj(phi(a x)) phi(a y)
inline Complex state_pairing(const Weight& w, double lambda, const ComplexMatrix& x, const ComplexMatrix& y,
                             const StateWitness& s) {
  const ComplexMatrix ay = w.a() * y;
  const Complex cross = s.evaluate(x.adjoint() * ay);
  return lambda * cross + (1.0 - lambda) * std::conj(s.evaluate(w.a() * x)) * s.evaluate(ay);
}

namespace detail {

inline constexpr double zero_norm = 1e-14;

/// Same pairing in reduced coordinates for a standard unit vector u.
inline Complex reduced_pairing(const ComplexMatrix& xr, const ComplexMatrix& yr, double lambda,
                               std::span<const Complex> u) {
  const Vector xu = xr * u;
  const Vector yu = yr * u;
  return lambda * inner(xu, yu) + (1.0 - lambda) * std::conj(inner(u, xu)) * inner(u, yu);
}

/// Norm evaluations of affine combinations of two normalized reduced
/// elements, warm-started from the maximizers of each.
class PairEvaluator {
 public:
  PairEvaluator(ComplexMatrix xr, ComplexMatrix yr, double lambda, const GeometryConfig& cfg,
                std::vector<Vector> warm)
      : xr_(std::move(xr)), yr_(std::move(yr)), lambda_(lambda), cfg_(cfg), warm_(std::move(warm)) {
    sweep_ = cfg.solver;
    sweep_.random_starts = std::min(cfg.sweep_random_starts, cfg.solver.random_starts);
    sweep_.threads = 0;
  }

  ComplexMatrix combine(Complex coeff) const { return xr_ + coeff * yr_; }

  Multistart run(Complex coeff, bool full, std::span<const Vector> extra = {}) const {
    const ComplexMatrix z = combine(coeff);
    std::vector<Vector> seeds(warm_.begin(), warm_.end());
    seeds.insert(seeds.end(), extra.begin(), extra.end());
    const auto standard = standard_seeds(z, z.adjoint());
    seeds.insert(seeds.end(), standard.begin(), standard.end());
    if (full) seeds.push_back(numerical_radius(z, cfg_.solver.numradius_angles).u);
    return maximize_on_sphere(z, lambda_, full ? cfg_.solver : sweep_, std::move(seeds));
  }

  double value(Complex coeff) const { return std::sqrt(std::max(0.0, run(coeff, false).winner().f)); }

  const ComplexMatrix& xr() const { return xr_; }
  const ComplexMatrix& yr() const { return yr_; }

 private:
  ComplexMatrix xr_, yr_;
  double lambda_;
  const GeometryConfig& cfg_;
  SolverConfig sweep_;
  std::vector<Vector> warm_;
};

/// Golden-section maximization of f on [lo, hi] down to a bracket of `width`.
template <class F>
double golden_max(F&& f, double lo, double hi, double width) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

/// Nelder-Mead on R^2 = C with restarts from the incumbent.
template <class F>
std::pair<Complex, double> nelder_mead(F&& f, Complex start, double step, int max_evals) {
  struct Vertex {
    Complex p;
    double v;
  };
  int evals = 0;
  auto eval = [&](Complex p) {
    ++evals;
    return Vertex{p, f(p)};
  };
  Vertex best = eval(start);
  for (int restart = 0; restart < 5 && evals < max_evals; ++restart) {
    std::array<Vertex, 3> s{best, eval(best.p + step), eval(best.p + Complex(0.0, step))};
    auto order = [&] { std::sort(s.begin(), s.end(), [](const Vertex& l, const Vertex& r) { return l.v < r.v; }); };
    order();
    while (evals < max_evals) {
      const double diam = std::max(std::abs(s[1].p - s[0].p), std::abs(s[2].p - s[0].p));
      if (diam < 1e-9 * (1.0 + std::abs(s[0].p))) break;
      const Complex centroid = 0.5 * (s[0].p + s[1].p);
      const Vertex refl = eval(centroid + (centroid - s[2].p));
      if (refl.v < s[0].v) {
        const Vertex exp = eval(centroid + 2.0 * (centroid - s[2].p));
        s[2] = exp.v < refl.v ? exp : refl;
      } else if (refl.v < s[1].v) {
        s[2] = refl;
      } else {
        const bool outside = refl.v < s[2].v;
        const Vertex con = outside ? eval(centroid + 0.5 * (refl.p - centroid)) : eval(centroid + 0.5 * (s[2].p - centroid));
        if (con.v < (outside ? refl.v : s[2].v)) {
          s[2] = con;
        } else {
          s[1] = eval(s[0].p + 0.5 * (s[1].p - s[0].p));
          s[2] = eval(s[0].p + 0.5 * (s[2].p - s[0].p));
        }
      }
      order();
    }
    const double gain = best.v - s[0].v;
    const double diam = std::max(std::abs(s[1].p - s[0].p), std::abs(s[2].p - s[0].p));
    if (s[0].v < best.v) best = s[0];
    if (restart > 0 && gain <= 1e-13) break;
    step = std::max(10.0 * diam, 1e-4);
  }
  return {best.p, best.v};
}

}  // namespace detail

/// Decides x ||_{a,lambda} y: is there a unimodular mu with
/// ||x + mu y|| = ||x|| + ||y||?
///
/// Both inputs are scaled to unit norm (parallelism is invariant under
/// positive scaling), mu = e^{i theta} is swept over cfg.n_mu angles and the
/// best angle is refined by golden section to a bracket of 1e-10. The
/// maximizing state at the final mu fills the certificate, computed on the
/// original inputs.
inline ParallelResult is_parallel(const Weight& w, double lambda, const ComplexMatrix& x, const ComplexMatrix& y,
                                  const GeometryConfig& cfg = {}) {
  require_lambda(lambda);
  require_dims(w, x);
  require_dims(w, y);
  const NormResult nx = al_norm(w, lambda, x, cfg.solver);
  const NormResult ny = al_norm(w, lambda, y, cfg.solver);
  ParallelResult out;
  out.norm_x = nx.value;
  out.norm_y = ny.value;

  auto fill_certificate = [&](const StateWitness& s) {
    out.cert.residual_pairing =
        std::abs(state_pairing(w, lambda, x, y, s) - std::conj(out.mu) * nx.value * ny.value);
    out.cert.residual_x = std::abs(state_objective(w, lambda, x, s) - nx.value * nx.value);
    out.cert.residual_y = std::abs(state_objective(w, lambda, y, s) - ny.value * ny.value);
    out.witness = s;
  };

  if (nx.value <= detail::zero_norm || ny.value <= detail::zero_norm) {
    // 0 is parallel to everything.
    out.parallel = true;
    if (nx.value > detail::zero_norm) fill_certificate(nx.witness);
    if (ny.value > detail::zero_norm) fill_certificate(ny.witness);
    return out;
  }

  const double inv_nx = 1.0 / nx.value;
  const double inv_ny = 1.0 / ny.value;
  const detail::PairEvaluator eval(inv_nx * reduce(w, x), inv_ny * reduce(w, y), lambda, cfg,
                                   {nx.witness.u, ny.witness.u});
  const double two_pi = 2.0 * std::numbers::pi;
  const int m = std::max(cfg.n_mu, 1);
  std::vector<double> grid(m);
  detail::parallel_for(std::size_t(m), cfg.solver.threads,
                       [&](std::size_t k) { grid[k] = eval.value(std::polar(1.0, two_pi * double(k) / m)); });
  // Ties within rounding go to the smallest angle.
  const double grid_max = *std::max_element(grid.begin(), grid.end());
  std::size_t best_k = 0;
  while (grid[best_k] < grid_max - 1e-12) ++best_k;
  const double theta_grid = two_pi * double(best_k) / m;
  const double theta_refined = detail::golden_max(
      [&](double t) { return eval.value(std::polar(1.0, t)); }, theta_grid - two_pi / m, theta_grid + two_pi / m,
      1e-10);

  double best_value = -1.0;
  Vector best_u;
  for (double theta : {theta_grid, theta_refined}) {
    const detail::Multistart ms = eval.run(std::polar(1.0, theta), true);
    const double v = std::sqrt(std::max(0.0, ms.winner().f));
    if (v > best_value + 1e-15) {
      best_value = v;
      best_u = ms.winner().u;
      out.mu = std::polar(1.0, theta);
    }
  }
  out.defect = 2.0 - best_value;
  out.parallel = out.defect <= cfg.tol_decision;
  fill_certificate(state_from_unit_vector(w, best_u));
  return out;
}

/// a-numerical radius parallelism: the lambda = 0 case.
inline ParallelResult is_vrad_parallel(const Weight& w, const ComplexMatrix& x, const ComplexMatrix& y,
                                       const GeometryConfig& cfg = {}) {
  return is_parallel(w, 0.0, x, y, cfg);
}

namespace detail {

/// Best attaining state for the sign condition at angle theta, found by
/// maximizing ||x + t e^{i theta} y|| for t shrinking to 1e-8 from the
/// current pool. The limit state attains ||x|| and maximizes the signed
/// pairing among attaining states to first order in t.
inline Vector continuation_witness(const ComplexMatrix& xr, const ComplexMatrix& yr, double lambda, double theta,
                                   Vector start, const SolverConfig& cfg) {
  const Complex e = std::polar(1.0, theta);
  Vector u = std::move(start);
  for (double t = 1e-1; t >= 1e-8; t *= 0.1) {
    const ComplexMatrix z = xr + (t * e) * yr;
    const ComplexMatrix z_adj = z.adjoint();
    const SphereObjective obj{z, z_adj, lambda};
    const double eta0 = 1.0 / (2.0 * spectral_norm_sq(z) + 1.0);
    u = sphere_ascent(obj, std::move(u), cfg.max_iter, eta0, cfg.refine_tol).u;
  }
  return u;
}

}  // namespace detail

/// Decides x perp_{a,lambda} y: ||x + xi y|| >= ||x|| for every complex xi.
///
/// xi -> ||x + xi y|| is convex, so it is minimized by Nelder-Mead on C from
/// xi = 0 after scaling x and y to unit norm. Each evaluation is a multistart
/// sphere problem. For every angle of a cfg.n_theta_witness grid the result
/// also carries the norming state of x with the largest signed pairing
/// Re(e^{i theta}(lambda phi(x*ay) + (1-lambda) conj(phi(ax)) phi(ay))).
inline OrthoResult is_orthogonal(const Weight& w, double lambda, const ComplexMatrix& x, const ComplexMatrix& y,
                                 const GeometryConfig& cfg = {}) {
  require_lambda(lambda);
  require_dims(w, x);
  require_dims(w, y);
  OrthoResult out;
  const ComplexMatrix xr = reduce(w, x);
  const ComplexMatrix yr = reduce(w, y);

  std::vector<Vector> seeds = detail::standard_seeds(xr, xr.adjoint());
  seeds.insert(seeds.begin() + 1, detail::numerical_radius(xr, cfg.solver.numradius_angles).u);
  const detail::Multistart xs = detail::maximize_on_sphere(xr, lambda, cfg.solver, std::move(seeds));
  const double fx = xs.winner().f;
  const double nx = std::sqrt(std::max(0.0, fx));
  out.norm_x = nx;
  out.min_value = nx;
  if (nx <= detail::zero_norm) {
    out.orthogonal = true;
    return out;
  }
  const NormResult ny = al_norm(w, lambda, y, cfg.solver);

  // Norming states of x found by the multistart, deduplicated up to phase.
  std::vector<Vector> pool;
  for (const auto& run : xs.runs) {
    if (run.f < fx - 1e-9 * (1.0 + fx)) continue;
    const bool seen = std::any_of(pool.begin(), pool.end(),
                                  [&](const Vector& p) { return std::abs(inner(p, run.u)) > 1.0 - 1e-12; });
    if (!seen) pool.push_back(run.u);
  }

  if (ny.value > detail::zero_norm) {
    std::vector<Vector> warm = pool;
    warm.push_back(ny.witness.u);
    const double inv_nx = 1.0 / nx;
    const detail::PairEvaluator eval(inv_nx * xr, (1.0 / ny.value) * yr, lambda, cfg, std::move(warm));
    auto [xi, g] = detail::nelder_mead([&](Complex c) { return c == Complex{} ? 1.0 : eval.value(c); },
                                       Complex{}, 0.25, 800);
    if (xi != Complex{}) {
      g = std::max(g, std::sqrt(std::max(0.0, eval.run(xi, true).winner().f)));
    }
    // Decreases at rounding level keep xi = 0 (flat minima are common).
    if (g < 1.0 - 1e-14) {
      out.min_value = nx * g;
      out.argmin_xi = xi * (nx / ny.value);
    }
  }
  out.defect = 1.0 - out.min_value / nx;
  out.orthogonal = out.defect <= cfg.tol_decision;

  // Theta witnesses on the original scale.
  const double attain_tol = 1e-7 * (1.0 + fx);
  const ComplexMatrix xr_adj = xr.adjoint();
  const detail::SphereObjective x_objective{xr, xr_adj, lambda};
  std::vector<Complex> pairings;
  std::vector<double> residuals;
  auto add_candidate = [&](const Vector& u) {
    pool.push_back(u);
    pairings.push_back(detail::reduced_pairing(xr, yr, lambda, u));
    residuals.push_back(std::abs(x_objective.value(u) - fx));
  };
  {
    std::vector<Vector> initial;
    std::swap(initial, pool);
    for (const auto& u : initial) add_candidate(u);
  }
  const double two_pi = 2.0 * std::numbers::pi;
  auto best_for = [&](double theta) {
    const Complex e = std::polar(1.0, theta);
    std::size_t best = pool.size();
    double best_s = 0.0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (residuals[j] > attain_tol) continue;
      const double s = (e * pairings[j]).real();
      if (best == pool.size() || s > best_s) {
        best = j;
        best_s = s;
      }
    }
    return std::pair{best, best_s};
  };
  const double sign_floor = -1e-9 * (1.0 + nx * ny.value);
  for (int k = 0; k < cfg.n_theta_witness; ++k) {
    const double theta = two_pi * k / cfg.n_theta_witness;
    auto [j, s] = best_for(theta);
    if (s < sign_floor) {
      add_candidate(detail::continuation_witness(xr, yr, lambda, theta, pool[j], cfg.solver));
      std::tie(j, s) = best_for(theta);
    }
    if (s < sign_floor && out.orthogonal) {
      out.warnings.push_back("no norming state with nonnegative pairing found at theta = " + std::to_string(theta));
    }
    out.theta_witnesses.push_back(ThetaWitness{theta, state_from_unit_vector(w, pool[j]), s, residuals[j]});
  }
  return out;
}

struct PositiveOrthoResult {
  bool orthogonal = false;
  std::optional<StateWitness> witness;
};

/// v_a-orthogonality of a-positive elements: true iff some state attains
/// v_a(x) = phi(a x) and annihilates a y.
///
/// In reduced form both elements are psd, the norming states of x span the
/// top eigenspace of the reduced x, and phi(a y) = 0 means the state vector
/// lies in the kernel of the reduced y.
inline PositiveOrthoResult vrad_positive_orthogonality(const Weight& w, const ComplexMatrix& x, const ComplexMatrix& y,
                                                       double tol = default_tol) {
  require_dims(w, x);
  require_dims(w, y);
  if (!is_a_positive(w, x, tol)) throw Error(ErrorCode::NotAPositive, "x is not a-positive");
  if (!is_a_positive(w, y, tol)) throw Error(ErrorCode::NotAPositive, "y is not a-positive");
  const ComplexMatrix xr = reduce(w, x).hermitian_part();
  const ComplexMatrix yr = reduce(w, y).hermitian_part();
  const std::size_t n = xr.size();
  const HermEig ex = herm_eig(xr);
  const double vx = std::max(0.0, ex.max());

  std::vector<std::size_t> top;
  for (std::size_t k = 0; k < n; ++k)
    if (ex.eigenvalues[k] >= vx - tol) top.push_back(k);
  // Compress y onto the top eigenspace of x: c = Q* yr Q.
  const std::size_t k = top.size();
  std::vector<Vector> q;
  for (std::size_t i : top) q.push_back(ex.vector(i));
  ComplexMatrix c(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Vector yq = yr * std::span<const Complex>(q[j]);
    for (std::size_t i = 0; i < k; ++i) c(i, j) = inner(q[i], yq);
  }
  const Vector coeff = herm_eig(c.hermitian_part()).vector(0);
  Vector u(n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < n; ++r) u[r] += coeff[i] * q[i][r];
  detail::normalize(u);
  PositiveOrthoResult out;
  const StateWitness s = state_from_unit_vector(w, u);
  const double phi_ax = std::abs(s.evaluate(w.a() * x) - vx);
  const double phi_ay = std::abs(s.evaluate(w.a() * y));
  out.orthogonal = phi_ax <= tol && phi_ay <= tol;
  if (out.orthogonal) out.witness = s;
  return out;
}

struct ParallelOrthoReport {
  bool holds = false;
  Complex mu{1.0, 0.0};
  /// z = ||y|| x - mu ||x|| y; set to exactly 0 when it vanishes to rounding.
  ComplexMatrix z;
  OrthoResult part1;  ///< x perp z
  OrthoResult part2;  ///< y perp z
  double defect1 = 0.0;
  double defect2 = 0.0;
};

/// For a parallel pair with pairing conj(mu) ||x|| ||y||, checks that both
/// x and y are orthogonal to ||y|| x - mu ||x|| y.
inline ParallelOrthoReport parallelism_implies_orthogonality_check(const Weight& w, double lambda,
                                                                   const ComplexMatrix& x, const ComplexMatrix& y,
                                                                   const GeometryConfig& cfg = {}) {
  const ParallelResult par = is_parallel(w, lambda, x, y, cfg);
  if (!par.parallel) throw Error(ErrorCode::NotParallel, "x and y are not parallel");
  ParallelOrthoReport out;
  out.mu = par.mu;
  const ComplexMatrix lhs = par.norm_y * x;
  const ComplexMatrix rhs = (par.mu * par.norm_x) * y;
  out.z = lhs - rhs;
  if (out.z.frobenius_norm() <= 1e-12 * (lhs.frobenius_norm() + rhs.frobenius_norm())) out.z = ComplexMatrix(x.size());
  out.part1 = is_orthogonal(w, lambda, x, out.z, cfg);
  out.part2 = is_orthogonal(w, lambda, y, out.z, cfg);
  out.defect1 = out.part1.defect;
  out.defect2 = out.part2.defect;
  out.holds = out.part1.orthogonal && out.part2.orthogonal;
  return out;
}

struct NormaloidReport {
  bool parallel_to_identity = false;
  bool normaloid = false;
  bool parallel_to_adjoint = false;
  bool agree = false;
  double numradius = 0.0;
  double norm_a = 0.0;
  double defect_identity = 0.0;
  double defect_adjoint = 0.0;
};

/// Evaluates x || 1, v_a(x) = ||x||_a and x || x# independently. The middle
/// predicate is |v_a(x) - ||x||_a| <= tol ||x||_a.
inline NormaloidReport normaloid_equivalences(const Weight& w, double lambda, const ComplexMatrix& x,
                                              double tol = 1e-6, const GeometryConfig& cfg = {}) {
  require_lambda(lambda);
  require_dims(w, x);
  NormaloidReport out;
  const ParallelResult p1 = is_parallel(w, lambda, x, ComplexMatrix::identity(x.size()), cfg);
  const ParallelResult p3 = is_parallel(w, lambda, x, a_adjoint(w, x), cfg);
  out.numradius = a_numradius(w, x, cfg.solver.numradius_angles).value;
  out.norm_a = a_norm(w, x).value;
  out.parallel_to_identity = p1.parallel;
  out.parallel_to_adjoint = p3.parallel;
  out.defect_identity = p1.defect;
  out.defect_adjoint = p3.defect;
  out.normaloid = std::abs(out.numradius - out.norm_a) <= tol * out.norm_a;
  out.agree = out.parallel_to_identity == out.normaloid && out.normaloid == out.parallel_to_adjoint;
  return out;
}

}  // namespace astar

#endif  // ASTAR_GEOMETRY_HPP
